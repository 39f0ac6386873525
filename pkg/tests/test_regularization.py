import math

import numpy as np
import pytest

from thermolimit import regularization as reg
from thermolimit.errors import InvalidEpsilon, InvalidWindow


@pytest.fixture
def schedule():
    return reg.RegularizationSchedule.default()


class TestSchedule:
    def test_default_is_valid(self, schedule):
        assert schedule.epsilons[-1] >= reg.EPSILON_FLOOR
        assert schedule.windows == (1e1, 1e2, 1e3, 1e4)

    def test_rejects_increasing_epsilons(self):
        with pytest.raises(InvalidEpsilon):
            reg.RegularizationSchedule(epsilons=(1e-3, 1e-2), windows=(10.0,))

    def test_rejects_below_floor(self):
        with pytest.raises(InvalidEpsilon):
            reg.RegularizationSchedule(epsilons=(1e-9,), windows=(10.0,))

    def test_rejects_non_increasing_windows(self):
        with pytest.raises(InvalidWindow):
            reg.RegularizationSchedule(epsilons=(1e-2,), windows=(100.0, 10.0))


class TestAbelIntegral:
    def test_sin_at_one(self):
        assert reg.abel_integral("sin", 1.0) == pytest.approx(0.5)

    @pytest.mark.parametrize("eps", [1e-2, 1e-3, 1e-4])
    def test_limits_within_linear_residual(self, eps):
        assert abs(reg.abel_integral("cos", eps) - 0.0) <= 2 * eps
        assert abs(reg.abel_integral("sin", eps) - 1.0) <= 2 * eps

    @pytest.mark.parametrize("kind", ["cos", "sin"])
    @pytest.mark.parametrize("eps", [1e-4, 1e-3, 1e-2, 1e-1, 1.0])
    def test_closed_form_matches_quadrature(self, kind, eps):
        assert abs(
            reg.abel_integral(kind, eps) - reg.abel_integral_quadrature(kind, eps)
        ) <= 1e-10

    def test_rejects_nonpositive_epsilon(self):
        with pytest.raises(InvalidEpsilon):
            reg.abel_integral("cos", 0.0)
        with pytest.raises(InvalidEpsilon):
            reg.abel_integral_quadrature("sin", -1.0)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            reg.abel_integral("tan", 0.1)


class TestDampedFiniteIntegral:
    @pytest.mark.parametrize("kind", ["cos", "sin"])
    def test_matches_quadrature(self, kind):
        import scipy.integrate

        f = {"cos": math.cos, "sin": math.sin}[kind]
        for upper, eps in [(3.0, 0.5), (20.0, 0.05), (100.0, 1e-3)]:
            expected, _ = scipy.integrate.quad(
                lambda y: math.exp(-eps * y) * f(y), 0, upper, limit=200
            )
            assert reg.damped_trig_integral(kind, upper, eps) == pytest.approx(
                expected, abs=1e-10
            )

    def test_recovers_undamped_value(self):
        # eps -> 0 leaves the bare partial integral 1 - cos(L)
        val = reg.damped_trig_integral("sin", 2.0, 1e-8)
        assert val == pytest.approx(1 - math.cos(2.0), abs=1e-7)


class TestTrigLimits:
    @pytest.mark.parametrize("kind", ["cos", "sin"])
    @pytest.mark.parametrize("method", ["abel", "cesaro"])
    def test_limit_is_zero(self, kind, method, schedule):
        assert reg.regularized_trig_limit(kind, schedule, method=method) == 0.0

    def test_cos_proxy_is_one_minus_sin_integral(self, schedule):
        proxies = reg.trig_limit_sequence("cos", schedule)
        expected = [1.0 - reg.abel_integral("sin", e) for e in schedule.epsilons]
        np.testing.assert_allclose(proxies, expected)

    def test_proxy_residual_bound(self):
        sched = reg.RegularizationSchedule(epsilons=(1e-2, 1e-4), windows=(10.0,))
        for kind in ("cos", "sin"):
            proxies = reg.trig_limit_sequence(kind, sched)
            assert abs(proxies[-1]) <= 2e-4

    def test_cesaro_integral_limits(self):
        assert abs(reg.cesaro_integral("cos", 1e6)) <= 2e-6
        assert abs(reg.cesaro_integral("sin", 1e6) - 1.0) <= 2e-6


class TestTimeAverage:
    def test_constant(self):
        out = reg.time_average(reg.TrigSum(constant=3.25), [1.0, 7.0, 1e3])
        np.testing.assert_allclose(out, 3.25)

    def test_full_periods_vanish(self):
        omega = 2.0
        windows = [2 * math.pi * k / omega for k in (1, 2, 5)]
        out = reg.time_average(reg.Harmonic("cos", omega=omega), windows)
        np.testing.assert_allclose(out, 0.0, atol=1e-14)

    def test_integral_bound(self):
        # f = sin(2 N lam t), N=10, lam=1, T=50
        out = reg.time_average(reg.Harmonic("sin", omega=20.0), [50.0])
        assert abs(out[0]) <= 1.0 / (10.0 * 50.0)

    def test_trig_sum_tends_to_constant_coefficient(self):
        signal = reg.TrigSum(
            constant=0.75,
            terms=(reg.Harmonic("cos", omega=3.0, amplitude=2.0),
                   reg.Harmonic("sin", omega=0.5, amplitude=1.5)),
        )
        windows = [10.0, 100.0, 1000.0]
        out = reg.time_average(signal, windows)
        for w, val in zip(windows, out):
            assert abs(val - 0.75) <= 2 * (2.0 + 1.5) / (0.5 * w)

    def test_callable_matches_closed_form(self):
        omega = 1.3
        got = reg.time_average(lambda t: math.cos(omega * t), [7.0, 40.0])
        want = reg.time_average(reg.Harmonic("cos", omega=omega), [7.0, 40.0])
        np.testing.assert_allclose(got, want, atol=1e-9)

    def test_rejects_bad_window(self):
        with pytest.raises(InvalidWindow):
            reg.time_average(reg.TrigSum(constant=1.0), [0.0])

    def test_broken_callable_raises_quadrature_error(self):
        from thermolimit.errors import QuadratureError

        def exploding(t):
            raise FloatingPointError("bad integrand")

        with pytest.raises(QuadratureError):
            reg.time_average(exploding, [1.0])


class TestEquivalenceReport:
    @pytest.mark.parametrize("kind", ["cos", "sin"])
    def test_all_regularizers_agree_on_zero(self, kind, schedule):
        report = reg.equivalence_report(kind, schedule)
        assert report.limit == 0.0
        assert report.converged
        assert report.endpoint_gap <= 1e-3

    def test_constant_control(self, schedule):
        report = reg.equivalence_report("const", schedule)
        assert report.limit == 1.0
        assert all(v == 1.0 for _, _, v in report.rows)

    def test_row_layout(self, schedule):
        report = reg.equivalence_report("cos", schedule)
        regularizers = {r for r, _, _ in report.rows}
        assert regularizers == {"abel", "time_average", "cesaro"}
        n = len(schedule.epsilons) + 2 * len(schedule.windows)
        assert len(report.rows) == n

    def test_csv_roundtrip(self, schedule, tmp_path):
        report = reg.equivalence_report("sin", schedule)
        out = tmp_path / "report.csv"
        report.to_csv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "regularizer,parameter,value"
        assert len(lines) == len(report.rows) + 1


class TestOrderOfLimits:
    def test_order_matters(self, schedule):
        report = reg.order_of_limits_report("cos", schedule)
        # undamped-first: bare cos(N x) keeps oscillating through [-1, 1]
        assert report.unordered_spread > 1.0
        assert np.all(np.abs(report.unordered_values) <= 1.0 + 1e-6)
        # N-to-infinity first: proxies collapse onto 0
        assert abs(report.ordered_proxies[-1]) <= 2 * schedule.epsilons[-1]
