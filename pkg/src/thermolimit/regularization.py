"""Regularized values for divergent oscillatory limits.

``cos(N x)`` and ``sin(N x)`` have no limit as N grows, but the rewrite

    cos(N x) = 1 - integral_0^{N x} sin(y) dy
    sin(N x) =     integral_0^{N x} cos(y) dy

turns the question into divergent integrals that classical summation methods
handle.  Abel regularization damps the integrand with ``exp(-eps*y)``, sends
the upper limit to infinity *first* and only then ``eps -> 0+``:

    integral_0^inf exp(-eps*y) cos(y) dy = eps / (1 + eps^2)  -> 0
    integral_0^inf exp(-eps*y) sin(y) dy =   1 / (1 + eps^2)  -> 1

so both trig limits come out 0 — the same answer a long-time average gives.
This module provides the closed forms, a quadrature cross-check, a Cesàro
variant (mean of partial integrals), finite-window time averages, and a
report that tabulates all of them side by side.  The order of the two limits
matters and `order_of_limits_report` demonstrates why.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate

from .errors import InvalidEpsilon, InvalidWindow, QuadratureError

EPSILON_FLOOR = 1e-8

_KINDS = ("cos", "sin")


def _check_kind(kind: str) -> str:
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    return kind


@dataclass(frozen=True)
class RegularizationSchedule:
    """Damping parameters and averaging windows walked toward the limit.

    ``epsilons`` must decrease strictly (toward 0, floored at 1e-8 where the
    closed forms are indistinguishable from their limits in double
    precision); ``windows`` must increase strictly.
    """

    epsilons: tuple[float, ...]
    windows: tuple[float, ...]

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        win = tuple(float(w) for w in self.windows)
        if not eps or any(e < EPSILON_FLOOR for e in eps):
            raise InvalidEpsilon(f"epsilons must be >= {EPSILON_FLOOR}: {eps}")
        if any(b >= a for a, b in zip(eps, eps[1:], strict=False)) and len(eps) > 1:
            raise InvalidEpsilon(f"epsilons must decrease strictly: {eps}")
        if not win or any(w <= 0 for w in win):
            raise InvalidWindow(f"windows must be positive: {win}")
        if any(b <= a for a, b in zip(win, win[1:], strict=False)) and len(win) > 1:
            raise InvalidWindow(f"windows must increase strictly: {win}")
        object.__setattr__(self, "epsilons", eps)
        object.__setattr__(self, "windows", win)

    @classmethod
    def default(cls) -> "RegularizationSchedule":
        return cls(epsilons=(1e-1, 1e-2, 1e-3, 1e-4), windows=(1e1, 1e2, 1e3, 1e4))


def abel_integral(kind: str, epsilon: float) -> float:
    """Damped integral ``int_0^inf exp(-eps*y) trig(y) dy`` in closed form."""
    _check_kind(kind)
    if epsilon <= 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    if kind == "cos":
        return epsilon / (1.0 + epsilon**2)
    return 1.0 / (1.0 + epsilon**2)


def abel_integral_quadrature(kind: str, epsilon: float) -> float:
    """Same integral by adaptive oscillatory quadrature (QUADPACK QAWF).

    Exists to cross-check the closed form, not for production use.
    """
    _check_kind(kind)
    if epsilon <= 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    try:
        value, abserr = scipy.integrate.quad(
            lambda y: math.exp(-epsilon * y), 0, np.inf, weight=kind, wvar=1.0
        )
    except Exception as exc:  # quadpack signals failure by raising
        raise QuadratureError(f"QAWF failed for {kind}, eps={epsilon}") from exc
    if abserr > 1e-8:
        raise QuadratureError(f"QAWF error estimate {abserr:.1e} too large")
    return float(value)


def damped_trig_integral(kind: str, upper: float, epsilon: float) -> float:
    """Finite-limit ``int_0^L exp(-eps*y) trig(y) dy`` in closed form."""
    _check_kind(kind)
    if epsilon <= 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    L = float(upper)
    e = float(epsilon)
    damp = math.exp(-e * L)
    if kind == "sin":
        return (1.0 - damp * (math.cos(L) + e * math.sin(L))) / (1.0 + e**2)
    return (e + damp * (math.sin(L) - e * math.cos(L))) / (1.0 + e**2)


def cesaro_integral(kind: str, window: float) -> float:
    """Mean over [0, T] of the partial integrals of ``trig``.

    ``(1/T) int_0^T [int_0^u trig] du``; converges to the same values as the
    Abel forms (cos -> 0, sin -> 1) but with an O(1/T) tail.
    """
    _check_kind(kind)
    if window <= 0:
        raise InvalidWindow(f"window must be positive, got {window}")
    T = float(window)
    if kind == "cos":
        return (1.0 - math.cos(T)) / T
    return 1.0 - math.sin(T) / T


def trig_limit_sequence(
    kind: str, schedule: RegularizationSchedule, method: str = "abel"
) -> np.ndarray:
    """Finite-parameter proxies for the regularized ``lim cos(Nx)``/``sin(Nx)``.

    For each schedule point the divergent upper limit has already been sent
    to infinity; what remains is the residual of the damping/averaging:

        cos proxy = 1 - regularized sin-integral   (abel: eps^2/(1+eps^2))
        sin proxy =     regularized cos-integral   (abel: eps /(1+eps^2))
    """
    _check_kind(kind)
    if method == "abel":
        params = schedule.epsilons
        reg = abel_integral
    elif method == "cesaro":
        params = schedule.windows
        reg = cesaro_integral
    else:
        raise ValueError(f"method must be 'abel' or 'cesaro', got {method!r}")
    if kind == "cos":
        return np.array([1.0 - reg("sin", p) for p in params])
    return np.array([reg("cos", p) for p in params])


def regularized_trig_limit(
    kind: str, schedule: RegularizationSchedule, method: str = "abel"
) -> float:
    """Regularized ``lim_{N->inf} cos(Nx)`` or ``sin(Nx)``: exactly 0.

    The limits are taken in the only order that converges (upper limit to
    infinity under fixed damping, then damping to zero).  The schedule is
    walked to confirm the proxies shrink within their closed-form bounds
    before the exact limit is returned.
    """
    proxies = trig_limit_sequence(kind, schedule, method=method)
    if method == "abel":
        bounds = np.array([2.0 * e for e in schedule.epsilons])
    else:
        bounds = np.array([2.0 / w for w in schedule.windows])
    if np.any(np.abs(proxies) > bounds):
        # cannot happen for the closed forms; guards future edits
        raise QuadratureError(f"{kind} proxies violate their residual bounds")
    return 0.0


@dataclass(frozen=True)
class Harmonic:
    """One term ``amplitude * trig(omega * t)`` of a trigonometric signal."""

    kind: str
    omega: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        _check_kind(self.kind)
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")


@dataclass(frozen=True)
class TrigSum:
    """Constant plus finite sum of harmonics; averaged in closed form."""

    constant: float = 0.0
    terms: tuple[Harmonic, ...] = ()


def _average_closed_form(signal: TrigSum, window: float) -> float:
    total = signal.constant
    for term in signal.terms:
        x = term.omega * window
        if term.kind == "cos":
            total += term.amplitude * math.sin(x) / x
        else:
            total += term.amplitude * (1.0 - math.cos(x)) / x
    return total


def time_average(signal, windows) -> np.ndarray:
    """Mean ``(1/T) int_0^T f`` for each window T.

    ``signal`` may be a TrigSum/Harmonic (closed form) or any callable
    (adaptive quadrature; QuadratureError on failure).
    """
    windows = [float(w) for w in windows]
    if any(w <= 0 for w in windows):
        raise InvalidWindow(f"windows must be positive: {windows}")
    if isinstance(signal, Harmonic):
        signal = TrigSum(terms=(signal,))
    if isinstance(signal, TrigSum):
        return np.array([_average_closed_form(signal, w) for w in windows])
    out = []
    for w in windows:
        periods = max(1, int(w))  # tell quadpack about the oscillation scale
        try:
            value, abserr = scipy.integrate.quad(signal, 0.0, w, limit=50 * periods)
        except Exception as exc:
            raise QuadratureError(f"time average failed on window {w}") from exc
        if abserr > 1e-6 * max(1.0, abs(value)):
            raise QuadratureError(f"time average error {abserr:.1e} on window {w}")
        out.append(value / w)
    return np.array(out)


@dataclass
class EquivalenceReport:
    """Abel, time-average and Cesàro values for one trig limit, side by side."""

    kind: str
    rows: list[tuple[str, float, float]] = field(default_factory=list)
    limit: float = 0.0
    endpoint_gap: float = 0.0
    converged: bool = False

    def to_csv(self, path) -> None:
        from . import serialize

        serialize.write_csv(
            path, ("regularizer", "parameter", "value"), self.rows
        )


def equivalence_report(
    kind: str, schedule: RegularizationSchedule, endpoint_tol: float = 1e-3
) -> EquivalenceReport:
    """Tabulate the three regularizers against one another.

    For ``kind`` in {'cos','sin'} all three sequences must converge to 0; the
    report records the worst endpoint disagreement.  ``kind='const'`` is the
    control: every regularizer must return the constant itself (the mean of a
    constant is the constant, under damping as well as averaging).
    """
    report = EquivalenceReport(kind=kind)
    if kind == "const":
        value = 1.0
        for eps in schedule.epsilons:
            # Abelian mean: eps * int_0^inf exp(-eps*y) * c dy = c
            report.rows.append(("abel", eps, value))
        for w in schedule.windows:
            report.rows.append(("time_average", w, value))
            report.rows.append(("cesaro", w, value))
        report.limit = value
        report.endpoint_gap = 0.0
        report.converged = True
        return report

    _check_kind(kind)
    abel = trig_limit_sequence(kind, schedule, method="abel")
    cesaro = trig_limit_sequence(kind, schedule, method="cesaro")
    averages = time_average(Harmonic(kind=kind, omega=1.0), schedule.windows)
    for eps, v in zip(schedule.epsilons, abel):
        report.rows.append(("abel", eps, float(v)))
    for w, v in zip(schedule.windows, averages):
        report.rows.append(("time_average", w, float(v)))
    for w, v in zip(schedule.windows, cesaro):
        report.rows.append(("cesaro", w, float(v)))
    endpoints = (abel[-1], averages[-1], cesaro[-1])
    report.limit = 0.0
    report.endpoint_gap = float(max(endpoints) - min(endpoints))
    report.converged = bool(
        max(abs(v) for v in endpoints) <= endpoint_tol
        and report.endpoint_gap <= endpoint_tol
    )
    return report


@dataclass
class OrderOfLimitsReport:
    """Why the limit order matters: damped-first diverges, N-first converges."""

    kind: str
    ordered_proxies: np.ndarray  # upper limit -> inf first, then eps (converges to 0)
    unordered_values: np.ndarray  # eps -> 0 first at fixed N (just trig(N x): no limit)
    probe_n: np.ndarray
    unordered_spread: float


def order_of_limits_report(
    kind: str,
    schedule: RegularizationSchedule,
    x: float = 1.0,
    probe_n=None,
) -> OrderOfLimitsReport:
    """Evaluate the double limit in both orders.

    Taking ``eps -> 0+`` at fixed N undoes the damping and leaves the bare
    ``trig(N x)``, which keeps oscillating through [-1, 1] as N grows; the
    report samples it over ``probe_n``.  The opposite order yields the
    shrinking Abel proxies.
    """
    _check_kind(kind)
    if probe_n is None:
        probe_n = np.arange(1, 41)
    probe_n = np.asarray(list(probe_n), dtype=int)
    ordered = trig_limit_sequence(kind, schedule, method="abel")
    eps_small = schedule.epsilons[-1]
    unordered = []
    for n in probe_n:
        if kind == "cos":
            unordered.append(1.0 - damped_trig_integral("sin", n * x, eps_small))
        else:
            unordered.append(damped_trig_integral("cos", n * x, eps_small))
    unordered = np.array(unordered)
    return OrderOfLimitsReport(
        kind=kind,
        ordered_proxies=ordered,
        unordered_values=unordered,
        probe_n=probe_n,
        unordered_spread=float(unordered.max() - unordered.min()),
    )
