"""Assigning a value to lim cos(Nx): why the order of limits decides.

cos(Nx) = 1 - int_0^{Nx} sin and sin(Nx) = int_0^{Nx} cos turn the divergent
trig limits into divergent integrals.  Damping them with exp(-eps*y) and
letting the upper limit run away FIRST gives finite Abel values (0 and 1),
hence both trig limits are 0 — the same number a long time average or a
Cesàro mean of partial integrals produces.  Undo the limits in the other
order and nothing converges: the bare cosine keeps oscillating.
"""

from thermolimit import regularization as reg

schedule = reg.RegularizationSchedule.default()

print("Abel-damped integrals (closed form vs adaptive quadrature):")
for eps in schedule.epsilons:
    c, s = reg.abel_integral("cos", eps), reg.abel_integral("sin", eps)
    cq = reg.abel_integral_quadrature("cos", eps)
    print(f"  eps={eps:<8} cos-integral={c:.6e} (quad dev {abs(c - cq):.1e})"
          f"   sin-integral={s:.8f}")
print("  -> limits 0 and 1 as eps -> 0+")

for kind in ("cos", "sin"):
    value = reg.regularized_trig_limit(kind, schedule)
    print(f"\nregularized lim {kind}(Nx) = {value}")
    report = reg.equivalence_report(kind, schedule)
    for regularizer in ("abel", "time_average", "cesaro"):
        tail = [v for r, _, v in report.rows if r == regularizer][-1]
        print(f"  {regularizer:<13} endpoint value {tail:+.2e}")
    print(f"  endpoint gap {report.endpoint_gap:.1e}, all converge to 0: {report.converged}")

print("\norder of limits (kind=cos, x=1):")
oo = reg.order_of_limits_report("cos", schedule)
print(f"  eps->0 first, N in 1..40: values range over "
      f"[{oo.unordered_values.min():+.3f}, {oo.unordered_values.max():+.3f}] — no limit")
print(f"  N->inf first, then eps: proxies {[f'{v:.1e}' for v in oo.ordered_proxies]} -> 0")

print("\ncontrol: a constant survives every regularizer")
control = reg.equivalence_report("const", schedule)
print(f"  all values = {control.limit}")
