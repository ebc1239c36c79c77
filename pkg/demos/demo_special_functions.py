"""Three routes to the regularized incomplete Beta and their regimes.

The exact alternating sum is cheap and exact for small j but cancels
catastrophically as j grows; the continued fraction works everywhere; the
uniform large-j expansion is the fast path deep in the sum.  The table
below shows the expansion error collapsing like j^-N against the
continued fraction.
"""

from tuecount.specfun import (
    inc_beta_cf,
    inc_beta_exact_sum,
    inc_beta_temme,
)

print("agreement of the three strategies at (v, j, alpha) = (0.97, 35, 2.5):")
es = inc_beta_exact_sum(0.97, 35, 2.5)
cf = inc_beta_cf(0.97, 35, 2.5)
tm = inc_beta_temme(0.97, 35, 2.5, 8)
for ev in (es, cf, tm):
    print(f"  {ev.strategy.value:>18}: {ev.value:.15f}  (err claim {ev.err_estimate:.1e})")
print()

print("uniform expansion at order N=3, v = 1 - 2/j, alpha = 2.5:")
print(f"{'j':>6} {'expansion':>20} {'continued frac':>20} {'abs diff':>10}")
for e in range(9, 14):
    j = 2**e
    v = 1.0 - 2.0 / j
    tm = inc_beta_temme(v, j, 2.5, 3).value
    cf = inc_beta_cf(v, j, 2.5).value
    print(f"{j:>6} {tm:>20.14f} {cf:>20.14f} {abs(tm - cf):>10.2e}")
print()
print("each doubling of j cuts the difference by ~2^3, the order of the")
print("first neglected term")
