"""The three equivalent integral representations as mutual cross-checks.

The same value is computed from the defining endpoint integral on (0, t],
from the cosh representation, and from the reflected y-representation on
(z^2/4t, inf).  Agreement across routes with different variable changes
and different truncation analysis is the package's ground truth.
"""

from incmac import ShuParams, Tolerances, shu_oracle, shu_oracle_cosh

tol = Tolerances(abs_tol=1e-300, rel_tol=1e-12, max_depth=120)

print(f"{'point':>18}  {'endpoint form':>22} {'cosh form':>22} {'y form':>22}  worst pairwise")
for nu, z, t in [(-0.5, 1.0, 0.5), (0.0, 3.0, 3.0), (2.0, 8.0, 0.2), (5.0, 0.5, 10.0)]:
    p = ShuParams(nu, z, t)
    v2 = shu_oracle(p, tol, form=2).value
    v4 = shu_oracle_cosh(p, tol).value
    v5 = shu_oracle(p, tol).value
    worst = max(abs(v2 - v4), abs(v2 - v5), abs(v4 - v5)) / abs(v5)
    print(f"({nu:>4}, {z:>3}, {t:>4})  {v2:>22.15e} {v4:>22.15e} {v5:>22.15e}  {worst:.1e}")

# quadrature work and error reporting
p = ShuParams(0.0, 3.0, 3.0)
ev = shu_oracle(p, tol)
print(f"\ndefault oracle at (0, 3, 3): value={ev.value!r}")
print(f"  reported error estimate: {ev.error_estimate:.2e}")
print(f"  panel bisections:        {ev.work}")

# far below the smallest double the oracle says zero, explicitly
ev = shu_oracle(ShuParams(1.0, 3.0, 1e-300), tol)
print(f"\nendpoint 1e-300: value={ev.value} flags={ev.flags}")
