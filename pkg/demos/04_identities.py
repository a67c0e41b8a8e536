"""Recurrence, differential, and PDE identity residuals.

Each report is the left-minus-right of one identity, normalized by its
largest term.  The finite-difference variants never route through the
order-shift derivative formula, so they confirm it independently.
"""

from incmac import (
    ShuParams,
    dS_dt,
    dS_dz,
    diff_relation1_residual,
    diff_relation2_residual,
    pde_residual,
    recurrence1_residual,
    recurrence2_residual,
)

points = [ShuParams(0.0, 3.0, 2.0), ShuParams(-0.5, 1.0, 0.5), ShuParams(2.0, 8.0, 10.0)]

print(f"{'identity':<22} " + " ".join(f"{f'({p.order:g},{p.argument:g},{p.endpoint:g})':>16}" for p in points))
rows = [
    ("first recurrence", lambda p: recurrence1_residual(p)),
    ("second recurrence", lambda p: recurrence2_residual(p)),
    ("radial relation k=1", lambda p: diff_relation1_residual(p, 1)),
    ("radial relation k=2", lambda p: diff_relation1_residual(p, 2)),
    ("order-shift k=1", lambda p: diff_relation2_residual(p, 1)),
    ("order-shift k=2", lambda p: diff_relation2_residual(p, 2)),
    ("PDE (exact mode)", lambda p: pde_residual(p, "exact")),
    ("PDE (fd mode)", lambda p: pde_residual(p, "fd")),
]
for name, fn in rows:
    cells = " ".join(f"{fn(p).relative_residual:>16.2e}" for p in points)
    print(f"{name:<22} {cells}")

# the endpoint derivative has a closed form; the argument derivative
# follows from the order-shift ladder
p = ShuParams(1.0, 3.0, 2.0)
print(f"\nat (1, 3, 2): dS/dt = {dS_dt(p):.12e}   dS/dz = {dS_dz(p):.12e}")
