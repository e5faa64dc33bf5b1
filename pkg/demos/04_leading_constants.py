"""
Leading constants across the fan library
========================================

For each fan in the library and two fields we assemble

    C = alpha * kappa * d^(-N/2) * h^r * omega^(-r) * (2 pi)^N * #maximal cones

keeping everything except kappa exact. Only kappa is approximated, by a
truncated Euler product with a rigorous bound on the neglected tail.
"""

# %%
import mpmath

from torsorcount import alpha, alpha_peyre, leading_constant, library, make_field

print(f"{'fan':<9}{'r':>2}{'N':>3}{'vol':>8}{'alpha':>8}  {'field':<6}{'C':>14}  interval width")
for e in library():
    for D in (1, 5):
        K = make_field(D)
        c = leading_constant(e.fan, K, P=2000)
        lo, hi = c.interval
        print(
            f"{e.name:<9}{e.fan.picard_rank:>2}{e.fan.n_rays:>3}{alpha(e.fan)!s:>8}{alpha_peyre(e.fan)!s:>8}  "
            f"D={D:<4}{mpmath.nstr(c.value, 8):>14}  {mpmath.nstr(hi - lo, 2)}"
        )

# %% [markdown]
# The column "vol" is the polytope volume; "alpha" is r times it, the
# normalisation under which C(P1 x P1) = C(P1)^2 holds.
