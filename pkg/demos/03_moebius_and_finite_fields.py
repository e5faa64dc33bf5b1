"""
The Moebius function of a fan and its finite-field shadow
=========================================================

Coprimality on the torsor is an inclusion-exclusion over subsets of rays.
The local Moebius table of the fan encodes it. Summing the table against q^-|S|
gives the proportion of F_q-points of affine space that lie on the torsor,
which a brute-force count over F_q confirms exactly.
"""

# %%
import numpy as np

from torsorcount import build_local_table, get_fan, library, local_factor, torsor_count_mod_q

for name in ("P1", "P2", "P1xP1"):
    t = build_local_table(get_fan(name))
    nonzero = {format(m, f"0{t.n_rays}b")[::-1]: v for m, v in t.support()}
    print(f"{name:<6} f={t.f}  Q(1)={t.Q_at_1}  nonzero mu: {nonzero}")

# %%
print(f"{'fan':<9}" + "".join(f"{q:>9}" for q in (2, 3, 4, 5)))
for e in library():
    cells = []
    for q in (2, 3, 4, 5):
        if q**e.fan.n_rays > 10**6:
            cells.append("-")
            continue
        exact = torsor_count_mod_q(e.fan, q) == q**e.fan.n_rays * local_factor(e.fan, q)
        cells.append("ok" if exact else "MISMATCH")
    print(f"{e.name:<9}" + "".join(f"{c:>9}" for c in cells))

# %% [markdown]
# The local factors tend to 1 like q^-f, which is what makes the Euler product
# for kappa converge.

# %%
qs = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
for name in ("P1", "P2", "P3"):
    gaps = np.array([float(1 - local_factor(get_fan(name), int(q))) for q in qs])
    print(name, "fitted decay exponent:", round(-np.polyfit(np.log(qs), np.log(gaps), 1)[0], 3))
