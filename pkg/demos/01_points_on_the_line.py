"""
Counting points of bounded height on the projective line over Q(i)
===================================================================

P^1 is the smallest toric variety. Its universal torsor is A^2 minus the
origin, so a rational point (x0 : x1) with nonzero coordinates lifts to a
coprime pair of Gaussian integers, unique up to the four units.

We count those points by anticanonical height, compare against a brute-force
projective enumeration, and watch N(B) / (C B) settle toward 1.
"""

# %%
import numpy as np

from torsorcount import count_points, get_fan, leading_constant, make_field, projective_oracle

K = make_field(1)
P1 = get_fan("P1")
print(f"K = Q(sqrt(-1)): disc {K.disc}, {K.omega} units, class number {K.class_number}")

# %% [markdown]
# Height one: the four points (1 : u) for the units u. Sixteen torsor points
# (u1, u2) collapse onto them under the diagonal unit action.

# %%
print("N(1) =", count_points(P1, K, [1]).N_direct[0])

# %% [markdown]
# The torsor count and the naive projective enumeration never share code,
# so agreement on a range of heights is a real check.

# %%
Bs = [1, 5, 10, 50, 100, 500]
direct = count_points(P1, K, Bs).N_direct
naive = [projective_oracle(K, 1, B) for B in Bs]
for B, a, b in zip(Bs, direct, naive):
    print(f"B={B:>4}  torsor={a:>5}  projective={b:>5}")

# %% [markdown]
# The predicted growth is C B with C = pi^2/4 times an Euler product, which for
# P^1 is 1/zeta_K(2).

# %%
const = leading_constant(P1, K, P=10**4)
print("symbolic part:", const.symbolic)
print("C =", float(const.value), " kappa tail bound:", float(const.tail_bound))

ladder = [10**k for k in range(1, 6)]
counts = np.array(count_points(P1, K, ladder).N_direct, dtype=float)
ratios = counts / (float(const.value) * np.array(ladder, dtype=float))
for B, n, r in zip(ladder, counts, ratios):
    print(f"B=1e{int(np.log10(B))}  N={int(n):>7}  N/(C B)={r:.4f}")

slope = np.polyfit(np.log(ladder), np.log(counts), 1)[0]
print(f"log-log slope of N(B): {slope:.3f} (expected 1)")
