"""
Twisted torsors when the class group is not trivial
===================================================

Over Q(sqrt(-5)) the class number is 2, so a point of P^1 need not lift to a
coprime pair of integers. Its coordinates instead generate one of the two
ideal classes. The count splits into one twisted torsor per class, and only
the sum has a geometric meaning.
"""

# %%
from torsorcount import count_points, get_fan, make_field, projective_oracle

K = make_field(5)
print("class representatives (HNF a, b, c, den):", [I.serialize() for I in K.class_reps])

# %%
Bs = [10, 50, 100, 200]
rep = count_points(get_fan("P1"), K, Bs)
for j, B in enumerate(Bs):
    print(
        f"B={B:>3}  per class: {rep.per_class_string(j):<22}  N(B)={rep.N_direct[j]:>4}  oracle={projective_oracle(K, 1, B)}"
    )

# %% [markdown]
# Both classes contribute, and each class sum is divisible by omega^r = 2,
# because the units act freely on every twisted torsor.
#
# The same holds on a rank-two example: P^1 x P^1 needs a pair of class
# representatives, so four twists appear.

# %%
rep = count_points(get_fan("P1xP1"), K, [100])
print("P1xP1 per class at B=100:", rep.per_class_string(0), " N =", rep.N_direct[0])
