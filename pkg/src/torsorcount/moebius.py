"""Generalised Moebius function of a fan, Euler product kappa, F_q torsor counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache

import mpmath
import numpy as np

from .fan import Fan, f_invariant
from .quadfield import Ideal, QuadField, make_field

MAX_TABLE_RAYS = 20
FQ_BUDGET = 10**8


class MoebiusError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LocalMoebiusTable:
    """mu(S) for every subset S of rays, indexed by bitmask (bit i = ray i)."""

    fingerprint: str
    n_rays: int
    table: tuple[int, ...]
    f: int
    Q_at_1: int

    def __getitem__(self, mask: int) -> int:
        return self.table[mask]

    def support(self) -> tuple[tuple[int, int], ...]:
        """Nonempty masks with nonzero mu, ordered by (size, mask)."""
        items = [(m, v) for m, v in enumerate(self.table) if m and v]
        items.sort(key=lambda mv: (mv[0].bit_count(), mv[0]))
        return tuple(items)

    def coefficients(self) -> tuple[int, ...]:
        """c_k = sum of mu(S) over |S| = k, so the local factor is sum c_k q^-k."""
        c = [0] * (self.n_rays + 1)
        for m, v in enumerate(self.table):
            if v:
                c[(m).bit_count()] += v
        return tuple(c)


def chi_table(fan: Fan) -> np.ndarray:
    """chi(S) = 1 iff S lies in the ray set of some maximal cone."""
    N = fan.n_rays
    masks = np.arange(1 << N, dtype=np.int64)
    chi = np.zeros(1 << N, dtype=np.int64)
    for cm in fan.cone_masks:
        chi |= ((masks & ~cm) == 0).astype(np.int64)
    return chi


def _subset_moebius(values: np.ndarray, N: int) -> np.ndarray:
    """In-place inverse zeta transform over the Boolean lattice."""
    a = values.copy()
    for i in range(N):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return a


@lru_cache(maxsize=64)
def build_local_table(fan: Fan) -> LocalMoebiusTable:
    N = fan.n_rays
    if N > MAX_TABLE_RAYS:
        raise MoebiusError(
            f"{N} rays exceeds the table limit of {MAX_TABLE_RAYS}; use stream_mu_support "
            "with a per-prime support search instead"
        )
    mu = _subset_moebius(chi_table(fan), N)
    table = tuple(int(v) for v in mu)
    q1 = sum(abs(v) for v in table[1:])
    return LocalMoebiusTable(fan.fingerprint(), N, table, f_invariant(fan), q1)


def zeta_transform(table: LocalMoebiusTable) -> tuple[int, ...]:
    """sum_{T subset S} mu(T) for every S (should reproduce chi)."""
    a = np.array(table.table, dtype=np.int64)
    for i in range(table.n_rays):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return tuple(int(x) for x in a)


def local_factor(fan: Fan, q: int) -> Fraction:
    """sum_S mu(S) q^-|S| as an exact rational."""
    coeffs = build_local_table(fan).coefficients()
    return sum((Fraction(c, q**k) for k, c in enumerate(coeffs) if c), Fraction(0))


def _field_of(ideal: Ideal) -> QuadField:
    disc = ideal.disc
    return make_field(disc if disc % 4 == 3 else disc // 4)


def mu(fan: Fan, d, field: QuadField | None = None) -> int:
    """Generalised Moebius function of an N-tuple of integral ideals."""
    d = tuple(d)
    if len(d) != fan.n_rays:
        raise MoebiusError(f"expected {fan.n_rays} ideals, got {len(d)}")
    field = field or _field_of(d[0])
    table = build_local_table(fan)
    support: dict[Ideal, int] = {}
    for i, I in enumerate(d):
        if not I.is_integral():
            raise MoebiusError(f"ideal {I!r} at position {i} is not integral")
        for P, e in field.factor(I).items():
            if e >= 2:
                return 0
            support[P] = support.get(P, 0) | (1 << i)
    out = 1
    for mask in support.values():
        out *= table[mask]
        if not out:
            return 0
    return out


# ---------------------------------------------------------------------------
# kappa


@dataclass(frozen=True)
class KappaEstimate:
    value: mpmath.mpf
    prime_norm_bound: int
    tail_bound: mpmath.mpf

    @property
    def interval(self) -> tuple[mpmath.mpf, mpmath.mpf]:
        return self.value * mpmath.exp(-self.tail_bound), self.value * mpmath.exp(self.tail_bound)

    def to_json(self, digits: int = 30) -> dict:
        return {
            "value": mpmath.nstr(self.value, digits),
            "prime_norm_bound": self.prime_norm_bound,
            "tail_bound": mpmath.nstr(self.tail_bound, 6),
        }


def kappa_tail_bound(q_at_1: int, f: int, P: int, degree: int = 2) -> mpmath.mpf:
    """Bound on |log kappa_P - log kappa|.

    Each prime of norm n > P has local factor 1 + x with |x| <= Q(1) n^-f,
    at most ``degree`` primes share a norm, and sum_{n>P} n^-f <= P^(1-f)/(f-1).
    """
    if f < 2:
        raise MoebiusError("f = 1 makes the Euler product tail divergent")
    if q_at_1 == 0:
        return mpmath.mpf(0)
    x = mpmath.mpf(q_at_1) / mpmath.mpf(P) ** f
    if x >= 1:
        return mpmath.inf
    return degree * q_at_1 * mpmath.mpf(P) ** (1 - f) / ((f - 1) * (1 - x))


def kappa(fan: Fan, field: QuadField, P: int, dps: int = 40) -> KappaEstimate:
    table = build_local_table(fan)
    if table.f < 2:
        raise MoebiusError("f = 1 makes the Euler product tail divergent")
    coeffs = table.coefficients()
    with mpmath.workdps(dps):
        value = mpmath.mpf(1)
        for prime in field.primes_up_to(P):
            x = mpmath.mpf(1) / prime.norm
            value *= mpmath.polyval(list(reversed(coeffs)), x)
        tail = kappa_tail_bound(table.Q_at_1, table.f, P)
        return KappaEstimate(+value, P, +tail)


# ---------------------------------------------------------------------------
# finite-field torsor counts


@cache
def gf_mul_table(q: int) -> np.ndarray:
    """Multiplication table of F_q, elements encoded as base-p digit vectors."""
    (p, k), *_rest = _prime_power(q)
    if k == 1:
        a = np.arange(q)
        return (a[:, None] * a[None, :]) % q
    modulus = _irreducible(p, k)

    def to_poly(n):
        return [(n // p**i) % p for i in range(k)]

    def to_int(c):
        return sum(v * p**i for i, v in enumerate(c))

    tab = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for y in range(q):
            prod = [0] * (2 * k - 1)
            for i, u in enumerate(to_poly(x)):
                for j, v in enumerate(to_poly(y)):
                    prod[i + j] += u * v
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg] % p
                if c:
                    for i, m in enumerate(modulus[:-1]):
                        prod[deg - k + i] -= c * m
                prod[deg] = 0
            tab[x, y] = to_int([v % p for v in prod[:k]])
    return tab


def _prime_power(q: int):
    from .quadfield import factor_int

    fs = factor_int(q)
    if len(fs) != 1:
        raise MoebiusError(f"{q} is not a prime power")
    return fs


def _irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible polynomial of degree k over F_p (coefficients low first)."""
    from itertools import product

    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        if k <= 3:
            if all(sum(c * r**i for i, c in enumerate(poly)) % p for r in range(p)):
                return poly
        else:  # pragma: no cover - only small residue fields are exercised
            raise MoebiusError("residue fields of degree > 3 are not supported")
    raise MoebiusError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


def torsor_count_mod_q(fan: Fan, q: int, budget: int = FQ_BUDGET, chunk: int = 1 << 20) -> int:
    """Brute-force #{x in F_q^N : x^(sigma-check) != 0 for some maximal sigma}."""
    N = fan.n_rays
    total = q**N
    if total > budget:
        raise BudgetExceeded(f"q^N = {q}^{N} = {total} exceeds the budget of {budget}")
    tab = gf_mul_table(q)
    outside = [[i for i in range(N) if i not in cone] for cone in fan.max_cones]
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = [(idx // q**j) % q for j in range(N)]
        alive = np.zeros(idx.shape, dtype=bool)
        for rays in outside:
            prod = np.ones(idx.shape, dtype=np.int64)
            for i in rays:
                prod = tab[prod, digits[i]]
            alive |= prod != 0
        count += int(alive.sum())
    return count


# ---------------------------------------------------------------------------
# support of mu on ideal tuples


def stream_mu_support(fan: Fan, field: QuadField, Bmax):
    """Yield ``(d, mu(d))`` for every N-tuple with N(d) <= Bmax and mu(d) != 0.

    Tuples are built prime by prime in increasing prime order; each prime
    contributes a subset of rays with nonzero local table entry, so every
    tuple appears exactly once.
    """
    table = build_local_table(fan)
    N = fan.n_rays
    Bmax = Fraction(Bmax)
    unit = field.unit_ideal()
    if Bmax < 1:
        return
    pmax = math.floor(Bmax ** Fraction(1, table.f)) if table.f else 0
    while (pmax + 1) ** table.f <= Bmax:
        pmax += 1
    while pmax**table.f > Bmax:
        pmax -= 1
    primes = field.primes_up_to(pmax) if pmax >= 2 else []
    support = [(m, v, (m).bit_count()) for m, v in table.support()]

    def rec(start, d, value, norm):
        yield tuple(d), value
        for j in range(start, len(primes)):
            P = primes[j]
            if norm * P.norm**table.f > Bmax:
                break
            for mask, v, size in support:
                n2 = norm * P.norm**size
                if n2 > Bmax:
                    continue
                d2 = [I * P.ideal if mask >> i & 1 else I for i, I in enumerate(d)]
                yield from rec(j + 1, d2, value * v, n2)

    yield from rec(0, [unit] * N, 1, 1)


__all__ = [
    "BudgetExceeded",
    "KappaEstimate",
    "LocalMoebiusTable",
    "MoebiusError",
    "build_local_table",
    "chi_table",
    "gf_mul_table",
    "kappa",
    "kappa_tail_bound",
    "local_factor",
    "mu",
    "stream_mu_support",
    "torsor_count_mod_q",
    "zeta_transform",
]
