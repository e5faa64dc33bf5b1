"""Exact arithmetic in imaginary quadratic fields K = Q(sqrt(-D)).

Elements are pairs ``(s, t)`` standing for ``s + t*w`` where
``w = (-d + sqrt(-d)) / 2`` and ``d = d_K > 0`` is the absolute discriminant.
Coordinates are ints for algebraic integers and Fractions otherwise.

Ideals are stored in Hermite normal form: the Z-span of ``a/den`` and
``(b + c*w)/den`` with ``c | a``, ``c | b`` and ``0 <= b < a``.

The archimedean absolute value is the norm form ``|x|_inf = N_{K/Q}(x)``,
always an exact rational.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=200_000)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of a positive integer by trial division."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def kronecker_disc(disc: int, p: int) -> int:
    """Kronecker symbol (disc | p) for a fundamental discriminant ``disc < 0``."""
    if p == 2:
        if disc % 2 == 0:
            return 0
        return 1 if disc % 8 == 1 else -1
    r = disc % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def _hnf2(vectors) -> tuple[int, int, int]:
    """HNF (a, b, c) of the full-rank Z-lattice spanned by integer pairs.

    The lattice is a*Z(1,0) + Z(b,c) with a, c > 0 and 0 <= b < a.
    """
    vecs = [(int(s), int(t)) for s, t in vectors]
    # Combine the second coordinates into a single vector (s0, c).
    s0, c = 0, 0
    rest = []
    for s, t in vecs:
        if t == 0:
            rest.append(s)
            continue
        if c == 0:
            s0, c = s, t
            continue
        g, x, y = _xgcd(c, t)
        # new pivot = x*(s0,c) + y*(s,t); the complementary combination has t = 0
        ns, nc = x * s0 + y * s, g
        rest.append((t // g) * s0 - (c // g) * s)
        s0, c = ns, nc
    if c == 0:
        raise FieldError("vectors do not span a full-rank lattice")
    if c < 0:
        s0, c = -s0, -c
    a = 0
    for s in rest:
        a = math.gcd(a, s)
    if a == 0:
        raise FieldError("vectors do not span a full-rank lattice")
    return a, s0 % a, c


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _common_den(values) -> int:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    return den


@dataclass(frozen=True, order=True)
class Ideal:
    """Nonzero fractional ideal, canonical HNF with minimal denominator."""

    a: int
    b: int
    c: int
    den: int
    disc: int = field(compare=True)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_lattice(cls, disc: int, vectors) -> Ideal:
        """Ideal whose Z-basis spans ``vectors`` (rational pairs)."""
        vectors = list(vectors)
        den = _common_den(v for pair in vectors for v in pair)
        a, b, c = _hnf2((s * den, t * den) for s, t in vectors)
        g = math.gcd(math.gcd(a, b), math.gcd(c, den))
        return cls(a // g, b // g, c // g, den // g, disc)

    @classmethod
    def generated_by(cls, disc: int, *elements) -> Ideal:
        """Ideal generated over O_K by the given nonzero elements."""
        omega = (0, 1)
        vecs = []
        for x in elements:
            vecs.append(x)
            vecs.append(mul(disc, x, omega))
        return cls.from_lattice(disc, vecs)

    @classmethod
    def unit(cls, disc: int) -> Ideal:
        return cls(1, 0, 1, 1, disc)

    # -- basic data -------------------------------------------------------
    def basis(self) -> tuple[tuple, tuple]:
        """Z-basis as field elements."""
        if self.den == 1:
            return (self.a, 0), (self.b, self.c)
        d = self.den
        return (Fraction(self.a, d), Fraction(0)), (Fraction(self.b, d), Fraction(self.c, d))

    def integral_basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Z-basis of the integral ideal ``den * self``."""
        return (self.a, 0), (self.b, self.c)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.c, self.den * self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_unit(self) -> bool:
        return self.a == 1 and self.c == 1 and self.den == 1

    def serialize(self) -> list[int]:
        return [self.a, self.b, self.c, self.den]

    def __contains__(self, x) -> bool:
        s, t = x
        s, t = s * self.den, t * self.den
        if isinstance(s, Fraction):
            if s.denominator != 1 or t.denominator != 1:
                return False
            s, t = s.numerator, t.numerator
        if t % self.c:
            return False
        return (s - self.b * (t // self.c)) % self.a == 0

    # -- algebra ----------------------------------------------------------
    def __mul__(self, other: Ideal) -> Ideal:
        _same_field(self, other)
        p, q = self.integral_basis(), other.integral_basis()
        prods = [mul(self.disc, x, y) for x in p for y in q]
        den = self.den * other.den
        if den != 1:
            prods = [(Fraction(s, den), Fraction(t, den)) for s, t in prods]
        return Ideal.from_lattice(self.disc, prods)

    def __add__(self, other: Ideal) -> Ideal:
        _same_field(self, other)
        return Ideal.from_lattice(self.disc, list(self.basis()) + list(other.basis()))

    def conjugate(self) -> Ideal:
        return Ideal.from_lattice(self.disc, [conj(self.disc, x) for x in self.basis()])

    def inverse(self) -> Ideal:
        nm = self.norm()
        vecs = [(s / nm, t / nm) for s, t in (_as_frac(x) for x in self.conjugate().basis())]
        return Ideal.from_lattice(self.disc, vecs)

    def __pow__(self, e: int) -> Ideal:
        base = self if e >= 0 else self.inverse()
        result = Ideal.unit(self.disc)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __truediv__(self, other: Ideal) -> Ideal:
        return self * other.inverse()

    def divides(self, other: Ideal) -> bool:
        """``self | other`` in the sense ``other ⊆ self``."""
        return all(x in self for x in other.basis())

    def scale(self, x) -> Ideal:
        """The ideal ``x * self``."""
        return Ideal.from_lattice(self.disc, [mul(self.disc, x, y) for y in self.basis()])

    def __repr__(self) -> str:
        den = f"/{self.den}" if self.den != 1 else ""
        return f"Ideal[{self.a},{self.b},{self.c}]{den}"


def _same_field(x: Ideal, y: Ideal) -> None:
    if x.disc != y.disc:
        raise FieldError("ideals from different fields")


def _as_frac(x):
    return Fraction(x[0]), Fraction(x[1])


# ---------------------------------------------------------------------------
# element arithmetic (coordinates in the basis 1, w)


def mul(disc: int, x, y):
    s1, t1 = x
    s2, t2 = y
    n = disc * (disc + 1) // 4
    tt = t1 * t2
    return s1 * s2 - n * tt, s1 * t2 + s2 * t1 - disc * tt


def conj(disc: int, x):
    s, t = x
    return s - disc * t, -t


def norm_form(disc: int, s, t):
    """N(s + t*w) = s^2 - d*s*t + d(d+1)/4 * t^2."""
    return s * s - disc * s * t + (disc * (disc + 1) // 4) * t * t


def abs_inf(disc: int, x) -> Fraction | int:
    """Normalised archimedean absolute value ``|x|_inf = |N_{K/Q}(x)|``."""
    return norm_form(disc, x[0], x[1])


def bilinear2(disc: int, x, y):
    """Twice the real inner product of the plane embeddings of x and y."""
    return norm_form(disc, x[0] + y[0], x[1] + y[1]) - norm_form(disc, *x) - norm_form(disc, *y)


def cross_sign(x, y) -> int:
    """Sign of the oriented area spanned by x then y in the plane.

    The embedding has Im(s + t*w) = t*sqrt(d)/2, and the area form reduces to
    ``sqrt(d)/2 * (s1*t2 - s2*t1)``.
    """
    v = x[0] * y[1] - y[0] * x[1]
    return (v > 0) - (v < 0)


def plane_det(x, y):
    """Coordinate determinant; the real-plane area is ``|det| * sqrt(d)/2``."""
    return x[0] * y[1] - y[0] * x[1]


def divide(disc: int, x, y):
    """x / y for nonzero y."""
    nm = Fraction(norm_form(disc, *y))
    s, t = mul(disc, x, conj(disc, y))
    return Fraction(s) / nm, Fraction(t) / nm


def to_complex(disc: int, x) -> complex:
    s, t = x
    return complex(float(s) - float(t) * disc / 2, float(t) * math.sqrt(disc) / 2)


# ---------------------------------------------------------------------------
# lattice reduction and enumeration


def reduce_pair(disc: int, w1, w2):
    """Lagrange-Gauss reduction of a planar basis under the norm form.

    Returns ``(w1, w2)`` with ``|w1| <= |w2|`` and ``|2 B(w1, w2)| <= |w1|``.
    Works for integer or rational coordinates.
    """
    q1 = norm_form(disc, *w1)
    q2 = norm_form(disc, *w2)
    if q1 > q2:
        w1, w2, q1, q2 = w2, w1, q2, q1
    while True:
        b2 = bilinear2(disc, w1, w2)
        mu = math.floor(Fraction(b2 + q1, 2 * q1))
        if mu:
            w2 = (w2[0] - mu * w1[0], w2[1] - mu * w1[1])
            q2 = norm_form(disc, *w2)
        if q2 >= q1:
            return w1, w2
        w1, w2, q1, q2 = w2, w1, q2, q1


def reduce_basis(ideal: Ideal):
    """Successive-minima basis ``(w1, w2)`` of an ideal lattice."""
    b1, b2 = ideal.basis()
    return reduce_pair(ideal.disc, b1, b2)


def _integral_points(disc: int, w1, w2, bound: int):
    """Integer-coordinate lattice points x != 0 of Z w1 + Z w2 with N(x) <= bound.

    ``w1, w2`` must be a reduced basis with integer coordinates.
    Yields ``(norm, s, t)``.
    """
    A = norm_form(disc, *w1)
    C = norm_form(disc, *w2)
    B2 = bilinear2(disc, w1, w2)
    delta = 4 * A * C - B2 * B2
    if bound < A:
        return
    m2max = math.isqrt(4 * A * bound // delta) + 1
    for m2 in range(-m2max, m2max + 1):
        rad = 4 * A * bound - delta * m2 * m2
        if rad < 0:
            continue
        r = math.isqrt(rad) + 1
        lo = (-B2 * m2 - r) // (2 * A)
        hi = (-B2 * m2 + r) // (2 * A) + 1
        for m1 in range(lo, hi + 1):
            if m1 == 0 and m2 == 0:
                continue
            s = m1 * w1[0] + m2 * w2[0]
            t = m1 * w1[1] + m2 * w2[1]
            q = norm_form(disc, s, t)
            if q <= bound:
                yield q, s, t


def enumerate_disc(ideal: Ideal, bound):
    """All nonzero ``x`` in ``ideal`` with ``|x|_inf <= bound``.

    Ordered by absolute value, then lexicographically by the integer
    coordinates of ``den * x``.
    """
    bound = Fraction(bound)
    if bound < ideal.norm():
        return iter(())
    den = ideal.den
    w1, w2 = reduce_pair(ideal.disc, *ideal.integral_basis())
    scaled = math.floor(bound * den * den)
    pts = sorted(_integral_points(ideal.disc, w1, w2, scaled))
    if den == 1:
        return iter([(s, t) for _, s, t in pts])
    return iter([(Fraction(s, den), Fraction(t, den)) for _, s, t in pts])


class PointList:
    """Numerators of lattice points sorted by norm, grown on demand."""

    __slots__ = ("basis", "bound", "disc", "norms", "points")

    def __init__(self, ideal: Ideal):
        self.disc = ideal.disc
        self.basis = reduce_pair(ideal.disc, *ideal.integral_basis())
        self.bound = -1
        self.norms: list[int] = []
        self.points: list[tuple[int, int]] = []

    def ensure(self, bound: int) -> None:
        if bound <= self.bound:
            return
        bound = max(bound, 2 * self.bound)
        pts = sorted(_integral_points(self.disc, *self.basis, bound))
        self.norms = [q for q, _, _ in pts]
        self.points = [(s, t) for _, s, t in pts]
        self.bound = bound

    def count(self, bound: int) -> int:
        self.ensure(bound)
        return bisect_right(self.norms, bound)


# ---------------------------------------------------------------------------
# the six-cone partition


@dataclass(frozen=True)
class LatticePartition:
    ideal: Ideal
    vectors: tuple  # l_1..l_6, counter-clockwise

    def pairs(self):
        v = self.vectors
        return [(v[i], v[(i + 1) % 6]) for i in range(6)]

    def angles(self) -> list[float]:
        """Polar angles, only for display; all checks use exact signs."""
        return [
            math.atan2(z.imag, z.real) % (2 * math.pi) for z in (to_complex(self.ideal.disc, x) for x in self.vectors)
        ]


def six_cone_partition(ideal: Ideal) -> LatticePartition:
    """Six short lattice vectors cutting the plane into unimodular cones.

    Built from a reduced basis ``w1, w2`` with an obtuse (or right) angle
    between them and ``w3 = w1 + w2``; consecutive vectors are Z-bases of the
    lattice and consecutive angle gaps lie in (0, pi/2].
    """
    disc = ideal.disc
    w1, w2 = reduce_basis(ideal)
    if bilinear2(disc, w1, w2) > 0:
        w2 = (-w2[0], -w2[1])
    w3 = (w1[0] + w2[0], w1[1] + w2[1])
    neg = lambda x: (-x[0], -x[1])
    u = [w1, w3, w2, neg(w1), neg(w3), neg(w2)]
    if cross_sign(w1, w2) < 0:
        u = u[::-1]
    return LatticePartition(ideal, tuple(u))


# ---------------------------------------------------------------------------
# the field


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: Ideal
    p: int
    residue_degree: int

    @property
    def norm(self) -> int:
        return self.p**self.residue_degree


class QuadField:
    """K = Q(sqrt(-D)) with its class group and unit count."""

    def __init__(self, D: int):
        if not isinstance(D, int) or not is_squarefree(D):
            raise FieldError(f"D must be a squarefree positive integer, got {D!r}")
        self.D = D
        self.disc = D if D % 4 == 3 else 4 * D
        self.omega = {1: 4, 3: 6}.get(D, 2)
        self._prime_cache: dict[int, list[PrimeIdeal]] = {}
        self.class_reps = self._class_group()
        self.class_number = len(self.class_reps)

    def __repr__(self) -> str:
        return f"QuadField(D={self.D})"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadField) and other.D == self.D

    def __hash__(self) -> int:
        return hash(("QuadField", self.D))

    # -- ideals -----------------------------------------------------------
    def unit_ideal(self) -> Ideal:
        return Ideal.unit(self.disc)

    def ideal(self, *generators) -> Ideal:
        return Ideal.generated_by(self.disc, *generators)

    def from_serialized(self, data) -> Ideal:
        a, b, c, den = (int(v) for v in data)
        ideal = Ideal(a, b, c, den, self.disc)
        if Ideal.from_lattice(self.disc, ideal.basis()) != ideal or not self._is_ideal(ideal):
            raise FieldError(f"{list(data)} is not a canonical ideal of {self}")
        return ideal

    def _is_ideal(self, ideal: Ideal) -> bool:
        w = (0, 1)
        return all(mul(self.disc, x, w) in ideal for x in ideal.basis())

    def ideals_of_norm(self, m: int) -> list[Ideal]:
        out = []
        for c in range(1, m + 1):
            if m % c:
                continue
            a = m // c
            if a % c:
                continue
            for b in range(0, a, c):
                I = Ideal(a, b, c, 1, self.disc)
                if self._is_ideal(I):
                    out.append(I)
        return out

    def ideals_up_to(self, bound: int) -> list[Ideal]:
        return [I for m in range(1, bound + 1) for I in self.ideals_of_norm(m)]

    def is_principal(self, ideal: Ideal) -> bool:
        w1, _ = reduce_basis(ideal)
        return abs_inf(self.disc, w1) == ideal.norm()

    def generator(self, ideal: Ideal):
        """A generator of a principal ideal, or None."""
        w1, _ = reduce_basis(ideal)
        return w1 if abs_inf(self.disc, w1) == ideal.norm() else None

    def minkowski_bound(self) -> float:
        return 2 / math.pi * math.sqrt(self.disc)

    def _class_group(self) -> list[Ideal]:
        bound = math.floor(self.minkowski_bound())
        reps: list[Ideal] = []
        for I in sorted(self.ideals_up_to(max(bound, 1)), key=lambda J: (J.a * J.c, J.a, J.b, J.c)):
            if not any(self.is_principal(I * R.conjugate()) for R in reps):
                reps.append(I)
        return reps

    def class_index(self, ideal: Ideal) -> int:
        for i, R in enumerate(self.class_reps):
            if self.is_principal(ideal * R.inverse()):
                return i
        raise FieldError(f"no class representative found for {ideal}")  # pragma: no cover

    # -- primes -----------------------------------------------------------
    def split_prime(self, p: int) -> list[PrimeIdeal]:
        """Prime ideals above the rational prime p, conjugates ordered by HNF b."""
        if p in self._prime_cache:
            return self._prime_cache[p]
        disc = self.disc
        kind = kronecker_disc(-disc, p)
        if kind == -1:
            out = [PrimeIdeal(Ideal(p, 0, p, 1, disc), p, 2)]
        else:
            # roots of the minimal polynomial x^2 + d x + d(d+1)/4 of w mod p
            n = disc * (disc + 1) // 4
            roots = [r for r in range(p) if (r * r + disc * r + n) % p == 0]
            out = sorted(
                (PrimeIdeal(Ideal(p, (-r) % p, 1, 1, disc), p, 1) for r in roots),
                key=lambda P: P.ideal.b,
            )
            assert len(out) == (2 if kind == 1 else 1)
        self._prime_cache[p] = out
        return out

    def primes_up_to(self, bound: int) -> list[PrimeIdeal]:
        """All prime ideals of norm <= bound, ordered by norm then HNF b."""
        out = []
        for p in primes_up_to(bound):
            for P in self.split_prime(p):
                if P.norm <= bound:
                    out.append(P)
        out.sort(key=lambda P: (P.norm, P.ideal.b))
        return out

    def factor(self, ideal: Ideal) -> dict[Ideal, int]:
        """Prime factorisation of a nonzero fractional ideal."""
        num = ideal.a * ideal.c
        den = ideal.den
        ps = {p for p, _ in factor_int(num)} if num > 1 else set()
        ps |= {p for p, _ in factor_int(den)} if den > 1 else set()
        out: dict[Ideal, int] = {}
        for p in sorted(ps):
            for P in self.split_prime(p):
                e = self.valuation(ideal, P)
                if e:
                    out[P.ideal] = e
        return out

    def valuation(self, ideal: Ideal, P: PrimeIdeal) -> int:
        e_ram = 2 if len(self.split_prime(P.p)) == 1 and P.residue_degree == 1 else 1
        v_den = 0
        den = ideal.den
        while den % P.p == 0:
            den //= P.p
            v_den += 1
        J = Ideal(ideal.a, ideal.b, ideal.c, 1, ideal.disc)
        Pinv = P.ideal.inverse()
        e = 0
        while P.ideal.divides(J):
            J = J * Pinv
            e += 1
        return e - e_ram * v_den

    def element_support(self, x, twist_conj: tuple[tuple[int, int], ...], twist_norm: int) -> frozenset:
        """Prime ideals dividing the integral ideal ``x * J^{-1}``.

        ``twist_conj`` is the conjugate Z-basis of the integral ideal J and
        ``twist_norm`` its norm; x is an integral element of J.
        """
        disc = self.disc
        q = norm_form(disc, *x) // twist_norm
        if q == 1:
            return frozenset()
        gens = []
        for g in twist_conj:
            s, t = mul(disc, x, g)
            gens.append((s // twist_norm, t // twist_norm))
        out = []
        for p, _ in factor_int(q):
            for P in self.split_prime(p):
                if len(self._prime_cache[p]) == 1 or all(g in P.ideal for g in gens):
                    out.append(P.ideal)
        return frozenset(out)


def power_product(ideals, exponents) -> Ideal:
    """``prod a_i ** e_i`` for fractional ideals."""
    ideals = list(ideals)
    result = Ideal.unit(ideals[0].disc) if ideals else None
    for I, e in zip(ideals, exponents):
        if e:
            result = result * I**e
    return result


@lru_cache(maxsize=64)
def make_field(D: int) -> QuadField:
    return QuadField(D)


def random_ideal(field: QuadField, rng, size: int = 40, fractional: bool = False) -> Ideal:
    """A random nonzero ideal generated by two random integers of K."""
    while True:
        x = (rng.randint(-size, size), rng.randint(-size, size))
        y = (rng.randint(-size, size), rng.randint(-size, size))
        if x == (0, 0) and y == (0, 0):
            continue
        gens = [g for g in (x, y) if g != (0, 0)]
        I = field.ideal(*gens)
        if fractional:
            I = I.scale((Fraction(1, rng.randint(1, 7)), Fraction(0)))
        return I


__all__ = [
    "FieldError",
    "Ideal",
    "LatticePartition",
    "PointList",
    "PrimeIdeal",
    "QuadField",
    "abs_inf",
    "bilinear2",
    "conj",
    "cross_sign",
    "divide",
    "enumerate_disc",
    "factor_int",
    "make_field",
    "mul",
    "norm_form",
    "plane_det",
    "power_product",
    "primes_up_to",
    "random_ideal",
    "reduce_basis",
    "reduce_pair",
    "six_cone_partition",
]
