"""The leading constant C = alpha * kappa * d^(-N/2) * h^r * omega^(-r) * (2 pi)^N * #cones."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath

from .fan import Fan, PicardData, check_globally_generated, picard_basis, validate_fan
from .intlinalg import det, rank, solve_rational
from .moebius import KappaEstimate, kappa
from .quadfield import QuadField


class PolytopeError(ValueError):
    pass


class ConstantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the polytope {y : <D_rho, y> >= 0, <-K, y> <= 1}


@dataclass(frozen=True)
class EffDualPolytope:
    dim: int
    inequalities: tuple[tuple[tuple[int, ...], int], ...]  # (g, h) meaning <g, y> <= h
    vertices: tuple[tuple[Fraction, ...], ...]

    def contains(self, y) -> bool:
        return all(sum(a * b for a, b in zip(g, y)) <= h for g, h in self.inequalities)

    def volume(self) -> Fraction:
        return sum((_simplex_volume(s) for s in triangulate(self)), Fraction(0))


def eff_dual_polytope(fan: Fan, pic: PicardData | None = None) -> EffDualPolytope:
    pic = pic or picard_basis(fan)
    r = pic.rank
    ineqs = [(tuple(-v for v in cls), 0) for cls in pic.ray_classes()]
    ineqs.append((pic.anticanonical_class(), 1))
    # drop repeated inequalities (rays sharing a class)
    seen, uniq = set(), []
    for g, h in ineqs:
        if (g, h) not in seen:
            seen.add((g, h))
            uniq.append((g, h))
    verts = set()
    for sub in combinations(range(len(uniq)), r):
        A = [list(uniq[i][0]) for i in sub]
        if rank(A) < r:
            continue
        y = solve_rational(A, [uniq[i][1] for i in sub])
        if all(sum(a * b for a, b in zip(g, y)) <= h for g, h in uniq):
            verts.add(tuple(y))
    poly = EffDualPolytope(r, tuple(uniq), tuple(sorted(verts)))
    _check_bounded(poly)
    return poly


def _check_bounded(poly: EffDualPolytope) -> None:
    """Bounded iff no nonzero direction v has <g, v> <= 0 for every g."""
    r = poly.dim
    gs = [g for g, _ in poly.inequalities]
    if rank(gs) < r:
        raise PolytopeError("polytope is unbounded: inequality normals do not span")
    # an unbounded direction lies on an extreme ray of {v : <g,v> <= 0}, cut out by r-1 normals
    for sub in combinations(range(len(gs)), r - 1):
        A = [list(gs[i]) for i in sub]
        if r > 1 and rank(A) < r - 1:
            continue
        v = _kernel_vector(A, r)
        for s in (1, -1):
            w = [s * x for x in v]
            if all(sum(a * b for a, b in zip(g, w)) <= 0 for g in gs):
                raise PolytopeError(f"polytope is unbounded along direction {w}")


def _kernel_vector(A, r):
    if not A:
        return [1] if r == 1 else [1] + [0] * (r - 1)
    for j in range(r):
        e = [int(i == j) for i in range(r)]
        M = [list(row) for row in A] + [e]
        if rank(M) == r:
            rhs = [0] * len(A) + [1]
            return solve_rational(M, rhs)
    raise PolytopeError("degenerate inequality system")  # pragma: no cover


def _affine_dim(points) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def triangulate(poly: EffDualPolytope):
    """Recursive pulling triangulation: cone the least vertex over every facet avoiding it."""
    tight = [frozenset(v for v in poly.vertices if sum(a * b for a, b in zip(g, v)) == h) for g, h in poly.inequalities]

    def faces(vset: frozenset, dim: int):
        if dim == 0:
            return [(next(iter(vset)),)]
        v0 = min(vset)
        out = []
        seen = set()
        for t in tight:
            sub = vset & t
            if sub == vset or sub in seen or v0 in sub:
                continue
            if len(sub) >= dim and _affine_dim(sorted(sub)) == dim - 1:
                seen.add(sub)
                out.extend((v0,) + s for s in faces(sub, dim - 1))
        return out

    return faces(frozenset(poly.vertices), poly.dim)


def _simplex_volume(simplex) -> Fraction:
    v0 = simplex[0]
    M = [[a - b for a, b in zip(v, v0)] for v in simplex[1:]]
    return abs(det(M)) / math.factorial(len(M))


def polytope_volume(fan: Fan, pic: PicardData | None = None) -> Fraction:
    return eff_dual_polytope(fan, pic).volume()


def alpha(fan: Fan, pic: PicardData | None = None) -> Fraction:
    """Volume of {y in Eff^dual : <-K, y> <= 1} in the dual Picard lattice normalisation."""
    _require(fan)
    return polytope_volume(fan, pic)


def alpha_peyre(fan: Fan, pic: PicardData | None = None) -> Fraction:
    """alpha(X) = (1/(r-1)!) int_{Eff^dual} exp(-<-K,y>) dy = r * volume.

    This is the normalisation entering the leading constant; it differs from
    :func:`alpha` by the factor r (visible from r = 2 on).
    """
    pic = pic or picard_basis(fan)
    return pic.rank * alpha(fan, pic)


# ---------------------------------------------------------------------------
# exact constants q * pi^a * d^(-b/2)


@dataclass(frozen=True)
class SymbolicConstant:
    q: Fraction
    pi_power: int = 0
    disc: int = 1
    disc_half_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.disc_half_power == 0 and self.disc != 1:
            object.__setattr__(self, "disc", 1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicConstant(self.q * other, self.pi_power, self.disc, self.disc_half_power)
        if self.disc != other.disc and 1 not in (self.disc, other.disc):
            raise ConstantError("cannot multiply constants over different discriminants")
        disc = self.disc if self.disc != 1 else other.disc
        return SymbolicConstant(
            self.q * other.q,
            self.pi_power + other.pi_power,
            disc,
            self.disc_half_power + other.disc_half_power,
        )

    __rmul__ = __mul__

    def evaluate(self, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            v = mpmath.mpf(self.q.numerator) / self.q.denominator
            v *= mpmath.pi**self.pi_power
            v *= mpmath.mpf(self.disc) ** (-mpmath.mpf(self.disc_half_power) / 2)
            return +v

    def __str__(self) -> str:
        parts = [str(self.q)]
        if self.pi_power:
            parts.append(f"pi^{self.pi_power}")
        if self.disc_half_power:
            parts.append(f"{self.disc}^(-{self.disc_half_power}/2)")
        return " * ".join(parts)


def peyre_components(fan: Fan, field: QuadField, pic: PicardData | None = None):
    """(2 pi h / omega)^r, (2 pi)^(N-r) #cones, and d^(-N/2) (to be multiplied by kappa)."""
    pic = pic or picard_basis(fan)
    r, N = pic.rank, fan.n_rays
    h, w = field.class_number, field.omega
    first = SymbolicConstant(Fraction(2 * h, w) ** r, r)
    second = SymbolicConstant(Fraction(2 ** (N - r) * len(fan.max_cones)), N - r)
    third = SymbolicConstant(Fraction(1), 0, field.disc, N)
    return first, second, third


def symbolic_part(fan: Fan, field: QuadField, pic: PicardData | None = None) -> SymbolicConstant:
    """alpha * d^(-N/2) * h^r * omega^(-r) * (2 pi)^N * #cones, assembled factor by factor."""
    pic = pic or picard_basis(fan)
    r, N = pic.rank, fan.n_rays
    h, w = field.class_number, field.omega
    out = SymbolicConstant(alpha_peyre(fan, pic))
    out = out * SymbolicConstant(Fraction(1), 0, field.disc, N)
    out = out * Fraction(h**r, w**r)
    out = out * SymbolicConstant(Fraction(2**N), N)
    return out * len(fan.max_cones)


@dataclass(frozen=True)
class LeadingConstant:
    symbolic: SymbolicConstant
    kappa: KappaEstimate
    value: mpmath.mpf
    interval: tuple

    @property
    def tail_bound(self):
        return self.kappa.tail_bound


def _require(fan: Fan) -> None:
    rep = validate_fan(fan)
    if not rep.ok:
        raise ConstantError("fan invalid: " + "; ".join(rep.reasons[:3]))
    if not check_globally_generated(fan):
        raise ConstantError("anticanonical sheaf not globally generated")


def leading_constant(fan: Fan, field: QuadField, P: int = 10**4, dps: int = 40) -> LeadingConstant:
    _require(fan)
    sym = symbolic_part(fan, field)
    k = kappa(fan, field, P, dps)
    with mpmath.workdps(dps):
        s = sym.evaluate(dps)
        lo, hi = k.interval
        return LeadingConstant(sym, k, s * k.value, (s * lo, s * hi))


@dataclass(frozen=True)
class Prediction:
    value: mpmath.mpf
    lo: mpmath.mpf
    hi: mpmath.mpf


def predicted_count(fan: Fan, field: QuadField, B, P: int = 10**4, const: LeadingConstant | None = None) -> Prediction:
    """C * B * (log B)^(r-1), with the kappa tail carried as an interval."""
    const = const or leading_constant(fan, field, P)
    r = fan.picard_rank
    with mpmath.workdps(40):
        B = mpmath.mpf(B) if not isinstance(B, Fraction) else mpmath.mpf(B.numerator) / B.denominator
        if B <= 1:
            raise ConstantError("predicted_count needs B > 1")
        g = B * mpmath.log(B) ** (r - 1)
        return Prediction(const.value * g, const.interval[0] * g, const.interval[1] * g)


def constant_report(fan: Fan, field: QuadField, P: int = 10**4) -> dict:
    const = leading_constant(fan, field, P)
    pic = picard_basis(fan)
    a = alpha(fan, pic)
    ap = alpha_peyre(fan, pic)
    return {
        "alpha": f"{a.numerator}/{a.denominator}",
        "alpha_peyre": f"{ap.numerator}/{ap.denominator}",
        "kappa": const.kappa.to_json(),
        "h": field.class_number,
        "omega": field.omega,
        "disc": field.disc,
        "N": fan.n_rays,
        "r": pic.rank,
        "max_cones": len(fan.max_cones),
        "symbolic": str(const.symbolic),
        "C_numeric": mpmath.nstr(const.value, 20),
        "C_interval": [mpmath.nstr(const.interval[0], 20), mpmath.nstr(const.interval[1], 20)],
    }


__all__ = [
    "ConstantError",
    "EffDualPolytope",
    "LeadingConstant",
    "PolytopeError",
    "Prediction",
    "SymbolicConstant",
    "alpha",
    "alpha_peyre",
    "constant_report",
    "eff_dual_polytope",
    "leading_constant",
    "peyre_components",
    "polytope_volume",
    "predicted_count",
    "symbolic_part",
    "triangulate",
]
