"""Integral points on twisted universal torsors and the counting function N(B).

A rational point of the open torus is represented, for exactly one tuple of
class representatives ``abar``, by ``omega^r`` integral torsor points
``x = (x_rho)`` with ``x_rho`` in the twist ideal ``J_rho = abar^{D_rho}``.
The enumeration works with integer numerators: each lattice ``L`` is stored
as ``L_int / den`` with ``L_int`` integral, and ``u = |y|_inf`` for the
numerator ``y = den * x``, so every height inequality becomes an inequality
between integers.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .fan import Fan, PicardData, anticanonical_exponents, check_globally_generated, picard_basis
from .moebius import stream_mu_support
from .quadfield import (
    Ideal,
    PointList,
    QuadField,
    abs_inf,
    conj,
    enumerate_disc,
    factor_int,
    make_field,
    mul,
    norm_form,
    power_product,
)


class HypothesisError(ValueError):
    """The fan does not satisfy the hypotheses needed for counting."""


# ---------------------------------------------------------------------------
# twists


@dataclass(frozen=True)
class TwistContext:
    field: QuadField
    fan: Fan
    pic: PicardData
    reps: tuple[int, ...]  # indices into field.class_reps
    twist_ideals: tuple[Ideal, ...]
    norm_K: Fraction
    exponents: tuple[tuple[int, ...], ...]  # a_{sigma,rho}

    @property
    def abar(self) -> tuple[Ideal, ...]:
        return tuple(self.field.class_reps[i] for i in self.reps)


def make_context(fan: Fan, field: QuadField, reps, pic: PicardData | None = None) -> TwistContext:
    pic = pic or picard_basis(fan)
    reps = tuple(int(i) for i in reps)
    if len(reps) != pic.rank:
        raise ValueError(f"need {pic.rank} class representatives, got {len(reps)}")
    abar = [field.class_reps[i] for i in reps]
    twists = tuple(power_product(abar, cls) if abar else field.unit_ideal() for cls in pic.ray_classes())
    norm_K = Fraction(1)
    for J in twists:
        norm_K *= J.norm()
    return TwistContext(field, fan, pic, reps, twists, norm_K, anticanonical_exponents(fan))


def class_tuples(field: QuadField, r: int):
    """All r-tuples of class representative indices, lexicographic."""
    return list(product(range(field.class_number), repeat=r))


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class TorsorPoint:
    coords: tuple
    ideal_coords: tuple[Ideal, ...]
    height: Fraction
    coprime: bool


def height_sup(ctx: TwistContext, coords) -> Fraction:
    """Anticanonical height of a twisted integral torsor point."""
    disc = ctx.field.disc
    norms = [Fraction(abs_inf(disc, x)) for x in coords]
    if any(n == 0 for n in norms):
        raise ValueError("a torsor point on the open torus has no zero coordinate")
    best = max(math.prod(n**a for n, a in zip(norms, row)) for row in ctx.exponents)
    return best / ctx.norm_K


def height_by_factors(ctx: TwistContext, coords) -> Fraction:
    """Same height, evaluated as max over cones of the product of per-ray ratios."""
    disc = ctx.field.disc
    ratios = [Fraction(abs_inf(disc, x)) / J.norm() for x, J in zip(coords, ctx.twist_ideals)]
    best = Fraction(0)
    for row in ctx.exponents:
        v = Fraction(1)
        for q, a, J in zip(ratios, row, ctx.twist_ideals):
            v *= (q * J.norm()) ** a
        best = max(best, v)
    return best / ctx.norm_K


def ideal_coords(ctx: TwistContext, coords) -> tuple[Ideal, ...]:
    disc = ctx.field.disc
    return tuple(Ideal.generated_by(disc, x) * J.inverse() for x, J in zip(coords, ctx.twist_ideals))


def is_coprime(ctx: TwistContext, ideals) -> bool:
    """sum over maximal cones of prod_{rho not in sigma} I_rho equals O_K."""
    fan = ctx.fan
    unit = ctx.field.unit_ideal()
    acc = None
    for cone in fan.max_cones:
        prod_ = unit
        for i, I in enumerate(ideals):
            if i not in cone:
                prod_ = prod_ * I
        acc = prod_ if acc is None else acc + prod_
        if acc.is_unit():
            return True
    return bool(acc is not None and acc.is_unit())


def make_point(ctx: TwistContext, coords) -> TorsorPoint:
    ids = ideal_coords(ctx, coords)
    return TorsorPoint(tuple(coords), ids, height_sup(ctx, coords), is_coprime(ctx, ids))


def units(field: QuadField) -> list:
    return list(enumerate_disc(field.unit_ideal(), 1))


def unit_action(ctx: TwistContext, us, coords) -> tuple:
    """Rescale x_rho by prod_i u_i^{class(D_rho)_i}."""
    disc = ctx.field.disc
    out = []
    for x, cls in zip(coords, ctx.pic.ray_classes()):
        y = x
        for u, e in zip(us, cls):
            base = u if e >= 0 else conj(disc, u)
            for _ in range(abs(e)):
                y = mul(disc, y, base)
        out.append(y)
    return tuple(out)


# ---------------------------------------------------------------------------
# enumeration engine


def iroot(n: int, k: int) -> int:
    """floor(n^(1/k)) for integers n, with 0 for n <= 0."""
    if n <= 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    try:
        r = round(n ** (1.0 / k))
    except OverflowError:
        r = 1 << (n.bit_length() // k + 1)
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


class _RayLattice:
    """Points of one ray's lattice with lazily computed prime supports."""

    __slots__ = ("field", "gens", "jnorm", "pl", "supports")

    def __init__(self, field: QuadField, lattice: Ideal, twist: Ideal | None):
        self.pl = PointList(lattice)
        self.field = field
        self.supports: list = []
        if twist is not None:
            # x in J = J_int/den; the ideal coordinate is y * J_int^{-1}
            jint = Ideal(twist.a, twist.b, twist.c, 1, twist.disc)
            self.gens = tuple(conj(field.disc, g) for g in jint.integral_basis())
            self.jnorm = jint.a * jint.c

    def support(self, idx: int) -> frozenset:
        sup = self.supports
        while len(sup) <= idx:
            sup.append(None)
        s = sup[idx]
        if s is None:
            s = sup[idx] = _element_support(self.field, self.pl.points[idx], self.gens, self.jnorm)
        return s


def _element_support(field: QuadField, y, gens, jnorm) -> frozenset:
    disc = field.disc
    q = norm_form(disc, *y) // jnorm
    if q == 1:
        return frozenset()
    out = []
    for p, _ in factor_int(q):
        primes = field.split_prime(p)
        if len(primes) == 1:
            out.append(primes[0].ideal)
            continue
        ids = [mul(disc, y, g) for g in gens]
        ids = [(s // jnorm, t // jnorm) for s, t in ids]
        for P in primes:
            if all(g in P.ideal for g in ids):
                out.append(P.ideal)
    return frozenset(out)


@dataclass
class EnumStats:
    nodes: int = 0
    leaves: int = 0

    def merge(self, other: EnumStats) -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves


class _Engine:
    """Counts points of prod_rho (L_rho minus 0) under the height bound(s).

    ``coprime`` restricts to points whose ideal coordinates meet the torsor
    coprimality condition (only meaningful for trivial d).  ``prune=False``
    replaces the product-bound lookahead by the plain per-ray box and checks
    every height inequality at the leaves.
    """

    def __init__(self, ctx: TwistContext, lattices, Bs, coprime=False, prune=True, cache=None):
        self.ctx = ctx
        self.Bs = [Fraction(B) for B in Bs]
        self.coprime = coprime
        self.prune = prune
        fan = ctx.fan
        N = fan.n_rays
        cache = {} if cache is None else cache
        self.lat = []
        for rho, L in enumerate(lattices):
            key = (L, ctx.twist_ideals[rho] if coprime else None)
            if key not in cache:
                cache[key] = _RayLattice(ctx.field, L, key[1])
            self.lat.append(cache[key])
        dens = [L.den for L in lattices]
        self.minu = [L.a * L.c for L in lattices]  # least numerator norm
        rows = [list(r) for r in ctx.exponents]
        if prune:
            rows.append([1] * N)  # product bound, implied by the cone rows
        self.rows = rows
        nk = ctx.norm_K
        scale = [math.prod(dn ** (2 * a) for dn, a in zip(dens, row)) for row in rows]
        self.caps = [[math.floor(nk * B * s) for s in scale] for B in self.Bs]
        self.cap_max = [max(c[i] for c in self.caps) for i in range(len(rows))]
        Nd = math.prod(L.norm() for L in lattices) / math.prod(J.norm() for J in ctx.twist_ideals)
        Bmax = max(self.Bs) if self.Bs else Fraction(0)
        # per-ray box from the product bound: |x_rho| <= N(d_rho J_rho) B / N(d)
        self.box = [math.floor(m * Bmax / Nd) if Nd > 0 else 0 for m in self.minu]
        self.order = self._ray_order()
        self._prepare()

    def _ray_order(self):
        N = self.ctx.fan.n_rays
        est = []
        for rho in range(N):
            bound = float(self.box[rho])
            for row, cap in zip(self.rows, self.cap_max):
                a = row[rho]
                if a:
                    rest = math.prod(self.minu[j] ** row[j] for j in range(N) if j != rho)
                    bound = min(bound, (cap / rest) ** (1.0 / a) if rest else math.inf)
            est.append((bound / self.minu[rho], rho))
        return [rho for _, rho in sorted(est)]

    def _prepare(self):
        order = self.order
        N = len(order)
        rows = self.rows
        nrow = len(rows)
        # lookahead[k][c] = prod_{j >= k} minu^a
        la = [[1] * nrow for _ in range(N + 1)]
        for k in range(N - 1, -1, -1):
            rho = order[k]
            la[k] = [la[k + 1][c] * self.minu[rho] ** rows[c][rho] for c in range(nrow)]
        self.la = la
        self.pos_rows = [[(c, rows[c][rho]) for c in range(nrow) if rows[c][rho]] for rho in order]
        self.zero_rows_last = [c for c in range(nrow) if rows[c][order[-1]] == 0]
        # primitive collections completed at each level, and those touching the last ray
        pcs = self.ctx.fan.primitive_collections if self.coprime else ()
        pos = {rho: k for k, rho in enumerate(order)}
        self.pc_done = [[] for _ in range(N)]
        self.pc_last = []
        for pc in pcs:
            last = max(pos[r] for r in pc)
            others = tuple(pos[r] for r in pc if pos[r] != last)
            if last == N - 1:
                self.pc_last.append(others)
            else:
                self.pc_done[last].append(tuple(pos[r] for r in pc))

    # -- main recursion ---------------------------------------------------
    def run(self, shard: int = 0, shards: int = 1):
        nB = len(self.Bs)
        self.counts = [0] * nB
        self.stats = EnumStats()
        if not self.Bs or max(self.Bs) <= 0:
            return self.counts
        if self.prune and any(self.la[0][c] > self.cap_max[c] for c in range(len(self.rows))):
            return self.counts
        N = len(self.order)
        self._idx = [0] * N
        self._u = [0] * N
        self._rec(0, [1] * len(self.rows), shard, shards)
        return self.counts

    def _level_cap(self, k, P):
        rho = self.order[k]
        cap = self.box[rho]
        if self.prune:
            la = self.la[k + 1]
            for c, a in self.pos_rows[k]:
                cap = min(cap, iroot(self.cap_max[c] // (P[c] * la[c]), a))
        return cap

    def _rec(self, k, P, shard, shards):
        N = len(self.order)
        if k == N - 1:
            self._leaf(P)
            return
        self.stats.nodes += 1
        lat = self.lat[self.order[k]]
        cap = self._level_cap(k, P)
        n = lat.pl.count(cap)
        norms = lat.pl.norms
        pos_rows = self.pos_rows[k]
        done = self.pc_done[k]
        for idx in range(n):
            if k == 0 and shards > 1 and idx % shards != shard:
                continue
            u = norms[idx]
            P2 = list(P)
            for c, a in pos_rows:
                P2[c] *= u**a
            self._idx[k] = idx
            self._u[k] = u
            if done and not self._pcs_ok(k, idx, done):
                continue
            self._rec(k + 1, P2, shard, shards)

    def _support(self, k, idx):
        return self.lat[self.order[k]].support(idx)

    def _pcs_ok(self, k, idx, done):
        for pc in done:
            common = None
            for j in pc:
                s = self._support(j, self._idx[j] if j != k else idx)
                common = s if common is None else common & s
                if not common:
                    break
            if common:
                return False
        return True

    def _thresholds(self, P):
        """Largest admissible numerator norm of the last coordinate, per B."""
        k = len(self.order) - 1
        rho = self.order[k]
        out = []
        for caps in self.caps:
            if any(P[c] > caps[c] for c in self.zero_rows_last):
                out.append(0)
                continue
            t = self.box[rho] if not self.prune else None
            for c, a in self.pos_rows[k]:
                v = iroot(caps[c] // P[c], a)
                t = v if t is None else min(t, v)
            out.append(t)
        return out

    def _leaf(self, P):
        self.stats.leaves += 1
        k = len(self.order) - 1
        lat = self.lat[self.order[k]]
        if not self.prune:
            self._leaf_filtered(P, lat)
            return
        T = self._thresholds(P)
        guards = []
        for others in self.pc_last:
            common = None
            for j in others:
                s = self._support(j, self._idx[j])
                common = s if common is None else common & s
                if not common:
                    break
            if common:
                guards.append(common)
        counts = self.counts
        if not guards:
            for j, t in enumerate(T):
                counts[j] += lat.pl.count(t)
            return
        tmax = max(T)
        n = lat.pl.count(tmax)
        norms = lat.pl.norms
        passing = []
        for idx in range(n):
            s = lat.support(idx)
            if s and any(s & g for g in guards):
                continue
            passing.append(norms[idx])
        for j, t in enumerate(T):
            counts[j] += bisect_right(passing, t)

    def _leaf_filtered(self, P, lat):
        k = len(self.order) - 1
        rho = self.order[k]
        n = lat.pl.count(self.box[rho])
        norms = lat.pl.norms
        for idx in range(n):
            u = norms[idx]
            self._idx[k] = idx
            last = [others + (k,) for others in self.pc_last]
            if self.coprime and last and not self._pcs_ok(k, idx, last):
                continue
            for j, caps in enumerate(self.caps):
                if all(P[c] * u ** self.rows[c][rho] <= caps[c] for c in range(len(self.rows))):
                    self.counts[j] += 1

    # -- streaming ----------------------------------------------------------
    def points(self):
        """Yield coordinate tuples (field elements) with height <= max(B)."""
        Bmax = max(self.Bs)
        N = len(self.order)
        lat_by_level = [self.lat[rho] for rho in self.order]
        chosen = [None] * N

        def rec(k, P):
            if k == N:
                yield tuple(chosen)
                return
            cap = self._level_cap(k, P) if k < N - 1 else self._thresholds(P)[-1]
            lat = lat_by_level[k]
            n = lat.pl.count(cap)
            for idx in range(n):
                u = lat.pl.norms[idx]
                P2 = list(P)
                for c, a in self.pos_rows[k]:
                    P2[c] *= u**a
                self._idx[k] = idx
                chosen[k] = idx
                if self.coprime:
                    done = self.pc_done[k] if k < N - 1 else [o + (k,) for o in self.pc_last]
                    if done and not self._pcs_ok(k, idx, done):
                        continue
                yield from rec(k + 1, P2)

        if self.prune and any(self.la[0][c] > self.cap_max[c] for c in range(len(self.rows))):
            return
        self._idx = [0] * N
        for idxs in rec(0, [1] * len(self.rows)):
            coords = [None] * N
            for k, rho in enumerate(self.order):
                L = self.lat[rho]
                s, t = L.pl.points[idxs[k]]
                den = self._dens[rho]
                coords[rho] = (s, t) if den == 1 else (Fraction(s, den), Fraction(t, den))
            x = tuple(coords)
            if height_sup(self.ctx, x) <= Bmax:
                yield x


def _engine(ctx, d, Bs, coprime, prune, cache=None):
    lattices = [J if dd is None else dd * J for dd, J in zip(d, ctx.twist_ideals)]
    eng = _Engine(ctx, lattices, Bs, coprime=coprime, prune=prune, cache=cache)
    eng._dens = [L.den for L in lattices]
    return eng


def enumerate_A(ctx: TwistContext, d, B, prune: bool = True):
    """#A_{abar,d}(B) for one bound (or a list of bounds)."""
    Bs = list(B) if isinstance(B, (list, tuple)) else [B]
    d = tuple(d) if d is not None else (None,) * ctx.fan.n_rays
    res = _count_A(ctx, d, Bs, prune)
    return res if isinstance(B, (list, tuple)) else res[0]


def _count_A(ctx, d, Bs, prune, cache=None):
    Nd = math.prod((dd.norm() for dd in d if dd is not None), start=Fraction(1))
    live = [B for B in Bs if Fraction(B) >= 1 and Nd <= Fraction(B)]
    if not live:
        return [0] * len(Bs)
    eng = _engine(ctx, d, live, False, prune, cache)
    counts = dict(zip(live, eng.run()))
    return [counts.get(B, 0) for B in Bs]


def enumerate_C(ctx: TwistContext, B, prune: bool = True, shard: int = 0, shards: int = 1):
    """#C_abar(B) for one bound (or a list of bounds)."""
    Bs = list(B) if isinstance(B, (list, tuple)) else [B]
    res, _ = _count_C(ctx, Bs, prune, shard, shards)
    return res if isinstance(B, (list, tuple)) else res[0]


def _count_C(ctx, Bs, prune, shard=0, shards=1, cache=None):
    live = [B for B in Bs if Fraction(B) >= 1]
    if not live:
        return [0] * len(Bs), EnumStats()
    eng = _engine(ctx, (None,) * ctx.fan.n_rays, live, True, prune, cache)
    counts = dict(zip(live, eng.run(shard, shards)))
    return [counts.get(B, 0) for B in Bs], eng.stats


def torsor_points(ctx: TwistContext, B, coprime_only: bool = True):
    """Stream TorsorPoint objects of height <= B (opt-in; memory grows with B)."""
    eng = _engine(ctx, (None,) * ctx.fan.n_rays, [B], coprime_only, True)
    for coords in eng.points():
        yield make_point(ctx, coords)


# ---------------------------------------------------------------------------
# N(B)


@dataclass
class CountReport:
    fan_name: str
    D: int
    B_values: list
    per_class: dict  # class tuple -> list of #C counts per B
    N_direct: list
    N_moebius: list | None = None
    seconds: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def class_sums(self) -> list[int]:
        return [sum(v[j] for v in self.per_class.values()) for j in range(len(self.B_values))]

    def per_class_string(self, j: int) -> str:
        return ";".join(f"{'.'.join(map(str, k))}:{v[j]}" for k, v in sorted(self.per_class.items()))


def _require_hypotheses(fan: Fan):
    from .fan import validate_fan

    rep = validate_fan(fan)
    if not rep.ok:
        raise HypothesisError("fan invalid: " + "; ".join(rep.reasons[:3]))
    if not check_globally_generated(fan):
        raise HypothesisError("anticanonical sheaf not globally generated (check_globally_generated is false)")


def _shard_job(args):
    fan, D, reps, Bs, prune, shard, shards = args
    field_ = make_field(D)
    ctx = make_context(fan, field_, reps)
    counts, stats = _count_C(ctx, Bs, prune, shard, shards)
    return reps, counts, stats


def count_points(
    fan: Fan, field: QuadField, Bs, shards: int = 1, prune: bool = True, check: bool = True
) -> CountReport:
    """N(B) = omega^-r sum_abar #C_abar(B) for every B in Bs."""
    if check:
        _require_hypotheses(fan)
    Bs = [Fraction(B) if not isinstance(B, int) else B for B in Bs]
    pic = picard_basis(fan)
    r = pic.rank
    t0 = time.perf_counter()
    per_class: dict = {}
    stats = EnumStats()
    tuples = class_tuples(field, r)
    if shards > 1:
        jobs = [(fan, field.D, reps, Bs, prune, s, shards) for reps in tuples for s in range(shards)]
        with ProcessPoolExecutor(max_workers=shards) as pool:
            results = list(pool.map(_shard_job, jobs))
        for reps, counts, st in results:
            acc = per_class.setdefault(reps, [0] * len(Bs))
            for j, c in enumerate(counts):
                acc[j] += c
            stats.merge(st)
    else:
        for reps in tuples:
            ctx = make_context(fan, field, reps, pic)
            counts, st = _count_C(ctx, Bs, prune)
            per_class[reps] = counts
            stats.merge(st)
    elapsed = time.perf_counter() - t0
    w = field.omega**r
    totals = []
    for j in range(len(Bs)):
        s = sum(v[j] for v in per_class.values())
        if s % w:
            raise AssertionError(f"class sum {s} not divisible by omega^r = {w}")
        totals.append(s // w)
    return CountReport(
        fan.name,
        field.D,
        list(Bs),
        per_class,
        totals,
        seconds=[elapsed] * len(Bs),
        stats={"nodes": stats.nodes, "leaves": stats.leaves},
    )


def count_class_moebius(ctx: TwistContext, B, prune: bool = True) -> int:
    """#C_abar(B) = sum_d mu(d) #A_{abar,d}(B)."""
    total = 0
    cache: dict = {}
    for d, m in stream_mu_support(ctx.fan, ctx.field, B):
        total += m * _count_A(ctx, d, [B], prune, cache)[0]
    return total


def count_points_moebius(fan: Fan, field: QuadField, B, check: bool = True) -> int:
    if check:
        _require_hypotheses(fan)
    pic = picard_basis(fan)
    total = 0
    for reps in class_tuples(field, pic.rank):
        total += count_class_moebius(make_context(fan, field, reps, pic), B)
    w = field.omega**pic.rank
    if total % w:
        raise AssertionError(f"Moebius class sum {total} not divisible by omega^r = {w}")
    return total // w


# ---------------------------------------------------------------------------
# independent projective-space oracles


def _box_elements(field: QuadField, M):
    """All nonzero integers of K with |x|_inf <= M, by a plain coordinate box."""
    d = field.disc
    M = Fraction(M)
    tmax = math.isqrt(math.floor(4 * M / d)) + 1
    out = []
    for t in range(-tmax, tmax + 1):
        centre = d * t / 2
        r = math.isqrt(math.floor(M)) + 1
        for s in range(math.floor(centre) - r - 1, math.ceil(centre) + r + 2):
            if (s, t) != (0, 0) and norm_form(d, s, t) <= M:
                out.append((s, t))
    return out


def projective_oracle(field: QuadField, n: int, B) -> int:
    """#P^n(K) points with all coordinates nonzero and anticanonical height <= B.

    For each class representative a the points are represented by tuples in
    a^{n+1} whose coordinates generate exactly a; such a representative is
    unique up to the omega units.
    """
    B = Fraction(B)
    if B < 1:
        return 0
    total = 0
    disc = field.disc
    for a in field.class_reps:
        Na = a.norm()
        # max |x_i|^{n+1} <= B N(a)^{n+1}
        M = Na * _frac_root_floor(B, n + 1)
        elems = [x for x in _box_elements(field, M) if x in a]
        elems_n = {x: norm_form(disc, *x) for x in elems}
        limit = B * Na ** (n + 1)
        for tup in product(elems, repeat=n + 1):
            m = max(elems_n[x] for x in tup)
            if m ** (n + 1) > limit:
                continue
            content = Ideal.generated_by(disc, *tup)
            if content == a:
                total += 1
    if total % field.omega:
        raise AssertionError("unit orbits did not partition the representatives")
    return total // field.omega


def _frac_root_floor(B: Fraction, k: int) -> int:
    """An integer M with M >= B^(1/k) (upper bound for the box)."""
    return iroot(math.ceil(B), k) + 1


def projective_points_set(field: QuadField, n: int, B) -> set:
    """Points of P^n(K) with all coordinates nonzero and height <= B, as a set.

    Each point is normalised to affine coordinates (x_1/x_0, ..., x_n/x_0).
    """
    B = Fraction(B)
    disc = field.disc
    out = set()
    if B < 1:
        return out
    Mmax = max(a.norm() for a in field.class_reps) * _frac_root_floor(B, n + 1)
    elems = _box_elements(field, Mmax)
    norms = {x: norm_form(disc, *x) for x in elems}
    from .quadfield import divide

    for tup in product(elems, repeat=n + 1):
        content = Ideal.generated_by(disc, *tup)
        h = Fraction(max(norms[x] for x in tup)) ** (n + 1) / content.norm() ** (n + 1)
        if h <= B:
            x0 = tup[0]
            out.add(tuple(divide(disc, x, x0) for x in tup[1:]))
    return out


__all__ = [
    "CountReport",
    "HypothesisError",
    "TorsorPoint",
    "TwistContext",
    "class_tuples",
    "count_class_moebius",
    "count_points",
    "count_points_moebius",
    "enumerate_A",
    "enumerate_C",
    "height_by_factors",
    "height_sup",
    "ideal_coords",
    "iroot",
    "is_coprime",
    "make_context",
    "make_point",
    "projective_oracle",
    "projective_points_set",
    "torsor_points",
    "unit_action",
    "units",
]
