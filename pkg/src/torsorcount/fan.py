"""Fans of smooth complete split toric varieties and their divisor combinatorics."""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .intlinalg import det, hermite_normal_form_rows, matmul, rank, smith_normal_form, solve_rational, transpose


class FanError(ValueError):
    """Malformed fan data; the message names the offending ray or cone."""


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        rays = tuple(tuple(int(v) for v in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.dim < 1:
            raise FanError(f"dim must be positive, got {self.dim}")
        seen = {}
        for i, r in enumerate(rays):
            if len(r) != self.dim:
                raise FanError(f"ray {i} {list(r)} has length {len(r)}, expected {self.dim}")
            if math.gcd(*r) != 1:
                raise FanError(f"ray {i} {list(r)} is not primitive")
            if r in seen:
                raise FanError(f"ray {i} duplicates ray {seen[r]}")
            seen[r] = i
        if not cones:
            raise FanError("fan has no maximal cones")
        for k, c in enumerate(cones):
            if len(set(c)) != len(c):
                raise FanError(f"cone {k} {list(c)} repeats a ray index")
            for i in c:
                if not 0 <= i < len(rays):
                    raise FanError(f"cone {k} references unknown ray {i}")
            if len(c) > self.dim or rank([rays[i] for i in c]) < len(c):
                raise FanError(f"cone {k} {list(c)} has linearly dependent generators")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def picard_rank(self) -> int:
        return self.n_rays - self.dim

    @cached_property
    def cone_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in c) for c in self.max_cones)

    def is_face(self, subset) -> bool:
        """True iff the rays in ``subset`` all lie in one maximal cone."""
        mask = subset if isinstance(subset, int) else sum(1 << i for i in subset)
        return any(mask & ~m == 0 for m in self.cone_masks)

    @cached_property
    def primitive_collections(self) -> tuple[tuple[int, ...], ...]:
        """Minimal ray subsets contained in no cone."""
        out = []
        n = self.n_rays
        for k in range(1, n + 1):
            for S in combinations(range(n), k):
                mask = sum(1 << i for i in S)
                if self.is_face(mask):
                    continue
                if any(all(i in S for i in P) for P in out):
                    continue
                out.append(S)
        return tuple(out)

    def to_dict(self) -> dict:
        d = {"dim": self.dim, "rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}
        if self.name:
            d["name"] = self.name
        return d

    def fingerprint(self) -> str:
        """Short stable digest of the ray and cone data (the name is ignored)."""
        blob = json.dumps({"rays": self.rays, "max_cones": self.max_cones}, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


_FAN_KEYS = {"dim", "rays", "max_cones", "name"}


def fan_from_dict(data: dict) -> Fan:
    if not isinstance(data, dict):
        raise FanError("fan JSON must be an object")
    unknown = set(data) - _FAN_KEYS
    if unknown:
        raise FanError(f"unknown field(s) {sorted(unknown)}")
    missing = {"dim", "rays", "max_cones"} - set(data)
    if missing:
        raise FanError(f"missing field(s) {sorted(missing)}")
    dim, rays, cones = data["dim"], data["rays"], data["max_cones"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise FanError("dim must be an integer")
    for name, rows in (("rays", rays), ("max_cones", cones)):
        if not isinstance(rows, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in r) for r in rows
        ):
            raise FanError(f"{name} must be an array of integer arrays")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise FanError("name must be a string")
    return Fan(dim, tuple(map(tuple, rays)), tuple(map(tuple, cones)), name)


def load_fan(path) -> Fan:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FanError(f"invalid JSON in {path}: {exc.msg}") from None
    return fan_from_dict(data)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    smooth: bool
    complete: bool
    simplicial: bool
    reasons: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete and self.simplicial

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "complete": self.complete,
            "simplicial": self.simplicial,
            "reasons": list(self.reasons),
        }


def _cone_matrix(fan: Fan, cone) -> list[list[int]]:
    return [list(fan.rays[i]) for i in cone]


def validate_fan(fan: Fan, directions: int = 1000, seed: int = 0) -> ValidationReport:
    """Check smoothness and completeness of a simplicial fan.

    Completeness is certified by the wall condition (each codimension-one face
    of a maximal cone lies in exactly two maximal cones, adjacency graph
    connected) and confirmed by testing ``directions`` random integer
    directions for membership in some maximal cone.
    """
    d = fan.dim
    reasons: list[str] = []
    smooth = True
    full = True
    for k, c in enumerate(fan.max_cones):
        if len(c) != d:
            full = False
            smooth = False
            reasons.append(f"cone {k} {list(c)} is not full-dimensional")
            continue
        v = det(_cone_matrix(fan, c))
        if abs(v) != 1:
            smooth = False
            reasons.append(f"not smooth: cone {k} {list(c)} has |det| = {abs(v)}")

    complete = full
    if full:
        walls: dict[tuple, list[int]] = {}
        for k, c in enumerate(fan.max_cones):
            for w in combinations(c, d - 1):
                walls.setdefault(w, []).append(k)
        for w, owners in sorted(walls.items()):
            if len(owners) != 2:
                complete = False
                reasons.append(f"incomplete: wall (rays {list(w)}) lies in {len(owners)} maximal cone(s)")
        # connectivity of the cone adjacency graph
        adj = {k: set() for k in range(len(fan.max_cones))}
        for owners in walls.values():
            for a, b in combinations(owners, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(fan.max_cones):
            complete = False
            reasons.append("incomplete: maximal cones do not form a connected wall graph")

        inverses = []
        for c in fan.max_cones:
            A = transpose(_cone_matrix(fan, c))
            cols = []
            for j in range(d):
                e = [int(i == j) for i in range(d)]
                cols.append(solve_rational(A, e))
            inverses.append(transpose(cols) if all(col is not None for col in cols) else None)
        rng = random.Random(seed)
        missed = 0
        for _ in range(directions):
            v = [rng.randint(-(10**6), 10**6) for _ in range(d)]
            if not any(v):
                continue
            inside = False
            for inv in inverses:
                if inv is None:
                    continue
                lam = [sum(row[j] * v[j] for j in range(d)) for row in inv]
                if all(x >= 0 for x in lam):
                    inside = True
                    break
            if not inside:
                missed += 1
                if missed <= 3:
                    reasons.append(f"incomplete: direction {v} lies in no maximal cone")
        if missed:
            complete = False
    return ValidationReport(smooth=smooth, complete=complete, simplicial=True, reasons=reasons)


# ---------------------------------------------------------------------------
# Picard group


@dataclass(frozen=True)
class PicardData:
    rank: int
    class_matrix: tuple[tuple[int, ...], ...]  # r x N
    section: tuple[tuple[int, ...], ...]  # N x r, class_matrix @ section = I

    def ray_classes(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.class_matrix) for j in range(len(self.class_matrix[0]))]

    def class_of(self, coeffs) -> tuple[int, ...]:
        return tuple(sum(c * a for c, a in zip(row, coeffs)) for row in self.class_matrix)

    def anticanonical_class(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.class_matrix)


class PicardError(RuntimeError):
    pass


def picard_basis(fan: Fan) -> PicardData:
    """Canonical basis of Pic(X) = Z^N / M.

    The class matrix is the row Hermite normal form of the kernel lattice of
    the d x N ray matrix, obtained from a Smith normal form of the N x d
    matrix whose rows are the rays.
    """
    N, d = fan.n_rays, fan.dim
    rows = [list(r) for r in fan.rays]
    D, U, _ = smith_normal_form(rows)
    diag = [D[i][i] for i in range(min(N, d))]
    if any(abs(x) != 1 for x in diag):
        raise PicardError(f"cokernel has torsion (elementary divisors {diag})")
    C = hermite_normal_form_rows([U[i] for i in range(d, N)])
    # section: right inverse of C from its own Smith form
    Dc, Uc, Vc = smith_normal_form(C)
    r = N - d
    if any(Dc[i][i] != 1 for i in range(r)):
        raise PicardError("class matrix is not surjective")
    S = matmul([row[:r] for row in Vc], Uc)
    check = matmul(C, S)
    assert check == [[int(i == j) for j in range(r)] for i in range(r)]
    assert all(v == 0 for row in matmul(C, rows) for v in row)
    return PicardData(r, tuple(map(tuple, C)), tuple(map(tuple, S)))


# ---------------------------------------------------------------------------
# local characters and twisted divisors


@dataclass(frozen=True)
class SigmaTwist:
    cone: int
    character: tuple[int, ...]
    twisted_coeffs: tuple[int, ...]
    exponents: tuple[int, ...] | None = None  # a_{sigma,rho} when D = -K


def sigma_twist(fan: Fan, pic: PicardData | None, sigma: int, D) -> SigmaTwist:
    """Character m with m(n_rho) = D_rho on the rays of ``sigma`` and D(sigma).

    ``D(sigma) = D - sum_rho m(n_rho) D_rho``; when D is the anticanonical
    divisor the exponents ``a_{sigma,rho} = 1 - m(n_rho)`` are also returned.
    """
    if not isinstance(sigma, int) or not 0 <= sigma < len(fan.max_cones):
        raise FanError(f"{sigma!r} is not a maximal cone index")
    cone = fan.max_cones[sigma]
    if len(cone) != fan.dim:
        raise FanError(f"cone {sigma} is not full-dimensional")
    D = [int(v) for v in D]
    if len(D) != fan.n_rays:
        raise FanError(f"divisor has {len(D)} coefficients, expected {fan.n_rays}")
    m = solve_rational(_cone_matrix(fan, cone), [D[i] for i in cone])
    if m is None or any(x.denominator != 1 for x in m):
        raise FanError(f"cone {sigma} is not unimodular")
    m = tuple(int(x) for x in m)
    values = [sum(a * b for a, b in zip(m, r)) for r in fan.rays]
    twisted = tuple(a - v for a, v in zip(D, values))
    exps = twisted if all(a == 1 for a in D) else None
    return SigmaTwist(sigma, m, twisted, exps)


def anticanonical_exponents(fan: Fan) -> tuple[tuple[int, ...], ...]:
    """Matrix of a_{sigma,rho} = 1 - m_{sigma,-K}(n_rho), one row per maximal cone."""
    ones = [1] * fan.n_rays
    return tuple(sigma_twist(fan, None, k, ones).exponents for k in range(len(fan.max_cones)))


def global_generation_witness(fan: Fan):
    """``(sigma, rho, a)`` minimising a_{sigma,rho}."""
    a = anticanonical_exponents(fan)
    return min(((k, j, a[k][j]) for k in range(len(a)) for j in range(fan.n_rays)), key=lambda t: (t[2], t[0], t[1]))


def check_globally_generated(fan: Fan, pic: PicardData | None = None) -> bool:
    return global_generation_witness(fan)[2] >= 0


def f_invariant(fan: Fan) -> int:
    """Smallest number of rays not all contained in one cone."""
    return min(len(S) for S in fan.primitive_collections)
