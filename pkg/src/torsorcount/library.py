"""Built-in fans satisfying the hypotheses of the counting theorem."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations, product

from .fan import Fan, check_globally_generated, f_invariant


@dataclass(frozen=True)
class FanLibraryEntry:
    name: str
    fan: Fan
    notes: dict


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = list(combinations(range(n + 1), n))
    return Fan(n, tuple(rays), tuple(cones), f"P{n}")


def product_of_lines(k: int) -> Fan:
    """(P^1)^k with rays +e_i (index 2i) and -e_i (index 2i+1)."""
    rays = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        rays.append(tuple(e))
        rays.append(tuple(-v for v in e))
    cones = [tuple(2 * i + s for i, s in enumerate(signs)) for signs in product((0, 1), repeat=k)]
    return Fan(k, tuple(rays), tuple(cones), "x".join(["P1"] * k))


def hirzebruch(a: int) -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, a), (0, -1)), ((0, 1), (1, 2), (2, 3), (3, 0)), f"F{a}")


def del_pezzo_six() -> Fan:
    """P^2 blown up in the three coordinate points (hexagonal fan)."""
    rays = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
    cones = tuple((i, (i + 1) % 6) for i in range(6))
    return Fan(2, rays, cones, "dP6")


_BUILDERS = {
    "P1": lambda: projective_space(1),
    "P2": lambda: projective_space(2),
    "P3": lambda: projective_space(3),
    "P1xP1": lambda: product_of_lines(2),
    "P1xP1xP1": lambda: product_of_lines(3),
    "F1": lambda: hirzebruch(1),
    "dP6": del_pezzo_six,
}


@cache
def library() -> tuple[FanLibraryEntry, ...]:
    out = []
    for name, build in _BUILDERS.items():
        fan = build()
        notes = {
            "r": fan.picard_rank,
            "f": f_invariant(fan),
            "max_cones": len(fan.max_cones),
            "globally_generated": check_globally_generated(fan),
        }
        out.append(FanLibraryEntry(name, fan, notes))
    return tuple(out)


def get_fan(name: str) -> Fan:
    for entry in library():
        if entry.name == name:
            return entry.fan
    raise KeyError(f"unknown library fan {name!r}; choose from {', '.join(_BUILDERS)}")
