"""Lattice-ordered abelian groups: Z^n with the product or lexicographic order,
and the totally ordered chain Z ⊂ Z/l1 ⊂ Z/l2 ⊂ ... stored at its finest level.

Group points are plain tuples of ints. Chain points are 1-tuples holding the
numerator over the finest level.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

Point = tuple

# Coordinates are bounded like signed 64-bit machine integers.
COORD_LIMIT = 2**63


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class OrderSpec:
    kind: str
    rank: int = 1
    levels: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("product", "lex", "chain"):
            raise ValueError(f"unknown order type {self.kind!r}")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if self.kind == "chain":
            levels = tuple(int(v) for v in self.levels)
            object.__setattr__(self, "levels", levels)
            if self.rank != 1:
                raise ValueError("a chain has rank 1")
            if not levels or levels[0] != 1:
                raise ValueError("chain levels must start at 1")
            for a, b in zip(levels, levels[1:]):
                if b <= a or b % a:
                    raise ValueError(f"chain level {b} is not a proper multiple of {a}")
        elif self.levels:
            raise ValueError("levels only apply to chain orders")

    @classmethod
    def product(cls, rank: int) -> "OrderSpec":
        return cls("product", rank)

    @classmethod
    def lex(cls, rank: int) -> "OrderSpec":
        return cls("lex", rank)

    @classmethod
    def chain(cls, levels: Sequence[int]) -> "OrderSpec":
        return cls("chain", 1, tuple(levels))

    @property
    def is_total(self) -> bool:
        return self.kind != "product"

    @property
    def finest(self) -> int:
        """Denominator of the finest chain level (1 for the other orders)."""
        return self.levels[-1] if self.kind == "chain" else 1

    def zero(self) -> Point:
        return (0,) * self.rank

    def unit(self, i: int) -> Point:
        return tuple(int(j == i) for j in range(self.rank))


def check_point(g: Sequence[int], spec: OrderSpec) -> Point:
    g = tuple(g)
    if len(g) != spec.rank:
        raise DimensionError(f"point {g} has dimension {len(g)}, order has rank {spec.rank}")
    for c in g:
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"coordinate {c!r} is not an integer")
        if not -COORD_LIMIT < c < COORD_LIMIT:
            raise OverflowError(f"coordinate {c} exceeds the 64-bit range")
    return g


def _pair(g, h, spec):
    return check_point(g, spec), check_point(h, spec)


def add(g: Point, h: Point, spec: OrderSpec) -> Point:
    g, h = _pair(g, h, spec)
    return check_point(tuple(a + b for a, b in zip(g, h)), spec)


def sub(g: Point, h: Point, spec: OrderSpec) -> Point:
    g, h = _pair(g, h, spec)
    return check_point(tuple(a - b for a, b in zip(g, h)), spec)


def neg(g: Point, spec: OrderSpec) -> Point:
    return tuple(-a for a in check_point(g, spec))


def scale(k: int, g: Point, spec: OrderSpec) -> Point:
    return check_point(tuple(k * a for a in g), spec)


def leq(g: Point, h: Point, spec: OrderSpec) -> bool:
    g, h = _pair(g, h, spec)
    if spec.kind == "product":
        return all(a <= b for a, b in zip(g, h))
    return g <= h  # lexicographic tuple order; rank 1 for chains


def lt(g: Point, h: Point, spec: OrderSpec) -> bool:
    return g != h and leq(g, h, spec)


def join(g: Point, h: Point, spec: OrderSpec) -> Point:
    g, h = _pair(g, h, spec)
    if spec.kind == "product":
        return tuple(max(a, b) for a, b in zip(g, h))
    return max(g, h)


def meet(g: Point, h: Point, spec: OrderSpec) -> Point:
    g, h = _pair(g, h, spec)
    if spec.kind == "product":
        return tuple(min(a, b) for a, b in zip(g, h))
    return min(g, h)


def join_all(points: Iterable[Point], spec: OrderSpec) -> Point:
    pts = list(points)
    if not pts:
        raise ValueError("join of an empty family")
    out = pts[0]
    for p in pts[1:]:
        out = join(out, p, spec)
    return out


def meet_all(points: Iterable[Point], spec: OrderSpec) -> Point:
    pts = list(points)
    if not pts:
        raise ValueError("meet of an empty family")
    out = pts[0]
    for p in pts[1:]:
        out = meet(out, p, spec)
    return out


def pos_part(g: Point, spec: OrderSpec) -> Point:
    return join(g, spec.zero(), spec)


def neg_part(g: Point, spec: OrderSpec) -> Point:
    """The positive element g_- with g = g_+ - g_-."""
    return pos_part(neg(g, spec), spec)


def is_positive(g: Point, spec: OrderSpec) -> bool:
    return leq(spec.zero(), g, spec)


def grid_closure(points: Iterable[Point], spec: OrderSpec) -> frozenset:
    """Smallest join-closed set containing ``points``."""
    out = {check_point(p, spec) for p in points}
    frontier = set(out)
    while frontier:
        new = set()
        for p in frontier:
            for q in out:
                r = join(p, q, spec)
                if r not in out:
                    new.add(r)
        out |= new
        frontier = new
    return frozenset(out)


def is_grid(points: Iterable[Point], spec: OrderSpec) -> bool:
    pts = set(points)
    return all(join(p, q, spec) in pts for p in pts for q in pts)


def translate(points: Iterable[Point], g: Point, spec: OrderSpec) -> frozenset:
    return frozenset(add(p, g, spec) for p in points)


def sorted_points(points: Iterable[Point]) -> list:
    return sorted(points)


def c_coefficients(
    grid: Iterable[Point],
    spec: OrderSpec,
    tie_break: Callable[[Point], object] | None = None,
) -> dict:
    """Integers c_g on a grid with sum_{h <= g} c_h = 1 for every g in the grid.

    Elements are peeled off minimal-first; among the current minimal elements
    the one with the least ``tie_break`` key goes next (coordinates by default).
    """
    remaining = set(check_point(p, spec) for p in grid)
    if not remaining:
        raise ValueError("inclusion-exclusion coefficients need a nonempty grid")
    key = tie_break or (lambda p: p)
    coeffs: dict = {}
    while remaining:
        minimal = [p for p in remaining if not any(lt(q, p, spec) for q in remaining)]
        g = min(minimal, key=key)
        coeffs[g] = 1 - sum(c for h, c in coeffs.items() if lt(h, g, spec))
        remaining.discard(g)
    return coeffs


inclusion_exclusion_coefficients = c_coefficients


def enum_box(lo: Point, hi: Point, spec: OrderSpec) -> list:
    """All points of the closed box [lo, hi], lexicographically ordered.

    For the lexicographic order the "box" is taken coordinatewise as well, since
    an order interval there is infinite.
    """
    lo, hi = _pair(lo, hi, spec)
    if any(a > b for a, b in zip(lo, hi)):
        raise ValueError(f"reversed box bounds {lo} .. {hi}")
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [tuple(p) for p in itertools.product(*ranges)]


def parse_point(text: str, spec: OrderSpec | None = None) -> Point:
    try:
        p = tuple(int(c) for c in text.strip().split(","))
    except ValueError:
        raise ValueError(f"cannot parse group point {text!r}") from None
    return check_point(p, spec) if spec is not None else p


def parse_grid(text: str, spec: OrderSpec | None = None) -> frozenset:
    """Parse ``"0,0;1,0;0,1"``. The result is not closed under joins."""
    parts = [s for s in text.split(";") if s.strip()]
    if not parts:
        raise ValueError("empty grid literal")
    return frozenset(parse_point(s, spec) for s in parts)


def format_point(p: Point) -> str:
    return ",".join(str(c) for c in p)


def format_grid(points: Iterable[Point]) -> str:
    return ";".join(format_point(p) for p in sorted(points))


def coeff_identity_holds(coeffs: Mapping[Point, int], spec: OrderSpec) -> bool:
    return all(
        sum(c for h, c in coeffs.items() if leq(h, g, spec)) == 1 for g in coeffs
    )
