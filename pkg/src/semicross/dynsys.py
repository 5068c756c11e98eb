"""Finite classical systems: commuting self-maps of X = {0, ..., n-1}.

The C*-side action is pullback, alpha_v(f) = f o phi^v, and every ideal of
C(X) is the set of functions vanishing on some subset of X. Ideals are stored
by that subset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import lattice as L
from .lattice import OrderSpec, Point
from .scalars import ZERO, Function

PointMap = tuple  # tuple[int, ...], 0-based images


class InvalidSystemError(ValueError):
    """The input does not describe a valid classical system."""


def compose(f: PointMap, g: PointMap) -> PointMap:
    """f o g."""
    return tuple(f[x] for x in g)


def identity_map(n: int) -> PointMap:
    return tuple(range(n))


def map_power(f: PointMap, k: int) -> PointMap:
    out = identity_map(len(f))
    base = f
    while k:
        if k & 1:
            out = compose(base, out)
        base = compose(base, base)
        k >>= 1
    return out


def periodicity(f: PointMap) -> tuple:
    """Least (index, period) with f^(index+period) = f^index."""
    seen = {}
    powers = []
    cur = identity_map(len(f))
    while cur not in seen:
        seen[cur] = len(powers)
        powers.append(cur)
        cur = compose(f, cur)
    c = seen[cur]
    return c, len(powers) - c


def reduce_exponent(k: int, index: int, period: int) -> int:
    if k < index:
        return k
    return index + (k - index) % period


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str
    witness: Optional[dict] = None


@dataclass(frozen=True)
class ClassicalSystem:
    """A finite set with commuting generator maps.

    Product order: one map per coordinate. Chain order: one map per level,
    coarsest first; the action is driven by the finest map and coarser maps
    must be its matching powers.
    """

    points: int
    order: OrderSpec
    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def build(cls, points: int, order: OrderSpec, generators: Sequence[Sequence[int]]):
        """Construct and raise :class:`InvalidSystemError` unless valid."""
        sys_ = cls(points, order, tuple(generators))
        report = validate_system(sys_)
        if not report.ok:
            raise InvalidSystemError(report.message)
        return sys_

    @classmethod
    def product(cls, *generators: Sequence[int]) -> "ClassicalSystem":
        n = len(generators[0]) if generators else 0
        return cls.build(n, OrderSpec.product(len(generators)), generators)

    @classmethod
    def chain(cls, levels: Sequence[int], generators: Sequence[Sequence[int]]):
        n = len(generators[0]) if generators else 0
        return cls.build(n, OrderSpec.chain(levels), generators)

    @property
    def rank(self) -> int:
        return self.order.rank

    @cached_property
    def base_maps(self) -> tuple:
        """One map per coordinate of the acting group (finest map for chains)."""
        if self.order.kind == "chain":
            return (self.generators[-1],)
        return self.generators

    @cached_property
    def periodicity_data(self) -> tuple:
        return tuple(periodicity(f) for f in self.base_maps)

    @cached_property
    def window(self) -> tuple:
        """Per-coordinate index + period: past it, powers of each map repeat."""
        return tuple(c + p for c, p in self.periodicity_data)

    @property
    def max_window(self) -> int:
        return max(self.window)

    def reduce(self, v: Point) -> Point:
        v = L.check_point(v, self.order)
        # acting orders all have rank-many free generators, so P is the orthant
        if any(c < 0 for c in v):
            raise ValueError(f"exponent {v} is not in the positive cone")
        return tuple(
            reduce_exponent(k, c, p) for k, (c, p) in zip(v, self.periodicity_data)
        )

    def power(self, v: Point) -> PointMap:
        """phi^v, with each coordinate exponent reduced by periodicity."""
        return self._power(self.reduce(v))

    @lru_cache(maxsize=None)
    def _power(self, reduced: Point) -> PointMap:
        out = identity_map(self.points)
        for f, k in zip(self.base_maps, reduced):
            out = compose(map_power(f, k), out)
        return out

    def __hash__(self):
        return hash((self.points, self.order, self.generators))


def validate_system(sys_: ClassicalSystem) -> ValidationReport:
    n, order, gens = sys_.points, sys_.order, sys_.generators
    if n < 1:
        return ValidationReport(False, "the point set is empty")
    if order.kind == "lex" and order.rank >= 2:
        return ValidationReport(
            False, "lexicographic order of rank >= 2 has no finitely generated cone to act by"
        )
    expected = len(order.levels) if order.kind == "chain" else order.rank
    if len(gens) != expected:
        return ValidationReport(False, f"expected {expected} generator maps, got {len(gens)}")
    for i, g in enumerate(gens):
        if len(g) != n:
            return ValidationReport(
                False, f"generator {i + 1} has {len(g)} images for {n} points",
                {"generator": i},
            )
        for x, y in enumerate(g):
            if not 0 <= y < n:
                return ValidationReport(
                    False, f"generator {i + 1} sends point {x + 1} out of range ({y + 1})",
                    {"generator": i, "point": x},
                )
    if order.kind == "chain":
        for i in range(len(gens) - 1):
            ratio = order.levels[i + 1] // order.levels[i]
            want = map_power(gens[i + 1], ratio)
            for x in range(n):
                if gens[i][x] != want[x]:
                    return ValidationReport(
                        False,
                        f"level {order.levels[i]} map is not the {ratio}-th power of the "
                        f"level {order.levels[i + 1]} map (first difference at point {x + 1})",
                        {"level": i, "point": x},
                    )
    else:
        for i, j in combinations(range(len(gens)), 2):
            a, b = gens[i], gens[j]
            for x in range(n):
                if a[b[x]] != b[a[x]]:
                    return ValidationReport(
                        False,
                        f"generators {i + 1} and {j + 1} do not commute at point {x + 1}: "
                        f"{a[b[x]] + 1} != {b[a[x]] + 1}",
                        {"pair": (i, j), "point": x},
                    )
    return ValidationReport(True, "valid classical system")


# -- functions and ideals --------------------------------------------------


def apply_exponent(sys_: ClassicalSystem, v: Point, f: Function) -> Function:
    """alpha_v(f) = f o phi^v."""
    if len(f) != sys_.points:
        raise ValueError(f"function of length {len(f)} on {sys_.points} points")
    m = sys_.power(v)
    return tuple(f[m[z]] for z in range(sys_.points))


def image_set(sys_: ClassicalSystem, v: Point) -> frozenset:
    return frozenset(sys_.power(v))


@dataclass(frozen=True)
class ZeroSetIdeal:
    """{f : f vanishes on zero_set} inside C(X), |X| = size."""

    size: int
    zero_set: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        zs = frozenset(self.zero_set)
        if any(not 0 <= z < self.size for z in zs):
            raise ValueError(f"zero set {sorted(zs)} leaves the point range")
        object.__setattr__(self, "zero_set", zs)

    @classmethod
    def zero(cls, n: int) -> "ZeroSetIdeal":
        return cls(n, frozenset(range(n)))

    @classmethod
    def full(cls, n: int) -> "ZeroSetIdeal":
        return cls(n, frozenset())

    @property
    def is_zero(self) -> bool:
        return len(self.zero_set) == self.size

    @property
    def is_full(self) -> bool:
        return not self.zero_set

    def contains_function(self, f: Function) -> bool:
        return all(not f[z] for z in self.zero_set)

    def representative(self, f: Function) -> Function:
        """Canonical representative of f modulo this ideal."""
        return tuple(f[z] if z in self.zero_set else ZERO for z in range(self.size))

    def __repr__(self):
        return f"ZeroSetIdeal({self.size}, {sorted(self.zero_set)})"


def kernel_ideal(sys_: ClassicalSystem, v: Point) -> ZeroSetIdeal:
    return ZeroSetIdeal(sys_.points, image_set(sys_, v))


def annihilator(ideal: ZeroSetIdeal) -> ZeroSetIdeal:
    return ZeroSetIdeal(ideal.size, frozenset(range(ideal.size)) - ideal.zero_set)


def preimage_ideal(sys_: ClassicalSystem, v: Point, ideal: ZeroSetIdeal) -> ZeroSetIdeal:
    """alpha_v^{-1}(I): f o phi^v vanishes on S iff f vanishes on phi^v(S)."""
    m = sys_.power(v)
    return ZeroSetIdeal(ideal.size, frozenset(m[z] for z in ideal.zero_set))


def _same_size(a: ZeroSetIdeal, b: ZeroSetIdeal) -> None:
    if a.size != b.size:
        raise ValueError(f"ideals over different spaces ({a.size} vs {b.size} points)")


def ideal_meet(a: ZeroSetIdeal, b: ZeroSetIdeal) -> ZeroSetIdeal:
    _same_size(a, b)
    return ZeroSetIdeal(a.size, a.zero_set | b.zero_set)


def ideal_sum(a: ZeroSetIdeal, b: ZeroSetIdeal) -> ZeroSetIdeal:
    _same_size(a, b)
    return ZeroSetIdeal(a.size, a.zero_set & b.zero_set)


def ideal_contains(a: ZeroSetIdeal, b: ZeroSetIdeal) -> bool:
    """True when b is a subset of a."""
    _same_size(a, b)
    return a.zero_set <= b.zero_set


def joint_kernel(sys_: ClassicalSystem) -> ZeroSetIdeal:
    """Intersection of the kernels of the generators."""
    out = ZeroSetIdeal.full(sys_.points)
    for i in range(len(sys_.base_maps)):
        out = ideal_meet(out, kernel_ideal(sys_, sys_.order.unit(i)))
    return out


# -- dynamical criteria ----------------------------------------------------


def forward_closure(sys_: ClassicalSystem, start: Iterable[int]) -> frozenset:
    seen = set(start)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for f in sys_.base_maps:
            y = f[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def is_invariant(sys_: ClassicalSystem, subset: Iterable[int]) -> bool:
    s = set(subset)
    return all(f[x] in s for f in sys_.base_maps for x in s)


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    witness: Optional[frozenset] = None


def is_minimal(sys_: ClassicalSystem) -> MinimalityReport:
    """Minimal iff every forward orbit closure is all of X.

    The witness is the smallest proper closure (ties broken by sorted points).
    """
    full = frozenset(range(sys_.points))
    proper = [c for c in (forward_closure(sys_, [x]) for x in range(sys_.points)) if c != full]
    if not proper:
        return MinimalityReport(True)
    return MinimalityReport(False, min(proper, key=lambda c: (len(c), sorted(c))))


@dataclass(frozen=True)
class DistinctMapsReport:
    distinct: bool
    witness: Optional[tuple] = None


def distinct_maps_check(sys_: ClassicalSystem) -> DistinctMapsReport:
    """Exponent collisions: phi^v = phi^w with v != w.

    On a finite set the first generator's power sequence repeats, giving
    v = index * e_1 and w = (index + period) * e_1.
    """
    c, p = sys_.periodicity_data[0]
    e = sys_.order.unit(0)
    v, w = L.scale(c, e, sys_.order), L.scale(c + p, e, sys_.order)
    assert sys_.power(v) == sys_.power(w)
    return DistinctMapsReport(False, (v, w))


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    minimality: MinimalityReport
    maps: DistinctMapsReport

    @property
    def verdict(self) -> str:
        return "simple envelope" if self.simple else "not simple"


def simplicity_verdict(sys_: ClassicalSystem) -> SimplicityReport:
    m = is_minimal(sys_)
    d = distinct_maps_check(sys_)
    return SimplicityReport(m.minimal and d.distinct, m, d)
