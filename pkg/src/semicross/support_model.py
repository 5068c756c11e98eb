"""A support-indexed model of the quotient of the dilation by its boundary ideal.

For product order on Z^n, to each support S of an exponent vector attach

    Q0_S = (intersection of ker alpha_i, i in S)^perp,
    Q_S  = intersection over y with supp(y) disjoint from S of alpha_y^{-1}(Q0_S),

and let C be the direct sum of A / Q_supp(x) over x in the positive orthant.
The comparison map sends a positively supported element b to
``sum_y q_y(b_{-y}) (x) e_y``; its kernel is the boundary ideal, which gives a
second, independent route to the same subspace as the ideal tower.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from . import dilation as D
from . import lattice as L
from .dilation import DilationElement, GridCoordinates
from .dynsys import (
    ClassicalSystem,
    ZeroSetIdeal,
    annihilator,
    apply_exponent,
    ideal_meet,
    kernel_ideal,
    preimage_ideal,
)
from .lattice import Point
from .linalg import Subspace
from .scalars import Function, fn_add, fn_is_zero, fn_max_abs2, fn_mul, format_fn


def _require_product(sys_: ClassicalSystem) -> None:
    if sys_.order.kind != "product":
        raise ValueError(f"the support model needs product order, got {sys_.order.kind}")


def support_of(y: Point) -> frozenset:
    return frozenset(i for i, c in enumerate(y) if c)


def base_ideal(sys_: ClassicalSystem, support: Iterable[int]) -> ZeroSetIdeal:
    """Q0_S: annihilator of the joint kernel of the generators in S."""
    _require_product(sys_)
    k = ZeroSetIdeal.full(sys_.points)
    for i in support:
        k = ideal_meet(k, kernel_ideal(sys_, sys_.order.unit(i)))
    return annihilator(k)


def support_ideal(sys_: ClassicalSystem, support: Iterable[int]) -> ZeroSetIdeal:
    """Q_S, enumerating y off S over one periodicity window per coordinate.

    Powers of each generator repeat past index + period, so the window
    already realizes every map phi^y with supp(y) disjoint from S.
    """
    return _support_ideal(sys_, frozenset(support))


@lru_cache(maxsize=None)
def _support_ideal(sys_: ClassicalSystem, support: frozenset) -> ZeroSetIdeal:
    _require_product(sys_)
    q0 = base_ideal(sys_, support)
    spec = sys_.order
    hi = tuple(0 if i in support else w - 1 for i, w in enumerate(sys_.window))
    zero_set: set = set()
    for y in L.enum_box(spec.zero(), hi, spec):
        zero_set |= preimage_ideal(sys_, y, q0).zero_set
    return ZeroSetIdeal(sys_.points, frozenset(zero_set))


def all_support_ideals(sys_: ClassicalSystem) -> dict:
    n = sys_.rank
    return {
        frozenset(S): support_ideal(sys_, S)
        for k in range(n + 1)
        for S in combinations(range(n), k)
    }


@dataclass(frozen=True)
class SupportVector:
    """An element of C truncated to finitely many summands.

    ``summands`` maps y in the positive orthant to a canonical representative
    modulo Q_supp(y). The vector stands for the image of an element shifted by
    ``offset`` into positive position.
    """

    system: ClassicalSystem
    summands: tuple  # sorted ((y, representative), ...), zero summands dropped
    offset: Point

    @classmethod
    def make(cls, sys_: ClassicalSystem, summands: Mapping[Point, Function], offset: Point):
        clean = {}
        for y, f in summands.items():
            rep = support_ideal(sys_, support_of(y)).representative(f)
            if not fn_is_zero(rep):
                clean[tuple(y)] = rep
        return cls(sys_, tuple(sorted(clean.items())), tuple(offset))

    def as_dict(self) -> dict:
        return dict(self.summands)

    def is_zero(self) -> bool:
        return not self.summands

    def max_abs2(self):
        from fractions import Fraction

        return max((fn_max_abs2(f) for _, f in self.summands), default=Fraction(0))


def advance(sys_: ClassicalSystem, i: int, v: SupportVector) -> SupportVector:
    """The i-th generator of the action on C.

    q_x(a) e_x goes to q_x(alpha_i a) e_x + q_{x+e_i}(a) e_{x+e_i} when x_i = 0,
    and to q_{x+e_i}(a) e_{x+e_i} when x_i > 0.
    """
    _require_product(sys_)
    spec = sys_.order
    e = spec.unit(i)
    out: dict = {}

    def put(y, f):
        out[y] = fn_add(out[y], f) if y in out else f

    for x, a in v.summands:
        up = L.add(x, e, spec)
        if x[i] == 0:
            put(x, apply_exponent(sys_, e, a))
        put(up, a)
    return SupportVector.make(sys_, out, v.offset)


def to_support_model(
    sys_: ClassicalSystem, x: DilationElement, offset: Optional[Point] = None
) -> SupportVector:
    """Image of beta_offset(x) in C; offset defaults to the join of the support.

    beta_offset(x) must be positively supported (all grid keys <= offset).
    """
    _require_product(sys_)
    spec = sys_.order
    if offset is None:
        offset = L.join_all(x.support, spec) if x.support else spec.zero()
    offset = L.check_point(offset, spec)
    if any(not L.leq(g, offset, spec) for g in x.support):
        raise ValueError(f"offset {offset} does not dominate the support")
    if x.is_zero():
        return SupportVector(sys_, (), offset)
    lo = L.meet_all(x.support, spec)
    summands = {}
    for y in L.enum_box(spec.zero(), L.sub(offset, lo, spec), spec):
        summands[y] = D.entry_at(x, L.sub(offset, y, spec))
    return SupportVector.make(sys_, summands, offset)


def model_multiply(u: SupportVector, v: SupportVector) -> SupportVector:
    if u.offset != v.offset:
        raise ValueError("vectors at different offsets")
    a, b = u.as_dict(), v.as_dict()
    prod = {y: fn_mul(a[y], b[y]) for y in a.keys() & b.keys()}
    return SupportVector.make(u.system, prod, u.offset)


def comparison_kernel(sys_: ClassicalSystem, grid: Iterable[Point]) -> tuple:
    """Kernel of the comparison map on elements supported on ``grid``.

    Returns (coordinates, subspace). After shifting by k = join(grid), the
    summand at y is entry_at(x, k - y) modulo Q_supp(y), and it can be
    nonzero only for y in [0, k - meet(grid)].
    """
    _require_product(sys_)
    spec = sys_.order
    coords = GridCoordinates.for_grid(sys_, grid)
    k = L.join_all(coords.points, spec)
    lo = L.meet_all(coords.points, spec)
    rows = []
    for y in L.enum_box(spec.zero(), L.sub(k, lo, spec), spec):
        q = support_ideal(sys_, support_of(y))
        if not q.zero_set:
            continue
        m = coords.entry_rows(L.sub(k, y, spec))
        rows.extend(m[z] for z in sorted(q.zero_set))
    return coords, Subspace.nullspace(_dedupe(rows), coords.dimension)


def _dedupe(rows: Iterable[Sequence[int]]) -> list:
    seen = set()
    out = []
    for r in rows:
        t = tuple(r)
        if any(t) and t not in seen:
            seen.add(t)
            out.append(t)
    return out


@dataclass(frozen=True)
class KernelComparison:
    grid: tuple
    kernel_dim: int
    tower_dim: int
    agreement: bool
    supports: tuple
    witness: Optional[DilationElement] = None


def compare_kernels(sys_: ClassicalSystem, grid: Iterable[Point]) -> KernelComparison:
    """Comparison-map kernel against the ideal-tower oracle on the same grid."""
    from .shilov import tower_subspace

    coords, ker = comparison_kernel(sys_, grid)
    _, tower = tower_subspace(sys_, coords.points)
    witness = None
    if ker != tower:
        for a, b in ((ker, tower), (tower, ker)):
            bad = [r for r in a.basis if not b.contains(r)]
            if bad:
                witness = coords.from_vector(min(bad))
                break
    supports = tuple(
        (tuple(sorted(S)), tuple(sorted(q.zero_set)))
        for S, q in sorted(all_support_ideals(sys_).items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    )
    return KernelComparison(coords.points, ker.dimension, tower.dimension, ker == tower, supports, witness)


def format_vector(v: SupportVector) -> dict:
    return {
        "offset": L.format_point(v.offset),
        "summands": {L.format_point(y): format_fn(f) for y, f in v.summands},
    }
