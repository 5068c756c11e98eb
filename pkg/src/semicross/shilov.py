"""The maximal invariant boundary ideal of the product dilation, on grids.

Three descriptions are computed and compared:

* the ideal tower: K_F = intersection of ker alpha_{g v 0} over g in F with
  g not <= 0, J_F = K_F^perp, and x in I_F when every entry x_h lies in
  J_{F-h}; the ideal is the closed union of the I_F over finite F;
* for product order, the kernel of the support-model comparison map;
* for one-dimensional (chain) orders, entries in (ker alpha)^perp that decay
  to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import dilation as D
from . import lattice as L
from .dilation import DilationElement, GridCoordinates
from .dynsys import (
    ClassicalSystem,
    ZeroSetIdeal,
    annihilator,
    image_set,
)
from .lattice import OrderSpec, Point
from .linalg import Subspace


class BoundaryInvarianceError(AssertionError):
    """A computed boundary subspace broke boundary or shift invariance."""


# -- the ideal tower -------------------------------------------------------


def kernel_meet_ideal(sys_: ClassicalSystem, F: Iterable[Point]) -> ZeroSetIdeal:
    """K_F; the empty intersection (F empty or F <= 0) is the whole algebra."""
    spec = sys_.order
    zs: set = set()
    for g in F:
        if not L.leq(g, spec.zero(), spec):
            zs |= image_set(sys_, L.pos_part(g, spec))
    return ZeroSetIdeal(sys_.points, frozenset(zs))


def annihilator_ideal(sys_: ClassicalSystem, F: Iterable[Point]) -> ZeroSetIdeal:
    """J_F = K_F^perp."""
    return annihilator(kernel_meet_ideal(sys_, F))


def _allowed_set(sys_: ClassicalSystem, F: Sequence[Point], h: Point) -> frozenset:
    """Points where an entry at h may be nonzero: the zero set of K_{F-h}."""
    spec = sys_.order
    zs: set = set()
    for s in F:
        if not L.leq(s, h, spec):
            zs |= image_set(sys_, L.pos_part(L.sub(s, h, spec), spec))
    return frozenset(zs)


def _allowed_set_box(sys_: ClassicalSystem, lo: Point, hi: Point, h: Point) -> frozenset:
    """Same as :func:`_allowed_set` when F is the product-order box [lo, hi].

    Images shrink as exponents grow, so only the smallest exponents matter:
    if lo is not <= h, s = lo dominates; otherwise the candidates are
    h with a single coordinate raised by one, available where h_i < hi_i.
    """
    spec = sys_.order
    if not L.leq(lo, h, spec):
        return image_set(sys_, L.pos_part(L.sub(lo, h, spec), spec))
    zs: set = set()
    for i in range(spec.rank):
        if h[i] < hi[i]:
            zs |= image_set(sys_, spec.unit(i))
    return frozenset(zs)


def _entry_box(sys_: ClassicalSystem, support: Sequence[Point], F: Sequence[Point]) -> list:
    """Entry positions that decide membership in I_F.

    Below the support entries vanish; past max(support, F) + index + period in
    a coordinate both the entry and the set {s in F : s not <= h} repeat.
    """
    spec = sys_.order
    lo = tuple(min(p[i] for p in support) for i in range(spec.rank))
    top = list(support) + list(F)
    hi = tuple(max(p[i] for p in top) + w for i, w in enumerate(sys_.window))
    return L.enum_box(lo, hi, spec)


def in_tower_ideal(x: DilationElement, F: Iterable[Point]) -> bool:
    """x in I_F: entry_at(x, h) lies in J_{F-h} for every h."""
    if x.is_zero():
        return True
    sys_ = x.system
    F = sorted(set(F))
    support = sorted(x.support)
    for h in _entry_box(sys_, support, F):
        allowed = _allowed_set(sys_, F, h)
        e = D.entry_at(x, h)
        if any(e[z] for z in range(sys_.points) if z not in allowed):
            return False
    return True


def tower_level(sys_: ClassicalSystem, grid: Iterable[Point], F_box: tuple) -> tuple:
    """I_F restricted to the grid, for F the box [F_box[0], F_box[1]]."""
    coords = GridCoordinates.for_grid(sys_, grid)
    lo, hi = F_box
    corners = [lo, hi]
    rows = []
    seen = set()
    for h in _entry_box(sys_, coords.points, corners):
        forbidden = [z for z in range(sys_.points) if z not in _allowed_set_box(sys_, lo, hi, h)]
        if not forbidden:
            continue
        m = coords.entry_rows(h)
        for z in forbidden:
            r = tuple(m[z])
            if any(r) and r not in seen:
                seen.add(r)
                rows.append(r)
    return coords, Subspace.nullspace(rows, coords.dimension)


def tower_subspace(sys_: ClassicalSystem, grid: Iterable[Point], max_expansions: int = 8) -> tuple:
    """Union of I_F over finite F, restricted to the grid.

    The tower is increasing in F and every finite F sits in a box, so boxes
    [meet - k w, join + k w] (w = index + period per coordinate) exhaust it.
    Enlarge k until two successive enlargements leave the subspace unchanged.
    """
    spec = sys_.order
    coords = GridCoordinates.for_grid(sys_, grid)
    lo = L.meet_all(coords.points, spec)
    hi = L.join_all(coords.points, spec)
    w = sys_.window
    history = []
    for k in range(max_expansions + 1):
        box = (
            tuple(a - k * wi for a, wi in zip(lo, w)),
            tuple(b + k * wi for b, wi in zip(hi, w)),
        )
        _, sub = tower_level(sys_, coords.points, box)
        history.append(sub)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return coords, sub
    raise RuntimeError("ideal tower did not stabilize within the expansion budget")


# -- closed forms ----------------------------------------------------------


def integer_case_ideal(sys_: ClassicalSystem, grid: Iterable[Point]) -> "ShilovSubspace":
    """Elements with every entry in (ker alpha)^perp whose entries tend to 0.

    With M the top of the grid and (c, p) the periodicity of the generator,
    entries past M are alpha-images of the entry at M, so decay means zero
    entries on [M + c, M + c + p), and the perp condition is needed only
    below M + c + p.
    """
    if sys_.order.kind != "chain":
        raise ValueError(f"integer-case formula applies to chain orders, got {sys_.order.kind}")
    coords = GridCoordinates.for_grid(sys_, grid)
    return ShilovSubspace(sys_, coords, _integer_case_subspace(sys_, coords))


def _integer_case_subspace(sys_: ClassicalSystem, coords: GridCoordinates) -> Subspace:
    (c, p), = sys_.periodicity_data
    lo = coords.points[0][0]
    top = coords.points[-1][0]
    outside = [z for z in range(sys_.points) if z not in image_set(sys_, (1,))]
    rows = []
    for n in range(lo, top + c + p):
        m = coords.entry_rows((n,))
        forced = range(sys_.points) if n >= top + c else outside
        rows.extend(m[z] for z in forced)
    return Subspace.nullspace([r for r in rows if any(r)], coords.dimension)


def integer_case_violation(sys_: ClassicalSystem, x: DilationElement) -> Optional[tuple]:
    """First entry position breaking the integer-case conditions, with the entry."""
    if x.is_zero():
        return None
    (c, p), = sys_.periodicity_data
    lo = min(x.support)[0]
    top = max(x.support)[0]
    im = image_set(sys_, (1,))
    for n in range(lo, top + c + p):
        e = D.entry_at(x, (n,))
        if n >= top + c and any(e):
            return (n,), e, "entry does not decay to zero"
        if any(e[z] for z in range(sys_.points) if z not in im):
            return (n,), e, "entry leaves (ker alpha)^perp"
    return None


# -- the primary computation -----------------------------------------------


@dataclass(frozen=True)
class ShilovSubspace:
    system: ClassicalSystem
    coords: GridCoordinates
    subspace: Subspace

    @property
    def grid(self) -> tuple:
        return self.coords.points

    @property
    def dimension(self) -> int:
        return self.subspace.dimension

    @property
    def basis(self) -> list:
        return [self.coords.from_vector(r) for r in self.subspace.basis]

    def contains(self, x: DilationElement) -> bool:
        return self.subspace.contains(self.coords.to_vector(x))


def shilov_subspace(sys_: ClassicalSystem, grid: Iterable[Point]) -> ShilovSubspace:
    kind = sys_.order.kind
    if kind == "product":
        from .support_model import comparison_kernel

        coords, sub = comparison_kernel(sys_, grid)
        return ShilovSubspace(sys_, coords, sub)
    if kind == "chain":
        return integer_case_ideal(sys_, grid)
    raise ValueError("boundary ideals are not computed for lexicographic orders")


@dataclass(frozen=True)
class InvarianceReport:
    boundary: bool
    invariance: bool
    detail: str


def boundary_invariance_check(sub: ShilovSubspace) -> InvarianceReport:
    """The subspace meets iota(A) trivially and is stable under +-generator shifts.

    Raises :class:`BoundaryInvarianceError` on failure.
    """
    sys_ = sub.system
    spec = sys_.order
    coords = sub.coords
    zero = spec.zero()
    if zero in coords.points and sub.dimension:
        iota_rows = [
            [1 if i == coords.index(zero, z) else 0 for i in range(coords.dimension)]
            for z in range(sys_.points)
        ]
        meet = sub.subspace.intersection(Subspace(coords.dimension, iota_rows))
        if meet.dimension:
            raise BoundaryInvarianceError(
                f"subspace meets iota(A) in dimension {meet.dimension}"
            )
    for i in range(spec.rank):
        for sign in (1, -1):
            g = L.scale(sign, spec.unit(i), spec)
            moved = shilov_subspace(sys_, L.translate(coords.points, L.neg(g, spec), spec))
            for b in sub.basis:
                if not moved.contains(D.shift(b, g)):
                    raise BoundaryInvarianceError(
                        f"shift by {L.format_point(g)} leaves the subspace: {b!r}"
                    )
    return InvarianceReport(True, True, f"dimension {sub.dimension}, {2 * spec.rank} shifts checked")


# -- envelope criterion ----------------------------------------------------


@dataclass(frozen=True)
class EnvelopeReport:
    is_envelope: bool
    witness: Optional[tuple]
    kernel_zero_set: frozenset
    annihilator_zero_set: frozenset
    checked: int


def envelope_criterion(sys_: ClassicalSystem) -> EnvelopeReport:
    """The product cover is the envelope iff every K_F (F positive, finite,
    avoiding 0) is essential, i.e. has zero annihilator.

    Singletons and pairs of generator multiples up to the periodicity window
    are examined; the first non-essential F is the witness.
    """
    spec = sys_.order
    cands = []
    for i in range(spec.rank):
        for k in range(1, sys_.window[i] + 1):
            cands.append(L.scale(k, spec.unit(i), spec))
    families = [(g,) for g in cands] + [
        (g, h) for a, g in enumerate(cands) for h in cands[a + 1:]
    ]
    for count, F in enumerate(families, 1):
        k = kernel_meet_ideal(sys_, F)
        perp = annihilator(k)
        if not perp.is_zero:
            return EnvelopeReport(False, F, k.zero_set, perp.zero_set, count)
    return EnvelopeReport(True, None, frozenset(), frozenset(), len(families))


# -- subgroups -------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A copy of Z inside the acting group, with the restricted system."""

    label: str
    step: Point
    system: ClassicalSystem

    def embed_point(self, t: Point) -> Point:
        return tuple(t[0] * c for c in self.step)

    def embed_element(self, full: ClassicalSystem, x: DilationElement) -> DilationElement:
        return DilationElement(
            full,
            {self.embed_point(g): a for g, a in x.coeffs.items()},
            [self.embed_point(g) for g in x.grid],
        )


def parse_subgroup(sys_: ClassicalSystem, text: str) -> Subgroup:
    """``index:k`` (the subgroup kZ of a chain, in finest units) or
    ``coord:i`` (the i-th coordinate axis of Z^n, 1-based)."""
    kind, _, arg = text.partition(":")
    try:
        k = int(arg)
    except ValueError:
        raise ValueError(f"invalid subgroup spec {text!r}") from None
    order = sys_.order
    if kind == "index":
        if order.kind != "chain":
            raise ValueError("index:k subgroups apply to chain orders")
        if k < 1:
            raise ValueError("subgroup index must be positive")
        from .dynsys import map_power

        m = map_power(sys_.base_maps[0], k)
        sub = ClassicalSystem.build(sys_.points, OrderSpec.chain([1]), [m])
        return Subgroup(text, (k,), sub)
    if kind == "coord":
        if order.kind != "product":
            raise ValueError("coord:i subgroups apply to product orders")
        if not 1 <= k <= order.rank:
            raise ValueError(f"coordinate {k} outside 1..{order.rank}")
        sub = ClassicalSystem.build(sys_.points, OrderSpec.chain([1]), [sys_.generators[k - 1]])
        return Subgroup(text, order.unit(k - 1), sub)
    raise ValueError(f"invalid subgroup spec {text!r}")


@dataclass(frozen=True)
class SubgroupReport:
    subgroup: str
    grid: tuple
    isometric: bool
    norm_checks: int
    sub_dim: int
    full_dim: int
    sub_in_full: bool
    full_in_sub: bool
    witness: Optional[DilationElement] = None
    violation: Optional[tuple] = None

    @property
    def compatible(self) -> bool:
        return self.sub_in_full and self.full_in_sub


def membership_violation(sys_: ClassicalSystem, x: DilationElement) -> Optional[tuple]:
    """First condition of the primary membership test that x fails."""
    if sys_.order.kind == "chain":
        return integer_case_violation(sys_, x)
    from .support_model import support_ideal, support_of

    spec = sys_.order
    k = L.join_all(x.support, spec)
    lo = L.meet_all(x.support, spec)
    for y in L.enum_box(spec.zero(), L.sub(k, lo, spec), spec):
        h = L.sub(k, y, spec)
        e = D.entry_at(x, h)
        q = support_ideal(sys_, support_of(y))
        if any(e[z] for z in q.zero_set):
            return h, e, f"entry is nonzero modulo the support ideal of {L.format_point(y)}"
    return None


def subgroup_compat(
    sys_: ClassicalSystem, subgroup: str, grid: Optional[Iterable[Point]] = None
) -> SubgroupReport:
    """Compare the boundary subspace of the restricted system with the full one.

    The grid is given in subgroup coordinates (default {0, 1}); its image in
    the full group carries the same coefficients, so both subspaces live in
    one coordinate space.
    """
    sg = parse_subgroup(sys_, subgroup)
    sub_sys = sg.system
    grid = L.grid_closure(grid if grid is not None else [(0,), (1,)], sub_sys.order)
    sub_shilov = shilov_subspace(sub_sys, grid)
    full_grid = [sg.embed_point(g) for g in sub_shilov.grid]
    full_shilov = shilov_subspace(sys_, full_grid)
    # embedding is order preserving, so sorted grids correspond position by position
    assert [sg.embed_point(g) for g in sub_shilov.grid] == list(full_shilov.grid)

    probes = [D.basis_element(sub_sys, g, z) for g in sub_shilov.grid for z in range(sys_.points)]
    probes += sub_shilov.basis + full_shilov_in_sub(sg, full_shilov, sub_shilov)
    isometric = all(
        D.sup_norm_sq(x) == D.sup_norm_sq(sg.embed_element(sys_, x)) for x in probes
    )

    j, i = sub_shilov.subspace, full_shilov.subspace
    sub_in_full = j.is_subspace_of(i)
    full_in_sub = i.is_subspace_of(j)
    witness = violation = None
    if not sub_in_full:
        bad = min(r for r in j.basis if not i.contains(r))
        witness = sg.embed_element(sys_, sub_shilov.coords.from_vector(bad))
        violation = membership_violation(sys_, witness)
    elif not full_in_sub:
        bad = min(r for r in i.basis if not j.contains(r))
        witness = full_shilov.coords.from_vector(bad)
        violation = membership_violation(sub_sys, sub_shilov.coords.from_vector(bad))
    return SubgroupReport(
        subgroup, tuple(sub_shilov.grid), isometric, len(probes), j.dimension, i.dimension,
        sub_in_full, full_in_sub, witness, violation,
    )


def full_shilov_in_sub(sg: Subgroup, full: ShilovSubspace, sub: ShilovSubspace) -> list:
    """Full-group basis elements read back in subgroup coordinates."""
    return [sub.coords.from_vector(r) for r in full.subspace.basis]
