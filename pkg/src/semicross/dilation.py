"""Truncations of the product dilation.

The dilation lives inside the product of copies of C(X) indexed by the whole
group, with the left shift as the group action. An element over a grid F is
the formal sum ``sum_{g in F} beta_{-g} iota(a_g)``; its entry at h is
``sum_{g in F, g <= h} alpha_{h-g}(a_g)``. Multiplication is entrywise, which
on formal sums reads

    beta_{-g} iota(a) * beta_{-h} iota(b)
        = beta_{-(g v h)} iota(alpha_{g v h - g}(a) alpha_{g v h - h}(b)).

Every element has exactly one such representation (look at a minimal grid
point carrying a nonzero coefficient: its entry there is that coefficient),
so equality compares coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import lattice as L
from .dynsys import ClassicalSystem, apply_exponent
from .lattice import Point
from .scalars import (
    Function,
    GaussRat,
    delta,
    fn_add,
    fn_conj,
    fn_is_zero,
    fn_max_abs2,
    fn_mul,
    fn_scale,
    format_fn,
    one_fn,
    zero_fn,
)


class DilationElement:
    __slots__ = ("system", "grid", "coeffs")

    def __init__(
        self,
        system: ClassicalSystem,
        coeffs: Mapping[Point, Sequence],
        grid: Optional[Iterable[Point]] = None,
    ):
        spec = system.order
        cleaned = {}
        for g, a in coeffs.items():
            g = L.check_point(g, spec)
            a = tuple(GaussRat.coerce(v) for v in a)
            if len(a) != system.points:
                raise ValueError(f"coefficient at {g} has length {len(a)}, expected {system.points}")
            if not fn_is_zero(a):
                cleaned[g] = a
        pts = set(cleaned) if grid is None else {L.check_point(p, spec) for p in grid}
        if not set(cleaned) <= pts:
            raise ValueError("coefficients placed off the grid")
        self.system = system
        self.grid = L.grid_closure(pts, spec)
        self.coeffs = cleaned

    @property
    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def coefficient(self, g: Point) -> Function:
        return self.coeffs.get(tuple(g), zero_fn(self.system.points))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, DilationElement):
            return NotImplemented
        return self.system == other.system and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        body = ", ".join(f"{L.format_point(g)}: {format_fn(a)}" for g, a in sorted(self.coeffs.items()))
        return f"DilationElement({{{body}}})"


def _same_system(x: DilationElement, y: DilationElement) -> None:
    if x.system != y.system:
        raise ValueError("elements belong to different systems")


def zero_element(sys_: ClassicalSystem, grid: Iterable[Point] = ()) -> DilationElement:
    return DilationElement(sys_, {}, grid)


def embed(sys_: ClassicalSystem, f: Sequence) -> DilationElement:
    """iota(f): entries alpha_h(f) for h >= 0 and 0 elsewhere."""
    if len(f) != sys_.points:
        raise ValueError(f"function of length {len(f)} on {sys_.points} points")
    return DilationElement(sys_, {sys_.order.zero(): tuple(f)}, [sys_.order.zero()])


def unit_projection(sys_: ClassicalSystem) -> DilationElement:
    """p_A = iota(1)."""
    return embed(sys_, one_fn(sys_.points))


def basis_element(sys_: ClassicalSystem, g: Point, z: int) -> DilationElement:
    """beta_{-g} iota(delta_z)."""
    return DilationElement(sys_, {tuple(g): delta(sys_.points, z)}, [tuple(g)])


def shift(x: DilationElement, g: Point) -> DilationElement:
    """beta_g: entry_at(shift(x, g), h) = entry_at(x, h + g)."""
    spec = x.system.order
    return DilationElement(
        x.system,
        {L.sub(k, g, spec): a for k, a in x.coeffs.items()},
        [L.sub(k, g, spec) for k in x.grid],
    )


def entry_at(x: DilationElement, h: Point) -> Function:
    sys_ = x.system
    spec = sys_.order
    out = zero_fn(sys_.points)
    for g, a in x.coeffs.items():
        if L.leq(g, h, spec):
            out = fn_add(out, apply_exponent(sys_, L.sub(h, g, spec), a))
    return out


def add(x: DilationElement, y: DilationElement) -> DilationElement:
    _same_system(x, y)
    coeffs = dict(x.coeffs)
    for g, b in y.coeffs.items():
        coeffs[g] = fn_add(coeffs[g], b) if g in coeffs else b
    return DilationElement(x.system, coeffs, x.grid | y.grid)


def scale(c, x: DilationElement) -> DilationElement:
    return DilationElement(x.system, {g: fn_scale(c, a) for g, a in x.coeffs.items()}, x.grid)


def linear_combination(terms: Iterable[tuple], sys_: ClassicalSystem) -> DilationElement:
    out = zero_element(sys_)
    for c, x in terms:
        out = add(out, scale(c, x))
    return out


def multiply(x: DilationElement, y: DilationElement) -> DilationElement:
    _same_system(x, y)
    sys_ = x.system
    spec = sys_.order
    coeffs: dict = {}
    for g, a in x.coeffs.items():
        for h, b in y.coeffs.items():
            k = L.join(g, h, spec)
            term = fn_mul(
                apply_exponent(sys_, L.sub(k, g, spec), a),
                apply_exponent(sys_, L.sub(k, h, spec), b),
            )
            coeffs[k] = fn_add(coeffs[k], term) if k in coeffs else term
    grid = {L.join(g, h, spec) for g in x.grid for h in y.grid}
    return DilationElement(sys_, coeffs, grid)


def adjoint(x: DilationElement) -> DilationElement:
    return DilationElement(x.system, {g: fn_conj(a) for g, a in x.coeffs.items()}, x.grid)


# -- norms -----------------------------------------------------------------


def norm_box(x: DilationElement, extra_periods: int = 0) -> tuple:
    """Box [lo, hi] of entry positions that realizes every entry of x.

    Below the coordinatewise minimum of the support no grid point is <= h, so
    the entry vanishes. Once h_i passes max_i + index_i, the exponents h_i - g_i
    all sit in the periodic part of the i-th map and the down-set in that
    coordinate is already complete, so lowering h_i by one period leaves the
    entry unchanged. Hence [min, max + index + period] suffices.
    """
    sys_ = x.system
    spec = sys_.order
    supp = sorted(x.coeffs)
    lo = tuple(min(p[i] for p in supp) for i in range(spec.rank))
    hi = tuple(
        max(p[i] for p in supp) + w + extra_periods * per
        for i, (w, (_, per)) in enumerate(zip(sys_.window, sys_.periodicity_data))
    )
    return lo, hi


def sup_norm_sq(x: DilationElement, extra_periods: int = 0) -> Fraction:
    """Exact square of the sup-norm over all entry positions."""
    if x.is_zero():
        return Fraction(0)
    lo, hi = norm_box(x, extra_periods)
    spec = x.system.order
    return max(fn_max_abs2(entry_at(x, h)) for h in L.enum_box(lo, hi, spec))


def exact_sqrt(q: Fraction) -> Union[Fraction, float]:
    """Square root as a Fraction when q is a rational square, else a float."""
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return math.sqrt(n) / math.sqrt(d)


def sup_norm(x: DilationElement) -> Union[Fraction, float]:
    return exact_sqrt(sup_norm_sq(x))


def approx_identity_index(x: DilationElement) -> Point:
    """Least p >= 0 with shift(p_A, p) * x = x: the join of (-g) v 0 over the support."""
    spec = x.system.order
    out = spec.zero()
    for g in x.coeffs:
        out = L.join(out, L.neg(g, spec), spec)
    return out


# -- coordinates on a fixed grid -------------------------------------------


@dataclass(frozen=True)
class GridCoordinates:
    """Vector coordinates for elements supported on a fixed grid.

    Coordinate (k, z) is the value at point z of the coefficient at the k-th
    grid point in sorted order.
    """

    system: ClassicalSystem
    points: tuple

    @classmethod
    def for_grid(cls, sys_: ClassicalSystem, grid: Iterable[Point]) -> "GridCoordinates":
        return cls(sys_, tuple(sorted(L.grid_closure(grid, sys_.order))))

    @property
    def dimension(self) -> int:
        return len(self.points) * self.system.points

    def index(self, g: Point, z: int) -> int:
        return self.points.index(tuple(g)) * self.system.points + z

    def to_vector(self, x: DilationElement) -> tuple:
        if not x.support <= set(self.points):
            raise ValueError("element is not supported on this grid")
        out = []
        for g in self.points:
            out.extend(x.coefficient(g))
        return tuple(out)

    def from_vector(self, vec: Sequence) -> DilationElement:
        n = self.system.points
        if len(vec) != self.dimension:
            raise ValueError(f"vector of length {len(vec)}, expected {self.dimension}")
        coeffs = {g: tuple(vec[k * n:(k + 1) * n]) for k, g in enumerate(self.points)}
        return DilationElement(self.system, coeffs, self.points)

    def entry_rows(self, h: Point) -> list:
        """Integer matrix M (|X| x dimension) with entry_at(x, h) = M @ vector(x)."""
        sys_ = self.system
        spec = sys_.order
        n = sys_.points
        rows = [[0] * self.dimension for _ in range(n)]
        for k, g in enumerate(self.points):
            if L.leq(g, h, spec):
                m = sys_.power(L.sub(h, g, spec))
                for z in range(n):
                    rows[z][k * n + m[z]] += 1
        return rows


# -- axiom checks ----------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class NicaReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def product_oracle_holds(x: DilationElement, y: DilationElement, box: Sequence[Point]) -> bool:
    xy = multiply(x, y)
    return all(entry_at(xy, h) == fn_mul(entry_at(x, h), entry_at(y, h)) for h in box)


def verify_nica_axioms(sys_: ClassicalSystem, radius: int = 2) -> NicaReport:
    """Exact checks of the dilation identities on a box of the given radius.

    * compression: p_A beta_p(iota(a)) = iota(alpha_p(a)) for generators p and
      the point-mass basis of C(X);
    * Nica covariance: beta_g(p_A) beta_h(p_A) = beta_{g ^ h}(p_A) for g, h in
      the box;
    * entrywise products for pairs of shifted basis elements;
    * the approximate-identity index is least for each shifted basis element.
    """
    spec = sys_.order
    n = sys_.points
    p_a = unit_projection(sys_)
    box = L.enum_box(tuple([-radius] * spec.rank), tuple([radius] * spec.rank), spec)
    checks = []

    bad = []
    for i in range(spec.rank):
        e = spec.unit(i)
        for z in range(n):
            a = delta(n, z)
            lhs = multiply(p_a, shift(embed(sys_, a), e))
            rhs = embed(sys_, apply_exponent(sys_, e, a))
            if lhs != rhs:
                bad.append((e, z))
    checks.append(Check("compression p_A beta_p(iota(a)) = iota(alpha_p(a))", not bad,
                        f"violations at {bad[:3]}" if bad else f"{spec.rank * n} cases"))

    bad = []
    shifted = {g: shift(p_a, g) for g in box}
    for g in box:
        for h in box:
            if multiply(shifted[g], shifted[h]) != shifted[L.meet(g, h, spec)]:
                bad.append((g, h))
    checks.append(Check("Nica covariance beta_g(p_A) beta_h(p_A) = beta_{g^h}(p_A)", not bad,
                        f"violations at {bad[:3]}" if bad else f"{len(box) ** 2} pairs"))

    small = L.enum_box(tuple([-1] * spec.rank), tuple([1] * spec.rank), spec)
    elems = [basis_element(sys_, g, z) for g in small for z in range(n)]
    bad = []
    for x in elems:
        for y in elems:
            # below the meet of the supports everything vanishes, and past
            # join + window the entries repeat periodically
            pts = x.support | y.support
            lo = tuple(a - 1 for a in L.meet_all(pts, spec))
            hi = tuple(a + w for a, w in zip(L.join_all(pts, spec), sys_.window))
            if not product_oracle_holds(x, y, L.enum_box(lo, hi, spec)):
                bad.append((sorted(x.support), sorted(y.support)))
    checks.append(Check("entrywise product oracle", not bad,
                        f"violations at {bad[:3]}" if bad else f"{len(elems) ** 2} pairs"))

    bad = []
    for x in elems:
        if not approx_identity_is_least(x):
            bad.append(sorted(x.support))
    checks.append(Check("approximate identity index is least", not bad,
                        f"violations at {bad[:3]}" if bad else f"{len(elems)} elements"))
    return NicaReport(tuple(checks))


def approx_identity_is_least(x: DilationElement) -> bool:
    sys_ = x.system
    spec = sys_.order
    p_a = unit_projection(sys_)
    p = approx_identity_index(x)
    if multiply(shift(p_a, p), x) != x:
        return False
    if x.is_zero():
        return True
    for i in range(spec.rank):
        if p[i] == 0:
            continue
        q = L.sub(p, spec.unit(i), spec)
        if multiply(shift(p_a, q), x) == x:
            return False
    return True


def format_element(x: DilationElement) -> dict:
    return {
        "grid": [L.format_point(g) for g in sorted(x.grid)],
        "coefficients": {L.format_point(g): format_fn(a) for g, a in sorted(x.coeffs.items())},
    }
