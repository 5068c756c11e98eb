"""Formal monomial sums in the crossed product of the dilation by the group.

An element is ``sum_g u_g b_g`` with b_g in the dilation, multiplied by

    (u_g a)(u_h b) = u_{g+h} beta_h(a) b,      (u_g b)^* = u_{-g} beta_{-g}(b^*).
"""
from __future__ import annotations

from typing import Mapping, Sequence

from . import dilation as D
from . import lattice as L
from .dilation import DilationElement
from .dynsys import ClassicalSystem
from .lattice import Point


class NormalFormError(AssertionError):
    """An algebraic identity that must hold failed: a defect in this package."""


class CrossedElement:
    __slots__ = ("system", "terms")

    def __init__(self, system: ClassicalSystem, terms: Mapping[Point, DilationElement]):
        cleaned = {}
        for g, b in terms.items():
            if b.system != system:
                raise ValueError("term from a different system")
            if not b.is_zero():
                cleaned[L.check_point(g, system.order)] = b
        self.system = system
        self.terms = cleaned

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.system == other.system and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((g, hash(b)) for g, b in self.terms.items())))

    def __add__(self, other):
        return cross_add(self, other)

    def __mul__(self, other):
        return cross_mul(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        body = " + ".join(f"u[{L.format_point(g)}]{b!r}" for g, b in sorted(self.terms.items()))
        return f"CrossedElement({body or '0'})"


def monomial(g: Point, b: DilationElement) -> CrossedElement:
    return CrossedElement(b.system, {tuple(g): b})


def cross_zero(sys_: ClassicalSystem) -> CrossedElement:
    return CrossedElement(sys_, {})


def unit_monomial(sys_: ClassicalSystem, p: Point) -> CrossedElement:
    """u_p p_A."""
    return monomial(p, D.unit_projection(sys_))


def cross_add(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    if x.system != y.system:
        raise ValueError("elements belong to different systems")
    terms = dict(x.terms)
    for g, b in y.terms.items():
        terms[g] = D.add(terms[g], b) if g in terms else b
    return CrossedElement(x.system, terms)


def cross_scale(c, x: CrossedElement) -> CrossedElement:
    return CrossedElement(x.system, {g: D.scale(c, b) for g, b in x.terms.items()})


def cross_mul(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    if x.system != y.system:
        raise ValueError("elements belong to different systems")
    spec = x.system.order
    terms: dict = {}
    for g, a in x.terms.items():
        for h, b in y.terms.items():
            k = L.add(g, h, spec)
            t = D.multiply(D.shift(a, h), b)
            terms[k] = D.add(terms[k], t) if k in terms else t
    return CrossedElement(x.system, terms)


def cross_star(x: CrossedElement) -> CrossedElement:
    spec = x.system.order
    terms = {}
    for g, b in x.terms.items():
        mg = L.neg(g, spec)
        terms[mg] = D.shift(D.adjoint(b), mg)
    return CrossedElement(x.system, terms)


def gauge_expectation(x: CrossedElement) -> DilationElement:
    """Average over the dual group: keeps the degree-zero coefficient."""
    zero = x.system.order.zero()
    return x.terms.get(zero, D.zero_element(x.system))


def corner_compress(x: CrossedElement) -> CrossedElement:
    """p_A x p_A."""
    p = unit_monomial(x.system, x.system.order.zero())
    return cross_mul(cross_mul(p, x), p)


def monomial_normal_form(sys_: ClassicalSystem, g: Point, h: Point, a: Sequence) -> CrossedElement:
    """(u_{g-} p_A)^* (u_{g+} p_A) (u_h p_A)^* iota(a) (u_h p_A).

    The product is checked against p_A u_g beta_h(iota(a)) p_A; a mismatch
    raises :class:`NormalFormError`.
    """
    spec = sys_.order
    g_plus, g_minus = L.pos_part(g, spec), L.neg_part(g, spec)
    zero = spec.zero()
    factors = [
        cross_star(unit_monomial(sys_, g_minus)),
        unit_monomial(sys_, g_plus),
        cross_star(unit_monomial(sys_, h)),
        monomial(zero, D.embed(sys_, a)),
        unit_monomial(sys_, h),
    ]
    out = factors[0]
    for f in factors[1:]:
        out = cross_mul(out, f)
    target = corner_compress(monomial(g, D.shift(D.embed(sys_, a), h)))
    if out != target:
        raise NormalFormError(f"normal form mismatch for g={g}, h={h}")
    return out


def format_crossed(x: CrossedElement) -> dict:
    return {
        "terms": [
            {"g": L.format_point(g), "element": D.format_element(b)}
            for g, b in sorted(x.terms.items())
        ]
    }
