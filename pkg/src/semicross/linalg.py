"""Exact subspaces of Q^n and their complex spans.

Every linear system built in this package has integer coefficients (sums of
0/1 pullback matrices), so each solution space over the Gaussian rationals is
the complex span of a rational subspace. A :class:`Subspace` stores that
rational subspace in reduced row echelon form; complex vectors are tested by
splitting into real and imaginary parts.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .scalars import GaussRat


def _to_qq(x) -> object:
    if isinstance(x, GaussRat):
        if x.im:
            raise ValueError("constraint coefficients must be real")
        x = x.re
    return QQ(Fraction(x).numerator, Fraction(x).denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _matrix(rows: Sequence[Sequence[object]], n: int) -> DomainMatrix:
    data = [[_to_qq(v) for v in row] for row in rows]
    for row in data:
        if len(row) != n:
            raise ValueError(f"row of length {len(row)} in a system with {n} unknowns")
    return DomainMatrix(data, (len(data), n), QQ)


class Subspace:
    """A subspace of Q^n (equivalently of its complexification), kept in RREF."""

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n: int, rows: Sequence[Sequence[object]] = ()):
        self.n = n
        rows = [r for r in rows]
        if not rows:
            self.rows: tuple = ()
            self.pivots: tuple = ()
            return
        reduced, pivots = _matrix(rows, n).rref()
        lst = reduced.to_list()
        self.rows = tuple(tuple(_from_qq(v) for v in lst[k]) for k in range(len(pivots)))
        self.pivots = tuple(pivots)

    @classmethod
    def nullspace(cls, constraints: Sequence[Sequence[object]], n: int) -> "Subspace":
        """Solutions of ``C v = 0``."""
        rows = [r for r in constraints if any(r)]
        if not rows:
            return cls.full(n)
        basis = _matrix(rows, n).nullspace().to_list()
        return cls(n, basis)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple:
        return self.rows

    def _residual(self, vec: Sequence[Fraction]) -> list:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.n):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains(self, vec: Sequence[object]) -> bool:
        if len(vec) != self.n:
            raise ValueError(f"vector of length {len(vec)} in ambient dimension {self.n}")
        zs = [GaussRat.coerce(x) for x in vec]
        for part in ([z.re for z in zs], [z.im for z in zs]):
            if any(part) and any(self._residual(part)):
                return False
        return True

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    def complement_constraints(self) -> tuple:
        """Rows of a matrix whose nullspace is exactly this subspace."""
        if not self.rows:
            return tuple(tuple(Fraction(int(i == j)) for j in range(self.n)) for i in range(self.n))
        return Subspace.nullspace(self.rows, self.n).rows

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        cons = list(self.complement_constraints()) + list(other.complement_constraints())
        return Subspace.nullspace(cons, self.n)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.n, list(self.rows) + list(other.rows))

    def _check(self, other: "Subspace") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dimension})"


def span(vectors: Iterable[Sequence[object]], n: int) -> Subspace:
    """Span of the real and imaginary parts of the given vectors.

    This is the smallest rational-defined subspace containing them, which is
    their complex span whenever that span is itself defined over Q.
    """
    rows = []
    for v in vectors:
        zs = [GaussRat.coerce(x) for x in v]
        rows.append([z.re for z in zs])
        if any(z.im for z in zs):
            rows.append([z.im for z in zs])
    return Subspace(n, rows)
