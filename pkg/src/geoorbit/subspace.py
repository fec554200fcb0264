"""Canonical subspaces of Q^n and bilinear forms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its reduced row-echelon basis.

    The echelon form is canonical, so ``==`` is subspace equality.
    """

    n: int
    rows: tuple = ()

    def __post_init__(self):
        rows, _ = la.rref(self.rows, self.n)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int) -> "Subspace":
        return cls(n, tuple(vectors))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, la.identity(n))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple:
        return self.rows

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def coords(self, v: Sequence) -> la.Vector:
        """Coefficients of ``v`` in the echelon basis; raises if ``v`` is outside."""
        c = tuple(v[p] for p in self.pivots)
        if not la.is_zero(la.sub(v, la.lincomb(c, self.rows, self.n))):
            raise ValueError("vector is not in the subspace")
        return c

    def residual(self, v: Sequence) -> la.Vector:
        c = tuple(v[p] for p in self.pivots)
        return la.sub(v, la.lincomb(c, self.rows, self.n))

    def contains(self, v: Sequence) -> bool:
        return la.is_zero(self.residual(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.rows + other.rows, self.n)

    def annihilator(self) -> la.Matrix:
        """Rows spanning {y : y . x = 0 for x in self}; x in self iff ann . x = 0."""
        return la.nullspace(self.rows, self.n)

    def __and__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, la.nullspace(self.annihilator() + other.annihilator(), self.n))

    def std_complement(self) -> "Subspace":
        """Span of the standard basis vectors at non-pivot columns."""
        piv = set(self.pivots)
        return Subspace(self.n, tuple(la.unit(self.n, j) for j in range(self.n) if j not in piv))

    def vector(self, coeffs: Sequence) -> la.Vector:
        return la.lincomb(coeffs, self.rows, self.n)

    def __repr__(self) -> str:
        body = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(dim={self.dim}, [{body}])"


def direct_sum_ok(parts: Sequence[Subspace], whole: Subspace) -> bool:
    """True iff ``whole`` is the direct sum of ``parts``."""
    total = Subspace.zero(whole.n)
    for p in parts:
        total = total + p
    return total == whole and sum(p.dim for p in parts) == whole.dim


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric matrix of a bilinear form relative to the rows of ``basis``
    (the standard basis of Q^n when ``basis`` is None)."""

    matrix: tuple
    basis: Subspace | None = None

    def __call__(self, u: Sequence, v: Sequence) -> Fraction:
        return la.bilinear(u, self.matrix, v)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def is_symmetric(self) -> bool:
        return la.is_symmetric(self.matrix)

    def is_positive_definite(self) -> bool:
        return la.is_positive_definite(self.matrix)

    def restrict(self, sub: Subspace) -> "BilinearForm":
        """Gram matrix on the echelon basis of ``sub`` (ambient coordinates)."""
        return BilinearForm(gram(self.matrix, sub.rows), sub)


def gram(G: Sequence[Sequence], vectors: Sequence[Sequence]) -> la.Matrix:
    Gv = [la.matvec(G, v) for v in vectors]
    return tuple(tuple(la.dot(u, w) for w in Gv) for u in vectors)


def orthogonal_complement(G: Sequence[Sequence], sub: Subspace, within: Subspace) -> Subspace:
    """{x in within : G(x, sub) = 0} for an ambient form G."""
    rows = [la.matvec(G, s) for s in sub.rows]
    if not rows:
        return within
    # x = sum c_i w_i ; constraint rows . x = 0
    cons = [tuple(la.dot(r, w) for w in within.rows) for r in rows]
    sol = la.nullspace(cons, within.dim)
    return Subspace.span([within.vector(c) for c in sol], sub.n)
