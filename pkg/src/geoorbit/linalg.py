"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of row
tuples.  Elimination works on sparse ``{column: value}`` rows internally, which
keeps the large but very sparse systems (derivation algebras, equivariant
projectors) cheap.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce ``x`` (int, Fraction, or ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(xs: Iterable) -> Vector:
    return tuple(Q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int | None = None) -> Vector:
    if n is None:
        n = len(vectors[0]) if vectors else 0
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def transpose(A: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*A)) if A else ()


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if not A:
        return ()
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * m
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(tuple(acc))
    return tuple(out)


def matvec(A: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in A)


def matsub(A, B) -> Matrix:
    return tuple(sub(a, b) for a, b in zip(A, B))


def matadd(A, B) -> Matrix:
    return tuple(add(a, b) for a, b in zip(A, B))


def matscale(c, A) -> Matrix:
    return tuple(scale(c, r) for r in A)


def trace(A) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), ZERO)


def bilinear(u: Sequence, G: Sequence[Sequence], v: Sequence) -> Fraction:
    return dot(u, matvec(G, v))


def commutator(A, B) -> Matrix:
    return matsub(matmul(A, B), matmul(B, A))


def flatten(A) -> Vector:
    return tuple(x for row in A for x in row)


def unflatten(v: Sequence, n: int) -> Matrix:
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(len(v) // n))


# --------------------------------------------------------------------------
# Elimination
# --------------------------------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row-echelon basis of sparse rows."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(row)
        for p in sorted(set(v) & self.rows.keys()):
            c = v.get(p)
            if not c:
                continue
            for j, x in self.rows[p].items():
                y = v.get(j, ZERO) - c * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, row: dict[int, Fraction]) -> bool:
        v = self.reduce(row)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {j: x * inv for j, x in v.items()}
        for q, other in self.rows.items():
            c = other.get(p)
            if c:
                for j, x in v.items():
                    y = other.get(j, ZERO) - c * x
                    if y:
                        other[j] = y
                    else:
                        other.pop(j, None)
        self.rows[p] = v
        return True

    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def matrix(self) -> Matrix:
        out = []
        for p in sorted(self.rows):
            r = self.rows[p]
            out.append(tuple(r.get(j, ZERO) for j in range(self.ncols)))
        return tuple(out)


def _sparse(row: Sequence) -> dict[int, Fraction]:
    return {j: Q(x) for j, x in enumerate(row) if x}


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns; zero rows are dropped."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(_sparse(r))
    return ech.matrix(), ech.pivots()


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    ech = Echelon(ncols)
    for r in rows:
        ech.add(_sparse(r))
    return len(ech)


def nullspace(rows: Iterable[Sequence], ncols: int) -> Matrix:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(_sparse(r))
    pivots = set(ech.rows)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for p, r in ech.rows.items():
            c = r.get(f)
            if c:
                x[p] = -c
        basis.append(tuple(x))
    return tuple(basis)


class SolveResult:
    __slots__ = ("solution", "rank", "augmented_rank", "nullity")

    def __init__(self, solution, rank_, augmented_rank, nullity):
        self.solution = solution
        self.rank = rank_
        self.augmented_rank = augmented_rank
        self.nullity = nullity

    @property
    def feasible(self) -> bool:
        return self.solution is not None

    def __repr__(self):
        return (f"SolveResult(feasible={self.feasible}, rank={self.rank}, "
                f"augmented_rank={self.augmented_rank})")


def solve(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> SolveResult:
    """Solve ``A x = b`` exactly.

    Returns the pivot solution (free variables zero) or ``solution=None`` with
    ``augmented_rank > rank`` as the infeasibility certificate.
    """
    if ncols is None:
        ncols = len(A[0]) if A else 0
    ech = Echelon(ncols + 1)
    for row, rhs in zip(A, b):
        r = _sparse(row)
        if rhs:
            r[ncols] = Q(rhs)
        ech.add(r)
    aug_rank = len(ech)
    if ncols in ech.rows:
        return SolveResult(None, aug_rank - 1, aug_rank, ncols - (aug_rank - 1))
    x = [ZERO] * ncols
    for p, r in ech.rows.items():
        x[p] = r.get(ncols, ZERO)
    return SolveResult(tuple(x), aug_rank, aug_rank, ncols - aug_rank)


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    ech = Echelon(2 * n)
    for i, row in enumerate(A):
        r = _sparse(row)
        r[n + i] = ONE
        ech.add(r)
    if any(p not in ech.rows for p in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(ech.rows[i].get(n + j, ZERO) for j in range(n)) for i in range(n))


def det(A: Sequence[Sequence]) -> Fraction:
    n = len(A)
    M = [list(map(Q, r)) for r in A]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                for j in range(c, n):
                    M[i][j] -= f * M[c][j]
    return d


def charpoly(A: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Coefficients of det(tI - A), lowest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    Mk = tuple(zeros(n) for _ in range(n))
    I = identity(n)
    for k in range(1, n + 1):
        Mk = matadd(matmul(A, Mk), matscale(coeffs[n - k + 1], I))
        coeffs[n - k] = -trace(matmul(A, Mk)) / k
    return tuple(coeffs)


def rational_roots(coeffs: Sequence[Fraction]) -> tuple[list[tuple[Fraction, int]], int]:
    """Rational roots with multiplicity of the polynomial, plus the degree left
    over in irreducible factors of degree >= 2."""
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
                      t, domain=sympy.QQ)
    roots: list[tuple[Fraction, int]] = []
    leftover = 0
    _, factors = poly.factor_list()
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.append((Fraction(int(r.p), int(r.q)), mult))
        else:
            leftover += f.degree() * mult
    roots.sort()
    return roots, leftover


def inertia(G: Sequence[Sequence]) -> tuple[int, int, int]:
    """(n_positive, n_negative, n_zero) of a symmetric matrix, by congruence."""
    M = [list(map(Q, r)) for r in G]
    pos = neg = zer = 0
    while M:
        n = len(M)
        i = next((k for k in range(n) if M[k][k]), None)
        if i is None:
            off = next(((a, b) for a in range(n) for b in range(n) if a != b and M[a][b]), None)
            if off is None:
                zer += n
                break
            a, b = off
            # x_a <- x_a + x_b makes the (a,a) entry 2*M[a][b] != 0
            for k in range(n):
                M[a][k] += M[b][k]
            for k in range(n):
                M[k][a] += M[k][b]
            i = a
        piv = M[i][i]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rest = [k for k in range(n) if k != i]
        M = [[M[r][c] - M[r][i] * M[i][c] / piv for c in rest] for r in rest]
    return pos, neg, zer


def is_positive_definite(G: Sequence[Sequence]) -> bool:
    """Sylvester's criterion: every leading principal minor is positive."""
    n = len(G)
    if any(G[i][j] != G[j][i] for i in range(n) for j in range(n)):
        return False
    return all(det([row[:k] for row in G[:k]]) > 0 for k in range(1, n + 1))


def is_symmetric(G: Sequence[Sequence]) -> bool:
    n = len(G)
    return all(G[i][j] == G[j][i] for i in range(n) for j in range(i + 1, n))
