"""Metric reductive spaces g = h + m with an ad(h)-invariant inner product on m."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from . import liealg as L
from . import linalg as la
from .errors import (ComplementNotInvariant, DimensionMismatch, InternalInconsistency,
                     IsotropyNotCompactType, LeviNotInvariant, MetricNotInvariant,
                     MetricNotPositive, NotASubalgebra, NumericFallbackWarning)
from .liealg import LieAlgebra
from .subspace import Subspace, direct_sum_ok, gram, orthogonal_complement

NUMERIC_TOL = 1e-9

STRATEGIES = ("killing_orthogonal", "explicit", "form_orthogonal", "levi_split",
              "nilradical_adapted", "rem1_variant")


@dataclass(frozen=True, eq=False)
class MetricReductiveSpace:
    """g = h + m with ``ip`` the Gram matrix of the inner product on the echelon basis of m.

    Construction validates every structural invariant and raises on the first failure.
    """

    g: LieAlgebra
    h: Subspace
    m: Subspace
    ip: tuple
    label: str = ""

    def __post_init__(self):
        n = self.g.dim
        if self.h.n != n or self.m.n != n:
            raise DimensionMismatch("h and m must live in g")
        if self.h.dim + self.m.dim != n or not (self.h & self.m).is_zero():
            raise DimensionMismatch("g is not the direct sum of h and m")
        if len(self.ip) != self.m.dim or any(len(r) != self.m.dim for r in self.ip):
            raise DimensionMismatch(f"metric must be {self.m.dim}x{self.m.dim} on the m basis")
        object.__setattr__(self, "ip", la.mat(self.ip))
        if not L.is_subalgebra(self.g, self.h):
            raise NotASubalgebra("isotropy h is not a subalgebra")
        for z in self.h.rows:
            for x in self.m.rows:
                if not self.m.contains(self.g.bracket(z, x)):
                    raise ComplementNotInvariant("[h, m] is not contained in m")
        if not la.is_symmetric(self.ip) or not la.is_positive_definite(self.ip):
            raise MetricNotPositive("metric on m is not symmetric positive definite")
        for a, Z in enumerate(self.h.rows):
            adz = self.ad_m(Z)
            S = la.matmul(la.transpose(adz), self.ip)
            for i in range(self.m.dim):
                for j in range(i, self.m.dim):
                    if S[i][j] + S[j][i]:
                        raise MetricNotInvariant(
                            f"metric not ad(h)-invariant at h-basis {a}, m-basis ({i}, {j})",
                            triple=(a, i, j))
        if self.h.dim:
            Bh = gram(L._killing_matrix(self.g), self.h.rows)
            if not la.is_positive_definite(la.matscale(-1, Bh)):
                raise IsotropyNotCompactType("Killing form is not negative definite on h")

    # -- coordinates -------------------------------------------------------

    @cached_property
    def _split_inverse(self) -> la.Matrix:
        return la.inverse(la.transpose(self.h.rows + self.m.rows))

    def _split(self, v: Sequence) -> la.Vector:
        return la.matvec(self._split_inverse, v)

    def m_coords(self, v: Sequence) -> la.Vector:
        """Coordinates of the m-component of v in the echelon basis of m."""
        return self._split(v)[self.h.dim:]

    def h_coords(self, v: Sequence) -> la.Vector:
        return self._split(v)[:self.h.dim]

    def from_m(self, c: Sequence) -> la.Vector:
        return self.m.vector(c)

    def from_h(self, c: Sequence) -> la.Vector:
        return self.h.vector(c)

    def m_part(self, v: Sequence) -> la.Vector:
        return self.from_m(self.m_coords(v))

    def h_part(self, v: Sequence) -> la.Vector:
        return self.from_h(self.h_coords(v))

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """Inner product of the m-components of x and y."""
        return la.bilinear(self.m_coords(x), self.ip, self.m_coords(y))

    def bracket_m(self, x: Sequence, y: Sequence) -> la.Vector:
        return self.m_part(self.g.bracket(x, y))

    def ad_m(self, x: Sequence) -> la.Matrix:
        """Matrix of Y -> [x, Y]_m on m coordinates."""
        cols = [self.m_coords(self.g.bracket(x, b)) for b in self.m.rows]
        return la.transpose(cols) if cols else ()

    @cached_property
    def isotropy_ops(self) -> tuple:
        return tuple(self.ad_m(z) for z in self.h.rows)

    @cached_property
    def killing_m(self) -> la.Matrix:
        return gram(L._killing_matrix(self.g), self.m.rows)

    def ambient_form(self) -> la.Matrix:
        """Positive ad(h)-invariant form on g: -B on h, the metric on m, h orthogonal to m."""
        Bh = gram(L._killing_matrix(self.g), self.h.rows)
        k, d = self.h.dim, self.m.dim
        blocks = [[-Bh[i][j] if i < k and j < k else
                   (self.ip[i - k][j - k] if i >= k and j >= k else la.ZERO)
                   for j in range(k + d)] for i in range(k + d)]
        inv = self._split_inverse
        return la.matmul(la.matmul(la.transpose(inv), blocks), inv)

    # -- derived objects ---------------------------------------------------

    def with_complement(self, new_m: Subspace, label: str | None = None) -> "MetricReductiveSpace":
        """Same homogeneous metric presented on another invariant complement.

        The tangent space is g/h; each X' in new_m is identified with its m-component.
        """
        if new_m.n != self.g.dim or new_m.dim != self.m.dim:
            raise DimensionMismatch("new complement has the wrong dimension")
        P = [self.m_coords(v) for v in new_m.rows]
        ip2 = tuple(tuple(la.bilinear(p, self.ip, q) for q in P) for p in P)
        return MetricReductiveSpace(self.g, self.h, new_m, ip2, self.label if label is None else label)

    def canonical(self) -> tuple:
        return (self.g.structure_key(), self.h.rows, self.m.rows, self.ip)

    def __eq__(self, other) -> bool:
        return isinstance(other, MetricReductiveSpace) and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"MetricReductiveSpace({tag} dim g={self.g.dim}, dim h={self.h.dim}, dim m={self.m.dim})"


# ---------------------------------------------------------------------------
# invariant complements
# ---------------------------------------------------------------------------


def _restrict_op(op: la.Matrix, V: Subspace) -> la.Matrix:
    """Matrix of ``op`` (ambient, acting on columns) on the invariant subspace V."""
    cols = [V.coords(la.matvec(op, v)) for v in V.rows]
    return la.transpose(cols) if cols else ()


def invariant_complement(ops: Sequence[la.Matrix], V: Subspace, W: Subspace) -> Subspace:
    """An ops-invariant complement of V inside W (both ops-invariant).

    Solves for an equivariant projection P: W -> V with P|V = id and takes ker P.
    The pivot solution of the linear system makes the choice deterministic.
    """
    if not V <= W:
        raise DimensionMismatch("V must lie in W")
    dv, dw = V.dim, W.dim
    if dv == 0:
        return W
    if dv == dw:
        return Subspace.zero(W.n)
    Ms = [_restrict_op(op, W) for op in ops]
    Ns = [_restrict_op(op, V) for op in ops]
    var = lambda a, b: a * dw + b  # noqa: E731
    rows, rhs = [], []
    for a, v in enumerate(V.rows):
        c = W.coords(v)
        for a2 in range(dv):
            row = [la.ZERO] * (dv * dw)
            for b, x in enumerate(c):
                if x:
                    row[var(a2, b)] = x
            rows.append(row)
            rhs.append(la.ONE if a2 == a else la.ZERO)
    for M, N in zip(Ms, Ns):
        for a2 in range(dv):
            for b in range(dw):
                row = [la.ZERO] * (dv * dw)
                for c in range(dw):
                    if M[c][b]:
                        row[var(a2, c)] += M[c][b]
                for a in range(dv):
                    if N[a2][a]:
                        row[var(a, b)] -= N[a2][a]
                rows.append(row)
                rhs.append(la.ZERO)
    sol = la.solve(rows, rhs, dv * dw)
    if not sol.feasible:
        raise ComplementNotInvariant("no invariant complement exists (action not fully reducible)")
    P = [[sol.solution[var(a, b)] for b in range(dw)] for a in range(dv)]
    kernel = la.nullspace(P, dw)
    return Subspace.span([W.vector(c) for c in kernel], W.n)


def _ad_ops(g: LieAlgebra, h: Subspace) -> list[la.Matrix]:
    return [g.ad(z) for z in h.rows]


# ---------------------------------------------------------------------------
# build_reductive
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricSpec:
    """How the inner product on m is given.

    ``explicit``: Gram matrix on the echelon basis of m.  ``ambient``: an n x n
    symmetric matrix on g restricted to m.  ``killing_multiple``: factor * (-B) on m.
    """

    kind: str
    matrix: tuple | None = None
    factor: Fraction | None = None

    @classmethod
    def explicit(cls, matrix) -> "MetricSpec":
        return cls("explicit", la.mat(matrix))

    @classmethod
    def ambient(cls, matrix) -> "MetricSpec":
        return cls("ambient", la.mat(matrix))

    @classmethod
    def killing_multiple(cls, factor) -> "MetricSpec":
        return cls("killing_multiple", factor=la.Q(factor))

    def gram_on(self, g: LieAlgebra, m: Subspace) -> la.Matrix:
        if self.kind == "explicit":
            if len(self.matrix) != m.dim:
                raise DimensionMismatch(f"explicit metric must be {m.dim}x{m.dim}")
            return self.matrix
        if self.kind == "ambient":
            if len(self.matrix) != g.dim:
                raise DimensionMismatch(f"ambient metric must be {g.dim}x{g.dim}")
            return gram(self.matrix, m.rows)
        if self.kind == "killing_multiple":
            return la.matscale(-self.factor, gram(L._killing_matrix(g), m.rows))
        raise ValueError(f"unknown metric kind {self.kind!r}")


def _as_subspace(g: LieAlgebra, s) -> Subspace:
    if s is None:
        return Subspace.zero(g.dim)
    if isinstance(s, Subspace):
        return s
    return Subspace.span([la.vec(v) for v in s], g.dim)


def _as_metric(metric, g: LieAlgebra, m_dim: int) -> MetricSpec:
    if isinstance(metric, MetricSpec):
        return metric
    mat = la.mat(metric)
    if len(mat) == m_dim:
        return MetricSpec("explicit", mat)
    if len(mat) == g.dim:
        return MetricSpec("ambient", mat)
    raise DimensionMismatch("metric matrix matches neither dim m nor dim g")


def _levi_pieces(g: LieAlgebra, h: Subspace, s: Subspace):
    check = L.verify_levi(g, s)
    if not check:
        raise LeviNotInvariant("; ".join(check.diagnostics))
    for z in h.rows:
        for x in s.rows:
            if not s.contains(g.bracket(z, x)):
                raise LeviNotInvariant("Levi factor is not ad(h)-invariant")
    r = L.radical(g)
    ops = _ad_ops(g, h)
    phi, psi = _levi_projections(g, r, s)
    psi_h = Subspace.span([psi(z) for z in h.rows], g.dim)
    ker_psi = h & r
    m2 = invariant_complement(ops, psi_h, s)
    return r, ops, ker_psi, m2


def _levi_projections(g: LieAlgebra, r: Subspace, s: Subspace):
    inv = la.inverse(la.transpose(r.rows + s.rows))
    k = r.dim

    def phi(v):
        c = la.matvec(inv, v)
        return r.vector(c[:k])

    def psi(v):
        c = la.matvec(inv, v)
        return s.vector(c[k:])

    return phi, psi


def complement_for(g: LieAlgebra, h: Subspace, strategy: str, *, m=None, levi=None,
                   form=None) -> Subspace:
    """The reductive complement m selected by ``strategy`` (metric-independent)."""
    h = _as_subspace(g, h)
    if strategy == "killing_orthogonal":
        comp = L.killing_orthogonal(g, h)
        if not L.nilradical(g) <= comp:
            raise InternalInconsistency("nilradical not inside the Killing-orthogonal complement")
        return comp
    if strategy == "explicit":
        if m is None:
            raise ValueError("explicit strategy needs m")
        return _as_subspace(g, m)
    if strategy == "form_orthogonal":
        if form is None:
            raise ValueError("form_orthogonal strategy needs an ambient form")
        return orthogonal_complement(la.mat(form), h, Subspace.full(g.dim))
    if strategy not in ("levi_split", "nilradical_adapted", "rem1_variant"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if levi is None:
        raise ValueError(f"{strategy} needs a Levi factor")
    s = _as_subspace(g, levi)
    r, ops, ker_psi, m2 = _levi_pieces(g, h, s)
    if strategy == "levi_split":
        m1 = invariant_complement(ops, ker_psi, r)
    elif strategy == "nilradical_adapted":
        n = L.nilradical(g)
        u = invariant_complement(ops, n + ker_psi, r)
        if any(not la.is_zero(g.bracket(z, x)) for z in h.rows for x in u.rows):
            raise InternalInconsistency("[h, u] != 0 for the nilradical-adapted complement")
        m1 = n + u
        if not n <= m1:
            raise InternalInconsistency("nilradical not inside m1")
    else:
        m1p = L.killing_orthogonal(g, s + h)
        if not (L.nilradical(g) <= m1p and m1p <= r):
            raise InternalInconsistency("n(g) <= m1' <= r(g) fails")
        m1pp = invariant_complement(ops, m1p + ker_psi, r)
        m1 = m1p + m1pp
    return m1 + m2


def build_reductive(g: LieAlgebra, h, metric, strategy: str = "killing_orthogonal", *,
                    m=None, levi=None, form=None, label: str = "") -> MetricReductiveSpace:
    """Choose a reductive complement by ``strategy`` and attach the metric.

    Strategies: killing_orthogonal, explicit (``m``), form_orthogonal (``form``,
    an ambient symmetric matrix), levi_split / nilradical_adapted / rem1_variant
    (``levi``, an ad(h)-invariant Levi factor).
    """
    h = _as_subspace(g, h)
    if h.dim:
        Bh = gram(L._killing_matrix(g), h.rows)
        if not la.is_positive_definite(la.matscale(-1, Bh)):
            raise IsotropyNotCompactType("Killing form is not negative definite on h")
    comp = complement_for(g, h, strategy, m=m, levi=levi, form=form)
    spec = _as_metric(metric, g, comp.dim)
    return MetricReductiveSpace(g, h, comp, spec.gram_on(g, comp), label)


# ---------------------------------------------------------------------------
# connection data
# ---------------------------------------------------------------------------


def u_map(space: MetricReductiveSpace, X: Sequence, Y: Sequence) -> la.Vector:
    """U(X, Y) in m, defined by 2 (U(X,Y), Z) = ([Z,X]_m, Y) + (X, [Z,Y]_m)."""
    rhs = []
    for Z in space.m.rows:
        rhs.append((space.inner(space.g.bracket(Z, X), Y) + space.inner(X, space.g.bracket(Z, Y))) / 2)
    sol = la.solve(space.ip, rhs)
    return space.from_m(sol.solution)


def nabla_at_origin(space: MetricReductiveSpace, X: Sequence, Y: Sequence) -> la.Vector:
    return la.add(la.scale(Fraction(-1, 2), space.bracket_m(X, Y)), u_map(space, X, Y))


# ---------------------------------------------------------------------------
# Killing operator
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class KillingOperatorSpectrum:
    space: MetricReductiveSpace
    A: la.Matrix  # on m coordinates: B(X, Y) = (A X, Y)
    mode: str  # "exact" | "numeric"
    eigenvalues: tuple  # Fractions (exact) or floats (numeric), ascending
    multiplicities: tuple
    eigenspaces: tuple  # Subspaces of g (exact mode); empty in numeric mode
    numeric_bases: tuple = ()  # float eigenvector bases (numeric mode)
    a0_is_ideal: bool | None = None

    def eigenspace(self, value) -> Subspace:
        for lam, sp in zip(self.eigenvalues, self.eigenspaces):
            if lam == value:
                return sp
        return Subspace.zero(self.space.g.dim)

    @property
    def nonzero(self) -> tuple:
        return tuple((lam, sp) for lam, sp in zip(self.eigenvalues, self.eigenspaces) if lam != 0)


def killing_operator(space: MetricReductiveSpace) -> la.Matrix:
    return la.matmul(la.inverse(space.ip), space.killing_m)


def killing_operator_decomposition(space: MetricReductiveSpace) -> KillingOperatorSpectrum:
    """Eigen-decomposition of the Killing operator A on m.

    Exact when the characteristic polynomial splits over Q; otherwise a floating
    point generalized eigenproblem is solved and NumericFallbackWarning is issued.
    """
    A = killing_operator(space)
    k = space.m.dim
    if k == 0:
        return KillingOperatorSpectrum(space, A, "exact", (), (), ())
    roots, leftover = la.rational_roots(la.charpoly(A))
    if leftover:
        return _numeric_spectrum(space, A)
    values, mults, spaces = [], [], []
    for lam, mult in roots:
        shifted = la.matsub(A, la.matscale(lam, la.identity(k)))
        kern = la.nullspace(shifted, k)
        if len(kern) != mult:
            raise InternalInconsistency("Killing operator is not diagonalizable over Q")
        values.append(lam)
        mults.append(mult)
        spaces.append(Subspace.span([space.from_m(c) for c in kern], space.g.dim))
    if sum(mults) != k:
        raise InternalInconsistency("eigenspaces do not span m")
    B = L._killing_matrix(space.g)
    for (a, U), (b, V) in itertools.combinations(list(zip(values, spaces)), 2):
        for u in U.rows:
            for v in V.rows:
                if space.inner(u, v) or la.bilinear(u, B, v):
                    raise InternalInconsistency(f"eigenspaces {a} and {b} are not orthogonal")
    for U in spaces:
        for z in space.h.rows:
            if any(not U.contains(space.g.bracket(z, u)) for u in U.rows):
                raise InternalInconsistency("eigenspace is not ad(h)-invariant")
    a0_ideal = None
    killing_orth = all(la.bilinear(x, B, z) == 0 for x in space.m.rows for z in space.h.rows)
    if killing_orth:
        A0 = next((sp for lam, sp in zip(values, spaces) if lam == 0), Subspace.zero(space.g.dim))
        a0_ideal = L.is_ideal(space.g, A0)
        if not a0_ideal:
            raise InternalInconsistency("A_0 is not an ideal although m is Killing-orthogonal to h")
    return KillingOperatorSpectrum(space, A, "exact", tuple(values), tuple(mults), tuple(spaces),
                                   a0_is_ideal=a0_ideal)


def _numeric_spectrum(space: MetricReductiveSpace, A: la.Matrix) -> KillingOperatorSpectrum:
    import numpy as np

    warnings.warn("Killing operator spectrum is irrational; using floating point",
                  NumericFallbackWarning, stacklevel=3)
    G = np.array([[float(x) for x in r] for r in space.ip])
    Bm = np.array([[float(x) for x in r] for r in space.killing_m])
    Lc = np.linalg.cholesky(G)
    Li = np.linalg.inv(Lc)
    w, V = np.linalg.eigh(Li @ Bm @ Li.T)
    X = Li.T @ V
    M = np.array([[float(x) for x in r] for r in space.m.rows]).reshape(space.m.dim, space.g.dim)
    values, mults, bases = [], [], []
    for i, lam in enumerate(w):
        vec_amb = tuple(float(t) for t in X[:, i] @ M)
        if values and abs(lam - values[-1]) <= NUMERIC_TOL * max(1.0, abs(lam)):
            mults[-1] += 1
            bases[-1].append(vec_amb)
        else:
            values.append(float(lam))
            mults.append(1)
            bases.append([vec_amb])
    return KillingOperatorSpectrum(space, A, "numeric", tuple(values), tuple(mults), (),
                                   tuple(tuple(b) for b in bases))


# ---------------------------------------------------------------------------
# irreducible submodules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleDecomposition:
    modules: tuple  # Subspaces of g
    status: tuple  # "irreducible" | "unverified", per module
    eigenvalues: tuple  # Killing eigenvalue of the containing A_alpha (None in numeric mode)

    @property
    def certified(self) -> bool:
        return all(s == "irreducible" for s in self.status)


class _ModuleSplitter:
    """Works in m coordinates with the Gram matrix G and isotropy operators."""

    def __init__(self, G, ops):
        self.G = G
        self.ops = ops
        self.k = len(G)

    def cyclic(self, v) -> Subspace:
        ech = la.Echelon(self.k)
        frontier = [v]
        vecs = []
        while frontier:
            x = frontier.pop()
            if ech.add({j: c for j, c in enumerate(x) if c}):
                vecs.append(x)
                frontier.extend(la.matvec(op, x) for op in self.ops)
        return Subspace.span(vecs, self.k)

    def sym_commutant(self, V: Subspace) -> list[la.Matrix]:
        d = V.dim
        Ns = [_restrict_op(op, V) for op in self.ops]
        GV = gram(self.G, V.rows)
        rows = []
        idx = lambda i, j: i * d + j  # noqa: E731
        for N in Ns:
            for i in range(d):
                for j in range(d):
                    row = [la.ZERO] * (d * d)
                    for l_ in range(d):
                        if N[l_][j]:
                            row[idx(i, l_)] += N[l_][j]
                        if N[i][l_]:
                            row[idx(l_, j)] -= N[i][l_]
                    rows.append(row)
        for i in range(d):
            for j in range(d):
                row = [la.ZERO] * (d * d)
                for l_ in range(d):
                    if GV[i][l_]:
                        row[idx(l_, j)] += GV[i][l_]
                    if GV[l_][j]:
                        row[idx(l_, i)] -= GV[l_][j]
                rows.append(row)
        return [la.unflatten(v, d) for v in la.nullspace(rows, d * d)]

    def split(self, V: Subspace) -> list[tuple[Subspace, str]]:
        if V.dim <= 1:
            return [(V, "irreducible")]
        for v in V.rows:
            C = self.cyclic(v)
            if C.dim < V.dim:
                rest = orthogonal_complement(self.G, C, V)
                return self.split(C) + self.split(rest)
        comm = self.sym_commutant(V)
        if len(comm) <= 1:
            return [(V, "irreducible")]
        for T in comm:
            roots, _ = la.rational_roots(la.charpoly(T))
            for lam, _mult in roots:
                kern = la.nullspace(la.matsub(T, la.matscale(lam, la.identity(V.dim))), V.dim)
                if 0 < len(kern) < V.dim:
                    W = Subspace.span([V.vector(c) for c in kern], self.k)
                    rest = orthogonal_complement(self.G, W, V)
                    return self.split(W) + self.split(rest)
        warnings.warn("module splitting needs irrational eigenvalues; left unverified",
                      NumericFallbackWarning, stacklevel=3)
        return [(V, "unverified")]


def submodule_decomposition(space: MetricReductiveSpace,
                            spectrum: KillingOperatorSpectrum | None = None) -> SubmoduleDecomposition:
    """Orthogonal decomposition of m into ad(h)-irreducible submodules refining the
    Killing eigenspaces; ordered by eigenvalue, then by pivot columns."""
    spec = spectrum if spectrum is not None else killing_operator_decomposition(space)
    splitter = _ModuleSplitter(space.ip, space.isotropy_ops)
    k = space.m.dim
    if spec.mode == "exact":
        pieces = [(lam, Subspace.span([space.m_coords(v) for v in sp.rows], k))
                  for lam, sp in zip(spec.eigenvalues, spec.eigenspaces)]
    else:
        pieces = [(None, Subspace.full(k))]
    out = []
    for lam, V in pieces:
        parts = splitter.split(V)
        amb = [(Subspace.span([space.from_m(c) for c in W.rows], space.g.dim), st) for W, st in parts]
        amb.sort(key=lambda p: (p[0].pivots, p[0].rows))
        out.extend((lam, W, st) for W, st in amb)
    return SubmoduleDecomposition(tuple(W for _, W, _ in out), tuple(st for _, _, st in out),
                                  tuple(lam for lam, _, _ in out))


# ---------------------------------------------------------------------------
# Levi split of the isotropy algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsotropySplit:
    phi_image: Subspace
    psi_image: Subspace
    ker_psi: Subspace
    h_cap_s: Subspace
    h2: Subspace


def isotropy_levi_split(space: MetricReductiveSpace, s) -> IsotropySplit:
    """Project h along g = r(g) + s and verify the three decompositions of h."""
    g, h = space.g, space.h
    s = _as_subspace(g, s)
    check = L.verify_levi(g, s)
    if not check:
        raise LeviNotInvariant("; ".join(check.diagnostics))
    if any(not s.contains(g.bracket(z, x)) for z in h.rows for x in s.rows):
        raise LeviNotInvariant("[h, s] is not contained in s")
    r = L.radical(g)
    phi, psi = _levi_projections(g, r, s)
    phi_h = Subspace.span([phi(z) for z in h.rows], g.dim)
    psi_h = Subspace.span([psi(z) for z in h.rows], g.dim)
    ker_psi = h & r
    h_cap_s = h & s
    B = L._killing_matrix(g)
    # -B is an ad(h)-invariant inner product on h, so orthocomplements are invariant
    h2 = orthogonal_complement(B, h_cap_s + ker_psi, h)
    problems = []
    if not L.is_subalgebra(g, phi_h) or any(not la.is_zero(g.bracket(x, y)) for x in phi_h.rows for y in s.rows):
        problems.append("phi(h) is not a subalgebra commuting with s")
    if any(not la.is_zero(g.bracket(x, y)) for x in h2.rows for y in h.rows):
        problems.append("h2 is not central in h")
    if not direct_sum_ok([h2, ker_psi, h_cap_s], h):
        problems.append("h != h2 + (h & r) + (h & s)")
    phi_h2 = Subspace.span([phi(z) for z in h2.rows], g.dim)
    psi_h2 = Subspace.span([psi(z) for z in h2.rows], g.dim)
    if not direct_sum_ok([phi_h2, ker_psi], phi_h):
        problems.append("phi(h) != phi(h2) + (h & r)")
    if not direct_sum_ok([psi_h2, h_cap_s], psi_h):
        problems.append("psi(h) != psi(h2) + (h & s)")
    if phi_h2.dim != h2.dim or psi_h2.dim != h2.dim:
        problems.append("phi or psi is not injective on h2")
    if problems:
        raise InternalInconsistency("; ".join(problems))
    return IsotropySplit(phi_h, psi_h, ker_psi, h_cap_s, h2)


# ---------------------------------------------------------------------------
# centralizer / normalizer structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalizerStructures:
    c_part: Subspace  # C_g(h) & m
    hm: Subspace  # [h, m]
    k: Subspace  # C_g(h) + [h, h]
    normalizer: Subspace
    q: Subspace
    checks: tuple  # (name, bool) pairs

    def ok(self) -> bool:
        return all(v for _, v in self.checks)


def normalizer_structures(space: MetricReductiveSpace) -> NormalizerStructures:
    g, h, m = space.g, space.h, space.m
    cgh = L.centralizer(g, h)
    c_part = cgh & m
    hm = L.bracket_spaces(g, h, m)
    hh = L.bracket_spaces(g, h, h)
    k = cgh + hh
    norm = L.normalizer(g, h)
    B = L._killing_matrix(g)
    r = L.radical(g)
    rg = L.bracket_spaces(g, r, L.full(g))
    rm = r & m
    q = orthogonal_complement(space.ambient_form(), rg & m, rm)
    checks = (
        ("m = (C_g(h) & m) + [h,m]", direct_sum_ok([c_part, hm], m)),
        ("ip-orthogonal", all(space.inner(x, y) == 0 for x in c_part.rows for y in hm.rows)),
        ("B-orthogonal", all(la.bilinear(x, B, y) == 0 for x in c_part.rows for y in hm.rows)),
        ("C_g(h) B-orthogonal to [h,g]", all(la.bilinear(x, B, y) == 0 for x in cgh.rows
                                            for y in (hh + hm).rows)),
        ("normalizer = C_g(h) + [h,h]", norm == k),
    )
    return NormalizerStructures(c_part, hm, k, norm, q, checks)
