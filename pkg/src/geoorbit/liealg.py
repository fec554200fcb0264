"""Finite-dimensional Lie algebras over Q given by sparse structure constants.

Everything here is exact; vectors are coordinate tuples in the algebra's basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import (DimensionMismatch, InternalInconsistency, JacobiViolation,
                     NotAnIdeal, NotASubalgebra)
from .subspace import BilinearForm, Subspace

DEFAULT_MAX_DIM = 64


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Lie algebra with [e_i, e_j] = sum_k c^k_ij e_k stored for i < j only."""

    dim: int
    basis_names: tuple
    structure: Mapping  # (i, j) -> tuple of (k, Fraction), i < j

    @cached_property
    def _table(self) -> list[list[dict[int, Fraction]]]:
        t = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), terms in self.structure.items():
            for k, c in terms:
                t[i][j][k] = c
                t[j][i][k] = -c
        return t

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self._table[i][j]

    def bracket(self, u: Sequence, v: Sequence) -> la.Vector:
        out = [la.ZERO] * self.dim
        t = self._table
        for i, a in enumerate(u):
            if not a:
                continue
            row = t[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return tuple(out)

    def ad(self, x: Sequence) -> la.Matrix:
        """Matrix of ad(x) acting on column coordinate vectors."""
        cols = [self.bracket(x, la.unit(self.dim, j)) for j in range(self.dim)]
        return la.transpose(cols)

    @cached_property
    def ad_basis(self) -> tuple:
        return tuple(self.ad(la.unit(self.dim, i)) for i in range(self.dim))

    def unit(self, i: int) -> la.Vector:
        return la.unit(self.dim, i)

    def vector(self, coeffs: Mapping[int, object] | Sequence) -> la.Vector:
        if isinstance(coeffs, Mapping):
            v = [la.ZERO] * self.dim
            for i, c in coeffs.items():
                v[i] = la.Q(c)
            return tuple(v)
        return la.vec(coeffs)

    def structure_key(self) -> tuple:
        return (self.dim, tuple(sorted((ij, tuple(sorted(t))) for ij, t in self.structure.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.structure_key() == other.structure_key()

    def __hash__(self) -> int:
        return hash(self.structure_key())

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero_brackets={len(self.structure)})"


def _normalize_structure(dim: int, structure_data) -> dict:
    """Accept {(i, j): terms} or an iterable of (i, j, terms); terms either a
    mapping k -> c or a sequence of (k, c).  Pairs with i > j are flipped."""
    items = structure_data.items() if isinstance(structure_data, Mapping) else (
        ((t[0], t[1]), t[2]) for t in structure_data)
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), terms in items:
        if not (0 <= i < dim and 0 <= j < dim):
            raise DimensionMismatch(f"bracket index ({i}, {j}) outside 0..{dim - 1}")
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if i == j:
            if any(la.Q(c) for _, c in pairs):
                raise DimensionMismatch(f"[e{i}, e{i}] must vanish")
            continue
        acc = out.setdefault((i, j), {})
        for k, c in pairs:
            if not 0 <= k < dim:
                raise DimensionMismatch(f"bracket target {k} outside 0..{dim - 1}")
            acc[k] = acc.get(k, la.ZERO) + sign * la.Q(c)
    return {ij: tuple(sorted((k, c) for k, c in t.items() if c)) for ij, t in out.items()
            if any(t.values())}


def validate_algebra(dim: int, structure_data=(), basis_names: Sequence[str] | None = None,
                     max_dim: int = DEFAULT_MAX_DIM) -> LieAlgebra:
    """Build a LieAlgebra, checking the Jacobi identity on every basis triple."""
    if dim <= 0:
        raise DimensionMismatch("dimension must be positive")
    if dim > max_dim:
        raise DimensionMismatch(f"dimension {dim} exceeds the cap {max_dim}")
    if basis_names is None:
        basis_names = tuple(f"e{i + 1}" for i in range(dim))
    if len(basis_names) != dim:
        raise DimensionMismatch("basis_names length differs from dimension")
    g = LieAlgebra(dim, tuple(basis_names), _normalize_structure(dim, structure_data))
    for i, j, k in itertools.combinations(range(dim), 3):
        ei, ej, ek = g.unit(i), g.unit(j), g.unit(k)
        res = la.add(la.add(g.bracket(g.bracket(ei, ej), ek), g.bracket(g.bracket(ej, ek), ei)),
                     g.bracket(g.bracket(ek, ei), ej))
        if not la.is_zero(res):
            raise JacobiViolation(i, j, k, res)
    return g


def abelian(dim: int) -> LieAlgebra:
    return validate_algebra(dim, {})


# --------------------------------------------------------------------------
# Killing form and subspace brackets
# --------------------------------------------------------------------------


def killing_form(g: LieAlgebra) -> BilinearForm:
    """B(x, y) = trace(ad x . ad y) on the standard basis."""
    return BilinearForm(_killing_matrix(g))


def _killing_matrix(g: LieAlgebra) -> la.Matrix:
    cached = g.__dict__.get("_killing")
    if cached is not None:
        return cached
    n = g.dim
    t = g._table
    # B_ij = sum_{k,l} c^k_{il} c^l_{jk}
    B = [[la.ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = la.ZERO
            for l_, kl in enumerate(t[i]):
                for k, c in kl.items():
                    d = t[j][k].get(l_)
                    if d:
                        s += c * d
            B[i][j] = B[j][i] = s
    out = tuple(tuple(r) for r in B)
    g.__dict__["_killing"] = out
    return out


def bracket_spaces(g: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace.span([g.bracket(u, v) for u in U.rows for v in V.rows], g.dim)


def full(g: LieAlgebra) -> Subspace:
    return Subspace.full(g.dim)


def span(g: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace.span([la.vec(v) for v in vectors], g.dim)


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(a, b)) for a, b in itertools.combinations(s.rows, 2))


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(la.unit(g.dim, i), v)) for i in range(g.dim) for v in s.rows)


def ker_killing(g: LieAlgebra) -> Subspace:
    return Subspace(g.dim, la.nullspace(_killing_matrix(g), g.dim))


def killing_orthogonal(g: LieAlgebra, s: Subspace) -> Subspace:
    """{x : B(x, s) = 0}."""
    B = _killing_matrix(g)
    rows = [la.matvec(B, v) for v in s.rows]
    return Subspace(g.dim, la.nullspace(rows, g.dim))


# --------------------------------------------------------------------------
# Series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    derived_series: tuple
    lower_central_series: tuple
    is_solvable: bool
    is_nilpotent: bool
    nilpotency_class: int | None


def derived_series(g: LieAlgebra, sub: Subspace | None = None) -> tuple:
    cur = sub if sub is not None else full(g)
    chain = [cur]
    while not cur.is_zero():
        nxt = bracket_spaces(g, cur, cur)
        if nxt == cur:
            break
        chain.append(nxt)
        cur = nxt
    return tuple(chain)


def lower_central_series(g: LieAlgebra, sub: Subspace | None = None) -> tuple:
    top = sub if sub is not None else full(g)
    cur = top
    chain = [cur]
    while not cur.is_zero():
        nxt = bracket_spaces(g, top, cur)
        if nxt == cur:
            break
        chain.append(nxt)
        cur = nxt
    return tuple(chain)


def series_analysis(g: LieAlgebra, sub: Subspace | None = None) -> SeriesReport:
    """Derived and lower central series of g (or of the subalgebra ``sub``).

    The nilpotency class counts the nonzero terms of the lower central series:
    abelian nonzero algebras have class 1, the zero algebra class 0.
    """
    if sub is not None and not is_subalgebra(g, sub):
        raise NotASubalgebra("series requested for a subspace that is not a subalgebra")
    ds = derived_series(g, sub)
    lcs = lower_central_series(g, sub)
    solvable = ds[-1].is_zero()
    nilpotent = lcs[-1].is_zero()
    cls = sum(1 for s in lcs if not s.is_zero()) if nilpotent else None
    return SeriesReport(ds, lcs, solvable, nilpotent, cls)


# --------------------------------------------------------------------------
# Radical and nilradical
# --------------------------------------------------------------------------


def derived_algebra(g: LieAlgebra) -> Subspace:
    return bracket_spaces(g, full(g), full(g))


def radical(g: LieAlgebra) -> Subspace:
    """Solvable radical: the Killing-orthogonal complement of [g, g]."""
    r = killing_orthogonal(g, derived_algebra(g))
    if not series_analysis(g, r).is_solvable or not is_ideal(g, r):
        raise InternalInconsistency("B-orthogonal of [g,g] is not a solvable ideal")
    return r


def _restricted_ad(g: LieAlgebra, x: Sequence, sub: Subspace) -> la.Matrix:
    """Matrix of ad(x) restricted to the invariant subspace ``sub`` (sub coords)."""
    cols = [sub.coords(g.bracket(x, s)) for s in sub.rows]
    return la.transpose(cols) if cols else ()


def _associative_envelope(gens: Sequence[la.Matrix], size: int) -> list[la.Matrix]:
    """Basis of the unital associative algebra generated by ``gens``."""
    ech = la.Echelon(size * size)
    basis: list[la.Matrix] = []
    queue = [la.identity(size)]
    while queue:
        w = queue.pop()
        if not ech.add({j: x for j, x in enumerate(la.flatten(w)) if x}):
            continue
        basis.append(w)
        for a in gens:
            queue.append(la.matmul(a, w))
    return basis


def nilradical(g: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal.

    x in r(g) lies in the nilradical iff ad x is nilpotent, iff ad_r(x) lies in
    the trace-form radical of the associative algebra generated by ad_r(r) and
    the identity.  Since ad_r(x) belongs to that algebra, membership reduces to
    the linear conditions trace(ad_r(x) w) = 0 over a basis w of the algebra.
    """
    r = radical(g)
    if r.is_zero():
        n = r
    else:
        ads = [_restricted_ad(g, x, r) for x in r.rows]
        env = _associative_envelope(ads, r.dim)
        env_t = [la.flatten(la.transpose(w)) for w in env]
        cons = [tuple(la.dot(la.flatten(a), wt) for a in ads) for wt in env_t]
        coeffs = la.nullspace(cons, r.dim)
        n = Subspace.span([r.vector(c) for c in coeffs], g.dim)
    lower = bracket_spaces(g, full(g), r)
    upper = ker_killing(g) & r
    if not (lower <= n and n <= upper):
        raise InternalInconsistency("nilradical fails the sandwich [g,r] <= n <= ker B & r")
    if not is_ideal(g, n) or not series_analysis(g, n).is_nilpotent:
        raise InternalInconsistency("computed nilradical is not a nilpotent ideal")
    return n


# --------------------------------------------------------------------------
# Centralizers, normalizers, ideals
# --------------------------------------------------------------------------


def centralizer(g: LieAlgebra, s: Subspace) -> Subspace:
    """{x : [x, s] = 0}."""
    rows = []
    for v in s.rows:
        adv = g.ad(v)  # [v, x] = adv . x
        rows.extend(r for r in adv if any(r))
    return Subspace(g.dim, la.nullspace(rows, g.dim))


def center(g: LieAlgebra) -> Subspace:
    return centralizer(g, full(g))


def normalizer(g: LieAlgebra, s: Subspace) -> Subspace:
    """{x : [x, s] <= s}; ``s`` must be a subalgebra."""
    if not is_subalgebra(g, s):
        raise NotASubalgebra("normalizer requires a subalgebra")
    ann = s.annihilator()
    rows = []
    for v in s.rows:
        adv = g.ad(v)
        for a in ann:
            row = tuple(la.dot(a, [adv[k][j] for k in range(g.dim)]) for j in range(g.dim))
            if any(row):
                rows.append(row)
    return Subspace(g.dim, la.nullspace(rows, g.dim))


@dataclass(frozen=True)
class CommutantReport:
    center: Subspace
    centralizer: Subspace
    normalizer: Subspace | None
    derived_with: Subspace


def commutant_queries(g: LieAlgebra, s: Subspace) -> CommutantReport:
    norm = normalizer(g, s) if is_subalgebra(g, s) else None
    return CommutantReport(center(g), centralizer(g, s), norm, bracket_spaces(g, full(g), s))


def largest_ideal_in(g: LieAlgebra, k: Subspace) -> Subspace:
    """Largest ideal of g contained in k, by l_{t+1} = {x in l_t : [g, x] <= l_t}."""
    cur = k
    while True:
        ann = cur.annihilator()
        # x = sum c_i b_i in cur with a . [e_j, x] = 0 for every e_j and annihilator row a
        cons = []
        images = [[g.bracket(la.unit(g.dim, j), b) for b in cur.rows] for j in range(g.dim)]
        for j in range(g.dim):
            for a in ann:
                row = tuple(la.dot(a, img) for img in images[j])
                if any(row):
                    cons.append(row)
        sol = la.nullspace(cons, cur.dim)
        nxt = Subspace.span([cur.vector(c) for c in sol], g.dim)
        if nxt == cur:
            return cur
        cur = nxt


def restrict_algebra(g: LieAlgebra, s: Subspace, names: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra ``s`` as a LieAlgebra in its echelon basis."""
    if not is_subalgebra(g, s):
        raise NotASubalgebra("subspace is not closed under the bracket")
    if s.is_zero():
        raise DimensionMismatch("zero subalgebra")
    struct = {}
    for a, b in itertools.combinations(range(s.dim), 2):
        c = s.coords(g.bracket(s.rows[a], s.rows[b]))
        terms = tuple((k, x) for k, x in enumerate(c) if x)
        if terms:
            struct[(a, b)] = terms
    if names is None:
        names = tuple(f"s{i + 1}" for i in range(s.dim))
    return LieAlgebra(s.dim, tuple(names), struct)


@dataclass(frozen=True)
class Quotient:
    algebra: LieAlgebra
    ideal: Subspace
    complement: Subspace  # standard basis vectors at non-pivot columns of the ideal
    projection: la.Matrix  # rows: images of the standard basis of g

    def project(self, v: Sequence) -> la.Vector:
        return la.matvec(la.transpose(self.projection), v)

    def lift(self, w: Sequence) -> la.Vector:
        return self.complement.vector(w)


def quotient_algebra(g: LieAlgebra, l: Subspace) -> Quotient:
    """g / l on the standard complement basis; projection verified to be a homomorphism."""
    if not is_ideal(g, l):
        raise NotAnIdeal("quotient requires an ideal")
    comp = l.std_complement()
    if comp.is_zero():
        raise DimensionMismatch("quotient by the whole algebra is zero-dimensional")
    # v = l-part + comp-part; comp coordinates come from solving against the joint basis
    joint = la.transpose(l.rows + comp.rows)
    inv = la.inverse(joint)
    q = comp.dim
    proj_rows = []
    for i in range(g.dim):
        c = la.matvec(inv, la.unit(g.dim, i))
        proj_rows.append(tuple(c[l.dim:]))
    projection = tuple(proj_rows)

    def project(v):
        return la.matvec(la.transpose(projection), v)

    struct = {}
    for a, b in itertools.combinations(range(q), 2):
        c = project(g.bracket(comp.rows[a], comp.rows[b]))
        terms = tuple((k, x) for k, x in enumerate(c) if x)
        if terms:
            struct[(a, b)] = terms
    names = tuple(g.basis_names[p] for p in comp.pivots)
    quo = validate_algebra(q, struct, names, max_dim=max(q, DEFAULT_MAX_DIM))
    result = Quotient(quo, l, comp, projection)
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs = project(g.bracket(la.unit(g.dim, i), la.unit(g.dim, j)))
        rhs = quo.bracket(project(la.unit(g.dim, i)), project(la.unit(g.dim, j)))
        if lhs != rhs:
            raise InternalInconsistency("quotient projection is not a homomorphism")
    return result


# --------------------------------------------------------------------------
# Derivations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Derivations:
    basis: tuple  # matrices D with D e_j = sum_i D[i][j] e_i
    skew: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, coeffs: Sequence) -> la.Matrix:
        n = len(self.basis[0]) if self.basis else 0
        flat = la.lincomb(coeffs, [la.flatten(D) for D in self.basis], n * n)
        return la.unflatten(flat, n)


def derivations(g: LieAlgebra, metric: Sequence[Sequence] | None = None) -> Derivations:
    """Basis of Der(g), or of the metric-skew derivations when ``metric`` is given.

    Skewness D^T G + G D = 0 is imposed by writing D = G^{-1} S with S
    antisymmetric, which keeps the unknown count at n(n-1)/2.
    """
    n = g.dim
    if metric is not None:
        if not la.is_positive_definite(metric):
            raise ValueError("metric must be positive definite")
        Ginv = la.inverse(metric)
        pairs = list(itertools.combinations(range(n), 2))
        var = {p: t for t, p in enumerate(pairs)}
        nvars = len(pairs)

        def s_entry(k, j):
            if k < j:
                return {var[(k, j)]: la.ONE}
            if k > j:
                return {var[(j, k)]: -la.ONE}
            return {}

        dform = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc: dict[int, Fraction] = {}
                for k in range(n):
                    gk = Ginv[i][k]
                    if gk:
                        for v_, c in s_entry(k, j).items():
                            acc[v_] = acc.get(v_, la.ZERO) + gk * c
                dform[i][j] = {v_: c for v_, c in acc.items() if c}
    else:
        nvars = n * n
        dform = [[{i * n + j: la.ONE} for j in range(n)] for i in range(n)]

    t = g._table
    ech = la.Echelon(nvars)

    def acc_into(target, form, coef):
        for v_, c in form.items():
            y = target.get(v_, la.ZERO) + coef * c
            if y:
                target[v_] = y
            else:
                target.pop(v_, None)

    for a, b in itertools.combinations(range(n), 2):
        for k in range(n):
            eq: dict[int, Fraction] = {}
            for l_, c in t[a][b].items():
                acc_into(eq, dform[k][l_], c)
            for l_ in range(n):
                c = t[l_][b].get(k)
                if c:
                    acc_into(eq, dform[l_][a], -c)
                c = t[a][l_].get(k)
                if c:
                    acc_into(eq, dform[l_][b], -c)
            if eq:
                ech.add(eq)
    pivots = set(ech.rows)
    sols = []
    for f in range(nvars):
        if f in pivots:
            continue
        x = {f: la.ONE}
        for p, r in ech.rows.items():
            c = r.get(f)
            if c:
                x[p] = -c
        sols.append(x)
    basis = []
    for x in sols:
        D = tuple(tuple(sum((c * x.get(v_, la.ZERO) for v_, c in dform[i][j].items()), la.ZERO)
                        for j in range(n)) for i in range(n))
        basis.append(D)
    result = Derivations(tuple(basis), metric is not None)
    span_ = Subspace.span([la.flatten(D) for D in basis], n * n)
    for D1, D2 in itertools.combinations(basis, 2):
        if not span_.contains(la.flatten(la.commutator(D1, D2))):
            raise InternalInconsistency("derivation space is not closed under commutators")
    return result


def is_derivation(g: LieAlgebra, D: Sequence[Sequence]) -> bool:
    n = g.dim
    for a, b in itertools.combinations(range(n), 2):
        ea, eb = la.unit(n, a), la.unit(n, b)
        lhs = la.matvec(D, g.bracket(ea, eb))
        rhs = la.add(g.bracket(la.matvec(D, ea), eb), g.bracket(ea, la.matvec(D, eb)))
        if lhs != rhs:
            return False
    return True


# --------------------------------------------------------------------------
# Levi factors
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LeviCheck:
    ok: bool
    diagnostics: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def verify_levi(g: LieAlgebra, s: Subspace) -> LeviCheck:
    """Check that s is a subalgebra complementary to r(g) with B|s nondegenerate."""
    diag = []
    if not is_subalgebra(g, s):
        diag.append("s is not a subalgebra")
    r = radical(g)
    if not ((r & s).is_zero() and r.dim + s.dim == g.dim):
        diag.append(f"g != r(g) + s as a direct sum (dim r = {r.dim}, dim s = {s.dim})")
    B = _killing_matrix(g)
    Bs = tuple(tuple(la.bilinear(u, B, v) for v in s.rows) for u in s.rows)
    if s.dim and la.det(Bs) == 0:
        diag.append("Killing form degenerate on s")
    return LeviCheck(not diag, tuple(diag))
