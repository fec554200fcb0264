"""Builders for the worked examples and negative controls."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import gochecker as GC
from . import homspace as H
from . import liealg as L
from . import linalg as la
from .errors import CliffordRelationViolation, Gonil2HypothesisFailed, InternalInconsistency
from .homspace import MetricReductiveSpace
from .liealg import LieAlgebra
from .subspace import Subspace

SU2 = {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}


def su2_plus_r() -> LieAlgebra:
    """su(2) + R with [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2 and e4 central."""
    return L.validate_algebra(4, SU2, ("e1", "e2", "e3", "e4"))


def flat_space(g: LieAlgebra, label: str = "") -> MetricReductiveSpace:
    """h = 0, m = g with the Euclidean metric on the standard basis."""
    return MetricReductiveSpace(g, Subspace.zero(g.dim), Subspace.full(g.dim),
                                la.identity(g.dim), label)


def u2_sphere(alpha=2) -> MetricReductiveSpace:
    """U(2)/S^1: h = span{e3 + e4}, m the orthocomplement for diag(1, 1, 1, alpha)."""
    alpha = la.Q(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    g = su2_plus_r()
    form = la.mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, alpha]])
    return H.build_reductive(g, [(0, 0, 1, 1)], H.MetricSpec.ambient(form), "form_orthogonal",
                             form=form, label=f"u2_sphere({alpha})")


# ---------------------------------------------------------------------------
# Euclidean space as (R^{2n} x| z) x| su(n)
# ---------------------------------------------------------------------------


def _complex_to_real(M: dict[tuple[int, int], complex], n: int) -> la.Matrix:
    """Realify an n x n complex matrix (entries with rational parts) on R^{2n}."""
    R = [[la.ZERO] * (2 * n) for _ in range(2 * n)]
    for (j, k), (a, b) in M.items():
        a, b = la.Q(a), la.Q(b)
        R[2 * j][2 * k] += a
        R[2 * j][2 * k + 1] -= b
        R[2 * j + 1][2 * k] += b
        R[2 * j + 1][2 * k + 1] += a
    return tuple(tuple(r) for r in R)


def su_n_real(n: int) -> list[la.Matrix]:
    """Real 2n x 2n matrices spanning su(n) acting on R^{2n} = C^n."""
    out = []
    for j, k in itertools.combinations(range(n), 2):
        out.append(_complex_to_real({(j, k): (1, 0), (k, j): (-1, 0)}, n))
        out.append(_complex_to_real({(j, k): (0, 1), (k, j): (0, 1)}, n))
    for j in range(n - 1):
        out.append(_complex_to_real({(j, j): (0, 1), (j + 1, j + 1): (0, -1)}, n))
    return out


def _matrix_algebra_brackets(mats: Sequence[la.Matrix], offset: int) -> dict:
    """Structure constants of a matrix Lie algebra given by a basis, shifted by ``offset``."""
    size = len(mats[0])
    basis_t = la.transpose([la.flatten(M) for M in mats])
    struct = {}
    for a, b in itertools.combinations(range(len(mats)), 2):
        C = la.flatten(la.commutator(mats[a], mats[b]))
        sol = la.solve(basis_t, C, len(mats))
        if not sol.feasible:
            raise InternalInconsistency("matrix basis is not closed under commutators")
        terms = {offset + t: c for t, c in enumerate(sol.solution) if c}
        if terms:
            struct[(offset + a, offset + b)] = terms
    return struct


def euclidean_go(n: int = 2) -> MetricReductiveSpace:
    """R^{2n+1} as (R^{2n} x| z) x| su(n) / su(n); z acts by the standard complex structure.

    Basis: x_1..x_{2n}, y, then su(n).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    d = 2 * n
    J = _complex_to_real({(j, j): (0, 1) for j in range(n)}, n)
    su = su_n_real(n)
    y = d
    off = d + 1
    dim = off + len(su)
    struct: dict = {}

    def act(idx, M):
        for i in range(d):
            terms = {r: M[r][i] for r in range(d) if M[r][i]}
            if terms:
                struct[(i, idx)] = {r: -c for r, c in terms.items()}

    act(y, J)
    for t, S in enumerate(su):
        act(off + t, S)
    struct.update(_matrix_algebra_brackets(su, off))
    names = tuple(f"x{i + 1}" for i in range(d)) + ("y",) + tuple(f"s{t + 1}" for t in range(len(su)))
    g = L.validate_algebra(dim, struct, names)
    h = Subspace.span([la.unit(dim, off + t) for t in range(len(su))], dim)
    m = Subspace.span([la.unit(dim, i) for i in range(off)], dim)
    return MetricReductiveSpace(g, h, m, la.identity(off), f"euclidean_go({n})")


def euclidean_go_levi(n: int = 2) -> Subspace:
    dim = 2 * n + 1 + n * n - 1
    return Subspace.span([la.unit(dim, 2 * n + 1 + t) for t in range(n * n - 1)], dim)


# ---------------------------------------------------------------------------
# Clifford modules and Heisenberg-type algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliffordModule:
    z_dim: int
    a_dim: int
    J: tuple

    def __post_init__(self):
        if len(self.J) != self.z_dim:
            raise CliffordRelationViolation("number of operators differs from z_dim")
        minus_id = la.matscale(-1, la.identity(self.a_dim))
        for i, Ji in enumerate(self.J):
            if len(Ji) != self.a_dim:
                raise CliffordRelationViolation(f"J_{i + 1} has the wrong size")
            if la.transpose(Ji) != la.matscale(-1, Ji):
                raise CliffordRelationViolation(f"J_{i + 1} is not skew")
            if la.matmul(Ji, Ji) != minus_id:
                raise CliffordRelationViolation(f"J_{i + 1}^2 != -Id")
        zero = tuple((la.ZERO,) * self.a_dim for _ in range(self.a_dim))
        for i, j in itertools.combinations(range(self.z_dim), 2):
            if la.matadd(la.matmul(self.J[i], self.J[j]), la.matmul(self.J[j], self.J[i])) != zero:
                raise CliffordRelationViolation(f"J_{i + 1} and J_{j + 1} do not anticommute")


def _kron(A, B) -> la.Matrix:
    return tuple(tuple(a * b for a in ra for b in rb) for ra in A for rb in B)


_I2 = la.mat([[1, 0], [0, 1]])
_E2 = la.mat([[0, -1], [1, 0]])
_P2 = la.mat([[1, 0], [0, -1]])
_Q2 = la.mat([[0, 1], [1, 0]])
_CL5_WORDS = ("IIE", "IEP", "EIQ", "EPP", "EQP")


def clifford_module_cl5_r8() -> CliffordModule:
    """Five anticommuting complex structures on R^8 from triple tensor products of
    I, E = rotation, P = diag(1, -1), Q = swap."""
    letters = {"I": _I2, "E": _E2, "P": _P2, "Q": _Q2}
    J = tuple(_kron(_kron(letters[w[0]], letters[w[1]]), letters[w[2]]) for w in _CL5_WORDS)
    return CliffordModule(5, 8, J)


def htype(module: CliffordModule, label: str = "") -> MetricReductiveSpace:
    """Two-step algebra a + z with ([X, Y], Z) = (J_Z X, Y); Euclidean metric, h = 0.

    Basis: a_1..a_n, then z_1..z_m.
    """
    n, mz = module.a_dim, module.z_dim
    struct = {}
    for i, j in itertools.combinations(range(n), 2):
        terms = {n + k: module.J[k][j][i] for k in range(mz) if module.J[k][j][i]}
        if terms:
            struct[(i, j)] = terms
    names = tuple(f"a{i + 1}" for i in range(n)) + tuple(f"z{k + 1}" for k in range(mz))
    g = L.validate_algebra(n + mz, struct, names)
    return flat_space(g, label or f"htype({mz},{n})")


def heisenberg13() -> MetricReductiveSpace:
    return htype(clifford_module_cl5_r8(), "heisenberg13")


def heisenberg3() -> MetricReductiveSpace:
    return htype(CliffordModule(1, 2, (_E2,)), "heisenberg3")


# ---------------------------------------------------------------------------
# Solvable extension by the central skew derivation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DerivationSplit:
    """D(n) = c + d with c the one-dimensional center and d = [D(n), D(n)]."""

    data: GC.TwoStepData
    c: tuple  # matrices
    d: tuple  # matrices


def derivation_split(data: GC.TwoStepData) -> DerivationSplit:
    Ds = data.derivations.basis
    k = len(Ds)
    dn = len(Ds[0])
    algebra = L.validate_algebra(k, _matrix_algebra_brackets(Ds, 0), max_dim=max(k, L.DEFAULT_MAX_DIM))
    center = L.center(algebra)
    derived = L.derived_algebra(algebra)
    if center.dim != 1 or center.dim + derived.dim != k or not (center & derived).is_zero():
        raise InternalInconsistency("D(n) is not a one-dimensional center plus its derived algebra")

    def to_mat(coeffs):
        return la.unflatten(la.lincomb(coeffs, [la.flatten(D) for D in Ds], dn * dn), dn)

    return DerivationSplit(data, tuple(to_mat(c) for c in center.rows),
                           tuple(to_mat(c) for c in derived.rows))


def verify_gonil2_hypotheses(split: DerivationSplit, config: GC.SampleConfig = GC.SampleConfig()) -> int:
    """Check hypotheses (1) and (2) of the solvable-extension criterion at every sample.

    (1) some D1 in d has D1 X = 0 and D1 Y = J_X Y;
    (2) {D in D(n) : D X = D Y = 0} is not contained in d.
    Returns the number of samples checked.
    """
    data = split.data
    full = split.c + split.d
    nc = len(split.c)
    count = 0
    for X, Y in GC.nil_samples(data, config):
        rows, rhs = data.gordon_system(X, Y, split.d)
        if not la.solve(rows, rhs, len(split.d)).feasible:
            raise Gonil2HypothesisFailed(1, {"X": X, "Y": Y})
        rows, _ = data.gordon_system(X, Y, full)
        homog = rows  # D X = 0 and D Y = 0
        kern = la.nullspace(homog, len(full))
        if not any(any(v[:nc]) for v in kern):
            raise Gonil2HypothesisFailed(2, {"X": X, "Y": Y})
        count += 1
    return count


def gonil2_extension(c_scale=1, base: MetricReductiveSpace | None = None,
                     config: GC.SampleConfig = GC.SampleConfig()) -> MetricReductiveSpace:
    """sol = n + c (c the central skew derivation), presented as d x| sol / d.

    The metric is the one of n extended by (n, c) = 0 and (c, c) = c_scale.
    Basis: n, then c, then d.
    """
    c_scale = la.Q(c_scale)
    if c_scale <= 0:
        raise ValueError("c_scale must be positive")
    base = base or heisenberg13()
    n, metric = base.g, base.ip
    data = GC.two_step_data(n, metric)
    split = derivation_split(data)
    verify_gonil2_hypotheses(split, config)
    dn = n.dim
    C = split.c[0]
    Ds = split.d
    dim = dn + 1 + len(Ds)
    struct = {ij: dict(t) for ij, t in n.structure.items()}

    def act(idx, M):
        for i in range(dn):
            terms = {r: -M[r][i] for r in range(dn) if M[r][i]}
            if terms:
                struct[(i, idx)] = terms

    act(dn, C)
    for t, D in enumerate(Ds):
        act(dn + 1 + t, D)
    for (a, b), terms in _matrix_algebra_brackets(Ds, dn + 1).items():
        struct[(a, b)] = terms
    names = tuple(n.basis_names) + ("c",) + tuple(f"d{t + 1}" for t in range(len(Ds)))
    g = L.validate_algebra(dim, struct, names)
    h = Subspace.span([la.unit(dim, dn + 1 + t) for t in range(len(Ds))], dim)
    m = Subspace.span([la.unit(dim, i) for i in range(dn + 1)], dim)
    ip = [list(r) + [la.ZERO] for r in metric] + [[la.ZERO] * dn + [c_scale]]
    return MetricReductiveSpace(g, h, m, la.mat(ip), f"gonil2_extension({c_scale})")


# ---------------------------------------------------------------------------
# Ledger-Obata spaces su(2)^m / diag
# ---------------------------------------------------------------------------


def ledger_obata(m: int = 3, variant: str = "killing_orthogonal", k: int | None = None
                 ) -> MetricReductiveSpace:
    """su(2)^m / diag(su(2)) with the normal metric -B.

    variant ``killing_orthogonal`` uses the Killing-orthogonal complement;
    ``g_k-ideal`` presents the same metric on the ideal with the k-th factor removed
    (k defaults to m).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    dim = 3 * m
    struct = {}
    for f in range(m):
        for (i, j), terms in SU2.items():
            struct[(3 * f + i, 3 * f + j)] = {3 * f + t: c for t, c in terms.items()}
    names = tuple(f"f{f + 1}e{i + 1}" for f in range(m) for i in range(3))
    g = L.validate_algebra(dim, struct, names)
    h = [tuple(la.ONE if t % 3 == i else la.ZERO for t in range(dim)) for i in range(3)]
    base = H.build_reductive(g, h, H.MetricSpec.killing_multiple(1), "killing_orthogonal",
                             label=f"ledger_obata({m})")
    if variant == "killing_orthogonal":
        return base
    if variant == "g_k-ideal":
        k = m if k is None else k
        if not 1 <= k <= m:
            raise ValueError("k must be between 1 and m")
        ideal = Subspace.span([la.unit(dim, t) for t in range(dim) if t // 3 != k - 1], dim)
        return base.with_complement(ideal, f"ledger_obata({m}, g_{k})")
    raise ValueError(f"unknown Ledger-Obata variant {variant!r}")


# ---------------------------------------------------------------------------
# negative controls
# ---------------------------------------------------------------------------


def filiform4() -> MetricReductiveSpace:
    g = L.validate_algebra(4, {(0, 1): {2: 1}, (0, 2): {3: 1}})
    return flat_space(g, "filiform4")


def complex_weight_solvable() -> MetricReductiveSpace:
    """e0 acts by [[1,-1],[1,1]] on (e1, e2) and by [[-1,-1],[1,-1]] on (e3, e4)."""
    struct = {(0, 1): {1: 1, 2: 1}, (0, 2): {1: -1, 2: 1},
              (0, 3): {3: -1, 4: 1}, (0, 4): {3: -1, 4: -1}}
    g = L.validate_algebra(5, struct, ("e0", "e1", "e2", "e3", "e4"))
    return flat_space(g, "complex_weight_solvable")


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

KINDS = ("u2_sphere", "euclidean_go", "htype", "heisenberg13", "heisenberg3", "gonil2_extension",
         "ledger_obata", "filiform4", "complex_weight_solvable")


@dataclass(frozen=True)
class ConstructionParams:
    kind: str
    params: dict = field(default_factory=dict)


def construct(params: ConstructionParams | str, **kwargs) -> MetricReductiveSpace:
    if isinstance(params, str):
        params = ConstructionParams(params, kwargs)
    p = dict(params.params)
    kind = params.kind
    if kind == "u2_sphere":
        return u2_sphere(p.get("alpha", 2))
    if kind == "euclidean_go":
        return euclidean_go(int(p.get("n", 2)))
    if kind == "htype":
        return htype(p["module"])
    if kind == "heisenberg13":
        return heisenberg13()
    if kind == "heisenberg3":
        return heisenberg3()
    if kind == "gonil2_extension":
        return gonil2_extension(p.get("c_scale", 1), p.get("base"))
    if kind == "ledger_obata":
        return ledger_obata(int(p.get("m", 3)), p.get("variant", "killing_orthogonal"), p.get("k"))
    if kind == "filiform4":
        return filiform4()
    if kind == "complex_weight_solvable":
        return complex_weight_solvable()
    raise ValueError(f"unknown construction kind {kind!r}; expected one of {', '.join(KINDS)}")
