"""Geodesic orbit criteria: geodesic graphs, natural reductivity, the two-step
nilmanifold test, totally geodesic subspaces and Killing-eigenspace audits."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import homspace as H
from . import liealg as L
from . import linalg as la
from .errors import InternalInconsistency, NotTwoStep, SpectrumNumeric
from .homspace import KillingOperatorSpectrum, MetricReductiveSpace
from .liealg import LieAlgebra
from .report import AuditReport, ClauseBuilder
from .subspace import Subspace, gram, orthogonal_complement

CERTIFIED = "CertifiedNaturallyReductive"
SAMPLED = "SampledGO"
NOT_GO = "NotGO"

LCG_A = 6364136223846793005
LCG_C = 1442695040888963407
LCG_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SampleConfig:
    sample_count: int = 64
    seed: int = 0
    coordinate_bound: int = 10

    def __post_init__(self):
        if self.sample_count < 0 or self.coordinate_bound <= 0:
            raise ValueError("sample_count must be >= 0 and coordinate_bound > 0")


class LCG:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    Each coordinate is ((state >> 33) mod (2b + 1)) - b after one step.
    """

    def __init__(self, seed: int):
        self.state = seed & LCG_MASK

    def next(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) & LCG_MASK
        return self.state

    def coordinate(self, bound: int) -> int:
        return (self.next() >> 33) % (2 * bound + 1) - bound

    def vector(self, k: int, bound: int) -> la.Vector:
        while True:
            v = tuple(la.Q(self.coordinate(bound)) for _ in range(k))
            if any(v):
                return v


def random_vectors(k: int, config: SampleConfig, rng: LCG | None = None) -> Iterator[la.Vector]:
    rng = rng or LCG(config.seed)
    for _ in range(config.sample_count):
        yield rng.vector(k, config.coordinate_bound)


def sample_coordinates(k: int, config: SampleConfig) -> list[la.Vector]:
    """Basis vectors, then pairwise sums, then ``sample_count`` random vectors."""
    if k == 0:
        return []
    out = [la.unit(k, i) for i in range(k)]
    out += [la.add(la.unit(k, i), la.unit(k, j)) for i, j in itertools.combinations(range(k), 2)]
    out += list(random_vectors(k, config))
    return out


def sample_in(sub: Subspace, config: SampleConfig) -> list[la.Vector]:
    return [sub.vector(c) for c in sample_coordinates(sub.dim, config)]


# ---------------------------------------------------------------------------
# geodesic graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicGraphSolution:
    X: la.Vector
    Z: la.Vector
    residual_zero: bool = True
    nullity: int = 0

    feasible = True


@dataclass(frozen=True)
class Infeasible:
    X: la.Vector
    rank: int
    augmented_rank: int

    feasible = False

    def to_json_obj(self) -> dict:
        from .report import jsonable
        return {"X": jsonable(self.X), "rank": self.rank, "augmented_rank": self.augmented_rank}


def go_system(space: MetricReductiveSpace, X: Sequence) -> tuple[la.Matrix, la.Vector]:
    """Rows indexed by m-basis Y: sum_i z_i ([H_i, Y]_m, X) = -([X, Y]_m, X)."""
    x = space.m_coords(X)
    Gx = la.matvec(space.ip, x)
    adX = space.ad_m(X)
    k = space.m.dim
    rows = []
    for j in range(k):
        rows.append(tuple(sum((Gx[r] * op[r][j] for r in range(k) if op[r][j]), la.ZERO)
                          for op in space.isotropy_ops))
    rhs = tuple(-sum((Gx[r] * adX[r][j] for r in range(k) if adX[r][j]), la.ZERO) for j in range(k))
    return tuple(rows), rhs


def geodesic_graph_solve(space: MetricReductiveSpace, X: Sequence):
    """Find Z in h with ([X + Z, Y]_m, X) = 0 for all Y in m, or certify that none exists."""
    X = la.vec(X)
    if not space.m.contains(X):
        raise ValueError("X must lie in m")
    rows, rhs = go_system(space, X)
    res = la.solve(rows, rhs, space.h.dim)
    if not res.feasible:
        return Infeasible(X, res.rank, res.augmented_rank)
    Z = space.from_h(res.solution)
    XZ = la.add(X, Z)
    ok = all(space.inner(space.g.bracket(XZ, Y), X) == 0 for Y in space.m.rows)
    if not ok:
        raise InternalInconsistency("geodesic graph solution fails its residual check")
    return GeodesicGraphSolution(X, Z, True, res.nullity)


def natural_reductivity_check(space: MetricReductiveSpace) -> bool:
    """([E_i, E_j]_m, E_k) + ([E_k, E_j]_m, E_i) = 0 for all basis triples of m."""
    k = space.m.dim
    # T[i][k][j] = ([E_i, E_j]_m, E_k)
    T = [la.matmul(space.ip, space.ad_m(e)) for e in space.m.rows]
    return all(T[i][c][j] + T[c][i][j] == 0
               for i in range(k) for j in range(k) for c in range(i, k))


@dataclass(frozen=True)
class GOVerdict:
    kind: str
    samples: int
    seed: int | None
    witness: object = None
    notes: tuple = ()

    @property
    def is_go_evidence(self) -> bool:
        return self.kind in (CERTIFIED, SAMPLED)

    def to_json_obj(self) -> dict:
        from .report import jsonable
        return {"kind": self.kind, "samples": self.samples, "seed": self.seed,
                "witness": jsonable(self.witness), "notes": list(self.notes)}


def go_check(space: MetricReductiveSpace, config: SampleConfig = SampleConfig()) -> GOVerdict:
    """Certificate if naturally reductive, else sampled geodesic graphs.

    The witness of NotGO is the lowest-index sample with an infeasible system.
    """
    if natural_reductivity_check(space):
        return GOVerdict(CERTIFIED, 0, None, None, ("polarized natural reductivity identity holds",))
    samples = [space.from_m(c) for c in sample_coordinates(space.m.dim, config)]
    for idx, X in enumerate(samples):
        sol = geodesic_graph_solve(space, X)
        if not sol.feasible:
            return GOVerdict(NOT_GO, idx + 1, config.seed, sol,
                             (f"sample {idx} has no geodesic vector",))
    return GOVerdict(SAMPLED, len(samples), config.seed, None,
                     ("evidence only: every sampled direction admits a geodesic graph",))


# ---------------------------------------------------------------------------
# two-step nilpotent metric Lie algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwoStepData:
    n: LieAlgebra
    metric: la.Matrix
    z: Subspace
    a: Subspace
    derivations: L.Derivations

    def J(self, X: Sequence, Y: Sequence) -> la.Vector:
        """J_X(Y) in a: (J_X Y, W) = ([Y, W], X) for every W in a."""
        rhs = [la.bilinear(self.n.bracket(Y, W), self.metric, X) for W in self.a.rows]
        Ga = gram(self.metric, self.a.rows)
        return self.a.vector(la.solve(Ga, rhs).solution)

    def gordon_system(self, X: Sequence, Y: Sequence, basis: Sequence | None = None):
        """Rows for t with D = sum t_l D_l: D X = 0 and D Y = J_X Y."""
        basis = self.derivations.basis if basis is None else basis
        JY = self.J(X, Y)
        DX = [la.matvec(D, X) for D in basis]
        DY = [la.matvec(D, Y) for D in basis]
        d = self.n.dim
        rows = [tuple(v[i] for v in DX) for i in range(d)] + [tuple(v[i] for v in DY) for i in range(d)]
        rhs = (la.ZERO,) * d + JY
        return rows, rhs


def two_step_data(n: LieAlgebra, metric) -> TwoStepData:
    metric = la.mat(metric)
    if not la.is_positive_definite(metric):
        raise ValueError("metric must be positive definite")
    rep = L.series_analysis(n)
    if not rep.is_nilpotent or rep.nilpotency_class > 2:
        raise NotTwoStep(f"nilpotency class {rep.nilpotency_class} exceeds 2")
    z = L.derived_algebra(n)
    a = orthogonal_complement(metric, z, Subspace.full(n.dim))
    return TwoStepData(n, metric, z, a, L.derivations(n, metric))


def nil_go_check(n: LieAlgebra, metric, config: SampleConfig = SampleConfig(),
                 data: TwoStepData | None = None) -> GOVerdict:
    """Gordon's criterion: for X in z, Y in a there is D in D(n) with D X = 0, D Y = J_X Y.

    Samples: all basis pairs (z_i, a_j), then ``sample_count`` random pairs.
    """
    rep = L.series_analysis(n)
    if not rep.is_nilpotent or (rep.nilpotency_class or 0) > 2:
        raise NotTwoStep(f"nilpotency class {rep.nilpotency_class} exceeds 2")
    if (rep.nilpotency_class or 0) <= 1:
        return GOVerdict(CERTIFIED, 0, None, None, ("abelian: flat metric",))
    data = data or two_step_data(n, metric)
    for idx, (X, Y) in enumerate(nil_samples(data, config)):
        rows, rhs = data.gordon_system(X, Y)
        res = la.solve(rows, rhs, data.derivations.dim)
        if not res.feasible:
            return GOVerdict(NOT_GO, idx + 1, config.seed,
                             {"X": X, "Y": Y, "rank": res.rank, "augmented_rank": res.augmented_rank},
                             (f"sample {idx}: no skew derivation D with D X = 0, D Y = J_X Y",))
    count = data.z.dim * data.a.dim + config.sample_count
    return GOVerdict(SAMPLED, count, config.seed, None,
                     ("evidence only: every sampled pair admits a skew derivation",))


def nil_samples(data: TwoStepData, config: SampleConfig) -> list[tuple[la.Vector, la.Vector]]:
    pairs = [(X, Y) for X in data.z.rows for Y in data.a.rows]
    rng = LCG(config.seed)
    for _ in range(config.sample_count):
        x = rng.vector(data.z.dim, config.coordinate_bound)
        y = rng.vector(data.a.dim, config.coordinate_bound)
        pairs.append((data.z.vector(x), data.a.vector(y)))
    return pairs


def isometry_extension(n: LieAlgebra, metric, data: TwoStepData | None = None,
                       label: str = "") -> MetricReductiveSpace:
    """D(n) semidirect n, presented with h = D(n) and m = n carrying the metric.

    Basis order: the basis of n first, then the skew derivations.
    """
    metric = la.mat(metric)
    Ds = data.derivations.basis if data is not None else L.derivations(n, metric).basis
    d, k = n.dim, len(Ds)
    dspan = Subspace.span([la.flatten(D) for D in Ds], d * d)
    flat_basis = la.transpose([la.flatten(D) for D in Ds]) if Ds else ()
    struct = {}
    for (i, j), terms in n.structure.items():
        struct[(i, j)] = terms
    for a, D in enumerate(Ds):
        for i in range(d):
            col = tuple(D[r][i] for r in range(d))
            terms = tuple((r, c) for r, c in enumerate(col) if c)
            if terms:
                struct[(i, d + a)] = tuple((r, -c) for r, c in terms)
    for a, b in itertools.combinations(range(k), 2):
        C = la.flatten(la.commutator(Ds[a], Ds[b]))
        if not dspan.contains(C):
            raise InternalInconsistency("skew derivations not closed under commutators")
        coeffs = la.solve(flat_basis, C, k).solution
        terms = tuple((d + t, c) for t, c in enumerate(coeffs) if c)
        if terms:
            struct[(d + a, d + b)] = terms
    names = tuple(n.basis_names) + tuple(f"D{t + 1}" for t in range(k))
    g = L.validate_algebra(d + k, struct, names, max_dim=max(L.DEFAULT_MAX_DIM, d + k))
    h = Subspace.span([la.unit(d + k, d + t) for t in range(k)], d + k)
    m = Subspace.span([la.unit(d + k, i) for i in range(d)], d + k)
    return MetricReductiveSpace(g, h, m, metric, label)


# ---------------------------------------------------------------------------
# totally geodesic subspaces and principal isotropy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TotallyGeodesicResult:
    is_tg: bool
    bracket_closed: bool
    u_closed: bool
    h_prime: Subspace
    centralizer_in_h: Subspace
    induced_go_condition: bool


def subalgebra_closure(g: LieAlgebra, start: Subspace) -> Subspace:
    cur = start
    while True:
        nxt = cur + L.bracket_spaces(g, cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


def totally_geodesic_check(space: MetricReductiveSpace, p) -> TotallyGeodesicResult:
    g = space.g
    p = H._as_subspace(g, p)
    if not p <= space.m:
        raise ValueError("p must lie in m")
    pairs = list(itertools.combinations_with_replacement(p.rows, 2))
    bracket_closed = all(p.contains(space.bracket_m(x, y)) for x, y in pairs)
    u_closed = all(p.contains(H.u_map(space, x, y)) for x, y in pairs)
    hp = Subspace.span([space.h_part(g.bracket(x, y)) for x, y in pairs], g.dim)
    h_prime = subalgebra_closure(g, hp)
    c_h_p = space.h & L.centralizer(g, p)
    induced = (h_prime + c_h_p) == space.h
    return TotallyGeodesicResult(bracket_closed and u_closed, bracket_closed, u_closed,
                                 h_prime, c_h_p, induced)


def centralizer_dim_in_h(space: MetricReductiveSpace, X: Sequence) -> int:
    rows = [space.g.bracket(z, X) for z in space.h.rows]
    return space.h.dim - la.rank(rows, space.g.dim)


@dataclass(frozen=True)
class PrincipalIsotropy:
    dim: int
    attained_at: la.Vector | None
    samples: int
    running_min: tuple


def principal_isotropy_dim(space: MetricReductiveSpace, p, config: SampleConfig = SampleConfig()
                           ) -> PrincipalIsotropy:
    """Minimum of dim C_h(X) over deterministic samples X in p.

    This is an upper bound for the centralizer dimension at generic points.
    """
    p = H._as_subspace(space.g, p)
    samples = sample_in(p, config)
    best, at, running = space.h.dim, None, []
    for X in samples:
        d = centralizer_dim_in_h(space, X)
        if at is None or d < best:
            best, at = d, X
        running.append(best)
    return PrincipalIsotropy(best, at, len(samples), tuple(running))


# ---------------------------------------------------------------------------
# Killing eigenspace audit
# ---------------------------------------------------------------------------

_A_INCL = "bracket of distinct nonzero Killing eigenspaces lies in their sum"
_A_CENT = "[X,Y] = [Z2,X] + [Z1,Y] with Z1 in C_h(X), Z2 in C_h(Y)"
_A_PRIN = "trivial principal isotropy forces [A_beta, p] <= p"
_A_SAME = "([h,X],Y) = 0 in A_alpha implies [X,Y] in A_0 + A_alpha"


def eigenspace_bracket_audit(spectrum: KillingOperatorSpectrum, verdict: GOVerdict,
                             config: SampleConfig = SampleConfig(),
                             decomposition: H.SubmoduleDecomposition | None = None) -> AuditReport:
    space = spectrum.space
    target = space.label or repr(space)
    cb = ClauseBuilder()
    if spectrum.mode != "exact":
        raise SpectrumNumeric("eigenspace audit requires an exact spectrum")
    if not verdict.is_go_evidence:
        for cid, anc in (("i", _A_INCL), ("ii", _A_CENT), ("iii", _A_PRIN), ("iv", _A_SAME)):
            cb.skip(cid, anc, f"precondition: verdict is {verdict.kind}")
        return cb.report("eigenspace_bracket", target, verdict.kind)
    g = space.g
    nonzero = spectrum.nonzero
    A0 = spectrum.eigenspace(0)

    def incl():
        for (a, U), (b, V) in itertools.combinations(nonzero, 2):
            UV = U + V
            for u in U.rows:
                for v in V.rows:
                    br = g.bracket(u, v)
                    if not UV.contains(br):
                        return False, {"alpha": a, "beta": b, "X": u, "Y": v, "bracket": br}
        return True, None

    cb.run("i", _A_INCL, incl)

    def centralizer_basis(X):
        rows = [g.bracket(z, X) for z in space.h.rows]
        coeffs = la.nullspace(la.transpose(rows), space.h.dim) if rows else ()
        return [space.from_h(c) for c in coeffs]

    def cent():
        for (a, U), (b, V) in itertools.combinations(nonzero, 2):
            xs, ys = sample_in(U, config), sample_in(V, config)
            for X, Y in zip(xs, ys):
                Z1s, Z2s = centralizer_basis(X), centralizer_basis(Y)
                cols = [g.bracket(Z2, X) for Z2 in Z2s] + [g.bracket(Z1, Y) for Z1 in Z1s]
                target_v = g.bracket(X, Y)
                if not cols:
                    ok = la.is_zero(target_v)
                else:
                    ok = la.solve(la.transpose(cols), target_v, len(cols)).feasible
                if not ok:
                    return False, {"alpha": a, "beta": b, "X": X, "Y": Y, "bracket": target_v}
        return True, None

    cb.run("ii", _A_CENT, cent)

    def prin():
        dec = decomposition or H.submodule_decomposition(space, spectrum)
        for lam, p, st in zip(dec.eigenvalues, dec.modules, dec.status):
            if lam == 0 or st != "irreducible":
                continue
            if principal_isotropy_dim(space, p, config).dim != 0:
                continue
            for b, V in nonzero:
                if b == lam:
                    continue
                for v in V.rows:
                    for x in p.rows:
                        br = g.bracket(v, x)
                        if not p.contains(br):
                            return False, {"alpha": lam, "beta": b, "p": p, "X": v, "Y": x,
                                           "bracket": br}
        return True, None

    cb.run("iii", _A_PRIN, prin)

    def same():
        Q = space.ambient_form()
        for a, U in nonzero:
            target_sp = A0 + U
            for X in sample_in(U, config):
                cons = [la.matvec(Q, g.bracket(z, X)) for z in space.h.rows]
                # Y in U with (ad(z) X, Y) = 0 for all z in h
                rows = [tuple(la.dot(c, u) for u in U.rows) for c in cons]
                ys = la.nullspace(rows, U.dim) if rows else la.identity(U.dim)
                for yc in ys:
                    Y = U.vector(yc)
                    br = g.bracket(X, Y)
                    if not target_sp.contains(br):
                        return False, {"alpha": a, "X": X, "Y": Y, "bracket": br}
        return True, None

    cb.run("iv", _A_SAME, same)
    return cb.report("eigenspace_bracket", target, verdict.kind)
