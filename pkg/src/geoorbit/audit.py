"""Executable structure theorems for geodesic orbit spaces.

Each audit returns an AuditReport whose clauses carry a short statement of the
identity being checked.  Audits of GO-consequences take the GO verdict as an
argument and skip every clause when the verdict is not GO evidence, unless
``force`` is set (used for negative controls).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import gochecker as GC
from . import homspace as H
from . import liealg as L
from . import linalg as la
from .errors import GeoOrbitError, NotASubalgebra, NotNormalized
from .gochecker import GOVerdict, SampleConfig
from .homspace import MetricReductiveSpace
from .liealg import LieAlgebra
from .report import AuditReport, ClauseBuilder
from .subspace import Subspace, direct_sum_ok, gram, orthogonal_complement

FORCED = "forced"


def _target(space: MetricReductiveSpace) -> str:
    return space.label or repr(space)


def _gate(cb: ClauseBuilder, verdict: GOVerdict | None, force: bool, clauses) -> str | None:
    """Precondition string, or None after skipping every clause."""
    if verdict is not None and verdict.is_go_evidence:
        return verdict.kind
    if force:
        return f"{FORCED} ({verdict.kind if verdict else 'no verdict'})"
    reason = f"precondition: verdict is {verdict.kind if verdict else 'missing'}"
    for cid, anchor in clauses:
        cb.skip(cid, anchor, reason)
    return None


def _form_on(G, sub: Subspace) -> la.Matrix:
    return gram(G, sub.rows)


def _null_vectors(G, sub: Subspace) -> Subspace:
    """Null space of the restricted form, as vectors of the ambient space."""
    Gs = _form_on(G, sub)
    return Subspace.span([sub.vector(c) for c in la.nullspace(Gs, sub.dim)], sub.n)


def _common_kernel(ops: Sequence[la.Matrix], k: int) -> Subspace:
    rows = [r for op in ops for r in op if any(r)]
    return Subspace(k, la.nullspace(rows, k))


# ---------------------------------------------------------------------------
# radical and nilradical
# ---------------------------------------------------------------------------

_R1 = ("1", "B <= 0 on an invariant complement of [g,r] in r, with B(X,X) = 0 only for central X")
_R2 = ("2", "B < 0 on an invariant complement of n in r")
_R3 = ("3", "n = ker B and n = [g,r] + l with l central and orthogonal to [g,r]")


def strucrad1_audit(space: MetricReductiveSpace, verdict: GOVerdict | None,
                    force: bool = False) -> AuditReport:
    cb = ClauseBuilder()
    pre = _gate(cb, verdict, force, (_R1, _R2, _R3))
    if pre is None:
        return cb.report("strucrad1", _target(space), "skipped")
    g = space.g
    B = L._killing_matrix(g)
    Q = space.ambient_form()
    r, n, z = L.radical(g), L.nilradical(g), L.center(g)
    gr = L.bracket_spaces(g, L.full(g), r)

    def clause1():
        p = orthogonal_complement(Q, gr, r)
        pos, _, _ = la.inertia(_form_on(B, p))
        if pos:
            return False, {"complement": p, "B": _form_on(B, p)}, "B has a positive direction"
        null = _null_vectors(B, p)
        if not null <= z:
            bad = next(v for v in null.rows if not z.contains(v))
            return False, {"X": bad}, "B(X,X) = 0 for a non-central X"
        return True, None

    def clause2():
        q = orthogonal_complement(Q, n, r)
        Bq = _form_on(B, q)
        ok = la.is_positive_definite(la.matscale(-1, Bq)) if q.dim else True
        return ok, {"complement": q, "B": Bq}

    def clause3():
        kerB = L.ker_killing(g)
        if kerB != n:
            extra = next((v for v in kerB.rows if not n.contains(v)), None)
            return False, {"ker_B": kerB, "nilradical": n, "X": extra}, "ker B differs from n"
        l_ = orthogonal_complement(Q, gr, n)
        if not direct_sum_ok([gr, l_], n):
            return False, {"l": l_}, "[g,r] + l is not n"
        bad = next((v for v in l_.rows if not z.contains(v)), None)
        if bad is not None:
            return False, {"X": bad}, "l is not central"
        return True, None

    for (cid, anchor), check in zip((_R1, _R2, _R3), (clause1, clause2, clause3)):
        cb.run(cid, anchor, check)
    return cb.report("strucrad1", _target(space), pre)


_N1 = ("1", "the nilradical is abelian or two-step nilpotent")
_N2 = ("2", "[g,r] is abelian or two-step nilpotent")


def _class(g: LieAlgebra, sub: Subspace) -> int:
    rep = L.series_analysis(g, sub)
    return rep.nilpotency_class or 0


def strucnilr_audit(space: MetricReductiveSpace, verdict: GOVerdict | None,
                    force: bool = False) -> AuditReport:
    cb = ClauseBuilder()
    pre = _gate(cb, verdict, force, (_N1, _N2))
    if pre is None:
        return cb.report("strucnilr", _target(space), "skipped")
    g = space.g
    n = L.nilradical(g)
    gr = L.bracket_spaces(g, L.full(g), L.radical(g))
    for (cid, anchor), sub in zip((_N1, _N2), (n, gr)):
        cb.run(cid, anchor, lambda sub=sub: (_class(g, sub) <= 2, {"class": _class(g, sub)}))
    return cb.report("strucnilr", _target(space), pre)


# ---------------------------------------------------------------------------
# centralizer of the isotropy algebra
# ---------------------------------------------------------------------------

_S1 = ("1", "ad(Y)|m is skew for Y in C_g(h)")
_S2 = ("2", "([X,Z]_m, X) = 0 for X in C_g(h) & m and Z in g")
_S3 = ("3", "B <= 0 on k = C_g(h) + [h,h], vanishing only on central elements")
_S4 = ("4", "C_g(h) & n(g) is the center of g")
_S5 = ("5", "the metric is invariant under the normalizer of h")
_S6 = ("6", "m = (C_g(h) & m) + [h,m], orthogonal for both B and the metric")


def _skew_on_m(space: MetricReductiveSpace, Y) -> bool:
    S = la.matmul(space.ip, space.ad_m(Y))
    return all(S[i][j] + S[j][i] == 0 for i in range(len(S)) for j in range(i, len(S)))


def skew_centralizer_audit(space: MetricReductiveSpace, verdict: GOVerdict | None,
                           config: SampleConfig = SampleConfig(), force: bool = False) -> AuditReport:
    clauses = (_S1, _S2, _S3, _S4, _S5, _S6)
    cb = ClauseBuilder()
    pre = _gate(cb, verdict, force, clauses)
    if pre is None:
        return cb.report("skew_centralizer", _target(space), "skipped")
    g = space.g
    B = L._killing_matrix(g)
    ns = H.normalizer_structures(space)
    cgh = L.centralizer(g, space.h)
    z = L.center(g)

    def first_non_skew(sub):
        return next((Y for Y in sub.rows if not _skew_on_m(space, Y)), None)

    def c1():
        bad = first_non_skew(cgh)
        return bad is None, {"Y": bad}

    def c2():
        for X in GC.sample_in(ns.c_part, config):
            for j in range(g.dim):
                val = space.inner(space.bracket_m(X, la.unit(g.dim, j)), X)
                if val:
                    return False, {"X": X, "Z": la.unit(g.dim, j), "value": val}
        return True, None

    def c3():
        pos, _, _ = la.inertia(_form_on(B, ns.k))
        null = _null_vectors(B, ns.k)
        bad = next((v for v in null.rows if not z.contains(v)), None)
        return not pos and bad is None, {"k": ns.k, "X": bad}

    def c4():
        inter = cgh & L.nilradical(g)
        return inter == z, {"intersection": inter, "center": z}

    def c5():
        bad = first_non_skew(ns.normalizer)
        return bad is None, {"Y": bad}

    def c6():
        failed = [name for name, ok in ns.checks if not ok]
        return not failed, {"failed": failed}

    for (cid, anchor), check in zip(clauses, (c1, c2, c3, c4, c5, c6)):
        cb.run(cid, anchor, check)
    return cb.report("skew_centralizer", _target(space), pre)


# ---------------------------------------------------------------------------
# quotient by the normalizer of the isotropy
# ---------------------------------------------------------------------------

_Q0 = ("go", "the quotient space G/K is geodesic orbit")
_Q1 = ("dim", "no one-dimensional invariant submodule in the quotient tangent space")
_Q2 = ("nil", "the quotient nilradical equals [g~, r~]")
_Q3 = ("rad", "r~ = n~ + (r~ & k~)")
_Q4 = ("levi", "n~ + [g~,g~] + k~ = g~")
_Q5 = ("submersion", "m -> [h,m] is the orthogonal projection with kernel C_g(h) & m")


@dataclass(frozen=True, eq=False)
class QuotientResult:
    space: MetricReductiveSpace | None
    verdict: GOVerdict | None
    report: AuditReport
    ideal: Subspace
    k: Subspace


def quotient_go_construction(space: MetricReductiveSpace, verdict: GOVerdict | None,
                             config: SampleConfig = SampleConfig(), force: bool = False
                             ) -> QuotientResult:
    """Pass to G/K with K the normalizer of h, modulo the largest ideal l of g in k."""
    clauses = (_Q0, _Q1, _Q2, _Q3, _Q4, _Q5)
    g, h, m = space.g, space.h, space.m
    cb = ClauseBuilder()
    ns = H.normalizer_structures(space)
    k = ns.k
    l_ = L.largest_ideal_in(g, k)
    pre = _gate(cb, verdict, force, clauses)
    if pre is None:
        return QuotientResult(None, None, cb.report("quotient", _target(space), "skipped"), l_, k)
    if k == L.full(g):
        for cid, anchor in clauses:
            cb.skip(cid, anchor, "degenerate: k = g, the quotient is a point")
        return QuotientResult(None, None, cb.report("quotient", _target(space), pre + "; degenerate"),
                              l_, k)
    quo = L.quotient_algebra(g, l_)
    proj, gt = quo.project, quo.algebra
    kt = Subspace.span([proj(v) for v in k.rows], gt.dim)
    mt_src = ns.hm
    mt = Subspace.span([proj(v) for v in mt_src.rows], gt.dim)
    # the metric on [h,m] transported along the (injective) projection
    lifts = [mt_src.vector(c) for c in _lift_coords(mt_src, mt, proj)]
    ip = tuple(tuple(space.inner(x, y) for y in lifts) for x in lifts)
    new = MetricReductiveSpace(gt, kt, mt, ip, f"{_target(space)} / normalizer")
    new_verdict = GC.go_check(new, config)
    cb.add(*_Q0, new_verdict.is_go_evidence, {"verdict": new_verdict.kind, "witness": new_verdict.witness})

    def dim_ge_2():
        fixed = _common_kernel(new.isotropy_ops, new.m.dim)
        return fixed.is_zero(), {"fixed_vector": new.from_m(fixed.rows[0]) if fixed.rows else None}

    rt, nt = L.radical(gt), L.nilradical(gt)
    grt = L.bracket_spaces(gt, L.full(gt), rt)

    def nil():
        return nt == grt, {"nilradical": nt, "g_r": grt}

    def rad():
        return direct_sum_ok([nt, rt & kt], rt), {"radical": rt, "nilradical": nt, "k": kt}

    def levi():
        total = nt + L.derived_algebra(gt) + kt
        return total == L.full(gt), {"span": total}

    def submersion():
        kern = orthogonal_complement(space.ambient_form(), ns.hm, m)
        return kern == ns.c_part, {"kernel": kern, "c_part": ns.c_part}

    for (cid, anchor), check in zip(clauses[1:], (dim_ge_2, nil, rad, levi, submersion)):
        cb.run(cid, anchor, check)
    return QuotientResult(new, new_verdict, cb.report("quotient", _target(space), pre), l_, k)


def _lift_coords(src: Subspace, image: Subspace, proj) -> list:
    """Coordinates in ``src`` of the preimages of the echelon basis of ``image``."""
    imgs = [proj(v) for v in src.rows]
    cols = la.transpose(imgs)
    out = []
    for w in image.rows:
        sol = la.solve(cols, w, src.dim)
        out.append(sol.solution)
    return out


# ---------------------------------------------------------------------------
# orbits of normalized subgroups
# ---------------------------------------------------------------------------

_T1 = ("complement", "p + q is an invariant complement adapted to k")
_T2 = ("bracket", "[p,p] <= h + p")
_T3 = ("u", "U(p,p) <= p")
_T4 = ("tg", "the orbit of K through the origin is totally geodesic")


@dataclass(frozen=True, eq=False)
class NormalizedOrbit:
    adapted: MetricReductiveSpace
    p: Subspace
    result: GC.TotallyGeodesicResult
    report: AuditReport


def normalized_orbit_audit(space: MetricReductiveSpace, k_sub, verdict: GOVerdict | None,
                           force: bool = False) -> NormalizedOrbit:
    g, h = space.g, space.h
    k_sub = H._as_subspace(g, k_sub)
    if not L.is_subalgebra(g, k_sub):
        raise NotASubalgebra("k must be a subalgebra")
    if not L.bracket_spaces(g, h, k_sub) <= k_sub:
        raise NotNormalized("[h, k] is not contained in k")
    cb = ClauseBuilder()
    clauses = (_T1, _T2, _T3, _T4)
    pre = _gate(cb, verdict, force, clauses)
    Q = space.ambient_form()
    p = orthogonal_complement(Q, k_sub & h, k_sub)
    q = orthogonal_complement(Q, h + k_sub, L.full(g))
    adapted = space.with_complement(p + q, f"{_target(space)} adapted to k")
    res = GC.totally_geodesic_check(adapted, p)
    if pre is None:
        return NormalizedOrbit(adapted, p, res, cb.report("normalized_orbit", _target(space), "skipped"))
    cb.add(*_T1, direct_sum_ok([p, q, h], L.full(g)), {"p": p, "q": q})
    cb.add(*_T2, res.bracket_closed, {"p": p})
    cb.add(*_T3, res.u_closed, {"p": p})
    cb.add(*_T4, res.is_tg, {"p": p})
    return NormalizedOrbit(adapted, p, res, cb.report("normalized_orbit", _target(space), pre))


# ---------------------------------------------------------------------------
# submodules with [p,p] <= p + h
# ---------------------------------------------------------------------------

_I1 = ("1", "C_h(p) is an ideal of h")
_I2 = ("2", "[p,p]_h is an ideal of h")
_I3 = ("3", "B(C_h(p), [p,p]_h) = 0 under any of the four sufficient conditions")
_I4 = ("4", "h = [p,p]_h + C_h(p) when B(h,m) = 0 and B is nondegenerate on p")


@dataclass(frozen=True)
class Irred1Conditions:
    killing_orthogonal: bool
    centralizer_semisimple: bool
    irreducible: bool
    no_line: bool

    def any(self) -> bool:
        return self.killing_orthogonal or self.centralizer_semisimple or self.irreducible or self.no_line


def _is_ideal_in(g: LieAlgebra, sub: Subspace, h: Subspace) -> bool:
    return L.bracket_spaces(g, h, sub) <= sub


def _semisimple(g: LieAlgebra, sub: Subspace) -> bool:
    if sub.is_zero():
        return True
    a = L.restrict_algebra(g, sub)
    return not L.ker_killing(a).rows


def irred1_audit(space: MetricReductiveSpace, p) -> AuditReport:
    """Holds for every homogeneous Riemannian space, so no verdict is needed."""
    g, h, m = space.g, space.h, space.m
    p = H._as_subspace(g, p)
    if not p <= m or not L.bracket_spaces(g, h, p) <= p:
        raise GeoOrbitError("p must be an ad(h)-invariant subspace of m")
    B = L._killing_matrix(g)
    cb = ClauseBuilder()
    c_hp = h & L.centralizer(g, p)
    pairs = list(itertools.combinations_with_replacement(p.rows, 2))
    closed = all((p + h).contains(g.bracket(x, y)) for x, y in pairs)
    pp_h = Subspace.span([space.h_part(g.bracket(x, y)) for x, y in pairs], g.dim)

    cb.add(*_I1, _is_ideal_in(g, c_hp, h), {"C_h(p)": c_hp})
    if not closed:
        for cid, anchor in (_I2, _I3, _I4):
            cb.skip(cid, anchor, "[p,p] is not contained in p + h")
        return cb.report("irred1", _target(space), "invariant submodule")

    cb.add(*_I2, _is_ideal_in(g, pp_h, h), {"[p,p]_h": pp_h})
    p_coords = Subspace.span([space.m_coords(v) for v in p.rows], m.dim)
    ops_p = [H._restrict_op(op, p_coords) for op in space.isotropy_ops]
    splitter = H._ModuleSplitter(space.ip, space.isotropy_ops)
    parts = splitter.split(p_coords)
    cond = Irred1Conditions(
        killing_orthogonal=all(la.bilinear(x, B, z) == 0 for x in p.rows for z in h.rows),
        centralizer_semisimple=_semisimple(g, c_hp),
        irreducible=len(parts) == 1 and parts[0][1] == "irreducible",
        no_line=_common_kernel(ops_p, p.dim).is_zero() if p.dim else True,
    )
    detail = ", ".join(f"{k}={v}" for k, v in vars(cond).items())
    if cond.any():
        bad = next(((x, y) for x in c_hp.rows for y in pp_h.rows if la.bilinear(x, B, y)), None)
        cb.add(*_I3, bad is None, {"pair": bad}, detail)
    else:
        cb.skip(*_I3, "no sufficient condition holds; " + detail)

    hm_orth = all(la.bilinear(x, B, z) == 0 for x in m.rows for z in h.rows)
    nondeg = not la.nullspace(_form_on(B, p), p.dim)
    if hm_orth and nondeg:
        cb.add(*_I4, direct_sum_ok([pp_h, c_hp], h), {"[p,p]_h": pp_h, "C_h(p)": c_hp})
    else:
        cb.skip(*_I4, "requires B(h,m) = 0 and B nondegenerate on p")
    return cb.report("irred1", _target(space), "invariant submodule")


# ---------------------------------------------------------------------------
# Levi decompositions adapted to a compactly embedded subalgebra
# ---------------------------------------------------------------------------

_L1 = ("1", "[k,s] <= s")
_L2 = ("2", "[k & r, s] = 0")
_L3 = ("3", "k = (k & r) + (k & s)")
_L4 = ("4", "[k,k] <= s")
_L5 = ("5", "k & s is of compact type in s")
_L6 = ("embedded", "k is compactly embedded in g")


def _even_or_odd(coeffs: Sequence) -> bool:
    """det(tI - A) is even or odd, as for an operator with imaginary spectrum."""
    n = len(coeffs) - 1
    return all(c == 0 for i, c in enumerate(coeffs) if (n - i) % 2)


def goodlevi_audit(g: LieAlgebra, k, s) -> AuditReport:
    k = H._as_subspace(g, k)
    s = H._as_subspace(g, s)
    clauses = (_L1, _L2, _L3, _L4, _L5, _L6)
    cb = ClauseBuilder()
    target = f"algebra of dimension {g.dim}"
    levi = L.verify_levi(g, s)
    if not levi:
        for cid, anchor in clauses:
            cb.skip(cid, anchor, "precondition: " + "; ".join(levi.diagnostics))
        return cb.report("goodlevi", target, "s is not a Levi factor")
    if not L.is_subalgebra(g, k):
        raise NotASubalgebra("k must be a subalgebra")
    r = L.radical(g)
    B = L._killing_matrix(g)
    kr, ks = k & r, k & s

    def inclusion(U, V, W):
        br = next(((u, v) for u in U.rows for v in V.rows if not W.contains(g.bracket(u, v))), None)
        return br is None, None if br is None else {"X": br[0], "Y": br[1], "bracket": g.bracket(*br)}

    cb.run(*_L1, lambda: inclusion(k, s, s))
    cb.run(*_L2, lambda: inclusion(kr, s, Subspace.zero(g.dim)))
    cb.run(*_L3, lambda: (direct_sum_ok([kr, ks], k), {"k & r": kr, "k & s": ks}))
    cb.run(*_L4, lambda: inclusion(k, k, s))

    def compact_ks():
        Bks = _form_on(B, ks)
        return (la.is_positive_definite(la.matscale(-1, Bks)) if ks.dim else True), {"B": Bks}

    def embedded():
        pos, _, _ = la.inertia(_form_on(B, k))
        bad = next((x for x in k.rows if not _even_or_odd(la.charpoly(g.ad(x)))), None)
        return not pos and bad is None, {"X": bad}

    cb.run(*_L5, compact_ks, necessary_only=True)
    cb.run(*_L6, embedded, necessary_only=True)
    return cb.report("goodlevi", target, "s is a Levi factor")


SUITES = ("strucrad1", "strucnilr", "skew", "irred1", "goodlevi", "quotient", "eigenspace")
