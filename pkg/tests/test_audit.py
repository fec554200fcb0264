import pytest

from geoorbit import audit as A
from geoorbit import constructions as C
from geoorbit import gochecker as GC
from geoorbit import liealg as L
from geoorbit import linalg as la
from geoorbit.errors import GeoOrbitError, NotASubalgebra, NotNormalized
from geoorbit.homspace import build_reductive, MetricSpec
from geoorbit.report import FAIL, PASS, PASS_NECESSARY, SKIPPED
from geoorbit.subspace import Subspace

from conftest import go_corpus

GO_SPACES = go_corpus()
IDS = [s.label for s in GO_SPACES]


@pytest.fixture(scope="module", params=range(len(GO_SPACES)), ids=IDS)
def go_space(request):
    space = GO_SPACES[request.param]
    return space, GC.go_check(space)


def test_corpus_is_go(go_space):
    _, verdict = go_space
    assert verdict.is_go_evidence


def test_strucrad1_on_go_corpus(go_space):
    space, verdict = go_space
    rep = A.strucrad1_audit(space, verdict)
    assert rep.passed, rep.to_json()


def test_strucnilr_on_go_corpus(go_space):
    space, verdict = go_space
    rep = A.strucnilr_audit(space, verdict)
    assert rep.passed, rep.to_json()
    assert L.series_analysis(space.g, L.nilradical(space.g)).nilpotency_class <= 2


def test_skew_on_go_corpus(go_space):
    space, verdict = go_space
    rep = A.skew_centralizer_audit(space, verdict, GC.SampleConfig(sample_count=16))
    assert rep.passed, rep.to_json()


def test_audits_skip_on_not_go():
    space = C.filiform4()
    verdict = GC.go_check(space)
    for fn in (A.strucrad1_audit, A.strucnilr_audit):
        rep = fn(space, verdict)
        assert rep.skipped and not rep.passed
    rep = A.skew_centralizer_audit(space, verdict)
    assert all(c.status == SKIPPED for c in rep.clauses)


def test_strucrad1_forced_counterexample():
    space = C.complex_weight_solvable()
    g = space.g
    n, kerB = L.nilradical(g), L.ker_killing(g)
    assert n <= kerB and n != kerB
    rep = A.strucrad1_audit(space, None, force=True)
    assert rep.precondition.startswith("forced")
    assert rep.clause("3").status == FAIL
    assert rep.clause("3").witness["X"] is not None


def test_strucnilr_forced_filiform():
    rep = A.strucnilr_audit(C.filiform4(), None, force=True)
    assert rep.clause("1").status == FAIL


def test_quotient_u2(u2):
    res = A.quotient_go_construction(u2, GC.go_check(u2))
    assert res.report.passed, res.report.to_json()
    q = res.space
    assert q.g.dim == 3 and q.m.dim == 2 and q.h.dim == 1
    assert L.series_analysis(q.g).is_solvable is False
    assert L.radical(q.g).is_zero()
    assert res.ideal == Subspace.span([(0, 0, 0, 1)], 4)


def test_quotient_is_valid_space(ex1):
    res = A.quotient_go_construction(ex1, GC.go_check(ex1))
    assert res.report.passed, res.report.to_json()
    # re-validate by construction from the pieces
    again = type(res.space)(res.space.g, res.space.h, res.space.m, res.space.ip)
    assert again == res.space


def test_quotient_degenerate_when_normalizer_is_everything():
    g = C.su2_plus_r()
    space = build_reductive(g, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], la.identity(1))
    res = A.quotient_go_construction(space, GC.go_check(space))
    assert res.space is None
    assert res.k == L.full(g)
    assert all(c.status == SKIPPED for c in res.report.clauses)
    assert res.report.precondition.endswith("degenerate")


def test_quotient_skipped_without_go():
    space = C.filiform4()
    res = A.quotient_go_construction(space, GC.go_check(space))
    assert res.space is None and res.report.skipped


def test_normalized_orbit_nilradical(ex1):
    verdict = GC.go_check(ex1)
    orbit = A.normalized_orbit_audit(ex1, L.nilradical(ex1.g), verdict)
    assert orbit.report.passed, orbit.report.to_json()
    assert orbit.result.is_tg


def test_normalized_orbit_errors(u2):
    verdict = GC.go_check(u2)
    with pytest.raises(NotASubalgebra):
        A.normalized_orbit_audit(u2, [(1, 0, 0, 0), (0, 1, 0, 0)], verdict)
    with pytest.raises(NotNormalized):
        A.normalized_orbit_audit(u2, [(1, 0, 0, 0)], verdict)


def test_normalized_orbit_su2_bi_invariant():
    g = L.validate_algebra(3, C.SU2)
    space = build_reductive(g, [], MetricSpec.explicit(la.identity(3)))
    orbit = A.normalized_orbit_audit(space, [(1, 0, 0)], GC.go_check(space))
    assert orbit.report.passed


def test_irred1_sphere():
    g = L.validate_algebra(3, C.SU2)
    space = build_reductive(g, [(0, 0, 1)], MetricSpec.killing_multiple(1))
    rep = A.irred1_audit(space, space.m)
    assert rep.passed, rep.to_json()
    assert "killing_orthogonal" in rep.clause("3").detail


def test_irred1_rejects_non_invariant(u2):
    with pytest.raises(GeoOrbitError):
        A.irred1_audit(u2, [(1, 0, 0, 0)])


def test_goodlevi_euclidean(ex1):
    k = ex1.h + Subspace.span([la.unit(8, 4)], 8)
    rep = A.goodlevi_audit(ex1.g, k, C.euclidean_go_levi(2))
    assert rep.passed, rep.to_json()
    assert rep.clause("5").status == PASS_NECESSARY
    assert rep.clause("embedded").status == PASS_NECESSARY
    assert rep.clause("1").status == PASS


def test_goodlevi_failing_clause():
    g = L.validate_algebra(3, {(0, 2): {1: -1}, (1, 2): {0: 1}})
    rep = A.goodlevi_audit(g, L.full(g), Subspace.zero(3))
    assert rep.clause("4").status == FAIL


def test_goodlevi_skips_on_bad_levi(ex1):
    rep = A.goodlevi_audit(ex1.g, ex1.h, Subspace.zero(8))
    assert rep.skipped


def test_report_json_is_canonical(u2):
    rep = A.strucrad1_audit(u2, GC.go_check(u2))
    text = rep.to_json()
    assert text == rep.to_json()
    assert '"audit_name":"strucrad1"' in text
