import itertools
from fractions import Fraction

import pytest

from geoorbit import constructions as C
from geoorbit import gochecker as GC
from geoorbit import homspace as H
from geoorbit import liealg as L
from geoorbit import linalg as la
from geoorbit.errors import NotTwoStep
from geoorbit.report import PASS, SKIPPED
from geoorbit.subspace import Subspace


def test_lcg_is_deterministic():
    a, b = GC.LCG(7), GC.LCG(7)
    assert [a.next() for _ in range(5)] == [b.next() for _ in range(5)]
    assert GC.LCG(0).next() == GC.LCG_C
    assert all(-3 <= GC.LCG(1).coordinate(3) <= 3 for _ in range(50))


def test_sample_order():
    cfg = GC.SampleConfig(sample_count=4, seed=3)
    out = GC.sample_coordinates(3, cfg)
    assert out[:3] == [la.unit(3, i) for i in range(3)]
    assert out[3:6] == [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    assert len(out) == 10 and all(any(v) for v in out)
    assert out == GC.sample_coordinates(3, cfg)
    assert out != GC.sample_coordinates(3, GC.SampleConfig(sample_count=4, seed=4))


def test_sample_config_validation():
    with pytest.raises(ValueError):
        GC.SampleConfig(coordinate_bound=0)


def test_u2_certified_for_every_alpha():
    for alpha in (Fraction(1, 2), 1, 2, 5):
        verdict = GC.go_check(C.u2_sphere(alpha))
        assert verdict.kind == GC.CERTIFIED


def test_certified_means_zero_graph(u2):
    # a naturally reductive space admits Z = 0 in every direction
    cfg = GC.SampleConfig(sample_count=100, seed=11)
    for c in GC.random_vectors(u2.m.dim, cfg):
        X = u2.from_m(c)
        assert all(u2.inner(u2.g.bracket(X, Y), X) == 0 for Y in u2.m.rows)
        assert GC.geodesic_graph_solve(u2, X).feasible


def test_flat_abelian_is_certified():
    assert GC.go_check(C.flat_space(L.abelian(3))).kind == GC.CERTIFIED


def test_euclidean_sampled(ex1):
    verdict = GC.go_check(ex1)
    assert verdict.kind == GC.SAMPLED
    assert verdict.seed == 0 and verdict.samples >= 64


def test_heisenberg_without_isometries_is_not_go():
    verdict = GC.go_check(C.heisenberg3())
    assert verdict.kind == GC.NOT_GO
    assert not verdict.witness.feasible


def test_filiform_witness_reverified():
    space = C.filiform4()
    verdict = GC.go_check(space)
    assert verdict.kind == GC.NOT_GO
    X = verdict.witness.X
    assert X == (1, 0, 1, 0)
    # h = 0, so the only candidate is Z = 0; some Y must violate ([X, Y], X) = 0
    assert any(la.bilinear(space.g.bracket(X, Y), la.identity(4), X) != 0
               for Y in space.m.rows)
    # earlier samples all admit a geodesic vector
    earlier = [space.from_m(c) for c in GC.sample_coordinates(4, GC.SampleConfig())][:verdict.samples - 1]
    assert all(GC.geodesic_graph_solve(space, Y).feasible for Y in earlier)


def test_geodesic_graph_residual(ex1):
    for c in GC.sample_coordinates(ex1.m.dim, GC.SampleConfig(sample_count=8, seed=5)):
        X = ex1.from_m(c)
        sol = GC.geodesic_graph_solve(ex1, X)
        XZ = la.add(X, sol.Z)
        assert ex1.h.contains(sol.Z)
        assert all(ex1.inner(ex1.g.bracket(XZ, Y), X) == 0 for Y in ex1.m.rows)


def test_geodesic_graph_rejects_vectors_outside_m(u2):
    with pytest.raises(ValueError):
        GC.geodesic_graph_solve(u2, (0, 0, 1, 1))


def test_verdict_json(u2):
    obj = GC.go_check(C.filiform4()).to_json_obj()
    assert obj["kind"] == GC.NOT_GO and obj["witness"]["X"] == ["1", "0", "1", "0"]
    assert GC.go_check(u2).to_json_obj()["samples"] == 0


def test_two_step_data_heisenberg13(heis13, heis13_data):
    assert heis13_data.z.dim == 5 and heis13_data.a.dim == 8
    assert heis13_data.derivations.dim == 11
    z1, a1, a2 = heis13.g.unit(8), heis13.g.unit(0), heis13.g.unit(1)
    # (J_z Y, W) = ([Y, W], z)
    J = heis13_data.J(z1, a1)
    for W in heis13_data.a.rows:
        assert la.dot(J, W) == la.dot(heis13.g.bracket(a1, W), z1)
    assert heis13_data.a.contains(heis13_data.J(z1, a2))


def test_nil_go_heisenberg13(heis13, heis13_data):
    verdict = GC.nil_go_check(heis13.g, heis13.ip, data=heis13_data)
    assert verdict.kind == GC.SAMPLED
    assert verdict.samples == 5 * 8 + 64


def test_nil_go_rejects_higher_class():
    g = C.filiform4().g
    with pytest.raises(NotTwoStep):
        GC.nil_go_check(g, la.identity(4))
    assert GC.nil_go_check(L.abelian(2), la.identity(2)).kind == GC.CERTIFIED


def test_nil_go_matches_isometry_extension():
    heis = C.heisenberg3()
    assert GC.nil_go_check(heis.g, heis.ip).kind == GC.SAMPLED
    ext = GC.isometry_extension(heis.g, heis.ip)
    assert ext.g.dim == 4 and ext.h.dim == 1
    assert GC.go_check(ext).is_go_evidence


def test_totally_geodesic(u2):
    ext = GC.isometry_extension(C.heisenberg3().g, C.heisenberg3().ip)
    tg = GC.totally_geodesic_check(ext, ext.m)
    assert tg.is_tg
    assert not tg.induced_go_condition
    res = GC.totally_geodesic_check(u2, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert not res.is_tg and not res.bracket_closed
    assert res.h_prime == u2.h
    with pytest.raises(ValueError):
        GC.totally_geodesic_check(u2, [(0, 0, 1, 1)])


def test_principal_isotropy_u2(u2):
    res = GC.principal_isotropy_dim(u2, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert res.dim == 0
    assert GC.centralizer_dim_in_h(u2, res.attained_at) == 0
    assert GC.principal_isotropy_dim(u2, [(0, 0, 2, -1)]).dim == 1


def test_principal_isotropy_running_min_monotone(ex1):
    res = GC.principal_isotropy_dim(ex1, ex1.m, GC.SampleConfig(sample_count=20, seed=2))
    assert all(a >= b for a, b in zip(res.running_min, res.running_min[1:]))
    assert res.running_min[-1] == res.dim
    assert res.samples == len(res.running_min)


def test_eigenspace_audit_u2(u2):
    spec = H.killing_operator_decomposition(u2)
    rep = GC.eigenspace_bracket_audit(spec, GC.go_check(u2))
    assert rep.passed, rep.to_json()
    assert [c.claim_id for c in rep.clauses] == ["i", "ii", "iii", "iv"]


def test_eigenspace_audit_skips_without_go():
    space = C.filiform4()
    rep = GC.eigenspace_bracket_audit(H.killing_operator_decomposition(space), GC.go_check(space))
    assert rep.skipped
    assert all(c.status == SKIPPED for c in rep.clauses)


def test_eigenspace_audit_inclusion_u2(u2):
    spec = H.killing_operator_decomposition(u2)
    A43 = spec.eigenspace(Fraction(-4, 3))
    p = Subspace.span([(1, 0, 0, 0), (0, 1, 0, 0)], 4)
    assert L.bracket_spaces(u2.g, A43, p) <= p
    for (a, U), (b, V) in itertools.combinations(spec.nonzero, 2):
        assert L.bracket_spaces(u2.g, U, V) <= U + V


def test_eigenspace_audit_ledger_obata():
    space = C.ledger_obata(3, "g_k-ideal")
    rep = GC.eigenspace_bracket_audit(H.killing_operator_decomposition(space), GC.go_check(space))
    assert all(c.status == PASS for c in rep.clauses), rep.to_json()
