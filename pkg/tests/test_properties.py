"""Randomized properties over semidirect products R x| R^k and two-step algebras."""
import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from geoorbit import constructions as C
from geoorbit import gochecker as GC
from geoorbit import homspace as H
from geoorbit import liealg as L
from geoorbit import linalg as la
from geoorbit.subspace import Subspace

import oracle

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
small_int = st.integers(-2, 2)


@st.composite
def semidirect(draw, max_k=3):
    """R^k with e_k acting by an integer matrix M; structure plus dimension."""
    k = draw(st.integers(1, max_k))
    M = [[draw(small_int) for _ in range(k)] for _ in range(k)]
    struct = {}
    for i in range(k):
        # [e_i, e_k] = -M e_i
        terms = {r: -M[r][i] for r in range(k) if M[r][i]}
        if terms:
            struct[(i, k)] = terms
    return k + 1, struct


@st.composite
def two_step(draw):
    a = draw(st.integers(2, 4))
    z = draw(st.integers(1, 2))
    struct = {}
    for i, j in itertools.combinations(range(a), 2):
        terms = {a + t: c for t in range(z) if (c := draw(small_int))}
        if terms:
            struct[(i, j)] = terms
    return a + z, struct


@st.composite
def rational_vectors(draw, n, count):
    return [tuple(la.Q(draw(small_int)) for _ in range(n)) for _ in range(count)]


@SETTINGS
@given(semidirect())
def test_nilradical_matches_oracle(data):
    n, struct = data
    g = L.validate_algebra(n, struct)
    assert L.nilradical(g).rows == oracle.brute_force_nilradical(struct, n)


@SETTINGS
@given(semidirect(max_k=4))
def test_sandwich_and_killing_kernel(data):
    n, struct = data
    g = L.validate_algebra(n, struct)
    nil, rad = L.nilradical(g), L.radical(g)
    assert rad == L.full(g)
    assert L.bracket_spaces(g, L.full(g), rad) <= nil
    assert nil <= L.ker_killing(g)
    assert L.series_analysis(g, nil).is_nilpotent


@SETTINGS
@given(semidirect(max_k=4))
def test_killing_invariant(data):
    n, struct = data
    g = L.validate_algebra(n, struct)
    B = L._killing_matrix(g)
    assert la.is_symmetric(B)
    for x, y, z in itertools.product(range(n), repeat=3):
        ex, ey, ez = g.unit(x), g.unit(y), g.unit(z)
        assert la.bilinear(g.bracket(ex, ey), B, ez) == -la.bilinear(ey, B, g.bracket(ex, ez))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_largest_ideal_in_random_subspace(data):
    n, struct = data.draw(semidirect())
    g = L.validate_algebra(n, struct)
    k = Subspace.span(data.draw(rational_vectors(n, data.draw(st.integers(0, n)))), n)
    ideal = L.largest_ideal_in(g, k)
    assert ideal <= k
    assert L.is_ideal(g, ideal)
    for v in oracle.candidate_vectors(n):
        J = Subspace.span(oracle.generated_ideal(struct, n, [v]), n)
        if J <= k:
            assert J <= ideal


@SETTINGS
@given(semidirect())
def test_derivations_form_subalgebra(data):
    n, struct = data
    g = L.validate_algebra(n, struct)
    D = L.derivations(g)
    flat = Subspace.span([la.flatten(M) for M in D.basis], n * n)
    for A, B in itertools.combinations(D.basis, 2):
        assert flat.contains(la.flatten(la.commutator(A, B)))
    ad = [la.transpose([g.bracket(g.unit(x), g.unit(y)) for y in range(n)]) for x in range(n)]
    assert all(flat.contains(la.flatten(M)) for M in ad)


@SETTINGS
@given(two_step())
def test_two_step_properties(data):
    n, struct = data
    g = L.validate_algebra(n, struct)
    rep = L.series_analysis(g)
    assert rep.is_nilpotent and rep.nilpotency_class <= 2
    verdict = GC.nil_go_check(g, la.identity(n), GC.SampleConfig(sample_count=4))
    again = GC.nil_go_check(g, la.identity(n), GC.SampleConfig(sample_count=4))
    assert verdict == again
    skew = L.derivations(g, la.identity(n))
    for M in skew.basis:
        assert la.transpose(M) == la.matscale(-1, M)


@SETTINGS
@given(two_step())
def test_u_map_symmetric_random(data):
    n, struct = data
    space = C.flat_space(L.validate_algebra(n, struct))
    for x, y in itertools.combinations(space.m.rows, 2):
        assert H.u_map(space, x, y) == H.u_map(space, y, x)
        # 2 (U(X, Y), Z) = ([Z, X], Y) + (X, [Z, Y])
        for z in space.m.rows:
            lhs = 2 * space.inner(H.u_map(space, x, y), z)
            assert lhs == space.inner(space.g.bracket(z, x), y) + space.inner(x, space.g.bracket(z, y))


@SETTINGS
@given(st.data())
def test_not_go_witness_is_reproducible(data):
    n, struct = data.draw(semidirect())
    space = C.flat_space(L.validate_algebra(n, struct))
    seed = data.draw(st.integers(0, 1000))
    verdict = GC.go_check(space, GC.SampleConfig(sample_count=6, seed=seed))
    if verdict.kind == GC.NOT_GO:
        X = verdict.witness.X
        assert not GC.geodesic_graph_solve(space, X).feasible
        assert any(space.inner(space.g.bracket(X, Y), X) for Y in space.m.rows)
