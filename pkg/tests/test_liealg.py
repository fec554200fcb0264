import itertools
from fractions import Fraction

import pytest

from geoorbit import constructions as C
from geoorbit import liealg as L
from geoorbit import linalg as la
from geoorbit.errors import JacobiViolation, NotAnIdeal, NotASubalgebra
from geoorbit.subspace import Subspace

import oracle
from conftest import SMALL_CORPUS, small_algebra


def span(g, *vecs):
    return Subspace.span(vecs, g.dim)


def test_validate_abelian_and_su2():
    assert L.validate_algebra(3).structure == {}
    su2 = L.validate_algebra(3, C.SU2)
    assert su2.bracket((1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert su2.bracket((0, 1, 0), (1, 0, 0)) == (0, 0, -1)


def test_validate_rejects_jacobi_failure():
    with pytest.raises(JacobiViolation) as info:
        L.validate_algebra(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    assert info.value.triple == (0, 1, 2)
    assert any(info.value.residual)


def test_structure_input_forms_agree():
    a = L.validate_algebra(3, {(0, 1): {2: 1}})
    b = L.validate_algebra(3, [(1, 0, [(2, -1)])])
    assert a == b


def test_dimension_cap():
    with pytest.raises(ValueError):
        L.validate_algebra(65)
    assert L.validate_algebra(65, max_dim=65).dim == 65


def test_killing_forms():
    assert L.killing_form(L.abelian(3)).matrix == la.matscale(0, la.identity(3))
    assert L.killing_form(L.validate_algebra(3, C.SU2)).matrix == la.matscale(-2, la.identity(3))
    B = L.killing_form(C.su2_plus_r()).matrix
    assert [B[i][i] for i in range(4)] == [-2, -2, -2, 0]


def test_killing_ad_invariance(corpus_algebra):
    _, g = corpus_algebra
    B = L._killing_matrix(g)
    for x, y, z in itertools.product(range(g.dim), repeat=3):
        ex, ey, ez = g.unit(x), g.unit(y), g.unit(z)
        assert la.bilinear(g.bracket(ex, ey), B, ez) + la.bilinear(ey, B, g.bracket(ex, ez)) == 0


@pytest.mark.parametrize("name, solvable, nilpotent, klass", [
    ("abelian3", True, True, 1),
    ("heis3", True, True, 2),
    ("filiform4", True, True, 3),
    ("su2", False, False, None),
    ("aff1", True, False, None),
])
def test_series(name, solvable, nilpotent, klass):
    rep = L.series_analysis(small_algebra(name))
    assert (rep.is_solvable, rep.is_nilpotent, rep.nilpotency_class) == (solvable, nilpotent, klass)


def test_radical_examples(ex1):
    assert L.radical(L.validate_algebra(3, C.SU2)).is_zero()
    g = C.su2_plus_r()
    assert L.radical(g) == span(g, (0, 0, 0, 1))
    r = L.radical(ex1.g)
    assert r.dim == 5 and r == Subspace.span([la.unit(8, i) for i in range(5)], 8)


def test_nilradical_examples(ex1):
    heis = small_algebra("heis3")
    assert L.nilradical(heis) == L.full(heis)
    g = C.su2_plus_r()
    assert L.nilradical(g) == span(g, (0, 0, 0, 1))
    assert L.nilradical(ex1.g) == Subspace.span([la.unit(8, i) for i in range(4)], 8)


def test_nilradical_sandwich(corpus_algebra):
    _, g = corpus_algebra
    n, r = L.nilradical(g), L.radical(g)
    assert L.bracket_spaces(g, L.full(g), r) <= n
    assert n <= (L.ker_killing(g) & r)
    assert L.is_ideal(g, n)
    assert L.series_analysis(g, n).is_nilpotent


def test_nilradical_hard_path():
    g = small_algebra("r3_complex")
    assert L.ker_killing(g).dim == 3
    assert L.nilradical(g).dim == 2


@pytest.mark.parametrize("name", sorted(SMALL_CORPUS))
def test_nilradical_matches_brute_force(name):
    dim, struct = SMALL_CORPUS[name]
    assert L.nilradical(small_algebra(name)).rows == oracle.brute_force_nilradical(struct, dim)


def test_commutant_queries(u2):
    g = C.su2_plus_r()
    rep = L.commutant_queries(g, span(g, (0, 0, 1, 1)))
    assert rep.center == span(g, (0, 0, 0, 1))
    assert rep.centralizer == span(g, (0, 0, 1, 0), (0, 0, 0, 1))
    assert rep.normalizer == rep.centralizer
    with pytest.raises(NotASubalgebra):
        L.normalizer(g, span(g, (1, 0, 0, 0), (0, 1, 0, 0)))


def test_largest_ideal_in():
    g = C.su2_plus_r()
    assert L.largest_ideal_in(g, L.full(g)) == L.full(g)
    assert L.largest_ideal_in(g, Subspace.zero(4)).is_zero()
    assert L.largest_ideal_in(g, span(g, (0, 0, 1, 0), (0, 0, 0, 1))) == span(g, (0, 0, 0, 1))


def test_quotient_algebra(ex1):
    g = C.su2_plus_r()
    q = L.quotient_algebra(g, span(g, (0, 0, 0, 1)))
    assert q.algebra == L.validate_algebra(3, C.SU2)
    assert L.quotient_algebra(g, Subspace.zero(4)).algebra == g
    with pytest.raises(NotAnIdeal):
        L.quotient_algebra(g, span(g, (1, 0, 0, 0)))
    # modulo the nilradical the Euclidean example becomes z + su(2)
    qe = L.quotient_algebra(ex1.g, L.nilradical(ex1.g))
    assert qe.algebra.dim == 4
    assert L.center(qe.algebra).dim == 1
    assert L.derived_algebra(qe.algebra).dim == 3


def test_derivations():
    D = L.derivations(L.abelian(3), la.identity(3))
    assert D.dim == 3
    su2 = L.validate_algebra(3, C.SU2)
    B = L._killing_matrix(su2)
    assert L.derivations(su2, la.matscale(-1, B)).dim == 3
    assert L.derivations(su2).dim == 3
    for M in L.derivations(small_algebra("heis3")).basis:
        assert L.is_derivation(small_algebra("heis3"), M)


def test_derivations_closed_under_commutator(corpus_algebra):
    _, g = corpus_algebra
    D = L.derivations(g)
    flat = Subspace.span([la.flatten(M) for M in D.basis], g.dim * g.dim)
    for A, B in itertools.combinations(D.basis, 2):
        assert flat.contains(la.flatten(la.commutator(A, B)))


def test_heisenberg13_derivations(heis13_data):
    assert heis13_data.derivations.dim == 11


def test_verify_levi(ex1):
    g = C.su2_plus_r()
    assert L.verify_levi(g, span(g, (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
    bad = L.verify_levi(g, span(g, (0, 0, 0, 1)))
    assert not bad and bad.diagnostics
    assert L.verify_levi(ex1.g, C.euclidean_go_levi(2))


def test_scalars_are_canonical():
    assert Fraction(2, 4) == la.Q("1/2")
    assert la.Q("-3/6").denominator == 2
