"""End-to-end acceptance checks, one test per criterion.

Each test records PASS or FAIL; the summary is printed at the end of the run.
"""
import io
import re
import subprocess
import sys
from contextlib import contextmanager
from fractions import Fraction

from geoorbit import audit as A
from geoorbit import cli
from geoorbit import constructions as C
from geoorbit import gochecker as GC
from geoorbit import homspace as H
from geoorbit import liealg as L
from geoorbit import linalg as la
from geoorbit.subspace import Subspace

import oracle
from conftest import ACCEPTANCE, SMALL_CORPUS, go_corpus, small_algebra


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        ACCEPTANCE[number] = ("FAIL", title)
        print(f"criterion {number}: FAIL  {title}")
        raise
    ACCEPTANCE[number] = ("PASS", title)
    print(f"criterion {number}: PASS  {title}")


def test_criterion_1_u2_family():
    with criterion(1, "U(2)/S^1 certified for every alpha; nilradical placement depends on the complement"):
        for alpha in (Fraction(1, 2), 1, 2, 5):
            space = C.u2_sphere(alpha)
            assert GC.go_check(space).kind == GC.CERTIFIED
            n = L.nilradical(space.g)
            assert n == Subspace.span([(0, 0, 0, 1)], 4)
            assert not n <= space.m
            ko = space.with_complement(H.complement_for(space.g, space.h, "killing_orthogonal"))
            assert n <= ko.m


def test_criterion_2_euclidean():
    with criterion(2, "Euclidean presentation is SampledGO with r = 5, n = 4, n != r & m"):
        space = C.euclidean_go(2)
        verdict = GC.go_check(space, GC.SampleConfig(sample_count=64, seed=0))
        assert verdict.kind == GC.SAMPLED and verdict.seed == 0
        r, n = L.radical(space.g), L.nilradical(space.g)
        assert (r.dim, n.dim) == (5, 4)
        assert n != (r & space.m)


def test_criterion_3_heisenberg_type():
    with criterion(3, "H-type (5, 8): D(n) = 11, Gordon check passes, solvable extension is GO"):
        space = C.heisenberg13()
        data = GC.two_step_data(space.g, space.ip)
        assert data.derivations.dim == 11
        cfg = GC.SampleConfig()
        assert GC.nil_go_check(space.g, space.ip, cfg, data).kind == GC.SAMPLED
        split = C.derivation_split(data)
        assert C.verify_gonil2_hypotheses(split, cfg) == len(GC.nil_samples(data, cfg))
        for scale in (Fraction(1, 2), 1, 3):
            ext = C.gonil2_extension(scale, space, cfg)
            assert GC.go_check(ext, cfg).kind == GC.SAMPLED


def test_criterion_4_radical_structure():
    with criterion(4, "radical structure audit passes on the GO corpus; ker B exceeds n off it"):
        for space in go_corpus():
            verdict = GC.go_check(space)
            assert verdict.is_go_evidence
            rep = A.strucrad1_audit(space, verdict)
            assert rep.passed, rep.to_json()
        g = C.complex_weight_solvable().g
        n, kerB = L.nilradical(g), L.ker_killing(g)
        assert n <= kerB and kerB.dim > n.dim


def _independent_not_go(space, X) -> bool:
    """With h = 0 a geodesic vector needs ([X, Y], X) = 0 for every Y."""
    n = space.g.dim
    struct = {ij: dict(t) for ij, t in space.g.structure.items()}
    for j in range(n):
        Y = tuple(Fraction(int(i == j)) for i in range(n))
        br = oracle.bracket(struct, n, X, Y)
        if sum(a * b for a, b in zip(br, X)) != 0:
            return True
    return False


def test_criterion_5_nilradical_class():
    with criterion(5, "GO corpus has nilradical class <= 2; filiform is NotGO with a re-verified witness"):
        for space in go_corpus():
            rep = L.series_analysis(space.g, L.nilradical(space.g))
            assert rep.nilpotency_class is None or rep.nilpotency_class <= 2
        space = C.filiform4()
        verdict = GC.go_check(space)
        assert verdict.kind == GC.NOT_GO
        assert space.h.dim == 0
        assert _independent_not_go(space, verdict.witness.X)


def test_criterion_6_quotient():
    with criterion(6, "quotient of U(2)/S^1 is su(2)/S^1 with every submodule of dim >= 2"):
        space = C.u2_sphere(2)
        res = A.quotient_go_construction(space, GC.go_check(space))
        q = res.space
        assert q.g.dim == 3 and q.m.dim == 2
        B = L._killing_matrix(q.g)
        assert la.is_positive_definite(la.matscale(-1, B))
        assert L.derived_algebra(q.g) == L.full(q.g)
        assert GC.go_check(q).is_go_evidence
        rt = L.radical(q.g)
        assert L.nilradical(q.g).is_zero()
        assert L.bracket_spaces(q.g, L.full(q.g), rt).is_zero()
        assert all(W.dim >= 2 for W in H.submodule_decomposition(q).modules)
        assert res.report.passed


def test_criterion_7_spectrum():
    with criterion(7, "U(2)/S^1 Killing spectrum, bracket inclusions and trivial principal isotropy"):
        space = C.u2_sphere(2)
        spec = H.killing_operator_decomposition(space)
        assert spec.eigenvalues == (-2, Fraction(-4, 3))
        assert spec.multiplicities == (2, 1)
        rep = GC.eigenspace_bracket_audit(spec, GC.go_check(space))
        assert rep.clause("i").status == "pass"
        p = Subspace.span([(1, 0, 0, 0), (0, 1, 0, 0)], 4)
        assert GC.principal_isotropy_dim(space, p).dim == 0
        assert L.bracket_spaces(space.g, spec.eigenspace(Fraction(-4, 3)), p) <= p


def test_criterion_8_oracle():
    with criterion(8, "nilradical agrees with the brute-force oracle on the small corpus"):
        assert len(SMALL_CORPUS) >= 12
        for name, (dim, struct) in SMALL_CORPUS.items():
            assert dim <= 4
            assert L.nilradical(small_algebra(name)).rows == oracle.brute_force_nilradical(struct, dim), name


TIMING = re.compile(rb'"timing":\{"seconds":[0-9.eE+-]+\}')


def _cli_bytes(argv) -> bytes:
    out = io.StringIO()
    cli.run_command([str(a) for a in argv], out)
    return TIMING.sub(b"", out.getvalue().encode("utf-8"))


def _process_bytes(argv) -> bytes:
    proc = subprocess.run([sys.executable, "-m", "geoorbit", *map(str, argv)],
                          capture_output=True, check=False)
    return TIMING.sub(b"", proc.stdout)


def test_criterion_9_cli_determinism(tmp_path):
    with criterion(9, "CLI output is byte-identical across runs apart from timing"):
        spaces = {}
        for kind in ("u2_sphere", "euclidean_go", "filiform4", "heisenberg3"):
            path = tmp_path / f"{kind}.json"
            assert cli.run_command(["construct", kind, "-o", str(path)], io.StringIO()) == 0
            first = path.read_bytes()
            assert cli.run_command(["construct", kind, "-o", str(path)], io.StringIO()) == 0
            assert path.read_bytes() == first
            spaces[kind] = path
        commands = [
            ["analyze", spaces["u2_sphere"]],
            ["go-check", spaces["euclidean_go"], "--seed", "0"],
            ["go-check", spaces["filiform4"], "--expect", "go"],
            ["nil-go-check", spaces["heisenberg3"]],
            ["audit", spaces["u2_sphere"], "--suite", "strucrad1"],
            ["audit", spaces["u2_sphere"], "--suite", "eigenspace"],
            ["audit", spaces["euclidean_go"], "--suite", "skew"],
            ["quotient", spaces["u2_sphere"], "-o", tmp_path / "q.json"],
        ]
        for argv in commands:
            runs = [_cli_bytes(argv) for _ in range(2)]
            assert runs[0] == runs[1]
            assert b'"timing"' not in runs[0]
        # separate interpreters share no caches
        for argv in commands[:3]:
            assert _process_bytes(argv) == _process_bytes(argv) == _cli_bytes(argv)
