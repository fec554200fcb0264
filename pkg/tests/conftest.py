"""Shared corpus of small algebras and helpers."""
from __future__ import annotations

import pytest

from geoorbit import constructions as C
from geoorbit import gochecker as GC
from geoorbit import liealg as L

# criterion number -> (status, title), filled by test_acceptance
ACCEPTANCE: dict = {}

SU2 = C.SU2
SL2 = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}

# name -> (dim, structure); every entry has dimension <= 4
SMALL_CORPUS = {
    "abelian1": (1, {}),
    "abelian3": (3, {}),
    "heis3": (3, {(0, 1): {2: 1}}),
    "su2": (3, SU2),
    "sl2": (3, SL2),
    "aff1": (2, {(0, 1): {1: 1}}),
    "e2": (3, {(0, 2): {1: -1}, (1, 2): {0: 1}}),
    "r3_scalar": (3, {(0, 2): {0: -1}, (1, 2): {1: -1}}),
    "r3_hyperbolic": (3, {(0, 2): {0: -1}, (1, 2): {1: 1}}),
    "r3_jordan": (3, {(0, 2): {0: -1}, (1, 2): {0: -1, 1: -1}}),
    "r3_complex": (3, {(0, 2): {0: -1, 1: -1}, (1, 2): {0: 1, 1: -1}}),
    "su2_plus_r": (4, SU2),
    "gl2": (4, SL2),
    "heis3_plus_r": (4, {(0, 1): {2: 1}}),
    "filiform4": (4, {(0, 1): {2: 1}, (0, 2): {3: 1}}),
    "aff1_squared": (4, {(0, 1): {1: 1}, (2, 3): {3: 1}}),
    "heis_extension": (4, {(0, 1): {2: 1}, (0, 3): {0: -1}, (1, 3): {1: -1}, (2, 3): {2: -2}}),
    "r_plus_sl2": (4, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}),
}


def small_algebra(name: str) -> L.LieAlgebra:
    dim, struct = SMALL_CORPUS[name]
    return L.validate_algebra(dim, struct)


@pytest.fixture(params=sorted(SMALL_CORPUS))
def corpus_algebra(request):
    return request.param, small_algebra(request.param)


def go_corpus():
    """Spaces with a GO verdict, built once per session."""
    spaces = [C.u2_sphere(a) for a in (2,)] + [
        C.euclidean_go(2), C.ledger_obata(3), C.ledger_obata(3, "g_k-ideal"),
        GC.isometry_extension(C.heisenberg3().g, C.heisenberg3().ip, label="heisenberg3 isometry extension"),
    ]
    return spaces


@pytest.fixture(scope="session")
def u2():
    return C.u2_sphere(2)


@pytest.fixture(scope="session")
def ex1():
    return C.euclidean_go(2)


@pytest.fixture(scope="session")
def heis13():
    return C.heisenberg13()


@pytest.fixture(scope="session")
def heis13_data(heis13):
    return GC.two_step_data(heis13.g, heis13.ip)


@pytest.fixture(scope="session")
def gonil2_one():
    return C.gonil2_extension(1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
