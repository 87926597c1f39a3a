"""Engine values against the independent brute-force oracles."""

from fractions import Fraction

import pytest

from cyengine.ext_tilting import FinDimAlgebraPresentation, ModuleRep, ext_dim, hom_dim
from cyengine.homology import jacobian_presentation

import oracles
from helpers import quiver_preprojective, session_preprojective

A2 = ([1, 2], [("a", 1, 2)], [])
LOOP = ([1], [("x", 1, 1)], [(Fraction(1, 3), ["x", "x", "x"])])
CYCLE = ([1, 2, 3], [("a", 1, 2), ("b", 3, 1), ("c", 2, 3)], [(1, ["a", "b", "c"])])


def test_oracle_values_fixed_in_advance():
    assert oracles.jacobian_dim(*A2, 2) == 3
    assert oracles.jacobian_dim(*A2, 3) == 3
    assert oracles.jacobian_dim(*LOOP, 3) == 2
    assert oracles.jacobian_dim(*LOOP, 4) == 2
    assert [oracles.dual_numbers_ext(n) for n in range(7)] == [1] * 7


@pytest.mark.parametrize("fixture", [A2, LOOP, CYCLE], ids=["A2", "loop", "cycle"])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_jacobian_matches_oracle(fixture, N):
    p = quiver_preprojective(*fixture, truncation=N + 2)
    assert jacobian_presentation(p, N).dim == oracles.jacobian_dim(*fixture, N)


def test_corpus_loop_matches_oracle():
    p = session_preprojective("loop_cubic.json")
    for N in (2, 3, 4):
        assert jacobian_presentation(p, N).dim == oracles.jacobian_dim(*LOOP, N)


def _arrows(A):
    return [(a, A.vertices[s], A.vertices[t]) for a, s, t in zip(A.arrow_names, A.asrc, A.atgt)]


def _rep_data(M):
    dims = {v: M.dims[k] for k, v in enumerate(M.A.vertices)}
    mats = {a: M.mats[k] for k, a in enumerate(M.A.arrow_names)}
    return dims, mats


def test_a2_hom_and_euler_form():
    A = FinDimAlgebraPresentation.a2()
    mods = [ModuleRep.simple(A, "1"), ModuleRep.simple(A, "2"), ModuleRep.projective(A, "1"),
            ModuleRep.projective(A, "2")]
    for X in mods:
        for Y in mods:
            dx, mx = _rep_data(X)
            dy, my = _rep_data(Y)
            assert hom_dim(X, Y) == oracles.quiver_hom_dim(_arrows(A), dx, mx, dy, my)
            euler = oracles.euler_form(_arrows(A), dx, dy)
            assert hom_dim(X, Y) - ext_dim(X, Y, 1) == euler
            assert ext_dim(X, Y, 2) == 0


def test_dual_numbers_ext_matches_periodic_resolution():
    D = FinDimAlgebraPresentation.dual_numbers()
    k = ModuleRep.simple(D, "1")
    assert [ext_dim(k, k, n) for n in range(7)] == [oracles.dual_numbers_ext(n) for n in range(7)]
