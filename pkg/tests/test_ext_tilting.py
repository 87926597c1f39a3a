import pytest

from cyengine.errors import LengthCapExceeded
from cyengine.ext_tilting import (FinDimAlgebraPresentation, ModuleRep, ext_dim, hom_dim,
                                  in_add, is_d_cluster_tilting, is_d_rigid, proj_resolution)


@pytest.fixture(scope="module")
def a2():
    A = FinDimAlgebraPresentation.a2()
    return A, {n: ModuleRep.simple(A, n[1]) if n[0] == "S" else ModuleRep.projective(A, n[1])
               for n in ("S1", "S2", "P1", "P2")}


@pytest.fixture(scope="module")
def dual():
    D = FinDimAlgebraPresentation.dual_numbers()
    return D, ModuleRep.simple(D, "1"), ModuleRep.projective(D, "1")


def test_a2_basics(a2):
    A, m = a2
    assert A.dim == 3
    assert ext_dim(m["S1"], m["S2"], 1) == 1
    assert ext_dim(m["S2"], m["S1"], 1) == 0
    res = proj_resolution(m["S1"], 3)
    assert res.complete and len(res.terms) == 2


def test_a2_tilting_verdicts(a2):
    A, m = a2
    universe = [m["P1"], m["P2"], m["S1"]]
    v = is_d_cluster_tilting(A, [m["P1"], m["P2"]], 2, universe)
    assert not v and v.witness == ("S1", "left")
    assert is_d_cluster_tilting(A, universe, 1, universe)
    assert not is_d_cluster_tilting(A, [m["P1"], m["P2"]], 1, universe)


def test_dual_numbers(dual):
    D, k, R = dual
    assert D.dim == 2
    assert [ext_dim(k, k, i) for i in range(7)] == [1] * 7
    v = is_d_rigid([k], 2)
    assert not v and v.witness == ("S1", "S1", 1)
    assert is_d_rigid([k], 1)
    assert is_d_rigid([R], 3)
    assert is_d_cluster_tilting(D, [R, k], 1, [R, k])


def test_cubic_loop_modules():
    T = FinDimAlgebraPresentation(["1"], [("x", "1", "1")], [{("x", "x", "x"): 1}])
    assert T.dim == 3
    s = ModuleRep.simple(T, "1")
    assert [ext_dim(s, s, i) for i in range(5)] == [1] * 5
    M2 = ModuleRep(T, [2], [[[0, 0], [1, 0]]], "M2")
    assert [ext_dim(M2, M2, i) for i in range(4)] == [2, 1, 1, 1]
    assert hom_dim(M2, M2) == 2


def test_in_add(a2):
    A, m = a2
    S = m["S1"].direct_sum(m["S2"])
    assert in_add(S, [m["S1"], m["S2"]])
    assert not in_add(m["P1"], [m["S1"], m["S2"]])
    assert in_add(m["P1"].direct_sum(m["P1"]), [m["P1"]])


def test_ext_additive(a2):
    A, m = a2
    S = m["S1"].direct_sum(m["S2"])
    assert ext_dim(S, m["S2"], 1) == ext_dim(m["S1"], m["S2"], 1) + ext_dim(m["S2"], m["S2"], 1)


def test_infinite_dimensional_presentation_refused():
    with pytest.raises(LengthCapExceeded):
        FinDimAlgebraPresentation(["1"], [("x", "1", "1")], [], length_cap=5)


def test_zero_vertex_path_matrix():
    A = FinDimAlgebraPresentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    M = ModuleRep(A, [1, 0, 1], [[], [[]]], "M")
    assert M.path_matrix((A.aindex["b"], A.aindex["a"])) == [[0]]
    S = ModuleRep.simple(A, "1").direct_sum(ModuleRep.simple(A, "3"))
    assert hom_dim(M, S) == 2 and in_add(M, [ModuleRep.simple(A, "1"), ModuleRep.simple(A, "3")])
