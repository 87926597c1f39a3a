import pytest

from cyengine.homology import dga_slice, h_dim, jacobian_presentation, slice_basis
from cyengine.tensor import DGPresentation

from helpers import gaussian_cycle, quiver_preprojective, session_preprojective

CYCLE = ([1, 2, 3], [("a", 1, 2), ("b", 3, 1), ("c", 2, 3)], [(1, ["a", "b", "c"])])


def _fixtures():
    return {
        "gaussian_cycle": gaussian_cycle(8),
        "a2": session_preprojective("a2_jacobian.json", truncation=8),
        "loop": session_preprojective("loop_cubic.json", truncation=8),
        "cycle": quiver_preprojective(*CYCLE, truncation=8),
    }


FIXTURES = _fixtures()


def test_a2_jacobian():
    data = jacobian_presentation(FIXTURES["a2"], 2)
    assert data.dim == 3 and data.stabilized.stable


def test_loop_jacobian():
    data = jacobian_presentation(FIXTURES["loop"], 3)
    assert data.dim == 2 and data.stabilized.stable
    # x^2 is the only relation in degree 0
    assert [FIXTURES["loop"].T.word_names(w) for w in data.basis] == [["1:1"], ["x"]]


def test_gaussian_cycle_jacobian_regression():
    st = jacobian_presentation(FIXTURES["gaussian_cycle"], 2).stabilized
    assert st.stable and st.value == 10
    assert jacobian_presentation(FIXTURES["gaussian_cycle"], 1).stabilized.value == "unstable"


def test_jacobian_reduce_kills_relations():
    p = FIXTURES["cycle"]
    data = jacobian_presentation(p, 3)
    for col in dga_slice(p, -1, 3).columns:
        assert data.reduce(col) == {}


def test_ground_ring_only_session():
    p = session_preprojective("empty_generators.json")
    assert h_dim(p, 0) == 3


@pytest.mark.parametrize("name", sorted(FIXTURES))
@pytest.mark.parametrize("N", [2, 3, 4])
def test_truncation_coherence_of_differential(name, N):
    """d at level N + 2, projected to length <= N, equals d at level N."""
    big = FIXTURES[name]
    small = DGPresentation(big.T, big.d_letters, N)
    wide = DGPresentation(big.T, big.d_letters, N + 2)
    for deg in (-2, -1, 0):
        for w in slice_basis(small, deg):
            proj = {u: c for u, c in wide.d_word(w).items() if big.T.length(u) <= N}
            assert proj == small.d_word(w)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_stable_dims_agree_one_level_up(name):
    p = FIXTURES[name]
    for N in (2, 3, 4):
        st = jacobian_presentation(p, N).stabilized
        if st.stable:
            assert jacobian_presentation(p, N + 1).dim == st.value


def test_slice_basis_sorted_and_bounded():
    p = FIXTURES["gaussian_cycle"]
    words = slice_basis(p, -1, 4)
    assert words == sorted(words, key=lambda w: (p.T.length(w), w))
    assert all(p.T.length(w) <= 4 and p.T.degree(w) == -1 for w in words)
