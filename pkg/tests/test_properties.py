"""Property-based checks with hypothesis."""

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cyengine.coefficients import BaseComponent, format_fraction, to_fraction
from cyengine.ext_tilting import FinDimAlgebraPresentation, ModuleRep, hom_dim
from cyengine.linalg import SliceMatrix, solve

import oracles
from helpers import gaussian_cycle

small = st.integers(-3, 3)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
GC = gaussian_cycle(8)


@st.composite
def matrices(draw):
    r, c = draw(st.integers(0, 5)), draw(st.integers(0, 5))
    return [[draw(small) for _ in range(c)] for _ in range(r)], r, c


def _slice(rows, r, c):
    cols = [{i: Fraction(rows[i][j]) for i in range(r) if rows[i][j]} for j in range(c)]
    return SliceMatrix(list(range(c)), list(range(r)), cols)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_and_kernel_match_sympy(m):
    rows, r, c = m
    M = _slice(rows, r, c)
    ref = sympy.Matrix(r, c, lambda i, j: rows[i][j]).rank() if r and c else 0
    assert M.rank() == ref
    ker = M.kernel()
    assert len(ker) == c - ref
    for v in ker:
        assert M.apply(v) == {}


@given(matrices(), st.lists(small, min_size=5, max_size=5))
@settings(max_examples=100, deadline=None)
def test_solve_returns_solution_for_image(m, x):
    rows, r, c = m
    M = _slice(rows, r, c)
    rhs = M.apply({j: Fraction(x[j]) for j in range(c) if x[j]})
    sol = solve(M.columns, rhs)
    assert sol is not None
    assert M.apply(sol) == rhs


@given(fracs)
def test_scalar_round_trip(x):
    assert to_fraction(format_fraction(x)) == x


@given(st.tuples(fracs, fracs), st.tuples(fracs, fracs))
def test_gaussian_multiplication_matches_complex_rule(x, y):
    g = BaseComponent.gaussian("g")
    (a, b), (c, d) = x, y
    assert g.mul(x, y) == (a * c - b * d, a * d + b * c)


def _word_elem(T, names):
    return T.from_tokens(names)


LETTERS = [n for n in ("a", "b", "bi", "c", "ic", "a*", "b*", "ib*", "c*", "c*i")]
words = st.lists(st.sampled_from(LETTERS), min_size=1, max_size=3)


@given(words, words, words)
@settings(max_examples=150, deadline=None)
def test_tensor_product_associative(u, v, w):
    T = GC.T
    x, y, z = (_word_elem(T, s) for s in (u, v, w))
    assert T.mul(T.mul(x, y), z) == T.mul(x, T.mul(y, z))


@given(words, words)
@settings(max_examples=150, deadline=None)
def test_leibniz_rule(u, v):
    T = GC.T
    x, y = _word_elem(T, u), _word_elem(T, v)
    if not x or not y:
        return
    deg = T.degree(next(iter(x)))
    lhs = GC.d(T.mul(x, y))
    rhs = T.mul(GC.d(x), y)
    for k, c in T.mul(x, GC.d(y)).items():
        rhs[k] = rhs.get(k, 0) + (-1 if deg % 2 else 1) * c
    assert lhs == {k: c for k, c in rhs.items() if c}


@given(words)
@settings(max_examples=100, deadline=None)
def test_d_squared_on_words(u):
    x = _word_elem(GC.T, u)
    assert GC.d(GC.d(x)) == {}


@given(st.integers(0, 2), st.integers(0, 2), st.data())
@settings(max_examples=60, deadline=None)
def test_a2_hom_matches_oracle(n1, n2, data):
    A = FinDimAlgebraPresentation.a2()
    mat = [[data.draw(small) for _ in range(n1)] for _ in range(n2)]
    M = ModuleRep(A, [n1, n2], [mat], "M")
    for N in (ModuleRep.simple(A, "1"), ModuleRep.projective(A, "1"), M):
        dx = {"1": M.dims[0], "2": M.dims[1]}
        dy = {"1": N.dims[0], "2": N.dims[1]}
        arrows = [("a", "1", "2")]
        assert hom_dim(M, N) == oracles.quiver_hom_dim(arrows, dx, {"a": M.mats[0]},
                                                       dy, {"a": N.mats[0]})
