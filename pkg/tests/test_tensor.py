from fractions import Fraction

import pytest

from cyengine.coefficients import BaseComponent, BaseRing, LetterRegistry
from cyengine.errors import DegreeWindowViolation, EtaNotSymplecticBasis, NotClosed
from cyengine.tensor import (Potential, TensorAlgebra, build_preprojective, check_d_squared,
                             check_eta, cyclic_normal_form, letter_derivative)

import oracles
from helpers import (gaussian_cycle, load_doc, reference_presentation, reference_table, random_species,
                     session_preprojective)

AGREEING = ["t1", "t2", "t3", "a*"]


@pytest.fixture(scope="module")
def gc():
    return gaussian_cycle()


@pytest.mark.parametrize("name", AGREEING)
def test_gaussian_cycle_letters_matching_table(gc, name):
    T = gc.T
    assert gc.d_letters[T.reg.index(name)] == reference_table(T)[name]


def test_gaussian_cycle_remaining_letters_exact_values(gc):
    """d(b*) and d(c*) as forced by d^2 = 0 on t1, t2 and the i-action."""
    T = gc.T
    half = Fraction(1, 2)
    want_b = {}
    for c, toks in [(-half, ["c", "a"]), (half, ["ic", "a"])]:
        for w, x in T.from_tokens(toks).items():
            want_b[w] = want_b.get(w, 0) + c * x
    want_c = {}
    for c, toks in [(-half, ["a", "b"]), (half, ["a", "bi"])]:
        for w, x in T.from_tokens(toks).items():
            want_c[w] = want_c.get(w, 0) + c * x
    assert gc.d_letters[T.reg.index("b*")] == want_b
    assert gc.d_letters[T.reg.index("c*")] == want_c


def test_gaussian_cycle_d_squared(gc):
    assert check_d_squared(gc)["ok"]


def test_reference_table_violates_d_squared():
    rep = check_d_squared(reference_presentation())
    assert not rep["ok"]
    assert sorted(f["letter"] for f in rep["failures"]) == ["t1", "t2"]


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("d", [3, 4])
def test_random_species_d_squared(seed, d):
    data = None
    s = seed
    while data is None:
        data = random_species(s * 7 + d, d)
        s += 1000
    reg, eta, terms = data
    p = build_preprojective(reg, eta, terms, d, 6)
    assert check_d_squared(p)["ok"]


def test_truncation_levels_agree_on_letters():
    a, b = gaussian_cycle(8), gaussian_cycle(10)
    for i, v in b.d_letters.items():
        assert {w: c for w, c in v.items() if b.T.length(w) <= 8} == a.d_letters[i]


def test_eta_report(gc):
    letters = [i for i, x in enumerate(gc.T.reg.letters) if x.kind != "z"]
    rep = check_eta(gc.T, gc.eta, 3, letters)
    assert rep["degree_ok"] and rep["antisymmetric"] and rep["nondegenerate"]
    assert rep["failing_blocks"] == []


def _loop_registry():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1")]))
    x = reg.add("x", 0, 0, 0)
    xs = reg.add("x*", 0, 0, -1)
    reg.resolve_actions()
    return reg, x, xs


def test_degenerate_eta_rejected():
    reg, x, xs = _loop_registry()
    with pytest.raises(EtaNotSymplecticBasis):
        build_preprojective(reg, [(Fraction(1), x, xs), (Fraction(1), xs, x)], [], 3, 4)


def test_eta_wrong_degree_rejected():
    reg, x, xs = _loop_registry()
    with pytest.raises(DegreeWindowViolation):
        build_preprojective(reg, [(Fraction(1), x, x)], [], 3, 4)


def test_letter_outside_window_rejected():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1")]))
    reg.add("y", 0, 0, 1)
    with pytest.raises(DegreeWindowViolation):
        build_preprojective(reg, [], [], 3, 4)


def test_open_potential_rejected():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1"), BaseComponent.rational("2")]))
    reg.add("a", 0, 1, 0)
    reg.add("b", 1, 0, 0)
    reg.resolve_actions()
    with pytest.raises(NotClosed):
        Potential.from_terms(TensorAlgebra(reg), [(1, ["a", "b", "a"])])


def test_cyclic_normal_form_identifies_rotations():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1")]))
    reg.add("x", 0, 0, 0)
    reg.add("y", 0, 0, 0)
    reg.resolve_actions()
    T = TensorAlgebra(reg)
    u = cyclic_normal_form(T, T.from_tokens(["x", "x", "y"]))
    v = cyclic_normal_form(T, T.from_tokens(["y", "x", "x"]))
    assert u == v


def test_odd_rotation_sign():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1")]))
    reg.add("u", 0, 0, -1)
    reg.add("v", 0, 0, -1)
    reg.resolve_actions()
    T = TensorAlgebra(reg)
    u = cyclic_normal_form(T, T.from_tokens(["u", "v"]))
    v = cyclic_normal_form(T, T.from_tokens(["v", "u"]))
    assert u == {w: -c for w, c in v.items()}


def test_cyclic_derivative_matches_oracle():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1")]))
    for n in "xyz":
        reg.add(n, 0, 0, 0)
    reg.resolve_actions()
    T = TensorAlgebra(reg)
    terms = [(2, ["x", "y", "z"]), (-1, ["x", "x", "y"]), (Fraction(1, 3), ["z", "z", "z"])]
    w = Potential.from_terms(T, terms)
    for a in "xyz":
        got = letter_derivative(T, w.elem, reg.index(a))
        want = {}
        for word, c in oracles.cyclic_derivative(terms, a).items():
            for k, x in T.from_tokens(list(word)).items():
                want[k] = want.get(k, 0) + c * x
        assert got == {k: c for k, c in want.items() if c}


def test_a2_corpus_differentials():
    p = session_preprojective("a2_jacobian.json")
    T = p.T
    assert p.d_letters.get(T.reg.index("a"), {}) == {}
    assert p.d_letters.get(T.reg.index("a*"), {}) == {}
    assert check_d_squared(p)["ok"]
    assert load_doc("a2_jacobian.json")["task"]["N"] == 2
