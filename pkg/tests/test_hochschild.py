from fractions import Fraction

import pytest

from cyengine.coefficients import BaseComponent, BaseRing
from cyengine.hochschild import (Bimodule, FinGradedAlgebra, MixedComplex, apply_linear,
                                 bar_bprime, coef_chains, connes_tau, cyclic_chains, hc_dims,
                                 hh_dims, hn_dims, hoch_b, hoch_b_algebra, hoch_internal,
                                 koszul_ext, smoothness_probe)
from cyengine.linalg import vec_add

P_MAX = 5


def _dg_fixture():
    """k<e, f> with |e| = -1, d(e) = f and all products of e, f zero."""
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
    return FinGradedAlgebra(["1", "e", "f"], [0, -1, 0], [(0, 0)] * 3, mult, [{0: 1}],
                            diff={1: {2: 1}}, augmented=True)


ALGEBRAS = {
    "dual_numbers": FinGradedAlgebra.dual_numbers(),
    "a2": FinGradedAlgebra.path_algebra(2, [("a", 0, 1, 0)]),
    "odd_dual_numbers": FinGradedAlgebra.dual_numbers(1),
    "odd_dual_numbers_neg": FinGradedAlgebra.dual_numbers(-1),
    "odd_a2": FinGradedAlgebra.path_algebra(2, [("a", 0, 1, 1)]),
    "dg": _dg_fixture(),
}
UNGRADED = {"dual_numbers", "a2"}


def _twice(f, x):
    return apply_linear(f, apply_linear(f, x))


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_b_and_bprime_square_to_zero(name):
    A = ALGEBRAS[name]
    for p in range(1, P_MAX + 1):
        for ch in cyclic_chains(A, p):
            x = {ch: Fraction(1)}
            assert _twice(lambda c: bar_bprime(A, c), x) == {}
            assert _twice(lambda c: hoch_b_algebra(A, c), x) == {}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_tau_has_order_p(name):
    A = ALGEBRAS[name]
    for p in range(1, P_MAX + 1):
        for ch in cyclic_chains(A, p):
            x = y = {ch: Fraction(1)}
            for _ in range(p):
                y = apply_linear(lambda c: connes_tau(A, c), y)
            assert y == x


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_mixed_complex_identities(name):
    A = ALGEBRAS[name]
    mc = MixedComplex(A, P_MAX)
    for p in range(1, P_MAX + 1):
        for ch in cyclic_chains(A, p):
            assert _twice(mc.d_C, {ch: Fraction(1)}) == {}
            assert _twice(mc.d_B, {ch: Fraction(1)}) == {}
            for kind in "CB":
                lab = {(kind, ch): Fraction(1)}
                assert _twice(mc.d, lab) == {}
                assert _twice(mc.t, lab) == {}
                s = apply_linear(mc.d, apply_linear(mc.t, lab))
                vec_add(s, apply_linear(mc.t, apply_linear(mc.d, lab)))
                assert s == {}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_coefficient_complex(name):
    A = ALGEBRAS[name]
    M = Bimodule.regular(A)

    def D(c):
        out = hoch_b(M, c)
        vec_add(out, hoch_internal(M, c))
        return out

    for p in range(P_MAX):
        for ch in coef_chains(M, p):
            assert _twice(lambda c: hoch_b(M, c), {ch: Fraction(1)}) == {}
            assert _twice(D, {ch: Fraction(1)}) == {}


def test_cyclic_homology_of_ground_field():
    k = FinGradedAlgebra.ground_field()
    dims = [hc_dims(k, n, column_cap=6) for n in range(6)]
    assert [d.dim for d in dims] == [1, 0, 1, 0, 1, 0]
    assert not any(d.truncation_insufficient for d in dims)


def test_negative_cyclic_of_ground_field():
    k = FinGradedAlgebra.ground_field()
    assert [hn_dims(k, n).dim for n in range(-4, 1)] == [1, 0, 1, 0, 1]


def test_separable_base_has_no_higher_hochschild():
    ring = BaseRing([BaseComponent.rational("1"), BaseComponent.gaussian("2")])
    L = FinGradedAlgebra.from_base_ring(ring)
    for M in (None, Bimodule.regular(L)):
        assert hh_dims(L, M, 0).dim == 3
        assert [hh_dims(L, M, n).dim for n in range(1, 5)] == [0, 0, 0, 0]


def test_dual_numbers_hochschild():
    A = ALGEBRAS["dual_numbers"]
    assert [hh_dims(A, None, n).dim for n in range(5)] == [2, 1, 1, 1, 1]


def test_koszul_probes():
    dn = ALGEBRAS["dual_numbers"]
    assert [koszul_ext(dn, n).dim for n in range(7)] == [1] * 7
    probe = smoothness_probe(dn, 6)
    assert probe["ext_dims"] == [1] * 7 and probe["proper_up_to_cap"] is False
    probe = smoothness_probe(ALGEBRAS["a2"], 4)
    assert probe["ext_dims"][2:] == [0, 0, 0] and probe["proper_up_to_cap"] is True
    assert not probe["truncation_insufficient"]


def test_truncated_polynomial_koszul():
    A = FinGradedAlgebra.truncated_polynomial(3)
    assert [koszul_ext(A, n).dim for n in range(4)] == [1, 1, 1, 1]
