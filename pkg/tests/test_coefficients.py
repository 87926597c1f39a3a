from fractions import Fraction

import pytest

from cyengine.coefficients import (BaseComponent, BaseRing, LetterRegistry, format_fraction,
                                   make_casimir, tensor_over_base, to_fraction)
from cyengine.errors import IncompatibleComponents, SchemaError, SingularTrace

from helpers import gaussian_cycle


def test_scalar_parsing_is_exact():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction(-4) == Fraction(-4)
    assert format_fraction(Fraction(-2, 4)) == "-1/2"
    for bad in (0.5, True, "x", "1/0"):
        with pytest.raises(SchemaError):
            to_fraction(bad)


@pytest.mark.parametrize("comp", [BaseComponent.rational("q"), BaseComponent.gaussian("g"),
                                  BaseComponent("s", [[[1, 0], [0, 1]], [[0, 1], [2, 0]]],
                                                [2, 0], ["1", "r"])],
                         ids=["Q", "Q(i)", "Q(sqrt2)"])
def test_casimir_is_dual_basis(comp):
    pairs = comp.casimir()
    assert len(pairs) == comp.dim
    for k, (e, _) in enumerate(pairs):
        for j, (_, f) in enumerate(pairs):
            assert comp.trace(comp.mul(e, f)) == (1 if k == j else 0)
    # sum_k e_k Tr(e^k x) = x
    for m in range(comp.dim):
        x = comp.basis(m)
        total = comp.zero()
        for e, f in pairs:
            total = comp.add(total, e, comp.trace(comp.mul(f, x)))
        assert total == x


def test_make_casimir_per_component():
    ring = BaseRing([BaseComponent.rational("1"), BaseComponent.gaussian("2")])
    cas = make_casimir(ring)
    assert sorted(cas) == [0, 1]
    assert len(cas[1]) == 2
    assert ring.dim == 3


def test_gaussian_casimir_values():
    # trace weights (1, 0): Tr(1) = 1, Tr(i^2) = -1, so the dual of i is -i
    assert BaseComponent.gaussian("g").casimir() == [((1, 0), (1, 0)), ((0, 1), (0, -1))]


def test_degenerate_trace_raises():
    with pytest.raises(SingularTrace):
        BaseComponent("z", [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]], [0, 0]).casimir()


def test_bad_structure_constants_rejected():
    with pytest.raises(SchemaError):
        BaseComponent("n", [[[0, 1], [1, 0]], [[1, 0], [0, 1]]], [1, 0])


def test_gaussian_inverse():
    g = BaseComponent.gaussian("g")
    x = (Fraction(1), Fraction(1))
    assert g.mul(x, g.inverse(x)) == g.unit()


def test_tensor_over_base_sides_agree():
    T = gaussian_cycle().T
    reg = T.reg
    letters = list(range(len(reg)))
    left = tensor_over_base(reg, letters, letters, "left")
    right = tensor_over_base(reg, letters, letters, "right")
    assert len(left) == len(right) > 0
    with pytest.raises(ValueError):
        tensor_over_base(reg, letters, letters, "middle")


def test_b_tensor_bstar_over_gaussian_has_rank_two():
    # b: 3 -> 1 and b*: 1 -> 3, both free of rank one over Q(i) on the Q(i) side
    reg = gaussian_cycle().T.reg
    bs = [reg.index(n) for n in ("b*", "ib*")]
    b = [reg.index(n) for n in ("b", "bi")]
    assert len(tensor_over_base(reg, b, bs, "left")) == 2
    assert len(tensor_over_base(reg, b, bs, "right")) == 2


def test_action_must_respect_components():
    ring = BaseRing([BaseComponent.rational("1"), BaseComponent.gaussian("2")])
    reg = LetterRegistry(ring)
    reg.add("x", 0, 1, 0)  # Q(i) on the target but no action given
    with pytest.raises((IncompatibleComponents, SchemaError)):
        reg.resolve_actions()
        reg.finalize()


def test_duplicate_letters_rejected():
    reg = LetterRegistry(BaseRing([BaseComponent.rational("1")]))
    reg.add("x", 0, 0, 0)
    with pytest.raises(SchemaError):
        reg.add("x", 0, 0, 0)
    with pytest.raises(SchemaError):
        reg.add("a:b", 0, 0, 0)
