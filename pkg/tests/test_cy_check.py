import random

import pytest

from cyengine.cy_check import (check_right_cy, one_object_fixture, pairing_matrix,
                               two_object_fixture)
from cyengine.errors import SchemaError


def _verdict(rep):
    return rep["symmetric"], rep["nondegenerate"]


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_one_object_passes(d):
    rep = check_right_cy(one_object_fixture(d, 1))
    assert _verdict(rep) == (True, True) and rep["failures"] == []


def test_one_object_zero_trace_pinpointed():
    rep = check_right_cy(one_object_fixture(3, 0))
    assert not rep["nondegenerate"]
    blocks = {(f["X"], f["Y"], f["m"]) for f in rep["failures"] if f["kind"] == "pairing"}
    assert blocks == {("X", "X", 0), ("X", "X", 3)}


@pytest.mark.parametrize("psi", [1, 0])
def test_verdict_invariant_under_basis_change(psi):
    data = one_object_fixture(3, psi)
    base = _verdict(check_right_cy(data))
    rng = random.Random(psi)
    for _ in range(10):
        assert _verdict(check_right_cy(data.change_basis(rng))) == base


def test_two_objects_rank_deficiency_located():
    data = two_object_fixture(2, [[1, 0], [0, 0]])
    rep = check_right_cy(data)
    assert rep["symmetric"] and not rep["nondegenerate"]
    blocks = {(f["X"], f["Y"], f["m"]) for f in rep["failures"] if f["kind"] == "pairing"}
    assert blocks == {("X", "Y", 0), ("Y", "X", 2)}
    rng = random.Random(7)
    for _ in range(10):
        assert _verdict(check_right_cy(data.change_basis(rng))) == (True, False)


def test_two_objects_asymmetric_trace_detected():
    rep = check_right_cy(two_object_fixture(2, [[1, 0], [0, 1]], [[1, 0], [0, 2]]))
    assert not rep["symmetric"]
    assert any(f["kind"] == "symmetry" and f["f"] == "f2" and f["g"] == "g2"
               for f in rep["failures"])


def test_two_objects_perfect():
    assert _verdict(check_right_cy(two_object_fixture(1, [[1, 2], [3, 4]]))) == (True, True)


def test_pairing_matrix_shape():
    data = two_object_fixture(2, [[1, 2], [3, 4]])
    assert pairing_matrix("X", "Y", 0, data).shape == (2, 2)
    assert pairing_matrix("X", "Y", 0, data).rank() == 2


def test_trace_off_degree_rejected():
    from cyengine.cy_check import GradedCatData
    with pytest.raises(SchemaError):
        GradedCatData(["X"], [("1", "X", "X", 0), ("u", "X", "X", 2)],
                      {("1", "1"): {"1": 1}, ("1", "u"): {"u": 1}, ("u", "1"): {"u": 1}},
                      {"X": {"1": 1}}, {"X": {"1": 1}}, 2)
