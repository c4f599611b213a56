"""Strict two-term associative laws, weighted operators, and the
induced pre-Lie products.

Expected values are trivial (abelian, zero operators), hand-computed
on one- and two-dimensional towers, or cross-checked against the
operator-induced construction on the commutator algebra.
"""

from fractions import Fraction

import pytest

from fixtures import (
    assoc_point,
    assoc_pool,
    assoc_shift_tower,
    dual_numbers_tower,
    prelie_point,
    prelie_tower,
)
from twoterm.assoc2 import (
    OperatorPair,
    StrictAssoc2Algebra,
    derivation_check,
    prelie_from_derivation,
    prelie_from_rb0,
    prelie_from_rb1,
    rb_weight_check,
    verify_assoc2,
    verify_commutative,
)
from twoterm.exact_core import InvalidStructureError, Mat, ShapeError, Tensor3
from twoterm.graded import ChainMapPair, TwoTermComplex
from twoterm.lie2 import adjoint_rep
from twoterm.prelie2 import (
    StrictPreLie2Algebra,
    prelie_from_o_operator,
    subadjacent,
    verify_prelie2,
)


def lower_shift_pair():
    """e1 -> e2, e2 -> 0 in both grades; a chain map for d = identity."""
    m = Mat([[0, 0], [1, 0]])
    return OperatorPair(m, m.copy())


def identity_pair(a):
    return OperatorPair(Mat.identity(a.n0), Mat.identity(a.n1))


def zero_pair(a):
    return OperatorPair(Mat.zeros(a.n0, a.n0), Mat.zeros(a.n1, a.n1))


def test_verify_assoc2_pool_passes():
    for a in assoc_pool():
        assert verify_assoc2(a).ok


def test_point_tower_is_associative_and_commutative():
    assert verify_assoc2(assoc_point()).ok
    assert verify_commutative(assoc_point()).ok


def test_verify_assoc2_flags_perturbed_mixed_product():
    a = dual_numbers_tower()
    A01 = a.A01.copy()
    A01[0, 0, 0] = 2
    report = verify_assoc2(StrictAssoc2Algebra(a.complex, a.A00, A01, a.A10))
    assert not report.ok
    assert any(v.law == "associativity-001" for v in report.violations)


def test_verify_commutative_flags_shift_tower():
    report = verify_commutative(assoc_shift_tower())
    assert not report.ok
    laws = {v.law for v in report.violations}
    assert "commutative-00" in laws
    assert "commutative-01" in laws
    assert verify_assoc2(assoc_shift_tower()).ok


def test_rb_weight_check_zero_operator_any_weight():
    for a in assoc_pool():
        assert rb_weight_check(a, zero_pair(a), 0).ok
        assert rb_weight_check(a, zero_pair(a), Fraction(5, 3)).ok


def test_rb_weight_check_identity_weight_one():
    for a in assoc_pool():
        assert rb_weight_check(a, identity_pair(a), 1).ok


def test_rb_weight_check_identity_weight_zero_fails_nonabelian():
    report = rb_weight_check(assoc_shift_tower(), identity_pair(assoc_shift_tower()), 0)
    assert not report.ok
    assert any(v.law == "rb-weight-00" for v in report.violations)


def test_rb_weight_check_rejects_non_chain_operator():
    a = StrictAssoc2Algebra.abelian(TwoTermComplex(2, 1, Mat([[2], [0]])))
    op = OperatorPair(Mat([[0, 1], [0, 0]]), Mat([[1]]))
    with pytest.raises(InvalidStructureError) as err:
        rb_weight_check(a, op, 0)
    assert any(v.law == "rb-chain" for v in err.value.report.violations)


def test_lower_shift_is_weight_zero_operator():
    for a in (dual_numbers_tower(), assoc_shift_tower()):
        assert rb_weight_check(a, lower_shift_pair(), 0).ok


def test_prelie_from_rb0_matches_operator_construction():
    r = lower_shift_pair()
    for a in (dual_numbers_tower(), assoc_shift_tower()):
        out = prelie_from_rb0(a, r)
        g = subadjacent(StrictPreLie2Algebra(a.complex, a.A00, a.A01, a.A10))
        t = ChainMapPair(r.P0, r.P1)
        assert out == prelie_from_o_operator(g, adjoint_rep(g), t)


def test_prelie_from_rb0_shift_tower_products():
    out = prelie_from_rb0(assoc_shift_tower(), lower_shift_pair())
    assert out == prelie_tower(2, {(0, 0, 1): -1})


def test_prelie_from_rb1_identity_is_negated_opposite():
    for a in assoc_pool():
        out = prelie_from_rb1(a, identity_pair(a))
        exp00 = Tensor3((a.n0, a.n0, a.n0))
        for (i, j, k), val in a.A00.items():
            exp00[j, i, k] = -val
        exp01 = Tensor3((a.n0, a.n1, a.n1))
        for (b, i, c), val in a.A10.items():
            exp01[i, b, c] = -val
        exp10 = Tensor3((a.n1, a.n0, a.n1))
        for (i, b, c), val in a.A01.items():
            exp10[b, i, c] = -val
        assert out == StrictPreLie2Algebra(a.complex, exp00, exp01, exp10)


def test_prelie_from_rb0_rejects_failing_weight():
    with pytest.raises(InvalidStructureError):
        prelie_from_rb0(assoc_shift_tower(), identity_pair(assoc_shift_tower()))
    with pytest.raises(InvalidStructureError):
        prelie_from_rb1(assoc_shift_tower(), lower_shift_pair())


def test_rb0_abelian_gives_abelian():
    a = StrictAssoc2Algebra.abelian(TwoTermComplex(2, 2, Mat.identity(2)))
    m = Mat([[1, 2], [3, 4]])
    out = prelie_from_rb0(a, OperatorPair(m, m.copy()))
    assert out == StrictPreLie2Algebra.abelian(a.complex)


def test_derivation_check_euler_and_zero():
    a = dual_numbers_tower()
    euler = OperatorPair(Mat([[0, 0], [0, 1]]), Mat([[0, 0], [0, 1]]))
    assert derivation_check(a, euler).ok
    assert derivation_check(a, zero_pair(a)).ok


def test_derivation_check_flags_identity():
    report = derivation_check(assoc_point(), identity_pair(assoc_point()))
    assert not report.ok
    laws = {v.law for v in report.violations}
    assert "leibniz-00" in laws
    assert "leibniz-01" in laws


def test_derivation_check_rejects_noncommutative():
    a = assoc_shift_tower()
    with pytest.raises(InvalidStructureError) as err:
        derivation_check(a, zero_pair(a))
    assert "commutative" in str(err.value)


def test_prelie_from_derivation_zero_gives_abelian():
    a = dual_numbers_tower()
    out = prelie_from_derivation(a, zero_pair(a), 0)
    assert out == StrictPreLie2Algebra.abelian(a.complex)


def test_prelie_from_derivation_identity_recovers_product():
    a = assoc_point()
    out = prelie_from_derivation(a, identity_pair(a), 0)
    assert out == prelie_point()


def test_prelie_from_derivation_linear_in_constant():
    a = dual_numbers_tower()
    euler = OperatorPair(Mat([[0, 0], [0, 1]]), Mat([[0, 0], [0, 1]]))
    c1, c2 = Fraction(7, 3), Fraction(-2)
    out1 = prelie_from_derivation(a, euler, c1)
    out2 = prelie_from_derivation(a, euler, c2)
    scale = c1 - c2
    exp00 = Tensor3((a.n0, a.n0, a.n0), {k: scale * v for k, v in a.A00.items()})
    exp01 = Tensor3((a.n0, a.n1, a.n1), {k: scale * v for k, v in a.A01.items()})
    exp10 = Tensor3((a.n1, a.n0, a.n1), {k: scale * v for k, v in a.A10.items()})
    assert out1.M00 - out2.M00 == exp00
    assert out1.M01 - out2.M01 == exp01
    assert out1.M10 - out2.M10 == exp10
    assert verify_prelie2(out1).ok and verify_prelie2(out2).ok


def test_prelie_from_derivation_rejects_noncommutative():
    a = assoc_shift_tower()
    with pytest.raises(InvalidStructureError) as err:
        prelie_from_derivation(a, zero_pair(a), 1)
    assert "commutative" in str(err.value)


def test_assoc2_json_round_trip():
    for a in assoc_pool():
        assert StrictAssoc2Algebra.from_json(a.to_json()) == a
    op = lower_shift_pair()
    assert OperatorPair.from_json(op.to_json(), 2, 2) == op


def test_assoc2_shape_errors():
    cx = TwoTermComplex(2, 1, Mat([[0], [0]]))
    with pytest.raises(ShapeError):
        StrictAssoc2Algebra(cx, Tensor3((1, 1, 1)), Tensor3((2, 1, 1)), Tensor3((1, 2, 1)))
    with pytest.raises(ShapeError):
        OperatorPair(Mat([[1, 0]]), Mat([[1]]))
    a = StrictAssoc2Algebra.abelian(cx)
    with pytest.raises(ShapeError):
        rb_weight_check(a, OperatorPair(Mat.identity(1), Mat.identity(1)), 0)
