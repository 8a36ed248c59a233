from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from ercd import exact_scalar as S
from ercd.catalog import gamma
from ercd.op_algebra import (
    Operator,
    XSymbolsPresent,
    op_adjoint,
    op_anticommutator,
    op_commutator,
    op_mul,
    op_parity,
    op_realify,
)

from oracle import PlaneWave, x_sym
from strategies import operators

w, m, I, D = S.OMEGA, S.M, S.I, S.D
C = Operator.conjugation()
X = Operator.X


def sc(f):
    return Operator.scalar(f)


def test_x_d_commutator():
    for mu in range(4):
        for nu in range(4):
            assert op_commutator(X(mu), sc(D[nu])) == sc(-1 if mu == nu else 0)


def test_x_omega_commutator():
    # [X_k, w] = -dw/dD_k = D_k / w
    assert op_commutator(X(1), sc(w)) == sc(D[1] / w)


def test_conjugation_rules():
    assert op_mul(C, C) == Operator.identity()
    assert op_mul(C, sc(I)) == op_mul(sc(-I), C)
    assert op_mul(C, X(2)) == op_mul(X(2), C)
    assert op_mul(C, sc(w)) == op_mul(sc(w), C)


def test_normal_order_of_products():
    # D1 X1 = X1 D1 + 1
    prod = op_mul(sc(D[1]), X(1))
    assert prod == op_mul(X(1), sc(D[1])) + Operator.identity()
    assert set(k for k in prod.terms) == {((0, 1, 0, 0), 0), ((0, 0, 0, 0), 0)}


def test_adjoint_rules():
    assert op_adjoint(X(1)) == X(1)
    assert op_adjoint(sc(D[1])) == sc(-D[1])
    assert op_adjoint(sc(D[0])) == sc(-D[0])
    assert op_adjoint(sc(I)) == sc(-I)
    assert op_adjoint(C) == C
    assert op_adjoint(gamma(2)) == -gamma(2)
    assert op_adjoint(gamma(0)) == gamma(0)
    assert op_adjoint(sc(w)) == sc(w)


def test_parity():
    assert op_parity(sc(D[1] + D[0])) == sc(-D[1] + D[0])
    assert op_parity(gamma(1)) == gamma(1)


def test_scalar_value_and_division():
    assert (gamma(0) * gamma(0)).scalar_value() == S.ONE
    assert gamma(1).scalar_value() is None
    assert (gamma(1) / 2) * 2 == gamma(1)
    with pytest.raises(ValueError):
        gamma(1) / gamma(2)


def test_anticommutator():
    assert op_anticommutator(gamma(0), gamma(1)).is_zero()
    assert op_anticommutator(gamma(1), gamma(1)) == sc(-2)


def test_text_is_canonical():
    a = gamma(0) * sc(w) + X(1)
    b = X(1) + sc(w) * gamma(0)
    assert a.text() == b.text()
    assert Operator.zero().text() == "0"


def test_bad_term_key():
    with pytest.raises(ValueError):
        Operator({((0, 0, 0), 0): {(0, 0): S.ONE}})


def test_realify_linear_and_antilinear():
    s = S.Sample.momentum(3, (0, 0, 4))
    iid = op_realify(sc(I), s)
    assert iid[4][0] == 1 and iid[0][4] == -1
    cm = op_realify(C, s)
    assert cm[0][0] == 1 and cm[4][4] == -1
    wm = op_realify(sc(w), s)
    assert all(wm[r][r] == 5 for r in range(8))


def test_realify_restrictions():
    s = S.Sample.momentum(3, (0, 0, 4))
    with pytest.raises(XSymbolsPresent):
        op_realify(X(1), s)
    with pytest.raises(ValueError):
        op_realify(op_mul(sc(D[3]), C), s)
    real = S.Sample.real(3, (1, 2, 0))
    assert op_realify(op_mul(sc(D[1]), C), real)[0][0] == 1


# ---------------------------------------------------------------------------
# independent oracle: action on explicit plane waves
# ---------------------------------------------------------------------------

PW = PlaneWave()
x = x_sym
STATE = {1: [1 + x[1], sp.I * x[0], 0, 2], -1: [0, x[2] * x[3], 1, Fraction(1, 2)]}


def _same_action(A, B):
    return PW.same(PW.apply(A, STATE), PW.apply(B, STATE))


def test_oracle_detects_differences():
    assert not _same_action(gamma(1), gamma(2))
    assert not _same_action(op_mul(sc(D[1]), X(1)), op_mul(X(1), sc(D[1])))


def test_oracle_x_d():
    lhs = op_mul(sc(D[1]), X(1))
    assert PW.same(PW.apply(lhs, STATE), PW.apply(sc(D[1]), PW.apply(X(1), STATE)))


@settings(max_examples=12, deadline=None, derandomize=True)
@given(operators(max_terms=2), operators(max_terms=2))
def test_product_matches_composition(A, B):
    lhs = PW.apply(op_mul(A, B), STATE)
    rhs = PW.apply(A, PW.apply(B, STATE))
    assert PW.same(lhs, rhs)
