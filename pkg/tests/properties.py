"""Randomized substrate properties, 500 cases each.

Imported by the acceptance suite and by ``test_properties``; every function
runs its full example budget when called.
"""

from __future__ import annotations

import functools

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ercd import exact_scalar as S
from ercd.exact_scalar import ZeroDivision, field_eval
from ercd.op_algebra import Operator, op_adjoint, op_commutator, op_mul, op_realify

from strategies import field_elems, momentum_samples, nonzero_field_elems, operators, polys, real_samples

CASES = 500
COUNTS: dict = {}


def counted(fn):
    """Count examples that ran to completion."""
    name = fn.__name__

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        fn(*args, **kwargs)
        COUNTS[name] = COUNTS.get(name, 0) + 1

    return wrapper

_settings = settings(
    max_examples=CASES,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


@_settings
@given(field_elems(), field_elems(), field_elems(), nonzero_field_elems)
@counted
def ring_field_axioms(a, b, c, d):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == S.ZERO
    assert a * S.ONE == a and a + S.ZERO == a
    assert d * d.inverse() == S.ONE
    assert (a / d) * d == a


@_settings
@given(field_elems(), field_elems(), st.one_of(momentum_samples(), real_samples()))
@counted
def evaluation_homomorphism(a, b, sample):
    """Independent route: evaluate at an exact point with w as a number."""
    try:
        va, vb = field_eval(a, sample), field_eval(b, sample)
        vs, vp = field_eval(a + b, sample), field_eval(a * b, sample)
    except ZeroDivision:
        assume(False)
    assert vs == va + vb
    assert vp == va * vb


@_settings
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.integers(0, 5), st.integers(0, 5), polys(),
       operators(), operators(), operators())
@counted
def omega_confluence(coeffs, p, q, f, A, B, C):
    w = S.OMEGA
    horner = S.ZERO
    for c in reversed(coeffs):
        horner = horner * w + c
    powers = S.ZERO
    for k, c in enumerate(coeffs):
        powers = powers + c * w**k
    assert horner == powers
    assert w**p * w**q == w ** (p + q)
    assert (w**p * f) * w**q == w**p * (f * w**q)
    # operator rewriting: every bracketing gives the same normal form
    assert op_mul(op_mul(A, B), C) == op_mul(A, op_mul(B, C))


@_settings
@given(field_elems(), operators(), operators())
@counted
def conjugation_antilinear(f, A, B):
    C = Operator.conjugation()
    fA = op_mul(Operator.scalar(f), A)
    assert op_mul(C, fA) == op_mul(Operator.scalar(f.conj()), op_mul(C, A))
    assert op_mul(C, A + B) == op_mul(C, A) + op_mul(C, B)
    assert op_mul(C, C) == Operator.identity()
    assert f.conj().conj() == f


@_settings
@given(st.integers(0, 3), st.integers(0, 3), field_elems())
@counted
def x_d_commutator(mu, nu, f):
    X = Operator.X(mu)
    D = Operator.scalar(S.D[nu])
    delta = 1 if mu == nu else 0
    assert op_commutator(X, D) == Operator.scalar(-delta)
    assert op_commutator(X, Operator.scalar(f)) == Operator.scalar(-f.dD(mu))


@_settings
@given(operators(), operators(), field_elems())
@counted
def adjoint_antihomomorphism(A, B, f):
    assert op_adjoint(op_mul(A, B)) == op_mul(op_adjoint(B), op_adjoint(A))
    assert op_adjoint(op_adjoint(A)) == A
    assert op_adjoint(A + B) == op_adjoint(A) + op_adjoint(B)


def _matmul(P, Q):
    return [[sum(P[r][k] * Q[k][c] for k in range(8)) for c in range(8)] for r in range(8)]


@_settings
@given(operators(x_free=True), operators(x_free=True), real_samples())
@counted
def realify_multiplicative(A, B, sample):
    try:
        lhs = op_realify(op_mul(A, B), sample)
        rhs = _matmul(op_realify(A, sample), op_realify(B, sample))
    except ZeroDivision:
        assume(False)
    assert lhs == rhs


PROPERTIES = {
    "ring/field axioms": ring_field_axioms,
    "evaluation homomorphism": evaluation_homomorphism,
    "omega-reduction confluence": omega_confluence,
    "C antilinearity": conjugation_antilinear,
    "[X_mu, D_nu] = -delta": x_d_commutator,
    "adjoint antihomomorphism": adjoint_antihomomorphism,
    "realification multiplicativity": realify_multiplicative,
}
