"""Hypothesis strategies for field elements, operators and samples."""

from __future__ import annotations

from hypothesis import strategies as st

from ercd import exact_scalar as S
from ercd.catalog import gamma
from ercd.op_algebra import Operator

SYMBOLS = (S.I, S.OMEGA, S.M) + S.D

# nonzero divisors, some with w or i
DIVISORS = (
    S.ONE,
    S.OMEGA + S.M,
    2 * S.OMEGA,
    S.M,
    S.M + S.I * S.D[1],
    S.D[1] - S.OMEGA,
    S.D[2] ** 2 + S.D[3] ** 2 + 1,
)

small = st.integers(-3, 3)


@st.composite
def monomials(draw):
    out = S.FieldElem(draw(st.integers(-3, 3).filter(bool)))
    for _ in range(draw(st.integers(0, 3))):
        out = out * draw(st.sampled_from(SYMBOLS))
    return out


@st.composite
def polys(draw):
    out = S.ZERO
    for _ in range(draw(st.integers(0, 3))):
        out = out + draw(monomials())
    return out


@st.composite
def field_elems(draw):
    return draw(polys()) * draw(st.sampled_from(DIVISORS)).inverse()


nonzero_field_elems = field_elems().filter(lambda f: not f.is_zero())

GAMMA_WORDS = tuple((a, b) for a in range(-1, 4) for b in range(-1, 4) if a < b or a == -1)


@st.composite
def operators(draw, x_free=False, max_terms=2):
    out = Operator.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        term = Operator.scalar(draw(field_elems()))
        a, b = draw(st.sampled_from(GAMMA_WORDS))
        for k in (a, b):
            if k >= 0:
                term = term * gamma(k)
        if draw(st.booleans()):
            term = term * Operator.conjugation()
        if not x_free and draw(st.integers(0, 2)) == 0:
            term = Operator.X(draw(st.integers(0, 3))) * term
        out = out + term
    return out


# Pythagorean quadruples a^2 + b^2 + c^2 = d^2 -> real samples (w, D1, D2, D3 ; m)
QUADRUPLES = ((1, 2, 2, 3), (2, 3, 6, 7), (1, 4, 8, 9), (4, 4, 7, 9), (2, 6, 9, 11), (6, 6, 7, 11), (3, 4, 12, 13))


@st.composite
def real_samples(draw):
    a, b, c, d = draw(st.sampled_from(QUADRUPLES))
    w, d1, d2 = draw(st.permutations((a, b, c)))
    signs = [draw(st.sampled_from((1, -1))) for _ in range(2)]
    D0 = draw(st.fractions(-5, 5, max_denominator=7))
    return S.Sample.real(d, (d1 * signs[0], d2 * signs[1], 0), D0)


@st.composite
def momentum_samples(draw):
    a, b, c, d = draw(st.sampled_from(QUADRUPLES))
    m, p1, p2 = draw(st.permutations((a, b, c)))
    p = draw(st.permutations((p1, -p2, 0)))
    return S.Sample.momentum(m, p)
