from fractions import Fraction

import pytest
import sympy as sp

from ercd import exact_scalar as S
from ercd.exact_scalar import FieldElem, GaussianRational, Sample, field_eval, render

from oracle import m_sym, to_sympy

w, m, I = S.OMEGA, S.M, S.I
D = S.D

DS = sp.symbols("D0:4", real=True)
SQRT = sp.sqrt(m_sym**2 - DS[1] ** 2 - DS[2] ** 2 - DS[3] ** 2)


def sym(f):
    return to_sympy(f, DS, SQRT)


def test_omega_squared_reduces():
    assert render(w * w) == "m^2 - D3^2 - D2^2 - D1^2"
    assert w * w == m * m - D[1] ** 2 - D[2] ** 2 - D[3] ** 2


def test_inverse_is_rationalized():
    inv = (w + m).inverse()
    assert render(inv) == "(m - w)/(D3^2 + D2^2 + D1^2)"
    assert inv * (w + m) == S.ONE


def test_imaginary_unit():
    assert I * I == FieldElem(-1)
    assert I.inverse() == -I


M_, I_ = m_sym, sp.I


@pytest.mark.parametrize(
    "f, expected",
    [
        ((w + m).inverse(), 1 / (SQRT + M_)),
        (D[1] / (w + m), DS[1] / (SQRT + M_)),
        ((I * D[2] + w) / (2 * w), (I_ * DS[2] + SQRT) / (2 * SQRT)),
        ((m + I * D[1]).inverse() * w, SQRT / (M_ + I_ * DS[1])),
        (w**3 - D[0] * w, SQRT**3 - DS[0] * SQRT),
    ],
)
def test_agrees_with_sympy_square_root(f, expected):
    """Independent route: w as an explicit square root."""
    assert sp.simplify(sym(f) - expected) == 0
    g = f * f + f
    assert sp.simplify(sym(g) - (expected**2 + expected)) == 0


@pytest.mark.parametrize("f", [w, D[1] / (w + m), w * D[2] / (2 * w + m), (w + m).inverse()])
@pytest.mark.parametrize("mu", [0, 1, 2, 3])
def test_formal_derivative_matches_sympy(f, mu):
    assert sp.simplify(sym(f.dD(mu)) - sp.diff(sym(f), DS[mu])) == 0


def test_derivative_of_omega():
    assert w.dD(1) * w == -D[1]
    assert w.dD(0).is_zero()


def test_conjugation_flips_only_i():
    assert (I * D[1] + w).conj() == -I * D[1] + w
    assert m.conj() == m and D[2].conj() == D[2]


def test_parity_flips_spatial_D():
    assert (D[0] + D[1] * w).parity() == D[0] - D[1] * w
    assert w.parity() == w


def test_canonical_equality_and_hash():
    a = (D[1] + m) / (w + m)
    b = (m + D[1]) * (m + w).inverse()
    assert a == b and hash(a) == hash(b)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        (w - w).inverse()
    with pytest.raises(S.ZeroDivision):
        S.ONE / S.ZERO


def test_momentum_sample():
    s = Sample.momentum(3, (0, 0, 4))
    assert s.w == GaussianRational(5)
    assert s.D[3] == GaussianRational(0, 4)
    assert field_eval(w, s) == GaussianRational(5)
    assert field_eval((w + m).inverse(), s) == GaussianRational(Fraction(1, 8))


def test_real_sample():
    s = Sample.real(3, (1, 2, 0))
    assert s.w == GaussianRational(2)
    with pytest.raises(S.InconsistentSample):
        Sample.real(3, (1, 1, 1))


def test_inconsistent_samples_rejected():
    with pytest.raises(S.InconsistentSample):
        Sample.momentum(3, (1, 1, 1))
    with pytest.raises(S.InconsistentSample):
        Sample(3, (0, 0, 0, 0), 2)


def test_eval_zero_denominator():
    s = Sample.real(5, (3, 0, 0))  # w = 4
    with pytest.raises(S.ZeroDivision):
        field_eval((w - 4).inverse(), s)


def test_gaussian_rational_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 2), -1)
    assert a * b == GaussianRational(Fraction(5, 2), 0)
    assert a / a == GaussianRational(1)
    assert a.conjugate() == GaussianRational(1, -2)
    assert str(GaussianRational(0, Fraction(1, 2))) == "1/2*i"
    assert str(GaussianRational(1, -2)) == "1-2*i"


def test_render_is_deterministic_and_parseable():
    f = (I * D[1] - 3 * m * m) / (2 * w + m)
    text = render(f)
    assert text == render((-3 * m * m + D[1] * I) * (m + 2 * w).inverse())
    expect = (I_ * DS[1] - 3 * M_**2) / (2 * SQRT + M_)
    assert sp.simplify(sym(f) - expect) == 0


@pytest.mark.parametrize(
    "f, text, expect",
    [
        ((2 * w).inverse(), "1/2/w", 1 / (2 * SQRT)),
        (D[1] / w, "D1/w", DS[1] / SQRT),
        (m / (w * w) + I / w, "m/w^2 + i/w", M_ / SQRT**2 + I_ / SQRT),
        ((w * w).inverse() - w.inverse(), "1/w^2 - 1/w", 1 / SQRT**2 - 1 / SQRT),
        ((m + D[1]) / w ** 4, "(m + D1)/w^4", (M_ + DS[1]) / SQRT**4),
    ],
)
def test_render_powers_of_omega(f, text, expect):
    assert render(f) == text
    assert sp.simplify(sym(f) - expect) == 0
