"""Exact commutative scalars for the operator algebra.

Three layers:

* :class:`GaussianRational` -- ``re + im*i`` with exact rational parts.
* :class:`RationalFunction` -- quotients of polynomials in ``m, D0..D3``
  with Gaussian-rational coefficients.
* :class:`FieldElem` -- ``u + v*w`` with ``u, v`` rational functions and
  ``w`` the square root subject to ``w**2 = m**2 - D1**2 - D2**2 - D3**2``.

Internally every fraction is stored as one numerator polynomial in
``(I, w, m, D0, D1, D2, D3)`` over ``Q`` and a denominator in ``(m, D0..D3)``
only.  ``I`` and ``w`` are kept at degree <= 1 by reduction modulo
``I**2 + 1`` and ``w**2 - W``.  Fractions are fully reduced (gcd) with a monic
denominator, so the stored pair is canonical and equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence, Union

import flint

__all__ = [
    "GaussianRational",
    "RationalFunction",
    "FieldElem",
    "Sample",
    "ScalarError",
    "ZeroDivision",
    "InconsistentSample",
    "VARIABLES",
    "field_mul",
    "field_inv",
    "field_is_zero",
    "field_conj",
    "field_dD",
    "field_parity",
    "field_eval",
]


class ScalarError(ArithmeticError):
    pass


class ZeroDivision(ScalarError, ZeroDivisionError):
    pass


class InconsistentSample(ScalarError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(_frac(x))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivision("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self):
        return f"GaussianRational({self})"


# ---------------------------------------------------------------------------
# polynomial context
# ---------------------------------------------------------------------------

VARIABLES = ("I", "w", "m", "D0", "D1", "D2", "D3")
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "lex")
_I, _W, _M, _D0, _D1, _D2, _D3 = _CTX.gens()
_DS = (_D0, _D1, _D2, _D3)
_ONE = _CTX.from_dict({(0,) * 7: 1})
_ZERO = _CTX.from_dict({})
# w**2 - (m**2 - D1**2 - D2**2 - D3**2)
_OMEGA_SQ = _M**2 - _D1**2 - _D2**2 - _D3**2
_W_REL = _W**2 - _OMEGA_SQ
_I_REL = _I**2 + 1

_IDX_I, _IDX_W, _IDX_M = 0, 1, 2
_IDX_D = (3, 4, 5, 6)


def _reduce(p):
    """Reduce ``I`` and ``w`` to degree <= 1."""
    if p.is_zero():
        return p
    degs = p.degrees()
    if degs[_IDX_I] > 1:
        p = divmod(p, _I_REL)[1]
        degs = p.degrees() if not p.is_zero() else (0,) * 7
    if degs[_IDX_W] > 1:
        p = divmod(p, _W_REL)[1]
    return p


def _normalize(num, den):
    if den.is_zero():
        raise ZeroDivision("zero denominator")
    num = _reduce(num)
    if num.is_zero():
        return _ZERO, _ONE
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _as_poly(x):
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, GaussianRational):
        return _CTX.constant(flint.fmpq(x.re.numerator, x.re.denominator)) + _I * flint.fmpq(
            x.im.numerator, x.im.denominator
        )
    f = _frac(x)
    return _CTX.constant(flint.fmpq(f.numerator, f.denominator))


# ---------------------------------------------------------------------------
# fractions
# ---------------------------------------------------------------------------


class _Fraction:
    """Shared canonical-fraction machinery; see module docstring."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=None, den=None):
        if num is None:
            num = _ZERO
        if den is None:
            den = _ONE
        num = _as_poly(num)
        den = _as_poly(den)
        if den.degrees()[_IDX_I] or den.degrees()[_IDX_W]:
            raise ValueError("denominator must not contain I or w")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None
        self._validate()

    def _validate(self):
        pass

    @classmethod
    def _new(cls, num, den):
        num, den = _normalize(num, den)
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, _Fraction):
            return x
        return cls(_as_poly(x))

    # arithmetic ---------------------------------------------------------

    def _result_cls(self, other):
        return FieldElem if isinstance(self, FieldElem) or isinstance(other, FieldElem) else type(self)

    def __add__(self, other):
        try:
            o = _Fraction._coerce(other) if not isinstance(other, _Fraction) else other
        except TypeError:
            return NotImplemented
        cls = self._result_cls(o)
        if self.den == o.den:
            return cls._new(self.num + o.num, self.den)
        if self.den.is_one():
            return cls._new(self.num * o.den + o.num, o.den)
        if o.den.is_one():
            return cls._new(self.num + o.num * self.den, self.den)
        g = self.den.gcd(o.den)
        a = self.den / g
        b = o.den / g
        return cls._new(self.num * b + o.num * a, a * o.den)

    __radd__ = __add__

    def __neg__(self):
        obj = type(self).__new__(type(self))
        obj.num = -self.num
        obj.den = self.den
        obj._hash = None
        return obj

    def __sub__(self, other):
        try:
            o = _Fraction._coerce(other) if not isinstance(other, _Fraction) else other
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = _Fraction._coerce(other) if not isinstance(other, _Fraction) else other
        except TypeError:
            return NotImplemented
        cls = self._result_cls(o)
        if self.num.is_zero() or o.num.is_zero():
            return cls()
        if self.den.is_one() and o.den.is_one():
            return cls._new(self.num * o.num, _ONE)
        # cross-cancel before multiplying to keep sizes small
        g1 = self.num.gcd(o.den) if not o.den.is_one() else _ONE
        g2 = o.num.gcd(self.den) if not self.den.is_one() else _ONE
        n1, d2 = (self.num / g1, o.den / g1) if not g1.is_one() else (self.num, o.den)
        n2, d1 = (o.num / g2, self.den / g2) if not g2.is_one() else (o.num, self.den)
        return cls._new(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivision("inverse of zero")
        n = self.num
        # multiply through by the w-conjugate, then the I-conjugate
        nw = n.compose(_I, -_W, _M, *_DS) if n.degrees()[_IDX_W] else n
        p = _reduce(n * nw)
        pi = p.compose(-_I, _W, _M, *_DS) if p.degrees()[_IDX_I] else p
        real = _reduce(p * pi)
        return type(self)._new(self.den * nw * pi, real)

    def __truediv__(self, other):
        try:
            o = _Fraction._coerce(other) if not isinstance(other, _Fraction) else other
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return _Fraction._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = type(self)(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        if not isinstance(other, _Fraction):
            try:
                other = _Fraction._coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def conj(self):
        """Complex conjugation ``i -> -i``; ``m``, ``D``, ``w`` are fixed."""
        if self.num.is_zero() or not self.num.degrees()[_IDX_I]:
            return self
        obj = type(self).__new__(type(self))
        obj.num = self.num.compose(-_I, _W, _M, *_DS)
        obj.den = self.den
        obj._hash = None
        return obj

    def parity(self):
        """``D_k -> -D_k`` for k = 1..3."""
        return type(self)._new(
            self.num.compose(_I, _W, _M, _D0, -_D1, -_D2, -_D3),
            self.den.compose(_I, _W, _M, _D0, -_D1, -_D2, -_D3),
        )

    def reflect_all(self):
        """``D_mu -> -D_mu`` for all four derivative symbols."""
        return type(self)._new(
            self.num.compose(_I, _W, _M, -_D0, -_D1, -_D2, -_D3),
            self.den.compose(_I, _W, _M, -_D0, -_D1, -_D2, -_D3),
        )

    def dD(self, mu: int):
        """Formal derivative in ``D_mu``; ``dw/dD_k = -D_k/w``."""
        if mu not in (0, 1, 2, 3):
            raise IndexError(f"derivative index {mu} out of range 0..3")
        idx = _IDX_D[mu]
        n, q = self.num, self.den
        if n.is_zero():
            return type(self)()
        dn = n.derivative(idx)
        dq = q.derivative(idx)
        if mu == 0 or not n.degrees()[_IDX_W]:
            return type(self)._new(dn * q - n * dq, q * q)
        dw = n.derivative(_IDX_W)
        top = (dn * _OMEGA_SQ - _DS[mu] * _W * dw) * q - n * _OMEGA_SQ * dq
        return type(self)._new(top, _OMEGA_SQ * q * q)

    def depends_on_D(self) -> bool:
        for p in (self.num, self.den):
            if p.is_zero():
                continue
            d = p.degrees()
            if any(d[i] for i in _IDX_D):
                return True
        return False

    def d0_degree(self) -> int:
        if self.den.degrees()[_IDX_D[0]]:
            raise ValueError("D0 occurs in a denominator")
        return 0 if self.num.is_zero() else self.num.degrees()[_IDX_D[0]]

    def d0_coefficient(self, k: int):
        """Coefficient of ``D0**k`` (denominator must be D0-free)."""
        self.d0_degree()
        out = {}
        for mon, c in zip(self.num.monoms(), self.num.coeffs()):
            if mon[_IDX_D[0]] == k:
                mm = list(mon)
                mm[_IDX_D[0]] = 0
                out[tuple(mm)] = c
        return type(self)._new(_CTX.from_dict(out), self.den)

    def is_real(self) -> bool:
        return self.num.is_zero() or not self.num.degrees()[_IDX_I]

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> GaussianRational:
        """Value of an element without ``m, D, w``."""
        if self.num.is_zero():
            return GaussianRational(0)
        if self.den.degrees() != (0,) * 7 or any(self.num.degrees()[1:]):
            raise ValueError("element is not a Gaussian-rational constant")
        d = self.num.to_dict()
        re = d.get((0,) * 7, 0)
        im = d.get((1,) + (0,) * 6, 0)
        den = self.den.leading_coefficient()
        return GaussianRational(_frac(re) / _frac(den), _frac(im) / _frac(den))

    def evaluate(self, sample: "Sample") -> GaussianRational:
        return field_eval(self, sample)

    # text -------------------------------------------------------------------

    def text(self) -> str:
        return render(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"{type(self).__name__}({render(self)!r})"


class RationalFunction(_Fraction):
    """Quotient of polynomials in ``m, D0..D3`` with Gaussian coefficients."""

    __slots__ = ()

    def _validate(self):
        if not self.num.is_zero() and self.num.degrees()[_IDX_W]:
            raise ValueError("RationalFunction may not contain w")

    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        return self.den

    def equals(self, other: "RationalFunction") -> bool:
        """Equality by cross-multiplication."""
        return _reduce(self.num * other.den - other.num * self.den).is_zero()


class FieldElem(_Fraction):
    """``u + v*w`` over the rational-function field, ``w**2`` reduced."""

    __slots__ = ()

    @classmethod
    def from_uv(cls, u, v=0) -> "FieldElem":
        u = u if isinstance(u, _Fraction) else RationalFunction(_as_poly(u))
        v = v if isinstance(v, _Fraction) else RationalFunction(_as_poly(v))
        return FieldElem._new(u.num * v.den + v.num * u.den * _W, u.den * v.den)

    @property
    def u(self) -> RationalFunction:
        return RationalFunction._new(self._w_part(0), self.den)

    @property
    def v(self) -> RationalFunction:
        return RationalFunction._new(self._w_part(1), self.den)

    def _w_part(self, k):
        out = {}
        for mon, c in zip(self.num.monoms(), self.num.coeffs()):
            if mon[_IDX_W] == k:
                mm = list(mon)
                mm[_IDX_W] = 0
                out[tuple(mm)] = c
        return _CTX.from_dict(out)


# named generators ------------------------------------------------------------

ZERO = FieldElem()
ONE = FieldElem(1)
I = FieldElem(_I)
OMEGA = FieldElem(_W)
M = FieldElem(_M)
D = tuple(FieldElem(d) for d in _DS)


def symbol(name: str) -> FieldElem:
    """Scalar symbol by its text name: ``i``, ``w``, ``m``, ``D0``..``D3``."""
    table = {"i": I, "w": OMEGA, "m": M, "D0": D[0], "D1": D[1], "D2": D[2], "D3": D[3]}
    try:
        return table[name]
    except KeyError:
        raise KeyError(f"unknown scalar symbol {name!r}") from None


def as_field(x) -> FieldElem:
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, _Fraction):
        return FieldElem._new(x.num, x.den)
    return FieldElem(_as_poly(x))


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return as_field(a) * as_field(b)


def field_inv(a: FieldElem) -> FieldElem:
    return as_field(a).inverse()


def field_is_zero(a: FieldElem) -> bool:
    return as_field(a).is_zero()


def field_conj(a: FieldElem) -> FieldElem:
    return as_field(a).conj()


def field_dD(a: FieldElem, mu: int) -> FieldElem:
    return as_field(a).dD(mu)


def field_parity(a: FieldElem) -> FieldElem:
    return as_field(a).parity()


# ---------------------------------------------------------------------------
# samples and evaluation
# ---------------------------------------------------------------------------

Number = Union[int, Fraction, GaussianRational]


@dataclass(frozen=True)
class Sample:
    """Exact point for evaluation: values of ``m``, ``D0..D3`` and ``w``.

    ``w**2 == m**2 - D1**2 - D2**2 - D3**2`` is enforced.  Use
    :meth:`momentum` for the usual ``D_k = i*p_k`` substitution with a
    Pythagorean ``(m, |p|, w)``.
    """

    m: GaussianRational
    D: tuple
    w: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "m", GaussianRational.coerce(self.m))
        object.__setattr__(self, "w", GaussianRational.coerce(self.w))
        Ds = tuple(GaussianRational.coerce(d) for d in self.D)
        if len(Ds) != 4:
            raise InconsistentSample("sample needs four derivative values D0..D3")
        object.__setattr__(self, "D", Ds)
        lhs = self.w * self.w
        rhs = self.m * self.m - Ds[1] * Ds[1] - Ds[2] * Ds[2] - Ds[3] * Ds[3]
        if lhs != rhs:
            raise InconsistentSample(f"w**2 = {lhs} but m**2 - sum D_k**2 = {rhs}")

    @classmethod
    def momentum(cls, m: Number, p: Sequence[Number], p0: Number = 0) -> "Sample":
        """``D_k = i*p_k`` (and ``D0 = i*p0``); ``w`` is the exact root of ``m**2 + p**2``."""
        m = _frac(m)
        ps = [_frac(x) for x in p]
        if len(ps) != 3:
            raise InconsistentSample("momentum sample needs three components")
        w2 = m * m + sum(x * x for x in ps)
        w = _rational_sqrt(w2)
        if w is None:
            raise InconsistentSample(f"m**2 + |p|**2 = {w2} is not a rational square")
        Ds = (GaussianRational(0, _frac(p0)),) + tuple(GaussianRational(0, x) for x in ps)
        return cls(GaussianRational(m), Ds, GaussianRational(w))

    @classmethod
    def real(cls, m: Number, D: Sequence[Number], D0: Number = 0) -> "Sample":
        """Real derivative values; ``m**2 - sum D_k**2`` must be a positive rational square."""
        m = _frac(m)
        ds = [_frac(x) for x in D]
        w2 = m * m - sum(x * x for x in ds)
        w = _rational_sqrt(w2) if w2 > 0 else None
        if w is None:
            raise InconsistentSample(f"m**2 - |D|**2 = {w2} is not a positive rational square")
        return cls(GaussianRational(m), (GaussianRational(_frac(D0)),) + tuple(GaussianRational(x) for x in ds), GaussianRational(w))

    def is_real(self) -> bool:
        return all(d.im == 0 for d in self.D) and self.m.im == 0 and self.w.im == 0

    def values(self) -> dict:
        return {"m": self.m, "D0": self.D[0], "D1": self.D[1], "D2": self.D[2], "D3": self.D[3], "w": self.w}


def _rational_sqrt(q: Fraction):
    from math import isqrt

    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _eval_poly(p, vals: Sequence[GaussianRational]) -> GaussianRational:
    total = GaussianRational(0)
    powcache: dict = {}
    for mon, c in zip(p.monoms(), p.coeffs()):
        term = GaussianRational(_frac(c))
        for idx, e in enumerate(mon):
            if e:
                key = (idx, e)
                if key not in powcache:
                    powcache[key] = vals[idx] ** e
                term = term * powcache[key]
        total = total + term
    return total


def field_eval(a, sample: Sample) -> GaussianRational:
    a = as_field(a)
    vals = (GaussianRational(0, 1), sample.w, sample.m) + tuple(sample.D)
    den = _eval_poly(a.den, vals)
    if den.is_zero():
        raise ZeroDivision("denominator vanishes at the sample")
    return _eval_poly(a.num, vals) / den


# ---------------------------------------------------------------------------
# canonical text
# ---------------------------------------------------------------------------

# graded lexicographic with D0 < D1 < D2 < D3 < m
_TEXT_ORDER = (_IDX_M, 6, 5, 4, 3)
_TEXT_NAMES = {_IDX_M: "m", 3: "D0", 4: "D1", 5: "D2", 6: "D3"}


def _mono_key(mon):
    deg = sum(mon[i] for i in _TEXT_ORDER)
    return (-deg, tuple(-mon[i] for i in _TEXT_ORDER), mon[_IDX_W], mon[_IDX_I])


def _render_poly(p) -> str:
    if p.is_zero():
        return "0"
    # pair up real and imaginary coefficients of each (m, D, w) monomial
    groups: dict = {}
    for mon, c in zip(p.monoms(), p.coeffs()):
        base = (0,) + tuple(mon[1:])
        re, im = groups.get(base, (Fraction(0), Fraction(0)))
        if mon[_IDX_I]:
            im += _frac(c)
        else:
            re += _frac(c)
        groups[base] = (re, im)
    pieces = []
    for base in sorted(groups, key=_mono_key):
        re, im = groups[base]
        factors = [f"{_TEXT_NAMES[i]}^{base[i]}" if base[i] > 1 else _TEXT_NAMES[i]
                   for i in _TEXT_ORDER if base[i]]
        if base[_IDX_W]:
            factors.append("w")
        for coef, unit in ((re, None), (im, "i")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            fs = ([unit] if unit else []) + factors
            if mag == 1 and fs:
                body = "*".join(fs)
            else:
                body = "*".join([_fmt_q(mag)] + fs)
            pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _omega_power(den):
    """``(c, k)`` when ``den = c * w^(2k)`` with ``k >= 1``, else None."""
    k = 0
    while not den.is_constant():
        q, r = divmod(den, _OMEGA_SQ)
        if not r.is_zero():
            return None
        den, k = q, k + 1
    return (den, k) if k else None


def _over_w(p, n: int) -> str:
    while n >= 2:
        q, r = divmod(p, _OMEGA_SQ)
        if not r.is_zero():
            break
        p, n = q, n - 2
    text = _render_poly(p)
    if n == 0:
        return text
    if " " in text:
        text = f"({text})"
    return f"{text}/w" + (f"^{n}" if n > 1 else "")


def render(a) -> str:
    """Deterministic text, parseable by the expression language.

    A denominator ``c w^(2k)`` is written with powers of ``w`` so that, for
    example, ``1/(2w)`` reads ``1/2/w``.
    """
    num = _render_poly(a.num)
    if a.den.is_one():
        return num
    wp = _omega_power(a.den)
    if wp is not None:
        c, k = wp
        odd = a.num.derivative(_IDX_W) / c
        even = (a.num - odd * c * _W) / c
        parts = [_over_w(q, n) for q, n in ((even, 2 * k), (odd, 2 * k - 1)) if not q.is_zero()]
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out
    den = _render_poly(a.den)
    return f"({num})/({den})"


# ---------------------------------------------------------------------------
# helpers for linear algebra over Q
# ---------------------------------------------------------------------------


def real_coordinates(a, common_den) -> Mapping:
    """Coefficients of ``a * common_den`` as a polynomial, keyed by monomial.

    ``common_den`` must be divisible by ``a.den``; used to linearize
    real-linear conditions exactly.
    """
    q, r = divmod(common_den, a.den)
    if not r.is_zero():
        raise ValueError("common denominator is not a multiple")
    poly = _reduce(a.num * q)
    return {mon: _frac(c) for mon, c in zip(poly.monoms(), poly.coeffs())}


def lcm_poly(a, b):
    if a.is_one():
        return b
    if b.is_one():
        return a
    g = a.gcd(b)
    return (a / g) * b
