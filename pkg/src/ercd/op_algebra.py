"""Normal-ordered operators: ``X``-monomial x 4x4 scalar matrix x optional ``C``.

A term ``(xpow, cflag) -> M`` stands for ``X0^a0 X1^a1 X2^a2 X3^a3 . M . C^cflag``
where ``C`` is complex conjugation.  Products are brought back to this form
with the rewrite rules

    C X = X C,   C f = conj(f) C,   C C = 1,   f X_mu = X_mu f + df/dD_mu,

so that ``[X_mu, D_nu] = -delta_mu_nu``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Dict, Iterable, Mapping, Tuple

from .exact_scalar import FieldElem, GaussianRational, Sample, as_field, field_eval

__all__ = [
    "Operator",
    "XSymbolsPresent",
    "op_mul",
    "op_commutator",
    "op_anticommutator",
    "op_adjoint",
    "op_parity",
    "op_realify",
    "op_equal",
]

XPow = Tuple[int, int, int, int]
Key = Tuple[XPow, int]
Matrix = Dict[Tuple[int, int], FieldElem]

X0POW: XPow = (0, 0, 0, 0)


class XSymbolsPresent(ValueError):
    """Raised when an operation needs an operator free of ``X`` symbols."""


# ---------------------------------------------------------------------------
# sparse 4x4 matrices over FieldElem
# ---------------------------------------------------------------------------


def _mat_prune(a: Matrix) -> Matrix:
    return {k: v for k, v in a.items() if not v.is_zero()}


def _mat_add_into(acc: Matrix, b: Matrix, scale=None):
    for k, v in b.items():
        if scale is not None:
            v = v * scale
        if k in acc:
            acc[k] = acc[k] + v
        else:
            acc[k] = v


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows: Dict[int, list] = {}
    for (r, c), v in b.items():
        rows.setdefault(r, []).append((c, v))
    out: Matrix = {}
    for (r, k), x in a.items():
        for c, y in rows.get(k, ()):
            p = x * y
            key = (r, c)
            out[key] = out[key] + p if key in out else p
    return _mat_prune(out)


def _mat_map(a: Matrix, fn) -> Matrix:
    return _mat_prune({k: fn(v) for k, v in a.items()})


def _mat_conj(a: Matrix) -> Matrix:
    return {k: v.conj() for k, v in a.items()}


def _mat_dagger(a: Matrix) -> Matrix:
    # conjugate transpose with D_mu -> -D_mu (formal adjoint of f(D))
    return {(c, r): v.conj().reflect_all() for (r, c), v in a.items()}


def _mat_equal(a: Matrix, b: Matrix) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        x = a.get(k)
        y = b.get(k)
        if x is None:
            if not y.is_zero():
                return False
        elif y is None:
            if not x.is_zero():
                return False
        elif not (x - y).is_zero():
            return False
    return True


def _mat_derivative(a: Matrix, k: XPow) -> Matrix:
    out = a
    for mu, n in enumerate(k):
        for _ in range(n):
            out = _mat_map(out, lambda f, mu=mu: f.dD(mu))
            if not out:
                return out
    return out


IDENTITY_MATRIX: Matrix = {(r, r): FieldElem(1) for r in range(4)}


def matrix_from_rows(rows) -> Matrix:
    out = {}
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            f = as_field(v)
            if not f.is_zero():
                out[(r, c)] = f
    return out


# ---------------------------------------------------------------------------
# Operator
# ---------------------------------------------------------------------------


class Operator:
    """Immutable normal-ordered operator.

    ``terms`` maps ``(xpow, cflag)`` to a sparse 4x4 matrix of
    :class:`FieldElem`; zero matrices never appear.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, Matrix] | None = None):
        clean: Dict[Key, Matrix] = {}
        for key, mat in (terms or {}).items():
            xpow, cflag = key
            xpow = tuple(int(e) for e in xpow)
            if len(xpow) != 4 or min(xpow) < 0 or cflag not in (0, 1):
                raise ValueError(f"bad term key {key!r}")
            mat = _mat_prune({k: as_field(v) for k, v in mat.items()})
            if mat:
                clean[(xpow, cflag)] = mat
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: Dict[Key, Matrix]) -> "Operator":
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v}
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Operator":
        return cls._wrap({})

    @classmethod
    def identity(cls) -> "Operator":
        return cls.scalar(1)

    @classmethod
    def scalar(cls, f) -> "Operator":
        f = as_field(f)
        if f.is_zero():
            return cls.zero()
        return cls._wrap({(X0POW, 0): {(r, r): f for r in range(4)}})

    @classmethod
    def matrix(cls, rows_or_mat, cflag: int = 0) -> "Operator":
        mat = rows_or_mat if isinstance(rows_or_mat, dict) else matrix_from_rows(rows_or_mat)
        return cls({(X0POW, cflag): mat})

    @classmethod
    def conjugation(cls) -> "Operator":
        return cls._wrap({(X0POW, 1): dict(IDENTITY_MATRIX)})

    @classmethod
    def X(cls, mu: int) -> "Operator":
        if mu not in (0, 1, 2, 3):
            raise IndexError(f"X index {mu} out of range 0..3")
        xpow = tuple(1 if k == mu else 0 for k in range(4))
        return cls._wrap({(xpow, 0): dict(IDENTITY_MATRIX)})

    # inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Key, Matrix]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_x_free(self) -> bool:
        return all(xpow == X0POW for xpow, _ in self._terms)

    def has_conjugation(self) -> bool:
        return any(c for _, c in self._terms)

    def linear_part(self) -> Matrix:
        return self._terms.get((X0POW, 0), {})

    def antilinear_part(self) -> Matrix:
        return self._terms.get((X0POW, 1), {})

    def scalar_value(self):
        """The field element ``f`` if the operator is ``f * Identity``, else None."""
        if not self._terms:
            return FieldElem()
        if set(self._terms) != {(X0POW, 0)}:
            return None
        mat = self._terms[(X0POW, 0)]
        f = mat.get((0, 0))
        if f is None:
            return None
        if set(mat) != {(r, r) for r in range(4)}:
            return None
        if any(not (mat[(r, r)] - f).is_zero() for r in range(1, 4)):
            return None
        return f

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = {k: dict(v) for k, v in self._terms.items()}
        for key, mat in other._terms.items():
            if key in out:
                acc = out[key]
                _mat_add_into(acc, mat)
                out[key] = _mat_prune(acc)
            else:
                out[key] = dict(mat)
        return Operator._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return Operator._wrap({k: {e: -v for e, v in m.items()} for k, m in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        return op_mul(self, _coerce(other))

    def __rmul__(self, other):
        return op_mul(_coerce(other), self)

    def __truediv__(self, other):
        f = other.scalar_value() if isinstance(other, Operator) else as_field(other)
        if f is None:
            raise ValueError("division by a non-scalar operator")
        return self.scale(f.inverse())

    def scale(self, f) -> "Operator":
        """Left multiplication by the scalar ``f``."""
        f = as_field(f)
        return op_mul(Operator.scalar(f), self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Operator.identity()
        for _ in range(k):
            out = op_mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, Operator):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return op_equal(self, other)

    __hash__ = None

    def map_entries(self, fn) -> "Operator":
        return Operator._wrap({k: _mat_map(m, fn) for k, m in self._terms.items()})

    def conj(self) -> "Operator":
        """``C . A . C``: conjugates every scalar entry."""
        return self.map_entries(lambda f: f.conj())

    def parity(self) -> "Operator":
        return op_parity(self)

    def adjoint(self) -> "Operator":
        return op_adjoint(self)

    # text -------------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def text(self) -> str:
        """Row-major canonical rendering used in reports."""
        if not self._terms:
            return "0"
        parts = []
        for (xpow, cflag), mat in self.sorted_terms():
            xs = "".join(f"X{mu}^{e} " if e > 1 else f"X{mu} " for mu, e in enumerate(xpow) if e)
            rows = []
            for r in range(4):
                rows.append("[" + ", ".join(mat[(r, c)].text() if (r, c) in mat else "0" for c in range(4)) + "]")
            parts.append(f"{xs}[{'; '.join(rows)}]{' C' if cflag else ''}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Operator({self.text()})"


def _coerce(x) -> Operator:
    if isinstance(x, Operator):
        return x
    return Operator.scalar(as_field(x))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def _sub_multi_indices(b: XPow) -> Iterable[XPow]:
    return iproduct(*(range(e + 1) for e in b))


def op_mul(A: Operator, B: Operator) -> Operator:
    """Normal-ordered product ``A . B``."""
    A = _coerce(A)
    B = _coerce(B)
    acc: Dict[Key, Matrix] = {}
    deriv_cache: Dict[Tuple[Key, XPow], Matrix] = {}
    conj_cache: Dict[Key, Matrix] = {}
    for key1, m1 in A._terms.items():
        a, c1 = key1
        for key2, m2 in B._terms.items():
            b, c2 = key2
            if c1:
                if key2 not in conj_cache:
                    conj_cache[key2] = _mat_conj(m2)
                m2c = conj_cache[key2]
            else:
                m2c = m2
            cflag = c1 ^ c2
            for k in _sub_multi_indices(b):
                if k == X0POW:
                    dm1 = m1
                    coeff = 1
                else:
                    ck = (key1, k)
                    if ck not in deriv_cache:
                        deriv_cache[ck] = _mat_derivative(m1, k)
                    dm1 = deriv_cache[ck]
                    if not dm1:
                        continue
                    coeff = 1
                    for bm, km in zip(b, k):
                        coeff *= comb(bm, km)
                prod = _mat_mul(dm1, m2c)
                if not prod:
                    continue
                xpow = tuple(ai + bi - ki for ai, bi, ki in zip(a, b, k))
                key = (xpow, cflag)
                target = acc.setdefault(key, {})
                _mat_add_into(target, prod, None if coeff == 1 else FieldElem(coeff))
    return Operator._wrap({k: _mat_prune(v) for k, v in acc.items()})


def op_commutator(A: Operator, B: Operator) -> Operator:
    return op_mul(A, B) - op_mul(B, A)


def op_anticommutator(A: Operator, B: Operator) -> Operator:
    return op_mul(A, B) + op_mul(B, A)


def op_equal(A: Operator, B: Operator) -> bool:
    A = _coerce(A)
    B = _coerce(B)
    for key in set(A._terms) | set(B._terms):
        if not _mat_equal(A._terms.get(key, {}), B._terms.get(key, {})):
            return False
    return True


def op_adjoint(A: Operator) -> Operator:
    """Formal adjoint: ``X^+ = X``, ``D^+ = -D``, ``i^+ = -i``, ``C^+ = C``, reversed order."""
    A = _coerce(A)
    out = Operator.zero()
    for (xpow, cflag), mat in A._terms.items():
        piece = Operator._wrap({(X0POW, 0): _mat_dagger(mat)})
        if cflag:
            piece = op_mul(Operator.conjugation(), piece)
        xs = Operator._wrap({(xpow, 0): dict(IDENTITY_MATRIX)})
        out = out + op_mul(piece, xs)
    return out


def op_parity(A: Operator) -> Operator:
    """``D_k -> -D_k`` (k = 1..3) in every entry; ``X`` and ``C`` untouched."""
    return _coerce(A).map_entries(lambda f: f.parity())


# ---------------------------------------------------------------------------
# realification
# ---------------------------------------------------------------------------


def op_realify(A: Operator, sample: Sample):
    """8x8 exact rational matrix of an ``X``-free operator acting on ``R^8 = C^4``.

    Returns a list of 8 rows of :class:`fractions.Fraction`.  An antilinear
    term whose entries depend on ``D`` can only be realified at a sample with
    real ``D`` values (conjugation does not commute with ``D -> i p``).
    """
    A = _coerce(A)
    if not A.is_x_free():
        raise XSymbolsPresent("realify needs an X-free operator")
    out = [[Fraction(0)] * 8 for _ in range(8)]
    for (_, cflag), mat in A._terms.items():
        if cflag and not sample.is_real() and any(f.depends_on_D() for f in mat.values()):
            raise ValueError("antilinear D-dependent term cannot be realified at a complex sample")
        for (r, c), f in mat.items():
            z: GaussianRational = field_eval(f, sample)
            a, b = z.re, z.im
            if not cflag:
                # [[A, -B], [B, A]]
                out[r][c] += a
                out[r][c + 4] += -b
                out[r + 4][c] += b
                out[r + 4][c + 4] += a
            else:
                # [[A, B], [B, -A]]
                out[r][c] += a
                out[r][c + 4] += b
                out[r + 4][c] += b
                out[r + 4][c + 4] += -a
    return out
