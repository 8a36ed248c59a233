"""Independent sympy oracles used by the tests.

``PlaneWave`` applies an operator to explicit functions ``u(x) exp(i s k.x)``
(``s = +-1``, ``k`` fixed) with ``X_mu = x_mu``, ``D_mu = d/dx_mu``,
``w = sqrt(m^2 + k1^2 + k2^2 + k3^2)`` and ``C`` = literal complex
conjugation.  It only reads an operator's stored terms and never uses the
package's product rules.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from ercd.exact_scalar import render

m_sym = sp.Symbol("m", positive=True)
k_sym = sp.symbols("k0:4", real=True)
x_sym = sp.symbols("x0:4", real=True)
W_SYM = sp.sqrt(m_sym**2 + k_sym[1] ** 2 + k_sym[2] ** 2 + k_sym[3] ** 2)


def to_sympy(f, D=None, w=None):
    """Field element -> sympy expression via its canonical text."""
    names = {"i": sp.I, "m": m_sym, "w": w if w is not None else sp.Symbol("w")}
    for mu in range(4):
        names[f"D{mu}"] = D[mu] if D is not None else sp.Symbol(f"D{mu}")
    return sp.sympify(render(f).replace("^", "**"), locals=names)


class PlaneWave:
    """State: ``{s: [u_0(x), ..., u_3(x)]}`` meaning ``sum_s u(x) exp(i s k.x)``."""

    def __init__(self, m=2, k=(Fraction(3, 7), 1, 2, 4), x=(Fraction(1, 3), Fraction(-2, 5), Fraction(1, 2), 2)):
        self.kpoint = {m_sym: sp.Rational(m)}
        for a, b in zip(k_sym, k):
            self.kpoint[a] = sp.Rational(b)
        self.point = dict(self.kpoint)
        for a, b in zip(x_sym, x):
            self.point[a] = sp.Rational(b)
        self._cache = {}

    def _derivative(self, f, s, mono):
        """Prefactor ``g`` with ``f(D) (x^mono e) = g(x) e`` at the fixed ``k``.

        Uses ``x_mu^n e = (-i s d/dk_mu)^n e`` and, for a prefactor ``g``,
        ``(-i s d/dk_mu)(g e) = (-i s dg/dk_mu + x_mu g) e``; ``k`` is
        substituted only after differentiating.
        """
        key = (render(f), s, mono)
        if key not in self._cache:
            g = to_sympy(f, [sp.I * s * k for k in k_sym], W_SYM)
            for mu, n in enumerate(mono):
                for _ in range(n):
                    g = -sp.I * s * sp.diff(g, k_sym[mu]) + x_sym[mu] * g
            self._cache[key] = sp.expand(g.subs(self.kpoint))
        return self._cache[key]

    def _apply_scalar(self, f, s, poly):
        if poly == 0:
            return 0
        out = 0
        for mono, coeff in sp.Poly(poly, *x_sym).terms():
            out += coeff * self._derivative(f, s, mono)
        return sp.expand(out)

    def apply(self, op, state):
        result = {}
        for (xpow, cflag), mat in op.terms.items():
            cur = state
            if cflag:
                cur = {-s: [sp.expand(sp.conjugate(u)) for u in vec] for s, vec in state.items()}
            mono = 1
            for mu, n in enumerate(xpow):
                mono *= x_sym[mu] ** n
            for s, vec in cur.items():
                acc = result.setdefault(s, [0, 0, 0, 0])
                for (r, c), f in mat.items():
                    if vec[c] == 0:
                        continue
                    acc[r] = sp.expand(acc[r] + mono * self._apply_scalar(f, s, vec[c]))
        return result

    def same(self, a, b) -> bool:
        for s in set(a) | set(b):
            ua = a.get(s, [0] * 4)
            ub = b.get(s, [0] * 4)
            if any(sp.expand(sp.nsimplify(p - q)) != 0 for p, q in zip(ua, ub)):
                return False
        return True
