"""Expression language for catalog operators.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = "-" unary | power ;
    power   = atom [ "^" INT ] ;
    atom    = INT | IDENT [ "(" [ expr { "," expr } ] ")" ] | "(" expr ")" ;
    IDENT   = letter { letter | digit } ;
    INT     = digit { digit } ;

Names are resolved at elaboration time.  ``format_operator`` writes an
X-free operator in the Clifford basis ``gamma0..gamma3`` so that
``elaborate(parse(tokenize(format_operator(A)))) == A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple, Union

from . import catalog as cat
from . import exact_scalar as S
from .op_algebra import Operator, op_adjoint, op_anticommutator, op_commutator, op_mul, op_parity
from .exact_scalar import FieldElem, render
from .lie_verify import conjugate

__all__ = [
    "Token",
    "DslError",
    "IllegalCharacter",
    "DslSyntaxError",
    "UnknownName",
    "NonScalarDivisor",
    "ArityError",
    "Node",
    "tokenize",
    "parse",
    "elaborate",
    "evaluate",
    "format_operator",
    "NAMES",
]


# ---------------------------------------------------------------------------
# errors
# ---------------------------------------------------------------------------


class DslError(ValueError):
    """Base error; ``position`` is a byte offset into the source."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.message = message
        self.position = position


class IllegalCharacter(DslError):
    pass


class DslSyntaxError(DslError):
    pass


class UnknownName(DslError):
    pass


class NonScalarDivisor(DslError):
    pass


class ArityError(DslError):
    pass


class XSymbolsInConjugation(DslError):
    pass


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # ident | int | punct | end
    text: str
    pos: int


_PUNCT = set("(),+-*/^")
MAX_EXPONENT = 64


def tokenize(text: Union[str, bytes]) -> List[Token]:
    if isinstance(text, str):
        data = text.encode("utf-8", errors="surrogatepass")
    else:
        data = bytes(text)
    out: List[Token] = []
    i, n = 0, len(data)
    while i < n:
        ch = data[i]
        c = chr(ch)
        if c in " \t":
            i += 1
        elif c.isascii() and c.isalpha():
            j = i + 1
            while j < n and chr(data[j]).isascii() and chr(data[j]).isalnum():
                j += 1
            out.append(Token("ident", data[i:j].decode("ascii"), i))
            i = j
        elif c.isascii() and c.isdigit():
            j = i + 1
            while j < n and chr(data[j]).isascii() and chr(data[j]).isdigit():
                j += 1
            out.append(Token("int", data[i:j].decode("ascii"), i))
            i = j
        elif c in _PUNCT:
            out.append(Token("punct", c, i))
            i += 1
        else:
            raise IllegalCharacter(f"illegal character {data[i:i + 1]!r}", i)
    out.append(Token("end", "", n))
    return out


# ---------------------------------------------------------------------------
# syntax tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    """``kind`` is one of ``int``, ``name``, ``neg``, ``bin``, ``pow``.

    ``name`` nodes carry their argument list in ``args`` (``None`` when
    written without parentheses); ``bin`` nodes keep the operator in
    ``value``.
    """

    kind: str
    value: object = None
    args: Optional[Tuple["Node", ...]] = None
    pos: int = 0

    def sexpr(self) -> str:
        if self.kind == "int":
            return str(self.value)
        if self.kind == "name":
            if self.args is None:
                return str(self.value)
            return f"{self.value}(" + ", ".join(a.sexpr() for a in self.args) + ")"
        if self.kind == "neg":
            return f"neg({self.args[0].sexpr()})"
        if self.kind == "pow":
            return f"pow({self.args[0].sexpr()}, {self.value})"
        names = {"+": "plus", "-": "minus", "*": "times", "/": "div"}
        return f"{names[self.value]}({self.args[0].sexpr()}, {self.args[1].sexpr()})"


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.toks = tokens
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def _is(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def _expect(self, text: str) -> Token:
        if not self._is(text):
            raise DslSyntaxError(f"expected {text!r}, found {self._describe()}", self.tok.pos)
        t = self.tok
        self.k += 1
        return t

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def run(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise DslSyntaxError(f"expected operator or end of input, found {self._describe()}", self.tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._is("+") or self._is("-"):
            op = self.tok
            self.k += 1
            node = Node("bin", op.text, (node, self.term()), op.pos)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self._is("*") or self._is("/"):
            op = self.tok
            self.k += 1
            node = Node("bin", op.text, (node, self.unary()), op.pos)
        return node

    def unary(self) -> Node:
        if self._is("-"):
            t = self.tok
            self.k += 1
            return Node("neg", None, (self.unary(),), t.pos)
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self._is("^"):
            t = self.tok
            self.k += 1
            if self.tok.kind != "int":
                raise DslSyntaxError(f"expected integer exponent, found {self._describe()}", self.tok.pos)
            exp = int(self.tok.text)
            if exp > MAX_EXPONENT:
                raise DslSyntaxError(f"exponent larger than {MAX_EXPONENT}", self.tok.pos)
            self.k += 1
            node = Node("pow", exp, (node,), t.pos)
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.k += 1
            return Node("int", int(t.text), None, t.pos)
        if t.kind == "ident":
            self.k += 1
            if not self._is("("):
                return Node("name", t.text, None, t.pos)
            self.k += 1
            args = []
            if not self._is(")"):
                args.append(self.expr())
                while self._is(","):
                    self.k += 1
                    args.append(self.expr())
            self._expect(")")
            return Node("name", t.text, tuple(args), t.pos)
        if self._is("("):
            self.k += 1
            node = self.expr()
            self._expect(")")
            return node
        raise DslSyntaxError(f"expected expression, found {self._describe()}", t.pos)


def parse(tokens: Union[List[Token], str, bytes]) -> Node:
    if not isinstance(tokens, list):
        tokens = tokenize(tokens)
    parser = _Parser(tokens)
    try:
        return parser.run()
    except RecursionError:
        raise DslSyntaxError("expression nested too deeply", parser.tok.pos) from None


# ---------------------------------------------------------------------------
# elaboration
# ---------------------------------------------------------------------------


def _const(f) -> Callable[[], Operator]:
    return lambda: Operator.scalar(f)


NAMES: Dict[str, Callable[[], Operator]] = {
    "i": _const(S.I),
    "m": _const(S.M),
    "w": _const(S.OMEGA),
    "I": Operator.identity,
    "C": Operator.conjugation,
    "eps": cat.epsilon_hat,
    "W": lambda: cat.W_conjugator().N,
    "Winv": lambda: cat.W_conjugator().N_inv,
    "Lfw": cat.fw_operator,
}
for _k in range(7):
    NAMES[f"gamma{_k}"] = (lambda k: lambda: cat.gamma(k))(_k)
for _k in range(4):
    NAMES[f"D{_k}"] = _const(S.D[_k])
    NAMES[f"X{_k}"] = (lambda k: lambda: Operator.X(k))(_k)

# names whose value depends on the momentum reading
_CONV_NAMES = {
    "V": lambda c: cat.V_conjugator(c).N,
    "Vinv": lambda c: cat.V_conjugator(c).N_inv,
    "HD": cat.dirac_hamiltonian,
    "Ldirac": cat.dirac_operator,
}

_INDEXED = {
    "s": (cat.so6_gen, 2),
    "scd": (lambda a, b: cat.cd_basis().j(a, b), 2),
    "sI": (cat.sI, 2),
    "sII": (cat.sII, 2),
    "sTS": (cat.sTS, 2),
    "sV": (cat.sV, 2),
}

_CALLS = {"comm": 2, "acomm": 2, "adj": 1, "par": 1, "conjV": 1, "conjW": 1}


class _Elaborator:
    def __init__(self, conv: cat.Conventions):
        self.conv = cat.Conventions(conv.p_form)

    def run(self, node: Node) -> Operator:
        kind = node.kind
        if kind == "int":
            return Operator.scalar(node.value)
        if kind == "neg":
            return -self.run(node.args[0])
        if kind == "pow":
            return self.run(node.args[0]) ** node.value
        if kind == "bin":
            a = self.run(node.args[0])
            b = self.run(node.args[1])
            if node.value == "+":
                return a + b
            if node.value == "-":
                return a - b
            if node.value == "*":
                return op_mul(a, b)
            f = b.scalar_value()
            if f is None:
                raise NonScalarDivisor("divisor is not a scalar multiple of the identity", node.pos)
            if f.is_zero():
                raise NonScalarDivisor("division by zero", node.pos)
            return a * f.inverse()
        return self._name(node)

    def _int_args(self, node: Node, arity: int) -> List[int]:
        args = node.args or ()
        if len(args) != arity:
            raise ArityError(f"{node.value} takes {arity} index arguments", node.pos)
        out = []
        for a in args:
            if a.kind == "int":
                out.append(a.value)
            elif a.kind == "neg" and a.args[0].kind == "int":
                out.append(-a.args[0].value)
            else:
                raise DslSyntaxError("index arguments must be integers", a.pos)
        return out

    def _name(self, node: Node) -> Operator:
        name = node.value
        if name in _CALLS:
            args = node.args or ()
            if len(args) != _CALLS[name]:
                raise ArityError(f"{name} takes {_CALLS[name]} argument(s)", node.pos)
            vals = [self.run(a) for a in args]
            if name == "comm":
                return op_commutator(*vals)
            if name == "acomm":
                return op_anticommutator(*vals)
            if name == "adj":
                return op_adjoint(vals[0])
            if name == "par":
                return op_parity(vals[0])
            if not vals[0].is_x_free():
                raise XSymbolsInConjugation("conjugation needs an X-free operand", args[0].pos)
            if name == "conjV":
                return conjugate(vals[0], cat.V_conjugator(self.conv), "inverse")
            return conjugate(vals[0], cat.W_conjugator(), "forward")
        if name in _INDEXED:
            fn, arity = _INDEXED[name]
            idx = self._int_args(node, arity)
            try:
                return fn(*idx)
            except (ValueError, IndexError, KeyError) as exc:
                raise ArityError(f"bad index for {name}: {exc}", node.pos) from None
        if name == "shat":
            idx = self._int_args(node, 2)
            try:
                return cat.shat(*idx, self.conv)
            except (ValueError, IndexError, KeyError) as exc:
                raise ArityError(f"bad index for shat: {exc}", node.pos) from None
        if node.args is not None:
            raise ArityError(f"{name} takes no arguments", node.pos)
        if name in NAMES:
            return NAMES[name]()
        if name in _CONV_NAMES:
            return _CONV_NAMES[name](self.conv)
        raise UnknownName(f"unknown name {name!r}", node.pos)


def elaborate(node: Node, conventions: Optional[cat.Conventions] = None) -> Operator:
    try:
        return _Elaborator(conventions or cat.DEFAULT_CONVENTIONS).run(node)
    except RecursionError:
        raise DslSyntaxError("expression nested too deeply", node.pos) from None


def evaluate(text: Union[str, bytes], conventions: Optional[cat.Conventions] = None) -> Operator:
    return elaborate(parse(tokenize(text)), conventions)


def all_names() -> List[str]:
    return sorted(set(NAMES) | set(_CONV_NAMES) | set(_INDEXED) | {"shat"} | set(_CALLS))


# ---------------------------------------------------------------------------
# canonical formatting
# ---------------------------------------------------------------------------

# Clifford basis: products of gamma0..gamma3 with increasing indices
_BASIS_INDICES: Tuple[Tuple[int, ...], ...] = tuple(
    c for r in range(5) for c in combinations(range(4), r)
)


def _basis_op(idx: Tuple[int, ...]) -> Operator:
    out = Operator.identity()
    for k in idx:
        out = op_mul(out, cat.gamma(k))
    return out


_BASIS_CACHE: List = []


def _basis():
    if not _BASIS_CACHE:
        for idx in _BASIS_INDICES:
            op = _basis_op(idx)
            sq = op_mul(op, op).scalar_value()  # +-1
            _BASIS_CACHE.append((idx, op.linear_part(), sq.inverse()))
    return _BASIS_CACHE


def _decompose(mat) -> List[Tuple[Tuple[int, ...], FieldElem]]:
    """Coefficients of a 4x4 matrix in the Clifford basis (``c_b = tr(G_b^-1 M) / 4``)."""
    out = []
    quarter = FieldElem(1) / 4
    for idx, gmat, inv_sq in _basis():
        tr = S.ZERO
        for (r, c), g in gmat.items():
            f = mat.get((c, r))
            if f is not None:
                tr = tr + g * f
        if not tr.is_zero():
            out.append((idx, tr * inv_sq * quarter))
    return out


def _gaussian(c: FieldElem) -> Optional[Tuple[Fraction, Fraction]]:
    try:
        g = c.constant_value()
    except (ValueError, TypeError):
        return None
    return g.re, g.im


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coeff_text(c: FieldElem) -> Tuple[str, str]:
    """``(sign, body)``; body is empty for a unit coefficient."""
    g = _gaussian(c)
    if g is not None:
        re, im = g
        if im == 0:
            sign = "-" if re < 0 else "+"
            mag = abs(re)
            if mag == 1:
                return sign, ""
            return sign, (_q(mag) if mag.denominator == 1 else f"({_q(mag)})")
        if re == 0:
            sign = "-" if im < 0 else "+"
            mag = abs(im)
            if mag == 1:
                return sign, "i"
            if mag.numerator == 1:
                return sign, f"(i/{mag.denominator})"
            return sign, f"({_q(mag)}*i)"
    text = render(c)
    if text.isalnum():
        return "+", text
    if text.startswith("-") and text[1:].isalnum():
        return "-", text[1:]
    return "+", f"({text})"


def _xmono(xpow) -> List[str]:
    return [f"X{k}" if e == 1 else f"X{k}^{e}" for k, e in enumerate(xpow) if e]


def format_operator(op: Operator) -> str:
    """Canonical text in the Clifford basis; ``"0"`` for the zero operator."""
    pieces: List[Tuple[str, str]] = []
    for (xpow, cflag), mat in sorted(op.terms.items()):
        for idx, coeff in _decompose(mat):
            sign, body = _coeff_text(coeff)
            factors = _xmono(xpow)
            if body:
                factors.append(body)
            factors += [f"gamma{k}" for k in idx]
            if cflag:
                factors.append("C")
            pieces.append((sign, "*".join(factors) if factors else "1"))
    if not pieces:
        return "0"
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
