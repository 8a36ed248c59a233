"""Named objects: gamma matrices, the 16/64-element bases, spin generator
families, the V and W transforms, the FW and Dirac equation operators and
the Poincare generator sets.

Dirac-Pauli representation: ``gamma0 = diag(1, 1, -1, -1)`` and
``gamma_k = [[0, sigma_k], [-sigma_k, 0]]``; ``gamma2`` is the only
imaginary one.  Conjugation is ``C`` and ``w`` is the energy symbol.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Tuple

from . import exact_scalar as S
from .op_algebra import Operator, op_commutator, op_equal, op_mul, op_parity
from .exact_scalar import FieldElem

__all__ = [
    "Conventions",
    "DEFAULT_CONVENTIONS",
    "GeneratorSet",
    "NormalizedConjugator",
    "gamma",
    "epsilon_hat",
    "cd_basis",
    "ercd_basis",
    "so6_gen",
    "a32_basis",
    "sI",
    "sII",
    "sTS",
    "sV",
    "W_conjugator",
    "V_conjugator",
    "fw_operator",
    "dirac_operator",
    "dirac_hamiltonian",
    "fw_genset",
    "dirac_genset",
    "shat",
    "levi_civita3",
    "lorentz_set",
    "so6_set",
    "ercd_labels",
    "a32_labels",
    "METRIC_13",
    "METRIC_15",
    "METRIC_6",
]

METRIC_13 = (1, -1, -1, -1)
METRIC_15 = (1, -1, -1, -1, -1, -1)
METRIC_6 = (-1, -1, -1, -1, -1, -1)  # indices 1..6; all gamma_A square to -1


@dataclass(frozen=True)
class Conventions:
    """Sign and index choices that the generator formulas leave implicit.

    p_form
        ``"-iD"``: the momentum in ``V`` and ``H_D`` is ``p_k = -i D_k``;
        ``"D"``: ``p_k = D_k``.
    boost_sign
        ``x_k = boost_sign * X_k`` in the boost generators (``-1`` is the
        covariant reading).  Rotations always use covariant ``x_l = -X_l``.
    eps_translation
        Sign in ``[j_mu_nu, p_rho] = eps (g_mu_rho p_nu - g_nu_rho p_mu)``.
    levi_civita
        Sign of ``eps^{0123}`` in the Pauli-Lubanski vector.
    """

    p_form: str = "-iD"
    boost_sign: int = -1
    eps_translation: int = -1
    levi_civita: int = 1

    def __post_init__(self):
        if self.p_form not in ("-iD", "D"):
            raise ValueError(f"p_form must be '-iD' or 'D', not {self.p_form!r}")
        for name in ("boost_sign", "eps_translation", "levi_civita"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1")

    def as_dict(self) -> dict:
        return {
            "p_form": self.p_form,
            "boost_sign": self.boost_sign,
            "eps_translation": self.eps_translation,
            "levi_civita": self.levi_civita,
        }

    @classmethod
    def parse(cls, text: str) -> "Conventions":
        """``"p_form=-iD,boost_sign=-1,..."``; missing keys keep defaults."""
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, val = part.partition("=")
            key = key.strip()
            val = val.strip()
            if key not in ("p_form", "boost_sign", "eps_translation", "levi_civita"):
                raise ValueError(f"unknown convention key {key!r}")
            kw[key] = val if key == "p_form" else int(val)
        return cls(**kw)

    def label(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.as_dict().items())


DEFAULT_CONVENTIONS = Conventions()


@dataclass
class GeneratorSet:
    """Indexed family of operators.

    ``rotations`` holds antisymmetric pairs ``(a, b)`` with ``a < b``;
    ``translations`` the single-index members; ``extras`` any unindexed
    members (the identity of the 16-element basis).
    """

    name: str
    kind: str
    metric: Tuple[int, ...]
    rotations: Dict[Tuple[int, int], Operator]
    translations: Dict[int, Operator] = field(default_factory=dict)
    extras: Dict[str, Operator] = field(default_factory=dict)
    index_base: int = 0

    def __post_init__(self):
        if self.kind not in ("so6", "so15", "so13", "poincare"):
            raise ValueError(f"unknown generator-set kind {self.kind!r}")
        for (a, b) in self.rotations:
            if a >= b:
                raise ValueError("rotation keys must be ordered pairs a < b")

    def j(self, a: int, b: int) -> Operator:
        if a == b:
            return Operator.zero()
        if a < b:
            return self.rotations[(a, b)]
        return -self.rotations[(b, a)]

    def p(self, mu: int) -> Operator:
        return self.translations[mu]

    def g(self, a: int, b: int) -> int:
        if a != b:
            return 0
        return self.metric[a - self.index_base]

    def members(self) -> List[Tuple[str, Operator]]:
        out = [(f"{self.member_prefix()}{a}{b}", op) for (a, b), op in sorted(self.rotations.items())]
        out += [(f"p{mu}", op) for mu, op in sorted(self.translations.items())]
        return out

    def member_prefix(self) -> str:
        return "j" if self.kind == "poincare" else "s"

    def keys(self):
        return [("j", a, b) for (a, b) in sorted(self.rotations)] + [("p", mu) for mu in sorted(self.translations)]

    def get(self, key) -> Operator:
        if key[0] == "j":
            return self.j(key[1], key[2])
        return self.p(key[1])


@dataclass(frozen=True)
class NormalizedConjugator:
    """Similarity transform ``T = N / sqrt(n)`` kept without the square root.

    ``N . N_inv = N_inv . N = n * Identity`` with ``n`` central and real.
    """

    name: str
    N: Operator
    N_inv: Operator
    n: FieldElem

    def check(self) -> bool:
        target = Operator.scalar(self.n)
        return op_equal(op_mul(self.N, self.N_inv), target) and op_equal(op_mul(self.N_inv, self.N), target)


# ---------------------------------------------------------------------------
# gamma matrices
# ---------------------------------------------------------------------------

_i = S.I
_half = FieldElem(1) / 2
_quarter = FieldElem(1) / 4


def _dirac_pauli():
    i = _i
    g0 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    g1 = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    g2 = [[0, 0, 0, -i], [0, 0, i, 0], [0, i, 0, 0], [-i, 0, 0, 0]]
    g3 = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]
    return [Operator.matrix(g) for g in (g0, g1, g2, g3)]


@lru_cache(maxsize=None)
def _gammas():
    g0, g1, g2, g3 = _dirac_pauli()
    C = Operator.conjugation()
    g4 = g0 * g1 * g2 * g3
    g13 = g1 * g3
    g5 = g13 * C
    g6 = Operator.scalar(_i) * g13 * C
    return (g0, g1, g2, g3, g4, g5, g6)


def gamma(idx: int) -> Operator:
    """``gamma_0..gamma_3`` Dirac-Pauli, ``gamma_4 = g0 g1 g2 g3``,
    ``gamma_5 = g1 g3 C``, ``gamma_6 = i g1 g3 C``."""
    if not isinstance(idx, int) or not 0 <= idx <= 6:
        raise IndexError(f"gamma index {idx!r} out of range 0..6")
    return _gammas()[idx]


@lru_cache(maxsize=None)
def epsilon_hat() -> Operator:
    eps = Operator.scalar(_i) * gamma(0)
    prod = gamma(1)
    for k in range(2, 7):
        prod = prod * gamma(k)
    if not op_equal(eps, -prod):
        raise AssertionError("i*gamma0 != -gamma1...gamma6")
    return eps


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------


def _s_cd(a: int, b: int) -> Operator:
    # 0..4: quarter-commutators, pair with 5: half gamma
    if b == 5:
        return Operator.scalar(_half) * gamma(a)
    if a == 5:
        return -_s_cd(b, a)
    return Operator.scalar(_quarter) * op_commutator(gamma(a), gamma(b))


@lru_cache(maxsize=None)
def cd_basis() -> GeneratorSet:
    rot = {(a, b): _s_cd(a, b) for a, b in combinations(range(6), 2)}
    return GeneratorSet("indCD", "so15", METRIC_15, rot, extras={"I": Operator.identity()})


@lru_cache(maxsize=None)
def ercd_basis() -> Tuple[Operator, ...]:
    C = Operator.conjugation()
    iop = Operator.scalar(_i)
    cd = [Operator.identity()] + [op for _, op in cd_basis().members()]
    out = []
    for factor in (Operator.identity(), iop, C, iop * C):
        out.extend(factor * e for e in cd)
    return tuple(out)


def ercd_labels() -> Tuple[str, ...]:
    cd = ["I"] + [name for name, _ in cd_basis().members()]
    out = []
    for prefix in ("", "i*", "C*", "i*C*"):
        out.extend(prefix + n for n in cd)
    return tuple(out)


def so6_gen(A: int, B: int) -> Operator:
    if not (1 <= A <= 6 and 1 <= B <= 6):
        raise IndexError(f"SO(6) indices must lie in 1..6, got {A}, {B}")
    if A == B:
        raise IndexError("SO(6) generator needs A != B")
    return Operator.scalar(_quarter) * op_commutator(gamma(A), gamma(B))


@lru_cache(maxsize=None)
def so6_set() -> GeneratorSet:
    rot = {(a, b): so6_gen(a, b) for a, b in combinations(range(1, 7), 2)}
    return GeneratorSet("SO(6)", "so6", METRIC_6, rot, index_base=1)


@lru_cache(maxsize=None)
def a32_basis() -> Tuple[Operator, ...]:
    """15 ``s_AB``, 15 ``eps*s_AB``, ``eps`` and the identity (32 entries)."""
    eps = epsilon_hat()
    s = [op for _, op in so6_set().members()]
    return tuple(s + [eps * x for x in s] + [eps, Operator.identity()])


def a32_labels() -> Tuple[str, ...]:
    s = [name for name, _ in so6_set().members()]
    return tuple(s + [f"eps*{n}" for n in s] + ["eps", "I"])


# ---------------------------------------------------------------------------
# Lorentz spin families
# ---------------------------------------------------------------------------


def _check_pair(mu: int, nu: int):
    if not (0 <= mu <= 3 and 0 <= nu <= 3) or mu == nu:
        raise IndexError(f"need distinct indices in 0..3, got ({mu}, {nu})")


def sI(mu: int, nu: int) -> Operator:
    _check_pair(mu, nu)
    if mu > nu:
        return -sI(nu, mu)
    if mu == 0:
        return Operator.scalar(_i / 2) * gamma(nu) * gamma(4)
    return Operator.scalar(_quarter) * op_commutator(gamma(mu), gamma(nu))


@lru_cache(maxsize=None)
def _sII_table():
    C = Operator.conjugation()
    g0, g2 = gamma(0), gamma(2)
    half = Operator.scalar(_half)
    ihalf = Operator.scalar(_i / 2)
    return {
        (0, 1): ihalf * g2 * C,
        (0, 2): -(half * g2 * C),
        (0, 3): -(half * g0),
        (1, 2): ihalf,
        (3, 1): ihalf * g0 * g2 * C,
        (2, 3): half * g0 * g2 * C,
    }


def sII(mu: int, nu: int) -> Operator:
    _check_pair(mu, nu)
    table = _sII_table()
    if (mu, nu) in table:
        return table[(mu, nu)]
    return -table[(nu, mu)]


def sTS(mu: int, nu: int) -> Operator:
    return sI(mu, nu) + sII(mu, nu)


def sV(mu: int, nu: int) -> Operator:
    _check_pair(mu, nu)
    if mu == 0 or nu == 0:
        return -sI(mu, nu) + sII(mu, nu)
    return sTS(mu, nu)


def lorentz_set(name: str) -> GeneratorSet:
    fn = {"sI": sI, "sII": sII, "sTS": sTS, "sV": sV}[name]
    rot = {(a, b): fn(a, b) for a, b in combinations(range(4), 2)}
    return GeneratorSet(name, "so13", METRIC_13, rot)


# ---------------------------------------------------------------------------
# transforms and equation operators
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def W_conjugator() -> NormalizedConjugator:
    """``sqrt(2) W`` and ``sqrt(2) W^-1`` split into linear and ``C`` parts.

    An entry ``i C`` is read as ``i`` applied after ``C``.
    """
    i = _i
    lin = Operator.matrix([[0, -1, 0, 0], [0, i, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0]])
    anti = Operator.matrix([[0, 0, 0, 1], [0, 0, 0, i], [0, 0, 1, 0], [0, 0, -1, 0]], cflag=1)
    lin_inv = Operator.matrix([[0, 0, -1, -1], [-1, -i, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    anti_inv = Operator.matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, -1], [1, i, 0, 0]], cflag=1)
    return NormalizedConjugator("W", lin + anti, lin_inv + anti_inv, FieldElem(2))


def _momentum(conv: Conventions, k: int) -> FieldElem:
    return S.D[k] if conv.p_form == "D" else -_i * S.D[k]


def gamma_dot_p(conv: Conventions = DEFAULT_CONVENTIONS) -> Operator:
    out = Operator.zero()
    for k in (1, 2, 3):
        out = out + Operator.scalar(_momentum(conv, k)) * gamma(k)
    return out


@lru_cache(maxsize=None)
def V_conjugator(conv: Conventions = DEFAULT_CONVENTIONS) -> NormalizedConjugator:
    N = gamma_dot_p(conv) + Operator.scalar(S.OMEGA + S.M)
    return NormalizedConjugator("V", N, op_parity(N), 2 * S.OMEGA * (S.OMEGA + S.M))


@lru_cache(maxsize=None)
def dirac_hamiltonian(conv: Conventions = DEFAULT_CONVENTIONS) -> Operator:
    return gamma(0) * (gamma_dot_p(conv) + Operator.scalar(S.M))


@lru_cache(maxsize=None)
def fw_operator() -> Operator:
    return Operator.scalar(_i * S.D[0]) - gamma(0) * Operator.scalar(S.OMEGA)


@lru_cache(maxsize=None)
def dirac_operator(conv: Conventions = DEFAULT_CONVENTIONS) -> Operator:
    return Operator.scalar(_i * S.D[0]) - dirac_hamiltonian(conv)


def shat(mu: int, nu: int, conv: Conventions = DEFAULT_CONVENTIONS) -> Operator:
    """Dirac-side ``s^II`` partners in closed form."""
    _check_pair(mu, nu)
    table = _shat_table(conv)
    if (mu, nu) in table:
        return table[(mu, nu)]
    return -table[(nu, mu)]


@lru_cache(maxsize=None)
def _shat_table(conv: Conventions):
    C = Operator.conjugation()
    g2 = gamma(2)
    half = Operator.scalar(_half)
    ihalf = Operator.scalar(_i / 2)
    hd_2w = dirac_hamiltonian(conv) * Operator.scalar((2 * S.OMEGA).inverse())
    return {
        (0, 1): ihalf * g2 * C,
        (0, 2): -(half * g2 * C),
        (0, 3): -hd_2w,
        (1, 2): ihalf,
        (3, 1): Operator.scalar(_i) * hd_2w * g2 * C,
        (2, 3): hd_2w * g2 * C,
    }


# ---------------------------------------------------------------------------
# Poincare generator sets
# ---------------------------------------------------------------------------


def levi_civita3(k: int, l: int, n: int) -> int:
    """``eps_{kln}`` with ``eps_{123} = 1``."""
    if len({k, l, n}) < 3:
        return 0
    perm = [k, l, n]
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


# spin-vector component l -> antisymmetric pair: (s23, s31, s12)
_SPIN_VECTOR = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


def _orbital(l: int, n: int) -> Operator:
    # x_l d_n - x_n d_l with covariant x_l = -X_l
    return -(Operator.X(l) * Operator.scalar(S.D[n])) + Operator.X(n) * Operator.scalar(S.D[l])


_FW_FLAVORS = ("fermi", "ts")


@lru_cache(maxsize=None)
def fw_genset(flavor: str = "ts", conv: Conventions = DEFAULT_CONVENTIONS) -> GeneratorSet:
    """Ten FW-picture generators; ``fermi`` drops every ``s^II`` contribution."""
    if flavor not in _FW_FLAVORS:
        raise ValueError(f"flavor must be one of {_FW_FLAVORS}, not {flavor!r}")
    spin = (lambda a, b: sI(a, b)) if flavor == "fermi" else (lambda a, b: sI(a, b) + sII(a, b))
    w = S.OMEGA
    eps = epsilon_hat()  # i gamma0
    rot: Dict[Tuple[int, int], Operator] = {}
    for l, n in combinations((1, 2, 3), 2):
        rot[(l, n)] = _orbital(l, n) + spin(l, n)
    inv_2w = (2 * w).inverse()
    inv_wm = (w + S.M).inverse()
    for k in (1, 2, 3):
        inner = Operator.scalar(conv.boost_sign) * Operator.X(k) * Operator.scalar(w)
        inner = inner + Operator.scalar(S.D[k] * inv_2w)
        for l in (1, 2, 3):
            for n in (1, 2, 3):
                e = levi_civita3(k, l, n)
                if e:
                    inner = inner + Operator.scalar(e * S.D[n] * inv_wm) * spin(*_SPIN_VECTOR[l])
        rot[(0, k)] = Operator.X(0) * Operator.scalar(S.D[k]) + eps * inner
    trans = {0: -(eps * Operator.scalar(w))}
    for n in (1, 2, 3):
        trans[n] = Operator.scalar(S.D[n])
    return GeneratorSet(f"fw-{flavor}", "poincare", METRIC_13, rot, trans)


@lru_cache(maxsize=None)
def dirac_genset(conv: Conventions = DEFAULT_CONVENTIONS, flavor: str = "ts") -> GeneratorSet:
    """Ten Dirac-picture generators; ``ts`` adds the ``shat`` terms.

    The boost is ``x0 d_k - x_k p0 + s_0k + eps_kln shat_0l d_n / (w + m)``
    with ``p0 = -i H_D``.
    """
    if flavor not in _FW_FLAVORS:
        raise ValueError(f"flavor must be one of {_FW_FLAVORS}, not {flavor!r}")
    hd = dirac_hamiltonian(conv)
    p0 = -(Operator.scalar(_i) * hd)
    with_hat = flavor == "ts"
    rot: Dict[Tuple[int, int], Operator] = {}
    for k, l in combinations((1, 2, 3), 2):
        op = _orbital(k, l) + _dirac_spin(k, l)
        if with_hat:
            op = op + shat(k, l, conv)
        rot[(k, l)] = op
    inv_wm = (S.OMEGA + S.M).inverse()
    for k in (1, 2, 3):
        op = Operator.X(0) * Operator.scalar(S.D[k])
        op = op - Operator.scalar(conv.boost_sign) * Operator.X(k) * p0
        op = op + _dirac_spin(0, k)
        if with_hat:
            for l in (1, 2, 3):
                for n in (1, 2, 3):
                    e = levi_civita3(k, l, n)
                    if e:
                        op = op + shat(0, l, conv) * Operator.scalar(e * S.D[n] * inv_wm)
        rot[(0, k)] = op
    trans = {0: p0}
    for n in (1, 2, 3):
        trans[n] = Operator.scalar(S.D[n])
    name = "dirac" if with_hat else "dirac-fermi"
    return GeneratorSet(name, "poincare", METRIC_13, rot, trans)


def _dirac_spin(mu: int, nu: int) -> Operator:
    """``1/4 [gamma_mu, gamma_nu]`` with lower indices, ``gamma_k = -gamma^k``."""
    s = Operator.scalar(_quarter) * op_commutator(gamma(mu), gamma(nu))
    return -s if (mu == 0) != (nu == 0) else s
