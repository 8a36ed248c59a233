"""Structure-constant checks, invariance analysis, the maximal-invariance
solver, similarity transforms and the Casimir operators.

Every comparison is exact; a check passes only when the residual operator
is identically zero.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import flint

from . import exact_scalar as S
from .catalog import (
    METRIC_13,
    Conventions,
    GeneratorSet,
    NormalizedConjugator,
    V_conjugator,
    dirac_genset,
    dirac_hamiltonian,
    dirac_operator,
    fw_genset,
    fw_operator,
    gamma,
    sII,
    shat,
)
from .op_algebra import (
    Operator,
    XSymbolsPresent,
    op_anticommutator,
    op_commutator,
    op_equal,
    op_mul,
    op_realify,
)
from .exact_scalar import FieldElem, Sample, as_field

__all__ = [
    "StructureSpec",
    "InvarianceVerdict",
    "CheckRecord",
    "CheckReport",
    "UnsupportedOperator",
    "IndexMismatch",
    "NotPoincare",
    "check_structure",
    "check_mutual_commute",
    "invariance_check",
    "weak_invariance_oracle",
    "maximal_invariance",
    "conjugate",
    "casimir_p2",
    "pauli_lubanski_w2",
    "annihilator_check",
    "rank_of",
    "nullspace",
    "weak_remainder",
    "MaximalInvariance",
    "combine",
    "coordinates_in",
    "pauli_lubanski",
    "annihilator_value",
    "realified_minpoly",
    "convention_audit",
    "selected_conventions",
    "audit_space",
    "poincare_set",
    "equation_operator",
    "poincare_spec",
    "ts_annihilator",
    "AUDIT_CRITERIA",
]


class UnsupportedOperator(ValueError):
    pass


class IndexMismatch(ValueError):
    pass


class NotPoincare(ValueError):
    pass


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    passed: bool
    lhs: str = ""
    rhs: str = ""
    residual: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
        }


@dataclass
class CheckReport:
    suite: str
    conventions: dict = field(default_factory=dict)
    checks: List[CheckRecord] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_passed(self) -> int:
        return sum(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, lhs="", rhs="", residual="") -> CheckRecord:
        rec = CheckRecord(name, bool(passed), _text(lhs), _text(rhs), _text(residual) if not passed else "")
        self.checks.append(rec)
        return rec

    def add_equal(self, name: str, lhs: Operator, rhs: Operator) -> CheckRecord:
        diff = lhs - rhs
        return self.add(name, diff.is_zero(), lhs, rhs, diff)

    def extend(self, other: "CheckReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(CheckRecord(prefix + c.name, c.passed, c.lhs, c.rhs, c.residual))
        self.notes.extend(other.notes)

    def failures(self) -> List[CheckRecord]:
        return [c for c in self.checks if not c.passed]


def _text(x) -> str:
    if isinstance(x, str):
        return x
    if hasattr(x, "text"):
        return x.text()
    return str(x)


class _Timer:
    def __init__(self, report: CheckReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = (time.perf_counter() - self.t0) * 1000.0
        return False


# ---------------------------------------------------------------------------
# structure constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureSpec:
    """Expected right-hand side of every bracket of a generator set.

    ``so6-delta``: ``[s_AB, s_CD] = d_AC s_BD + d_CB s_DA + d_BD s_AC + d_DA s_CB``.
    ``so-metric``: ``[s_mn, s_rs] = -g_mr s_ns - g_rn s_sm - g_ns s_mr - g_sm s_rn``.
    ``poincare``: the ``so-metric`` pattern for ``j``, ``[p, p] = 0`` and
    ``[j_mn, p_r] = eps (g_mr p_n - g_nr p_m)``.
    """

    kind: str
    metric: Tuple[int, ...] = ()
    epsilon_translation: int = -1
    index_base: int = 0

    def __post_init__(self):
        if self.kind not in ("so6-delta", "so-metric", "poincare"):
            raise ValueError(f"unknown structure kind {self.kind!r}")

    def g(self, a: int, b: int) -> int:
        if a != b:
            return 0
        if self.kind == "so6-delta":
            return 1
        return self.metric[a - self.index_base]

    def expected(self, gens: GeneratorSet, k1, k2) -> Operator:
        if k1[0] == "p" and k2[0] == "p":
            return Operator.zero()
        if k1[0] == "p":
            return -self.expected(gens, k2, k1)
        if k2[0] == "p":
            if self.kind != "poincare":
                raise IndexMismatch("translation generators need a poincare spec")
            (_, m, n), (_, r) = k1, k2
            eps = self.epsilon_translation
            out = Operator.zero()
            if self.g(m, r):
                out = out + gens.p(n) * (eps * self.g(m, r))
            if self.g(n, r):
                out = out - gens.p(m) * (eps * self.g(n, r))
            return out
        (_, a, b), (_, c, d) = k1, k2
        j = gens.j
        g = self.g
        if self.kind == "so6-delta":
            terms = ((g(a, c), (b, d)), (g(c, b), (d, a)), (g(b, d), (a, c)), (g(d, a), (c, b)))
        else:
            terms = ((-g(a, c), (b, d)), (-g(c, b), (d, a)), (-g(b, d), (a, c)), (-g(d, a), (c, b)))
        out = Operator.zero()
        for coeff, pair in terms:
            if coeff:
                out = out + j(*pair) * coeff
        return out


def _key_name(gens: GeneratorSet, key) -> str:
    if key[0] == "p":
        return f"p{key[1]}"
    return f"{gens.member_prefix()}{key[1]}{key[2]}"


def check_structure(
    gens: GeneratorSet,
    spec: StructureSpec,
    bracket: Callable[[Operator, Operator], Operator] = op_commutator,
    suite: str = "",
) -> CheckReport:
    """Every unordered pair of distinct members against ``spec``."""
    if spec.kind != "poincare" and gens.translations:
        raise IndexMismatch("translation members need a poincare spec")
    if spec.kind == "poincare" and len(gens.translations) != 4:
        raise IndexMismatch("poincare spec needs four translations")
    indices = {i for pair in gens.rotations for i in pair}
    lo = spec.index_base
    if spec.kind != "so6-delta" and any(not 0 <= i - lo < len(spec.metric) for i in indices):
        raise IndexMismatch("generator indices exceed the metric")
    report = CheckReport(suite or f"structure:{gens.name}")
    with _Timer(report):
        for k1, k2 in combinations(gens.keys(), 2):
            lhs = bracket(gens.get(k1), gens.get(k2))
            rhs = spec.expected(gens, k1, k2)
            report.add_equal(f"[{_key_name(gens, k1)}, {_key_name(gens, k2)}]", lhs, rhs)
    return report


def check_mutual_commute(A: GeneratorSet, B: GeneratorSet, suite: str = "") -> CheckReport:
    report = CheckReport(suite or f"commute:{A.name}|{B.name}")
    with _Timer(report):
        for ka in A.keys():
            for kb in B.keys():
                lhs = op_commutator(A.get(ka), B.get(kb))
                report.add(
                    f"[{A.name}.{_key_name(A, ka)}, {B.name}.{_key_name(B, kb)}] = 0",
                    lhs.is_zero(),
                    lhs,
                    "0",
                    lhs,
                )
    return report


# ---------------------------------------------------------------------------
# invariance
# ---------------------------------------------------------------------------


@dataclass
class InvarianceVerdict:
    mode: str
    cofactor: Operator
    residual: Operator

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


def _split_equation(L: Operator) -> Tuple[FieldElem, Operator]:
    """``L = a D0 + L1``; returns ``(a, L1)`` or raises UnsupportedOperator."""
    if not L.is_x_free() or L.has_conjugation():
        raise UnsupportedOperator("equation operator must be linear and X-free")
    mat = L.linear_part()
    lead: Dict = {}
    rest: Dict = {}
    for rc, f in mat.items():
        try:
            deg = f.d0_degree()
        except ValueError as exc:
            raise UnsupportedOperator(str(exc)) from None
        if deg > 1:
            raise UnsupportedOperator("equation operator must be first order in D0")
        c1 = f.d0_coefficient(1)
        if not c1.is_zero():
            lead[rc] = c1
        rest[rc] = f.d0_coefficient(0)
    a = lead.get((0, 0))
    if a is None or set(lead) != {(r, r) for r in range(4)} or any(lead[(r, r)] != a for r in range(4)):
        raise UnsupportedOperator("D0 coefficient must be a nonzero multiple of the identity")
    if a.depends_on_D():
        raise UnsupportedOperator("D0 coefficient must not depend on D")
    return a, Operator.matrix(rest)


def weak_remainder(P: Operator, L: Operator) -> Tuple[Operator, Operator]:
    """Divide ``P = R L + rem`` with ``rem`` free of ``D0``; returns ``(R, rem)``."""
    a, _ = _split_equation(L)
    a_conj = a.conj()
    cofactor = Operator.zero()
    while True:
        top = 0
        for (_, _), mat in P.terms.items():
            for f in mat.values():
                top = max(top, f.d0_degree())
        if top == 0:
            return cofactor, P
        piece_terms: Dict = {}
        d0_pow = S.D[0] ** (top - 1)
        for (xpow, cflag), mat in P.terms.items():
            lead = (a_conj if cflag else a).inverse()
            for rc, f in mat.items():
                if f.d0_degree() == top:
                    coeff = f.d0_coefficient(top) * d0_pow * lead
                    piece_terms.setdefault((xpow, cflag), {})[rc] = coeff
        piece = Operator(piece_terms)
        cofactor = cofactor + piece
        P = P - op_mul(piece, L)


def invariance_check(Q: Operator, L: Operator, mode: str = "weak") -> InvarianceVerdict:
    """Strict: ``[Q, L] = 0``.  Weak: ``L Q = R L`` for some cofactor ``R``."""
    if mode == "strict":
        return InvarianceVerdict("strict", Operator.zero(), op_commutator(Q, L))
    if mode != "weak":
        raise ValueError(f"mode must be 'strict' or 'weak', not {mode!r}")
    cofactor, rem = weak_remainder(op_mul(L, Q), L)
    return InvarianceVerdict("weak", cofactor, rem)


def weak_invariance_oracle(Q: Operator) -> bool:
    """Closed form for X-free ``Q = A + B C`` against ``i D0 - gamma0 w``:
    ``[A, gamma0] = 0`` and ``{B, gamma0} = 0``."""
    if not Q.is_x_free():
        raise XSymbolsPresent("oracle applies to X-free operators")
    g0 = gamma(0)
    A = Operator.matrix(Q.linear_part()) if Q.linear_part() else Operator.zero()
    B = Operator.matrix(Q.antilinear_part()) if Q.antilinear_part() else Operator.zero()
    return op_commutator(A, g0).is_zero() and op_anticommutator(B, g0).is_zero()


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------


def _to_fmpq(rows: Sequence[Sequence[Fraction]], ncols: int):
    flat = []
    for row in rows:
        flat.extend(flint.fmpq(x.numerator, x.denominator) for x in row)
    return flint.fmpq_mat(len(rows), ncols, flat)


def rank_of(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return _to_fmpq(rows, len(rows[0])).rank()


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{c : rows . c = 0}`` from the reduced row echelon form."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, rank = _to_fmpq(rows, ncols).rref()
    pivots = []
    r = 0
    for c in range(ncols):
        if r < rank and R[r, c] != 0:
            pivots.append(c)
            r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            v = R[prow, fcol]
            vec[pcol] = -Fraction(int(v.p), int(v.q))
        basis.append(vec)
    return basis


def _flatten(mat8) -> List[Fraction]:
    return [x for row in mat8 for x in row]


def _coordinate_rows(ops: Sequence[Operator]) -> Tuple[List[List[Fraction]], int]:
    """Real-linear equations ``sum c_e ops[e] = 0`` as rows over Q."""
    positions: Dict = {}
    for e, op in enumerate(ops):
        for (key, mat) in op.terms.items():
            for rc, f in mat.items():
                positions.setdefault((key, rc), []).append((e, f))
    rows = []
    for pos in sorted(positions):
        entries = positions[pos]
        den = entries[0][1].den
        for _, f in entries[1:]:
            den = S.lcm_poly(den, f.den)
        coords: Dict = {}
        for e, f in entries:
            for mono, c in S.real_coordinates(f, den).items():
                coords.setdefault(mono, {})[e] = c
        for mono in sorted(coords):
            row = [Fraction(0)] * len(ops)
            for e, c in coords[mono].items():
                row[e] = c
            rows.append(row)
    return rows, len(ops)


@dataclass
class MaximalInvariance:
    dimension: int
    basis: List[Operator]
    vectors: List[List[Fraction]]
    per_element: List[bool]
    containment: Dict[str, bool]

    @property
    def contains_all(self) -> bool:
        return all(self.containment.values())


def combine(coeffs: Sequence[Fraction], ops: Sequence[Operator]) -> Operator:
    out = Operator.zero()
    for c, op in zip(coeffs, ops):
        if c:
            out = out + op * as_field(c)
    return out


def coordinates_in(ops: Sequence[Operator], target: Operator, sample: Sample) -> Optional[List[Fraction]]:
    """Real coefficients of ``target`` in the span of ``ops`` via realification, or None."""
    cols = [_flatten(op_realify(op, sample)) for op in ops]
    tvec = _flatten(op_realify(target, sample))
    n = len(ops)
    # augmented system  [cols | t]
    rows = [[cols[j][i] for j in range(n)] + [tvec[i]] for i in range(len(tvec))]
    R, rank = _to_fmpq(rows, n + 1).rref()
    pivots = []
    r = 0
    for c in range(n + 1):
        if r < rank and R[r, c] != 0:
            pivots.append(c)
            r += 1
    if n in pivots:
        return None
    sol = [Fraction(0)] * n
    for prow, pcol in enumerate(pivots):
        v = R[prow, n]
        sol[pcol] = Fraction(int(v.p), int(v.q))
    if not op_equal(combine(sol, ops), target):
        return None
    return sol


def maximal_invariance(
    basis: Sequence[Operator],
    L: Operator,
    contain: Optional[Dict[str, Operator]] = None,
    sample: Optional[Sample] = None,
) -> MaximalInvariance:
    """Solve ``sum c_e e`` weakly invariant under ``L`` over real rationals."""
    for e in basis:
        if not e.is_x_free():
            raise XSymbolsPresent("basis members must be X-free")
    residuals = [invariance_check(e, L, "weak").residual for e in basis]
    rows, n = _coordinate_rows(residuals)
    null = nullspace(rows, n)
    sol_ops = [combine(v, basis) for v in null]
    containment: Dict[str, bool] = {}
    if contain:
        sample = sample or Sample.momentum(3, (0, 0, 4))
        for name, op in contain.items():
            coords = coordinates_in(basis, op, sample)
            if coords is None:
                containment[name] = False
                continue
            containment[name] = all(
                sum((row[j] * coords[j] for j in range(n)), Fraction(0)) == 0 for row in rows
            )
    return MaximalInvariance(len(null), sol_ops, null, [r.is_zero() for r in residuals], containment)


# ---------------------------------------------------------------------------
# similarity transforms
# ---------------------------------------------------------------------------


def conjugate(Q: Operator, by: NormalizedConjugator, direction: str = "forward") -> Operator:
    """``N Q N' / n`` (forward) or ``N' Q N / n`` (inverse)."""
    if not Q.is_x_free():
        raise XSymbolsPresent("conjugation needs an X-free operand")
    if direction == "forward":
        left, right = by.N, by.N_inv
    elif direction == "inverse":
        left, right = by.N_inv, by.N
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")
    return op_mul(op_mul(left, Q), right) * by.n.inverse()


# ---------------------------------------------------------------------------
# Casimir operators
# ---------------------------------------------------------------------------


def _require_poincare(gens: GeneratorSet):
    if gens.kind != "poincare" or len(gens.translations) != 4 or len(gens.rotations) != 6:
        raise NotPoincare(f"{gens.name} is not a 10-generator Poincare set")


def casimir_p2(gens: GeneratorSet) -> Operator:
    """``g^{mu nu} p_mu p_nu = p0^2 - sum p_k^2``."""
    _require_poincare(gens)
    out = op_mul(gens.p(0), gens.p(0))
    for k in (1, 2, 3):
        out = out - op_mul(gens.p(k), gens.p(k))
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def pauli_lubanski(gens: GeneratorSet, levi_civita: int = 1) -> List[Operator]:
    """Contravariant components ``w^mu = 1/2 eps^{mu nu rho sigma} j_{nu rho} p_sigma``."""
    _require_poincare(gens)
    w = []
    for mu in range(4):
        acc = Operator.zero()
        rest = [k for k in range(4) if k != mu]
        for nu, rho, sigma in permutations(rest):
            if nu > rho:
                continue  # the nu<->rho partner doubles the term and cancels the 1/2
            sign = levi_civita * _perm_sign((mu, nu, rho, sigma))
            acc = acc + op_mul(gens.j(nu, rho), gens.p(sigma)) * sign
        w.append(acc)
    return w


def pauli_lubanski_w2(gens: GeneratorSet, levi_civita: int = 1) -> Operator:
    """``w_mu w^mu`` with indices lowered by ``diag(+1, -1, -1, -1)``."""
    w = pauli_lubanski(gens, levi_civita)
    out = Operator.zero()
    for mu in range(4):
        term = op_mul(w[mu], w[mu])
        out = out + term * gens.g(mu, mu)
    return out


def annihilator_check(A: Operator, coeffs: Sequence) -> bool:
    """``sum_k coeffs[k] A^k == 0`` exactly."""
    return annihilator_value(A, coeffs).is_zero()


def annihilator_value(A: Operator, coeffs: Sequence) -> Operator:
    out = Operator.zero()
    power = Operator.identity()
    for k, c in enumerate(coeffs):
        if k:
            power = op_mul(power, A)
        c = as_field(c)
        if not c.is_zero():
            out = out + op_mul(Operator.scalar(c), power)
    return out


def realified_minpoly(A: Operator, sample: Sample):
    """Minimal polynomial (flint ``fmpq_poly``) of the realified 8x8 matrix."""
    mat = op_realify(A, sample)
    return _to_fmpq(mat, 8).minpoly()


# ---------------------------------------------------------------------------
# convention audit
# ---------------------------------------------------------------------------

AUDIT_CRITERIA = ("v-identity", "shat", "closure", "invariance", "casimir")
POINCARE_SETS = ("fw-fermi", "fw-ts", "dirac")


def audit_space() -> List[Conventions]:
    """All 16 toggle assignments, the covariant defaults first."""
    return [
        Conventions(p, b, e, lc)
        for p in ("-iD", "D")
        for b in (-1, 1)
        for e in (-1, 1)
        for lc in (1, -1)
    ]


def poincare_set(name: str, conv) -> GeneratorSet:
    base = Conventions(conv.p_form, conv.boost_sign)
    if name == "fw-fermi":
        return fw_genset("fermi", base)
    if name == "fw-ts":
        return fw_genset("ts", base)
    if name == "dirac":
        return dirac_genset(base, "ts")
    if name == "dirac-fermi":
        return dirac_genset(base, "fermi")
    raise ValueError(f"unknown generator set {name!r}")


def equation_operator(name: str, conv) -> Operator:
    if name.startswith("fw"):
        return fw_operator()
    return dirac_operator(Conventions(conv.p_form))


def poincare_spec(conv) -> StructureSpec:
    return StructureSpec("poincare", METRIC_13, conv.eps_translation)


class _AuditCache:
    def __init__(self):
        self.brackets: Dict = {}
        self.memo: Dict = {}

    def once(self, key, fn):
        if key not in self.memo:
            self.memo[key] = fn()
        return self.memo[key]

    def bracket_table(self, name: str, conv):
        key = (name, conv.p_form, conv.boost_sign)
        if key not in self.brackets:
            gens = poincare_set(name, conv)
            self.brackets[key] = {
                (k1, k2): op_commutator(gens.get(k1), gens.get(k2))
                for k1, k2 in combinations(gens.keys(), 2)
            }
        return self.brackets[key]


def _v_identity(conv) -> bool:
    base = Conventions(conv.p_form)
    V = V_conjugator(base)
    q = op_mul(gamma(0), Operator.scalar(S.OMEGA))
    return V.check() and op_equal(conjugate(q, V, "inverse"), dirac_hamiltonian(base))


def _shat_identities(conv) -> bool:
    base = Conventions(conv.p_form)
    V = V_conjugator(base)
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))
    return all(op_equal(conjugate(sII(a, b), V, "inverse"), shat(a, b, base)) for a, b in pairs)


def _closure(cache: _AuditCache, conv) -> bool:
    spec = poincare_spec(conv)
    for name in POINCARE_SETS:
        gens = poincare_set(name, conv)
        table = cache.bracket_table(name, conv)
        if not all(op_equal(v, spec.expected(gens, *k)) for k, v in table.items()):
            return False
    return True


def _invariance(conv) -> bool:
    for name in POINCARE_SETS:
        gens = poincare_set(name, conv)
        L = equation_operator(name, conv)
        if not all(invariance_check(gens.get(k), L, "weak").passed for k in gens.keys()):
            return False
    return True


def ts_annihilator(w2: Operator) -> Tuple[bool, bool, bool]:
    """``(w2 (w2 + 2 m^2) == 0, w2 != 0, w2 + 2 m^2 != 0)``."""
    two_m2 = 2 * S.M * S.M
    shifted = w2 + Operator.scalar(two_m2)
    return (
        annihilator_check(w2, [0, two_m2, 1]),
        not w2.is_zero(),
        not shifted.is_zero(),
    )


def _casimirs(conv) -> bool:
    minus_m2 = Operator.scalar(-S.M * S.M)
    for name in POINCARE_SETS:
        if not op_equal(casimir_p2(poincare_set(name, conv)), minus_m2):
            return False
    fermi = pauli_lubanski_w2(poincare_set("fw-fermi", conv), conv.levi_civita)
    if not op_equal(fermi, Operator.scalar(FieldElem(-3) / 4 * S.M * S.M)):
        return False
    for name in ("fw-ts", "dirac"):
        if not all(ts_annihilator(pauli_lubanski_w2(poincare_set(name, conv), conv.levi_civita))):
            return False
    return True


def convention_audit(criteria: Sequence[str] = AUDIT_CRITERIA) -> CheckReport:
    """Try every toggle assignment against ``criteria``.

    Per-assignment outcomes go to ``notes``; the single check asks whether
    any assignment passes.  ``report.conventions`` holds the first passing
    assignment (empty when none passes).
    """
    unknown = set(criteria) - set(AUDIT_CRITERIA)
    if unknown:
        raise ValueError(f"unknown audit criteria {sorted(unknown)}")
    cache = _AuditCache()
    report = CheckReport("audit")
    with _Timer(report):
        selected = None
        passing: List[str] = []
        for conv in audit_space():
            failed = []
            for crit in AUDIT_CRITERIA:
                if crit not in criteria:
                    continue
                if crit == "v-identity":
                    ok = cache.once((crit, conv.p_form), lambda: _v_identity(conv))
                elif crit == "shat":
                    ok = cache.once((crit, conv.p_form), lambda: _shat_identities(conv))
                elif crit == "closure":
                    ok = cache.once((crit, conv.p_form, conv.boost_sign, conv.eps_translation),
                                    lambda: _closure(cache, conv))
                elif crit == "invariance":
                    ok = cache.once((crit, conv.p_form, conv.boost_sign), lambda: _invariance(conv))
                else:
                    ok = cache.once((crit, conv.p_form, conv.boost_sign, conv.levi_civita),
                                    lambda: _casimirs(conv))
                if not ok:
                    failed.append(crit)
            report.notes.append(f"{conv.label()}: " + ("pass" if not failed else "fails " + ", ".join(failed)))
            if not failed:
                passing.append(conv.label())
                selected = selected or conv
        report.add(
            "some assignment passes",
            selected is not None,
            selected.label() if selected else "none",
            "",
            "no assignment passes",
        )
        if selected is not None:
            report.conventions = selected.as_dict()
            report.notes.append(f"selected {selected.label()} ({len(passing)} of 16 pass)")
    return report


def selected_conventions(report: CheckReport):
    """The assignment recorded by :func:`convention_audit`, or None."""
    if not report.conventions:
        return None
    return Conventions(**report.conventions)
