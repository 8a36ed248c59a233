from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ercd import exact_scalar as S
from ercd.catalog import (
    METRIC_13,
    METRIC_15,
    METRIC_6,
    V_conjugator,
    W_conjugator,
    a32_basis,
    cd_basis,
    dirac_genset,
    dirac_operator,
    ercd_basis,
    fw_genset,
    fw_operator,
    gamma,
    lorentz_set,
    so6_set,
)
from ercd.lie_verify import (
    IndexMismatch,
    NotPoincare,
    StructureSpec,
    UnsupportedOperator,
    annihilator_check,
    casimir_p2,
    check_mutual_commute,
    check_structure,
    conjugate,
    convention_audit,
    coordinates_in,
    invariance_check,
    maximal_invariance,
    nullspace,
    pauli_lubanski_w2,
    rank_of,
    realified_minpoly,
    selected_conventions,
    ts_annihilator,
    weak_invariance_oracle,
    weak_remainder,
)
from ercd.op_algebra import Operator, XSymbolsPresent, op_commutator, op_mul
from ercd.opdsl import format_operator

from strategies import operators

C = Operator.conjugation()
L_FW = fw_operator()
SAMPLE = S.Sample.momentum(3, (0, 0, 4))
SO13 = StructureSpec("so-metric", METRIC_13)
POINCARE = StructureSpec("poincare", METRIC_13, -1)


def sc(f):
    return Operator.scalar(f)


# ---------------------------------------------------------------------------
# structure constants
# ---------------------------------------------------------------------------


def test_so6_and_so15_closure():
    so6 = check_structure(so6_set(), StructureSpec("so6-delta", index_base=1))
    so15 = check_structure(cd_basis(), StructureSpec("so-metric", METRIC_15))
    assert len(so6.checks) == len(so15.checks) == 105
    assert so6.passed and so15.passed


def test_so6_metric_form_agrees():
    # delta convention with all gamma_A^2 = -1 is the so-metric form with g = -delta
    assert check_structure(so6_set(), StructureSpec("so-metric", METRIC_6, index_base=1)).passed


def test_wrong_sign_convention_fails():
    flipped = StructureSpec("so-metric", tuple(-g for g in METRIC_13))
    report = check_structure(lorentz_set("sI"), flipped)
    assert not report.passed
    assert report.failures()[0].residual


@pytest.mark.parametrize("name", ["sI", "sII", "sTS", "sV"])
def test_lorentz_families_close(name):
    report = check_structure(lorentz_set(name), SO13)
    assert len(report.checks) == 15 and report.passed


def test_sI_sII_commute():
    report = check_mutual_commute(lorentz_set("sI"), lorentz_set("sII"))
    assert len(report.checks) == 36 and report.passed
    assert not check_mutual_commute(lorentz_set("sI"), lorentz_set("sTS")).passed


def test_index_mismatch():
    with pytest.raises(IndexMismatch):
        check_structure(fw_genset("ts"), SO13)
    with pytest.raises(IndexMismatch):
        check_structure(cd_basis(), SO13)
    with pytest.raises(IndexMismatch):
        check_structure(lorentz_set("sI"), POINCARE)
    with pytest.raises(ValueError):
        StructureSpec("so7")


def test_report_bookkeeping():
    report = check_structure(lorentz_set("sI"), SO13)
    assert report.n_passed == 15
    assert report.elapsed_ms is not None and report.elapsed_ms >= 0
    rec = report.checks[0].as_dict()
    assert rec["status"] == "pass" and set(rec) >= {"name", "lhs", "rhs", "residual"}


# ---------------------------------------------------------------------------
# invariance
# ---------------------------------------------------------------------------


def test_strict_invariance_gamma0():
    v = invariance_check(gamma(0), L_FW, "strict")
    assert v.passed and v.mode == "strict"


def test_weak_invariance_antilinear():
    Q = gamma(1) * C
    assert not invariance_check(Q, L_FW, "strict").passed
    v = invariance_check(Q, L_FW, "weak")
    assert v.passed
    assert v.cofactor == -Q


def test_gamma1_not_invariant():
    v = invariance_check(gamma(1), L_FW, "weak")
    assert not v.passed
    assert format_operator(v.residual) == "(-2*w)*gamma0*gamma1"


def test_unsupported_equation_operators():
    with pytest.raises(UnsupportedOperator):
        invariance_check(gamma(0), L_FW + C, "weak")
    with pytest.raises(UnsupportedOperator):
        invariance_check(gamma(0), L_FW + Operator.X(1), "weak")
    with pytest.raises(UnsupportedOperator):
        invariance_check(gamma(0), sc(S.D[0] * S.D[0]), "weak")
    with pytest.raises(UnsupportedOperator):
        invariance_check(gamma(0), sc(S.D[0]) * gamma(0), "weak")
    with pytest.raises(UnsupportedOperator):
        invariance_check(gamma(0), sc(S.D[1] * S.D[0]), "weak")
    with pytest.raises(ValueError):
        invariance_check(gamma(0), L_FW, "loose")


@st.composite
def d0_operators(draw):
    op = draw(operators(max_terms=2))
    for _ in range(draw(st.integers(0, 2))):
        op = op * sc(S.D[0])
    return op


@settings(max_examples=40, deadline=None, derandomize=True)
@given(d0_operators(), st.sampled_from(["fw", "dirac"]))
def test_division_identity(P, which):
    L = L_FW if which == "fw" else dirac_operator()
    R, rem = weak_remainder(P, L)
    assert op_mul(R, L) + rem == P
    for mat in rem.terms.values():
        assert all(f.d0_degree() == 0 for f in mat.values())


def _constant(Q):
    return all(not f.depends_on_D() for m in Q.terms.values() for f in m.values())


@settings(max_examples=60, deadline=None, derandomize=True)
@given(operators(x_free=True, max_terms=3).filter(_constant))
def test_weak_invariance_matches_oracle(Q):
    assert invariance_check(Q, L_FW).passed == weak_invariance_oracle(Q)


@pytest.mark.parametrize("idx", range(64))
def test_weak_oracle_on_ercd(idx):
    e = ercd_basis()[idx]
    assert invariance_check(e, L_FW).passed == weak_invariance_oracle(e)


# ---------------------------------------------------------------------------
# maximal invariance
# ---------------------------------------------------------------------------


def _sympy_invariant_dimension():
    """Real 8x8 M mapping solutions of J d0 psi = G0 w psi to solutions:
    G0 M = J M J G0."""
    J = sp.Matrix(sp.BlockMatrix([[sp.zeros(4), -sp.eye(4)], [sp.eye(4), sp.zeros(4)]]))
    g0 = sp.diag(1, 1, -1, -1)
    G0 = sp.diag(g0, g0)
    syms = sp.symbols("c0:64")
    M = sp.Matrix(8, 8, syms)
    eqs = list(G0 * M - J * M * J * G0)
    A, _ = sp.linear_eq_to_matrix(eqs, syms)
    return 64 - A.rank()


def test_maximal_invariance_dimension_32():
    res = maximal_invariance(ercd_basis(), L_FW)
    assert res.dimension == 32 == _sympy_invariant_dimension()
    assert sum(res.per_element) == 32
    for op in res.basis:
        assert invariance_check(op, L_FW).passed


def test_maximal_invariance_small_bases():
    assert maximal_invariance([Operator.identity(), sc(S.I)], L_FW).dimension == 2
    assert maximal_invariance([gamma(1)], L_FW).dimension == 0
    res = maximal_invariance([gamma(1), gamma(2), gamma(0)], L_FW)
    assert res.dimension == 1 and res.vectors == [[0, 0, 1]]


def test_maximal_invariance_containment():
    contain = {"g0": gamma(0), "g1": gamma(1), "g1C": gamma(1) * C}
    res = maximal_invariance(ercd_basis(), L_FW, contain)
    assert res.containment == {"g0": True, "g1": False, "g1C": True}
    assert not res.contains_all


def test_maximal_invariance_rejects_x():
    with pytest.raises(XSymbolsPresent):
        maximal_invariance([Operator.X(1)], L_FW)


def test_linear_algebra_helpers():
    F = Fraction
    assert rank_of([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank_of([]) == 0
    assert nullspace([[F(1), F(2)]], 2) == [[F(-2), F(1)]]
    assert len(nullspace([], 3)) == 3
    coords = coordinates_in(a32_basis(), gamma(0) * 3, SAMPLE)
    assert coords is not None
    assert coordinates_in([gamma(0)], gamma(1), SAMPLE) is None


# ---------------------------------------------------------------------------
# similarity transforms
# ---------------------------------------------------------------------------


def test_conjugate_examples():
    V = V_conjugator()
    assert conjugate(Operator.identity(), V) == Operator.identity()
    assert conjugate(sc(S.OMEGA), V, "inverse") == sc(S.OMEGA)
    W = W_conjugator()
    assert conjugate(conjugate(gamma(3), W, "forward"), W, "inverse") == gamma(3)
    with pytest.raises(XSymbolsPresent):
        conjugate(Operator.X(0), V)
    with pytest.raises(ValueError):
        conjugate(gamma(0), V, "sideways")


@settings(max_examples=25, deadline=None, derandomize=True)
@given(operators(x_free=True), operators(x_free=True), st.sampled_from(["V", "W"]))
def test_conjugation_preserves_commutators(A, B, which):
    T = V_conjugator() if which == "V" else W_conjugator()
    lhs = conjugate(op_commutator(A, B), T)
    rhs = op_commutator(conjugate(A, T), conjugate(B, T))
    assert lhs == rhs


# ---------------------------------------------------------------------------
# Casimir operators
# ---------------------------------------------------------------------------

MINUS_M2 = sc(-S.M * S.M)


@pytest.mark.parametrize("gens", [fw_genset("fermi"), fw_genset("ts"), dirac_genset(), dirac_genset(flavor="fermi")])
def test_p_squared(gens):
    assert casimir_p2(gens) == MINUS_M2


def test_fermi_w2():
    expect = sc(S.FieldElem(-3) / 4 * S.M * S.M)
    assert pauli_lubanski_w2(fw_genset("fermi")) == expect
    assert pauli_lubanski_w2(fw_genset("fermi"), -1) == expect
    assert pauli_lubanski_w2(dirac_genset(flavor="fermi")) == expect


def test_ts_w2_annihilator():
    w2 = pauli_lubanski_w2(fw_genset("ts"))
    assert ts_annihilator(w2) == (True, True, True)
    assert not annihilator_check(w2, [0, 1])
    assert realified_minpoly(w2, SAMPLE).coeffs() == [0, 18, 1]
    dirac_w2 = pauli_lubanski_w2(dirac_genset())
    assert ts_annihilator(dirac_w2) == (True, True, True)
    assert conjugate(w2, V_conjugator(), "inverse") == dirac_w2


def test_not_poincare():
    with pytest.raises(NotPoincare):
        casimir_p2(lorentz_set("sI"))
    with pytest.raises(NotPoincare):
        pauli_lubanski_w2(so6_set())


# ---------------------------------------------------------------------------
# convention audit
# ---------------------------------------------------------------------------


def _count_passing(report):
    return sum(1 for n in report.notes if n.endswith(": pass"))


def test_audit_empty_criteria():
    report = convention_audit(())
    assert report.passed and _count_passing(report) == 16


def test_audit_restricted():
    report = convention_audit(("v-identity", "shat"))
    assert _count_passing(report) == 8
    assert all("p_form=-iD" in n for n in report.notes if n.endswith(": pass"))


def test_audit_full():
    report = convention_audit()
    assert report.passed and len(report.checks) == 1
    assert _count_passing(report) == 2
    conv = selected_conventions(report)
    assert (conv.p_form, conv.boost_sign, conv.eps_translation, conv.levi_civita) == ("-iD", -1, -1, 1)
    assert report.notes[-1] == f"selected {conv.label()} (2 of 16 pass)"


def test_audit_unknown_criterion():
    with pytest.raises(ValueError):
        convention_audit(("gauge",))
