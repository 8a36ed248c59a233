"""Named verification suites used by the command line and the acceptance tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Optional

from . import exact_scalar as S
from .catalog import (
    METRIC_13,
    METRIC_15,
    Conventions,
    V_conjugator,
    W_conjugator,
    a32_basis,
    a32_labels,
    cd_basis,
    dirac_hamiltonian,
    epsilon_hat,
    ercd_basis,
    ercd_labels,
    fw_operator,
    gamma,
    lorentz_set,
    sII,
    shat,
    so6_set,
)
from .op_algebra import Operator, op_commutator, op_mul, op_realify
from .exact_scalar import FieldElem, Sample
from .lie_verify import (
    CheckReport,
    StructureSpec,
    _Timer,
    _flatten,
    casimir_p2,
    check_mutual_commute,
    check_structure,
    conjugate,
    convention_audit,
    equation_operator,
    invariance_check,
    maximal_invariance,
    pauli_lubanski_w2,
    poincare_set,
    poincare_spec,
    rank_of,
    realified_minpoly,
    selected_conventions,
    ts_annihilator,
    weak_invariance_oracle,
)

__all__ = ["SUITES", "run_suite", "UnknownSuite", "AuditFailure", "DEFAULT_SAMPLE"]

DEFAULT_SAMPLE = Sample.momentum(3, (0, 0, 4))
SO13 = StructureSpec("so-metric", METRIC_13)
SO15 = StructureSpec("so-metric", METRIC_15)
SO6 = StructureSpec("so6-delta", index_base=1)


class UnknownSuite(KeyError):
    pass


class AuditFailure(RuntimeError):
    def __init__(self, report: CheckReport):
        super().__init__("no convention assignment passes the audit")
        self.report = report


def _suite_so15(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("so15")
    report.extend(check_structure(cd_basis(), SO15))
    return report


def _suite_so6(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("so6")
    gens = so6_set()
    report.extend(check_structure(gens, SO6))
    eps = epsilon_hat()
    for (a, b) in sorted(gens.rotations):
        lhs = op_commutator(gens.j(a, b), eps)
        report.add(f"[s{a}{b}, eps] = 0", lhs.is_zero(), lhs, "0", lhs)
    return report


def _suite_ercd_rank(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("ercd-rank")
    basis = ercd_basis()
    rows = [_flatten(op_realify(e, sample)) for e in basis]
    rank = rank_of(rows)
    report.add("64 elements", len(basis) == 64, str(len(basis)), "64")
    report.add("realified rank", rank == 64, str(rank), "64")
    return report


def _suite_a32(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("a32")
    L = fw_operator()
    basis = list(ercd_basis())
    labels = ercd_labels()
    listed = dict(zip(a32_labels(), a32_basis()))
    mi = maximal_invariance(basis, L, contain=listed, sample=sample)
    report.add("dimension", mi.dimension == 32, str(mi.dimension), "32")
    for name, ok in mi.containment.items():
        report.add(f"contains {name}", ok, name, "span")
    for label, e, solver in zip(labels, basis, mi.per_element):
        oracle = weak_invariance_oracle(e)
        report.add(f"oracle agrees on {label}", solver == oracle, str(solver), str(oracle))
    eps = epsilon_hat()
    central = all(op_commutator(q, eps).is_zero() for q in mi.basis)
    report.add("eps central in solved algebra", central)
    closed = all(
        invariance_check(op_commutator(a, b), L, "weak").passed for a, b in combinations(mi.basis, 2)
    )
    report.add("solved algebra closed under commutators", closed)
    report.notes.append(f"maximal invariance dimension {mi.dimension}")
    return report


def _suite_lorentz(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("lorentz")
    for name in ("sI", "sII", "sTS", "sV"):
        report.extend(check_structure(lorentz_set(name), SO13), prefix=f"{name} ")
    report.extend(check_mutual_commute(lorentz_set("sI"), lorentz_set("sII")))
    sv_ok = all(c.passed for c in report.checks if c.name.startswith("sV "))
    report.notes.append("sV with rotation part equal to sTS " + ("closes" if sv_ok else "does not close"))
    return report


def _poincare_checks(report: CheckReport, name: str, conv: Conventions):
    gens = poincare_set(name, conv)
    report.extend(check_structure(gens, poincare_spec(conv)), prefix=f"{name} ")
    L = equation_operator(name, conv)
    strict = 0
    for key in gens.keys():
        label = f"j{key[1]}{key[2]}" if key[0] == "j" else f"p{key[1]}"
        op = gens.get(key)
        verdict = invariance_check(op, L, "weak")
        report.add(f"{name} {label} weakly invariant", verdict.passed, residual=verdict.residual)
        report.add(f"{name} {label} anti-self-adjoint", (op.adjoint() + op).is_zero(), residual=op.adjoint() + op)
        strict += invariance_check(op, L, "strict").passed
    report.notes.append(f"{name}: {strict}/10 generators commute strictly")


def _suite_poincare_fw(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("poincare-fw")
    for name in ("fw-fermi", "fw-ts"):
        _poincare_checks(report, name, conv)
    return report


def _suite_poincare_dirac(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("poincare-dirac")
    _poincare_checks(report, "dirac", conv)
    return report


def _suite_fw_dirac_map(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("fw-dirac-map")
    base = Conventions(conv.p_form)
    V = V_conjugator(base)
    n = Operator.scalar(V.n)
    report.add_equal("N N_inv = 2w(w+m)", op_mul(V.N, V.N_inv), n)
    report.add_equal("N_inv N = 2w(w+m)", op_mul(V.N_inv, V.N), n)
    q = op_mul(gamma(0), Operator.scalar(S.OMEGA))
    report.add_equal("V^-1 (gamma0 w) V = HD", conjugate(q, V, "inverse"), dirac_hamiltonian(base))
    report.add_equal(
        "V^-1 Lfw V = Ldirac", conjugate(fw_operator(), V, "inverse"), equation_operator("dirac", base)
    )
    for a, b in ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3)):
        report.add_equal(f"V^-1 sII{a}{b} V = shat{a}{b}", conjugate(sII(a, b), V, "inverse"), shat(a, b, base))
    return report


def _suite_bose_transform(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("bose-transform")
    W = W_conjugator()
    two = Operator.scalar(W.n)
    report.add_equal("N N_inv = 2", op_mul(W.N, W.N_inv), two)
    report.add_equal("N_inv N = 2", op_mul(W.N_inv, W.N), two)
    ts = lorentz_set("sTS")
    bose = type(ts)(
        "bose",
        ts.kind,
        ts.metric,
        {k: conjugate(v, W, "forward") for k, v in ts.rotations.items()},
    )
    report.extend(check_structure(bose, SO13), prefix="bose ")
    return report


def _suite_casimir(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("casimir")
    m2 = S.M * S.M
    for name in ("fw-fermi", "fw-ts", "dirac"):
        report.add_equal(f"{name} P^2 = -m^2", casimir_p2(poincare_set(name, conv)), Operator.scalar(-m2))
    fermi = pauli_lubanski_w2(poincare_set("fw-fermi", conv), conv.levi_civita)
    report.add_equal("fw-fermi w^2 = -(3/4) m^2", fermi, Operator.scalar(FieldElem(-3) / 4 * m2))
    w2 = {}
    for name in ("fw-ts", "dirac"):
        w2[name] = pauli_lubanski_w2(poincare_set(name, conv), conv.levi_civita)
        ann, nz1, nz2 = ts_annihilator(w2[name])
        report.add(f"{name} w^2 (w^2 + 2m^2) = 0", ann)
        report.add(f"{name} w^2 != 0", nz1)
        report.add(f"{name} w^2 + 2m^2 != 0", nz2)
    V = V_conjugator(Conventions(conv.p_form))
    report.add_equal("V^-1 w^2(fw-ts) V = w^2(dirac)", conjugate(w2["fw-ts"], V, "inverse"), w2["dirac"])
    # independent route: minimal polynomial of the realified matrix at the sample
    mp = realified_minpoly(w2["fw-ts"], sample)
    m2v = S.field_eval(m2, sample).re
    want = [0, 2 * m2v, 1]
    got = [Fraction(int(mp[k].p), int(mp[k].q)) for k in range(mp.degree() + 1)]
    report.add("fw-ts realified minimal polynomial", got == want, str(mp), f"x^2 + {2 * m2v}*x")
    return report


def _suite_fermi_case(conv: Conventions, sample: Sample) -> CheckReport:
    report = CheckReport("fermi-case")
    m2 = S.M * S.M
    for name in ("fw-fermi", "dirac-fermi"):
        gens = poincare_set(name, conv)
        report.extend(check_structure(gens, poincare_spec(conv)), prefix=f"{name} ")
        L = equation_operator(name, conv)
        ok = all(invariance_check(gens.get(k), L, "weak").passed for k in gens.keys())
        report.add(f"{name} generators weakly invariant", ok)
        report.add_equal(f"{name} P^2 = -m^2", casimir_p2(gens), Operator.scalar(-m2))
        report.add_equal(
            f"{name} w^2 = -(3/4) m^2",
            pauli_lubanski_w2(gens, conv.levi_civita),
            Operator.scalar(FieldElem(-3) / 4 * m2),
        )
    return report


SUITES: Dict[str, Callable[[Conventions, Sample], CheckReport]] = {
    "so15": _suite_so15,
    "so6": _suite_so6,
    "ercd-rank": _suite_ercd_rank,
    "a32": _suite_a32,
    "lorentz": _suite_lorentz,
    "poincare-fw": _suite_poincare_fw,
    "poincare-dirac": _suite_poincare_dirac,
    "fw-dirac-map": _suite_fw_dirac_map,
    "bose-transform": _suite_bose_transform,
    "casimir": _suite_casimir,
    "fermi-case": _suite_fermi_case,
}

SUITE_NAMES = tuple(SUITES) + ("all", "audit")


def run_suite(
    name: str,
    conventions: Optional[Conventions] = None,
    sample: Optional[Sample] = None,
) -> CheckReport:
    """Run one suite.  ``conventions=None`` means audit mode.

    Raises :class:`UnknownSuite` and, in audit mode, :class:`AuditFailure`.
    """
    if name not in SUITE_NAMES:
        raise UnknownSuite(name)
    sample = sample or DEFAULT_SAMPLE
    if name == "audit":
        return convention_audit()
    audit = None
    if conventions is None:
        audit = convention_audit()
        conventions = selected_conventions(audit)
        if conventions is None:
            raise AuditFailure(audit)
    report = CheckReport(name, conventions.as_dict())
    with _Timer(report):
        if name == "all":
            if audit is not None:
                report.extend(audit, prefix="audit: ")
            for sub in SUITES:
                report.extend(SUITES[sub](conventions, sample), prefix=f"{sub}: ")
        else:
            sub = SUITES[name](conventions, sample)
            report.checks.extend(sub.checks)
            report.notes.extend(sub.notes)
    return report
