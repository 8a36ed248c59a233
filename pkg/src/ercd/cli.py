"""Command-line front end: ``verify``, ``eval``, ``show`` and ``audit``.

Exit codes: 0 pass, 1 check failure, 2 usage or parse error, 3 audit failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import catalog as cat
from . import exact_scalar as S
from .opdsl import DslError, all_names, evaluate, format_operator
from .op_algebra import Operator, op_realify
from .suites import SUITE_NAMES, AuditFailure, UnknownSuite, run_suite
from .lie_verify import CheckReport, convention_audit, selected_conventions

__all__ = ["main", "Config", "emit_report", "load_config"]

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_AUDIT = 0, 1, 2, 3

CONFIG_KEYS = ("conventions", "sample", "format", "out", "timing")


class UsageError(ValueError):
    pass


@dataclass
class Config:
    conventions: str = "audit"
    sample: Tuple = (3, 0, 0, 4)
    format: str = "text"
    out: Optional[str] = None
    timing: bool = False

    def sample_point(self) -> S.Sample:
        m, *p = self.sample
        try:
            return S.Sample.momentum(m, p)
        except (ValueError, ArithmeticError) as exc:
            raise UsageError(f"bad sample {','.join(map(str, self.sample))}: {exc}") from None

    def explicit_conventions(self) -> Optional[cat.Conventions]:
        """None in audit mode."""
        if self.conventions == "audit":
            return None
        if self.conventions == "explicit":
            return cat.DEFAULT_CONVENTIONS
        try:
            return cat.Conventions.parse(self.conventions)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad conventions {self.conventions!r}: {exc}") from None


def _parse_sample(text: str) -> Tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise UsageError("sample must be m,p1,p2,p3")
    try:
        return tuple(Fraction(p) for p in parts)
    except ValueError:
        raise UsageError(f"bad sample {text!r}") from None


def load_config(path: str) -> Dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out: Dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: expected one of {', '.join(CONFIG_KEYS)} = value")
        out[key] = val.strip()
    return out


def build_config(args: argparse.Namespace) -> Config:
    cfg = Config()
    values: Dict[str, str] = load_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag not in (None, False):
            values[key] = flag
    if "conventions" in values:
        cfg.conventions = values["conventions"]
    if "sample" in values:
        cfg.sample = _parse_sample(values["sample"])
    if "format" in values:
        if values["format"] not in ("json", "md", "text"):
            raise UsageError("format must be json, md or text")
        cfg.format = values["format"]
    if values.get("out"):
        cfg.out = values["out"]
    timing = values.get("timing", False)
    cfg.timing = timing is True or str(timing).lower() in ("1", "true", "yes")
    return cfg


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def report_dict(report: CheckReport, timing: bool = False) -> dict:
    return {
        "suite": report.suite,
        "status": "pass" if report.passed else "fail",
        "conventions": dict(report.conventions),
        "checks": [c.as_dict() for c in report.checks],
        "notes": list(report.notes),
        "elapsed_ms": round(report.elapsed_ms, 3) if timing and report.elapsed_ms is not None else None,
    }


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ") or " "


def emit_report(report: CheckReport, fmt: str = "text", timing: bool = False) -> bytes:
    """Serialize deterministically; ``elapsed_ms`` is null unless ``timing``."""
    data = report_dict(report, timing)
    if fmt == "json":
        return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    conv = ", ".join(f"{k}={v}" for k, v in data["conventions"].items()) or "none"
    passed = sum(c["status"] == "pass" for c in data["checks"])
    total = len(data["checks"])
    lines: List[str] = []
    if fmt == "md":
        lines += [f"# {data['suite']}", "", f"- status: {data['status']} ({passed}/{total})", f"- conventions: {conv}"]
        if data["elapsed_ms"] is not None:
            lines.append(f"- elapsed_ms: {data['elapsed_ms']}")
        lines += ["", "| check | status | residual |", "|---|---|---|"]
        for c in data["checks"]:
            lines.append(f"| {_md_cell(c['name'])} | {c['status']} | {_md_cell(c['residual'])} |")
        if data["notes"]:
            lines += ["", "## notes", ""] + [f"- {n}" for n in data["notes"]]
    elif fmt == "text":
        lines.append(f"suite {data['suite']}: {data['status']} ({passed}/{total})")
        lines.append(f"conventions: {conv}")
        for c in data["checks"]:
            lines.append(f"  {c['status'].upper():4} {c['name']}")
            if c["residual"]:
                lines.append(f"       residual: {c['residual']}")
        for n in data["notes"]:
            lines.append(f"note: {n}")
        if data["elapsed_ms"] is not None:
            lines.append(f"elapsed_ms: {data['elapsed_ms']}")
    else:
        raise UsageError(f"unknown format {fmt!r}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _write(data: bytes, cfg: Config, stdout) -> None:
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(data)
    else:
        stdout.write(data.decode("utf-8"))
        stdout.flush()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _momentum_conventions(cfg: Config) -> cat.Conventions:
    """Conventions for eval/show; audit mode only needs the momentum reading."""
    conv = cfg.explicit_conventions()
    if conv is not None:
        return conv
    audit = convention_audit(("v-identity", "shat"))
    conv = selected_conventions(audit)
    if conv is None:
        raise AuditFailure(audit)
    return conv


def cmd_verify(cfg: Config, suite: str, stdout) -> int:
    sample = cfg.sample_point()
    try:
        report = run_suite(suite, cfg.explicit_conventions(), sample)
    except UnknownSuite:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}") from None
    _write(emit_report(report, cfg.format, cfg.timing), cfg, stdout)
    if suite == "audit" and not report.passed:
        return EXIT_AUDIT
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_audit(cfg: Config, stdout) -> int:
    return cmd_verify(cfg, "audit", stdout)


def _realified_rows(op: Operator, sample: S.Sample) -> List[List[str]]:
    return [[str(x) for x in row] for row in op_realify(op, sample)]


def cmd_eval(cfg: Config, expr: str, stdout, with_sample: bool) -> int:
    conv = _momentum_conventions(cfg)
    op = evaluate(expr, conv)
    canonical = format_operator(op)
    rows = None
    if with_sample:
        try:
            rows = _realified_rows(op, cfg.sample_point())
        except ValueError as exc:
            raise UsageError(f"cannot realify at this sample: {exc}") from None
    if cfg.format == "json":
        data = {"expr": expr, "p_form": conv.p_form, "canonical": canonical, "realified": rows}
        out = json.dumps(data, indent=2) + "\n"
    else:
        lines = [canonical]
        if rows is not None:
            width = max(len(x) for r in rows for x in r)
            lines.append("realified at m,p = " + ",".join(str(x) for x in cfg.sample) + ":")
            lines += ["  " + " ".join(x.rjust(width) for x in r) for r in rows]
        if cfg.format == "md":
            lines = ["```", *lines, "```"]
        out = "\n".join(lines) + "\n"
    _write(out.encode("utf-8"), cfg, stdout)
    return EXIT_PASS


# name -> (description, where it comes from, builder)
def _show_table(conv: cat.Conventions) -> Dict[str, Tuple[str, str, Callable[[], object]]]:
    table: Dict[str, Tuple[str, str, Callable[[], object]]] = {}
    for k in range(4):
        table[f"gamma{k}"] = (f"Dirac-Pauli gamma{k}", "Dirac-Pauli gamma matrices", lambda k=k: cat.gamma(k))
    table["gamma4"] = ("gamma0 gamma1 gamma2 gamma3", "extended Clifford generators", lambda: cat.gamma(4))
    table["gamma5"] = ("gamma1 gamma3 C", "extended Clifford generators", lambda: cat.gamma(5))
    table["gamma6"] = ("i gamma1 gamma3 C", "extended Clifford generators", lambda: cat.gamma(6))
    table["eps"] = ("i gamma0, central in the SO(6) algebra", "SO(6) generators", cat.epsilon_hat)
    table["C"] = ("complex conjugation", "antilinear operator", Operator.conjugation)
    table["HD"] = (f"gamma0 (gamma.p + m), p_k = {conv.p_form} applied to D_k", "Dirac Hamiltonian",
                   lambda: cat.dirac_hamiltonian(cat.Conventions(conv.p_form)))
    table["Lfw"] = ("i D0 - gamma0 w", "Foldy-Wouthuysen equation operator", cat.fw_operator)
    table["Ldirac"] = ("i D0 - HD", "Dirac equation operator",
                       lambda: cat.dirac_operator(cat.Conventions(conv.p_form)))
    table["W"] = ("sqrt(2) W and sqrt(2) W^-1", "Bose transform", cat.W_conjugator)
    table["V"] = ("gamma.p + w + m and its parity image", "FW to Dirac transform",
                  lambda: cat.V_conjugator(cat.Conventions(conv.p_form)))
    for fam in ("sI", "sII", "sTS", "sV"):
        table[fam] = (f"{fam} Lorentz spin family", "spin-1 Lorentz generators", lambda f=fam: cat.lorentz_set(f))
    table["shat"] = ("V^-1 sII V in closed form", "Dirac-side spin terms",
                     lambda: {k: cat.shat(*k, cat.Conventions(conv.p_form))
                              for k in ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))})
    table["so6"] = ("s_AB = 1/4 [gamma_A, gamma_B], A, B = 1..6", "SO(6) generators", cat.so6_set)
    table["so15"] = ("s_mn of the 16-element Clifford basis", "SO(1,5) generators", cat.cd_basis)
    return table


def _op_block(op: Operator) -> List[str]:
    lines = [f"  canonical: {format_operator(op)}"]
    lin = op.linear_part()
    anti = op.antilinear_part()
    if lin or not anti:
        lines.append("  linear part: " + (Operator.matrix(lin).text() if lin else "0"))
    if anti:
        lines.append("  C part: " + Operator.matrix(anti).text() + " C")
    lines.append(f"  carries C: {'yes' if anti else 'no'}")
    return lines


def cmd_show(cfg: Config, name: str, stdout) -> int:
    conv = _momentum_conventions(cfg)
    table = _show_table(conv)
    if name not in table:
        raise UsageError(f"unknown name {name!r}; choose from {', '.join(sorted(table))}")
    desc, anchor, build = table[name]
    obj = build()
    lines = [f"{name}: {desc}", f"  source: {anchor}"]
    if isinstance(obj, Operator):
        lines += _op_block(obj)
    elif isinstance(obj, cat.NormalizedConjugator):
        lines.append(f"  normalizer n: {S.render(obj.n)}  (N N' = N' N = n)")
        lines.append("  N:")
        lines += ["  " + x for x in _op_block(obj.N)]
        lines.append("  N':")
        lines += ["  " + x for x in _op_block(obj.N_inv)]
    elif isinstance(obj, cat.GeneratorSet):
        for label, op in obj.members():
            lines.append(f"  {label}: {format_operator(op)}")
        for label, op in sorted(obj.extras.items()):
            lines.append(f"  {label}: {format_operator(op)}")
    else:
        for (a, b), op in obj.items():
            lines.append(f"  shat{a}{b}: {format_operator(op)}")
    out = "\n".join(lines) + "\n"
    if cfg.format == "md":
        out = "```\n" + out + "```\n"
    elif cfg.format == "json":
        out = json.dumps({"name": name, "description": desc, "source": anchor, "text": lines[2:]}, indent=2) + "\n"
    _write(out.encode("utf-8"), cfg, stdout)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "md", "text"))
    common.add_argument("--out")
    common.add_argument("--config")
    common.add_argument("--sample", help="m,p1,p2,p3 with m^2 + |p|^2 a rational square")
    common.add_argument("--conventions", help="audit, explicit, or key=value,... toggles")
    common.add_argument("--timing", action="store_true", help="include elapsed_ms in reports")
    parser = _Parser(prog="ercd", description="Exact verification of extended real Clifford-Dirac algebra claims.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help=", ".join(SUITE_NAMES))
    e = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    e.add_argument("expr")
    s = sub.add_parser("show", parents=[common], help="show a catalog object")
    s.add_argument("name")
    sub.add_parser("audit", parents=[common], help="run the convention audit")
    sub.add_parser("names", parents=[common], help="list expression-language names")
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = make_parser().parse_args(argv)
        cfg = build_config(args)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, stdout)
        if args.command == "audit":
            return cmd_audit(cfg, stdout)
        if args.command == "eval":
            return cmd_eval(cfg, args.expr, stdout, args.sample is not None or "sample" in _config_keys(args))
        if args.command == "show":
            return cmd_show(cfg, args.name, stdout)
        stdout.write("\n".join(all_names()) + "\n")
        return EXIT_PASS
    except AuditFailure as exc:
        stderr.write(f"error: {exc}\n")
        if exc.report is not None:
            stderr.write(emit_report(exc.report, "text").decode("utf-8"))
        return EXIT_AUDIT
    except DslError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def _config_keys(args) -> Dict[str, str]:
    return load_config(args.config) if args.config else {}


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
