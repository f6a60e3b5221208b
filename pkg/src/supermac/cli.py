"""Command line: compute expansions, run verification sweeps, print Kostka tables.

    supermac compute P "0;1"
    supermac compute J "2;1" --basis S
    supermac compute E "1,0" -N 2
    supermac verify orthogonality --max 4 2
    supermac verify tables --degree 4 2 --paper-layout
    supermac table 1 1 latex --paper-layout

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import ct, hecke, kostka, macdonald
from .combinat import SuperPartition, compositions, enumerate_superpartitions
from .qt import PoleAtEvaluationPoint
from .superpoly import BasisExpansion, to_basis

LABEL_GRAMMAR = (
    'superpartition labels are written "a1,a2,..;s1,s2,.." with strictly decreasing '
    'a-parts and weakly decreasing s-parts, e.g. "2,0;1" or ";3,1" (parentheses optional); '
    'compositions are comma lists such as "1,0,2"'
)

CHECKS = (
    "orthogonality",
    "norm",
    "duality",
    "eigen",
    "stability",
    "tables",
    "conjectures",
    "appendix",
    "ct",
    "kernel",
    "divided_difference",
    "hecke",
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    max_n: int = 2
    max_m: int = 1
    checks: set = field(default_factory=set)
    cache_dir: Path | None = None
    format: str = "json"
    q_order: int = ct.DEFAULT_Q_ORDER
    threads: int = 1
    exact_degree: bool = False
    N: int | None = None
    reference_layout: bool = False
    e2_formula: str = "stated"

    def __post_init__(self):
        if self.max_n < 0 or self.max_m < 0:
            raise UsageError("degree bounds must be non-negative")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")
        if self.q_order < 1:
            raise UsageError("--q-order must be at least 1")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")

    def degrees(self):
        if self.exact_degree:
            return [(self.max_n, self.max_m)]
        return [(n, m) for n in range(self.max_n + 1) for m in range(self.max_m + 1)]

    def superpartitions(self):
        for n, m in self.degrees():
            yield from enumerate_superpartitions(n, m)


def report(check: str, params: dict, failures: list, detail: dict | None = None) -> dict:
    out = {"check": check, "params": params, "pass": not failures, "detail": {"failures": failures}}
    if detail:
        out["detail"].update(detail)
    return out


def _params(cfg: RunConfig, **extra) -> dict:
    p = {"degrees": [list(d) for d in cfg.degrees()]}
    p.update(extra)
    return p


# ---------------------------------------------------------------------------
# verification sweeps


def verify_orthogonality(cfg: RunConfig) -> dict:
    failures, examined = [], []
    for n, m in cfg.degrees():
        labels = [lam.label() for lam in enumerate_superpartitions(n, m)]
        examined.extend(f"{a}|{b}" for i, a in enumerate(labels) for b in labels[i + 1:])
        failures.extend(f"{a}|{b}" for a, b in macdonald.orthogonality_failures(n, m))
    return report("orthogonality", _params(cfg), failures, {"pairs": examined})


def verify_norm(cfg: RunConfig) -> dict:
    failures, values = [], {}
    for lam in cfg.superpartitions():
        computed, conj, ok = macdonald.norm_check(lam)
        values[lam.label()] = str(computed)
        if not ok:
            failures.append({"label": lam.label(), "computed": str(computed), "conjectured": str(conj)})
    return report("norm", _params(cfg), failures, {"norms": values})


def verify_duality(cfg: RunConfig) -> dict:
    labels = list(cfg.superpartitions())
    failures = [lam.label() for lam in labels if not macdonald.duality_check(lam)]
    return report("duality", _params(cfg), failures, {"examined": [lam.label() for lam in labels]})


def verify_eigen(cfg: RunConfig) -> dict:
    failures, examined = [], []
    for lam in cfg.superpartitions():
        rep = macdonald.eigen_check(lam, cfg.N, e2_formula=cfg.e2_formula)
        examined.append(lam.label())
        bad = [k for k, ok in rep.results.items() if not ok]
        if bad:
            failures.append({"label": lam.label(), "operators": bad})
    injective = {f"{n},{m}": macdonald.eigenvalue_injective(n, m) for n, m in cfg.degrees()}
    failures.extend({"degree": d, "operators": ["injectivity"]} for d, ok in injective.items() if not ok)
    return report("eigen", _params(cfg, e2_formula=cfg.e2_formula), failures, {"examined": examined})


def verify_stability(cfg: RunConfig) -> dict:
    failures, examined = [], []
    for lam in cfg.superpartitions():
        examined.append(lam.label())
        n, m = lam.degree
        P = macdonald.macdonald_super(lam)
        checks = {
            "unitriangular": macdonald.unitriangular(P),
            "stable_coefficients": macdonald.coefficients_stable(lam),
            "restriction": macdonald.stability_check(lam, n + m + 1),
        }
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            failures.append({"label": lam.label(), "properties": bad})
    return report("stability", _params(cfg), failures, {"examined": examined})


def verify_tables(cfg: RunConfig) -> dict:
    failures, examined = [], []
    wanted = [d for d in cfg.degrees() if d in kostka.GOLDEN_DEGREES]
    for n, m in wanted:
        examined.append(f"{n}|{m}")
        for row, col, expected, got in (x for x in kostka.compare_with_golden(n, m) if len(x) == 4):
            failures.append({"degree": f"{n}|{m}", "row": row.label(), "column": col.label(),
                             "expected": str(expected), "computed": str(got)})
        if cfg.reference_layout and kostka.emit_table(n, m, "latex", transpose=True) != kostka.golden_text(n, m):
            failures.append({"degree": f"{n}|{m}", "layout": "rendered table differs from the bundled file"})
    return report("tables", _params(cfg, reference_layout=cfg.reference_layout), failures, {"tables": examined})


def verify_conjectures(cfg: RunConfig) -> dict:
    failures, examined = [], []
    for n, m in cfg.degrees():
        for fn in (kostka.check_positivity, kostka.check_sym1, kostka.check_sym2):
            rep = fn(n, m)
            examined.append(f"{rep.name} {n}|{m}")
            failures.extend({"check": rep.name, "degree": f"{n}|{m}", "entry": [str(x) for x in f]}
                            for f in rep.failures)
        if m == 1:
            for lam in enumerate_superpartitions(n, 1):
                examined.append(f"psi {lam.label()}")
                if not kostka.check_psi(lam):
                    failures.append({"check": "psi", "label": lam.label()})
                if lam.is_concatenable() and lam.n > 0:
                    examined.append(f"phi {lam.label()}")
                    if not kostka.check_phi_concat(lam):
                        failures.append({"check": "phi", "label": lam.label()})
    detail = {"examined": examined}
    if any(m >= 1 for _, m in cfg.degrees()):
        # (0;) concatenates to the empty partition; reported apart from the sweep
        detail["boundary"] = {"phi (0;)": kostka.check_phi_concat("0;")}
    return report("conjectures", _params(cfg), failures, detail)


def verify_hook_ratios(cfg: RunConfig) -> dict:
    failures, examined = [], []
    for lam in cfg.superpartitions():
        examined.append(lam.label())
        three = ct.three_way_norm_check(lam)
        if not (three["pass"] and ct.hook_ratio_identity_check(lam)):
            failures.append({"label": lam.label(), "values": {k: str(v) for k, v in three["values"].items()}})
    worked = ct.worked_variation_check()
    return report("appendix", _params(cfg), failures, {"examined": examined, "worked_variation": worked})


def verify_ct(cfg: RunConfig) -> dict:
    N = cfg.N or 3
    K = cfg.q_order
    failures, examined = [], []
    top = cfg.max_n + cfg.max_m
    for d in range(top + 1):
        for eta in compositions(d, N):
            examined.append("E" + ",".join(map(str, eta)))
            if not ct.e_norm_check(eta, K):
                failures.append({"norm_E": list(eta)})
    for pair in ct.e_orthogonality_check(N, top, K):
        failures.append({"orthogonality_E": [list(pair[0]), list(pair[1])]})
    for n, m in cfg.degrees():
        rep = ct.super_ct_check(n, m, N, K)
        examined.extend(rep["examined"])
        failures.extend({"orthogonality_P": list(p)} for p in rep["non_orthogonal"])
        failures.extend({"closed_ratio": lab} for lab in rep["ratio_failures"])
    return report("ct", _params(cfg, N=N, q_order=K), failures, {"examined": examined})


def verify_kernel(cfg: RunConfig) -> dict:
    N = cfg.N or 2
    D = cfg.max_n
    res = ct.kernel_checks(D, N)
    failures = [k for k, ok in res.items() if not ok]
    return report("kernel", {"degree": D, "N": N}, failures, {"identities": res})


def verify_divided_difference(cfg: RunConfig) -> dict:
    ms = range(1, max(cfg.max_m, 1) + 1)
    res = {m: hecke.divided_difference_identity_check(m) for m in ms}
    failures = [m for m, ok in res.items() if not ok]
    consts = {m: str(hecke.divided_difference_constant(m)) for m in ms}
    return report("divided_difference", {"m": list(ms)}, failures, {"constants": consts})


def verify_hecke(cfg: RunConfig) -> dict:
    N_top = cfg.N or 4
    D = cfg.max_n
    failures = []
    for N in range(2, N_top + 1):
        for name, bad in hecke.check_algebra_relations(N, D).items():
            if bad:
                failures.append({"N": N, "relation": name, "monomials": [list(b) for b in bad]})
        for d in range(D + 1):
            for eta in compositions(d, N):
                if not hecke.check_E_stability(eta):
                    failures.append({"N": N, "E_stability": list(eta)})
                for i in range(1, N):
                    if not hecke.check_T_action_on_E(eta, i):
                        failures.append({"N": N, "T_action": list(eta), "i": i})
        for eta, i in hecke.check_Y_triangular(N, D):
            failures.append({"N": N, "Y_triangular": list(eta), "i": i})
    return report("hecke", {"N": N_top, "degree": D}, failures)


VERIFIERS = {name: globals()[f"verify_{name}"] for name in CHECKS if name != "appendix"}
VERIFIERS["appendix"] = verify_hook_ratios


# ---------------------------------------------------------------------------
# compute


def _parse_label(text: str) -> SuperPartition:
    try:
        return SuperPartition.parse(text)
    except ValueError as exc:
        raise UsageError(f"{exc}\n{LABEL_GRAMMAR}") from exc


def _parse_composition(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.strip("()").split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"cannot read composition {text!r}\n{LABEL_GRAMMAR}") from exc
    if any(p < 0 for p in parts):
        raise UsageError(f"composition {text!r} has negative parts")
    return parts


def _in_basis(f: BasisExpansion, basis: str) -> BasisExpansion:
    if basis == "S":
        return kostka.expand_in_S(f)
    return to_basis(f, basis)


def compute(kind: str, label: str, basis: str | None, N: int | None) -> dict:
    if kind == "E":
        eta = _parse_composition(label)
        if N is not None and N != len(eta):
            eta = eta + (0,) * (N - len(eta)) if N > len(eta) else None
            if eta is None:
                raise UsageError(f"composition {label!r} has more than {N} parts")
        return {"kind": "E", "label": ",".join(map(str, eta)), **hecke.nonsym_macdonald(eta).to_json()}
    lam = _parse_label(label)
    if kind == "P":
        f = macdonald.macdonald_super(lam, N).expansion
    elif kind == "J":
        f = macdonald.integral_form(lam)
    elif kind == "s":
        f = kostka.schur_super(lam)
    elif kind == "S":
        f = kostka.modified_S(lam)
    elif kind == "stilde":
        f = macdonald.jack_schur(lam)
    else:
        raise UsageError(f"unknown kind {kind!r}")
    if basis is not None:
        f = _in_basis(f, basis)
    return {"kind": kind, "label": lam.label(), **f.to_json()}


def _render_expansion(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    coeffs = obj.get("coeffs", {})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["term", "coefficient"])
        for k, v in coeffs.items():
            w.writerow([k, v if isinstance(v, str) else json.dumps(v)])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"${k}$ & ${v}$ \\\\" for k, v in coeffs.items())


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", type=int, default=None, help="number of variables (default n+m)")
    common.add_argument("--q-order", type=int, default=ct.DEFAULT_Q_ORDER, help="q-truncation order for constant terms")
    common.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    common.add_argument("--paper-layout", dest="reference_layout", action="store_true", help="tables with Lambda as rows, as in the reference tables")
    common.add_argument("--cache-dir", type=Path, default=None, help="persistent cache (env SUPERMAC_CACHE overrides)")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work runs serially")

    p = argparse.ArgumentParser(prog="supermac", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="expansion of one polynomial")
    c.add_argument("kind", choices=("P", "J", "E", "s", "S", "stilde"))
    c.add_argument("label")
    c.add_argument("--basis", choices=("m", "p", "S"), default=None)

    v = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    v.add_argument("check", choices=CHECKS + ("all",))
    g = v.add_mutually_exclusive_group()
    g.add_argument("--max", nargs=2, type=int, metavar=("N", "M"), help="all degrees (n|m) up to these bounds")
    g.add_argument("--degree", nargs=2, type=int, metavar=("N", "M"), help="one degree only")
    v.add_argument("--e2-formula", choices=("stated", "derived"), default="stated",
                   help="expected E2 eigenvalue: as stated, or derived from the operator")

    t = sub.add_parser("table", parents=[common], help="Kostka matrix of one degree")
    t.add_argument("n", type=int)
    t.add_argument("m", type=int)
    t.add_argument("table_format", nargs="?", choices=("json", "csv", "latex"), default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cache_dir is not None:
            macdonald.set_cache_dir(args.cache_dir)
        if args.command == "compute":
            obj = compute(args.kind, args.label, args.basis, args.N)
            print(_render_expansion(obj, args.format))
            return 0
        if args.command == "table":
            if args.n < 0 or args.m < 0:
                raise UsageError("degrees must be non-negative")
            fmt = args.table_format or args.format
            print(kostka.emit_table(args.n, args.m, fmt, transpose=args.reference_layout), end="" if fmt != "json" else "\n")
            return 0
        bounds = args.degree or args.max or (2, 1)
        checks = set(CHECKS) if args.check == "all" else {args.check}
        cfg = RunConfig(
            max_n=bounds[0],
            max_m=bounds[1],
            checks=checks,
            cache_dir=args.cache_dir,
            format=args.format,
            q_order=args.q_order,
            threads=args.threads,
            exact_degree=args.degree is not None,
            N=args.N,
            reference_layout=args.reference_layout,
            e2_formula="operator" if args.e2_formula == "derived" else "stated",
        )
        reports = [VERIFIERS[name](cfg) for name in CHECKS if name in cfg.checks]
        out = reports[0] if len(reports) == 1 else reports
        print(json.dumps(out, sort_keys=True, indent=1, default=str))
        return 0 if all(r["pass"] for r in reports) else 1
    except UsageError as exc:
        print(f"supermac: {exc}", file=sys.stderr)
        return 2
    except PoleAtEvaluationPoint as exc:
        print(f"supermac: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
