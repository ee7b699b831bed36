#!/usr/bin/env python3
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from dotenv import load_dotenv

from . import __version__
from .chowring import (
    CycleClass,
    build_presentation,
    conjecture_check,
    expected_pairing,
    nef_report,
    pairing_determinant,
    pairing_table,
)
from .config import EngineLimits, config_section, limits_from_config, load_config
from .errors import BadParams, CapExceeded, FmchowError
from .genfunc import (
    betti_numbers,
    euler_char,
    poincare,
    poincare_by_convolution,
    psi_series,
    q_coefficients,
    render,
    solve_differential,
    verify_differential,
    verify_euler,
    verify_functional,
)
from .models import Report, Verdict
from .motive import euler_at_one, fm_ranks, product_space, projective_space, ranks
from .setcore import (
    chi,
    enumerate_nested_families,
    family_from_json,
    family_to_tree,
    subset_from_json,
    tree_to_family,
    unstable_vertices,
)

load_dotenv()

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(message)s",
    datefmt="%H:%M:%S",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_VERIFY = 3

FORMATS = ("json", "csv", "text")
CSV_COMMANDS = ("betti", "pairing")
LISTING_LIMIT = 500


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadParams(message)


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    n: int | None = None
    order: int | None = None
    degree: int | None = None
    monomial: str | None = None
    family: str | None = None
    exponents: str | None = None
    space: str | None = None
    m: int | None = None
    fmt: str = "json"
    output: str | None = None
    deterministic: bool = False
    limits: EngineLimits = field(default_factory=EngineLimits)

    def validate(self) -> None:
        if self.fmt not in FORMATS:
            raise BadParams(f"unknown format {self.fmt!r}")
        if self.fmt == "csv" and self.command not in CSV_COMMANDS:
            raise BadParams(f"csv output is only available for {', '.join(CSV_COMMANDS)}")
        if self.d is not None and self.d < 1:
            raise BadParams(f"--d must be >= 1, got {self.d}")
        if self.n is not None and self.n < (1 if self.command == "fm-betti" else 2):
            raise BadParams(f"--n is too small: {self.n}")
        if self.order is not None and self.order < 2:
            raise BadParams(f"--order must be >= 2, got {self.order}")
        if self.degree is not None and self.degree < 0:
            raise BadParams(f"--degree must be >= 0, got {self.degree}")


def _json_arg(text: str, flag: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise BadParams(f"{flag} is not valid JSON: {e}") from None


def _residual_verdict(name: str, series) -> Verdict:
    first = series.first_nonzero()
    if first is None:
        return Verdict(name, True)
    c = series.coefficient(first)
    computed = str(c) if not hasattr(c, "ring") else [str(x) for x in q_coefficients(c)]
    return Verdict(name, False, {"first_offending_order": first, "computed": computed, "expected": "0"})


def _compare_verdict(name: str, pairs: list[tuple[Any, Any, Any]]) -> Verdict:
    """Pass unless some (label, computed, expected) triple disagrees; report the first one."""
    for label, computed, expected in pairs:
        if computed != expected:
            return Verdict(name, False, {"at": label, "computed": computed, "expected": expected})
    return Verdict(name, True)


def _palindrome_verdict(name: str, values: list[int]) -> Verdict:
    return _compare_verdict(name, [(k, values[k], values[-1 - k]) for k in range(len(values))])


def _factor_pairs(raw: Any, n: int, flag: str) -> list[tuple[tuple[int, ...], int]]:
    if not isinstance(raw, list):
        raise BadParams(f"{flag} must be a JSON array of [subset, exponent] pairs")
    pairs = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise BadParams(f"{flag}: bad factor {item!r}")
        subset, e = item
        if isinstance(e, bool) or not isinstance(e, int):
            raise BadParams(f"{flag}: exponent {e!r} is not an integer")
        pairs.append((subset_from_json(subset, n), e))
    return pairs


# -- commands ------------------------------------------------------------------


def cmd_betti(cfg: RunConfig) -> Report:
    d, n = cfg.d, cfg.n
    betti = betti_numbers(d, n)
    results = {"d": d, "n": n, "dimension": d * (n - 1) - 1, "betti": betti, "euler": euler_char(d, n)}
    verdicts = [
        _palindrome_verdict("palindromic", betti),
        _compare_verdict("convolution_recursion_agrees", [(n, render(poincare_by_convolution(d, n)), render(poincare(d, n)))]),
    ]
    return Report("betti", {"d": d, "n": n}, results, verdicts)


def cmd_series(cfg: RunConfig) -> Report:
    d, M = cfg.d, cfg.order
    series = psi_series(d, M)
    coeffs = [
        {
            "n": k,
            "p_n": [str(c) for c in q_coefficients(series.coefficient(k))],
            "rendered": render(series.coefficient(k)),
        }
        for k in range(1, M + 1)
    ]
    return Report("series", {"d": d, "order": M}, {"d": d, "order": M, "coefficients": coeffs})


def cmd_verify_gf(cfg: RunConfig) -> Report:
    d, M = cfg.d, cfg.order
    euler = verify_euler(d, M)
    psi = psi_series(d, M)
    solved = solve_differential(d, M)
    verdicts = [
        _residual_verdict("differential_equation", verify_differential(d, M)),
        _residual_verdict("functional_equation", verify_functional(d, M)),
        _residual_verdict("euler_functional_equation", euler.functional),
        _residual_verdict("euler_differential_equation", euler.differential),
        _compare_verdict(
            "unique_solution",
            [(k, render(solved.coefficient(k)), render(psi.coefficient(k))) for k in range(M + 1)],
        ),
        _compare_verdict(
            "convolution_recursion_agrees",
            [(k, render(poincare_by_convolution(d, k)), render(poincare(d, k))) for k in range(2, M + 1)],
        ),
    ]
    results = {"d": d, "order": M, "checks": [v.name for v in verdicts]}
    return Report("verify-gf", {"d": d, "order": M}, results, verdicts)


def cmd_ring_rank(cfg: RunConfig) -> Report:
    p = build_presentation(cfg.d, cfg.n, cfg.limits)
    betti = betti_numbers(cfg.d, cfg.n)
    params = {"d": cfg.d, "n": cfg.n}
    if cfg.degree is not None:
        k = cfg.degree
        rank = p.rank(k)
        expected = betti[k] if k < len(betti) else 0
        params["degree"] = k
        results = {"d": cfg.d, "n": cfg.n, "degree": k, "rank": rank}
        return Report("ring-rank", params, results, [_compare_verdict("matches_betti", [(k, rank, expected)])])

    ring_ranks = p.ranks()
    results = {"d": cfg.d, "n": cfg.n, "top_degree": p.top_degree, "ranks": ring_ranks}
    verdicts = [
        _palindrome_verdict("poincare_duality", ring_ranks),
        _compare_verdict("matches_betti", list(zip(range(len(betti)), ring_ranks, betti))),
        _compare_verdict("length_matches_betti", [("length", len(ring_ranks), len(betti))]),
    ]
    return Report("ring-rank", params, results, verdicts)


def _parse_monomial(text: str, n: int) -> CycleClass:
    return CycleClass.monomial(_factor_pairs(_json_arg(text, "--monomial"), n, "--monomial"))


def cmd_integrate(cfg: RunConfig) -> Report:
    if not cfg.monomial:
        raise BadParams("integrate needs --monomial")
    p = build_presentation(cfg.d, cfg.n, cfg.limits)
    c = _parse_monomial(cfg.monomial, cfg.n)
    value = p.integrate(c)
    params = {"d": cfg.d, "n": cfg.n, "monomial": str(c)}
    return Report("integrate", params, {"integral": str(value)})


def cmd_pairing(cfg: RunConfig) -> Report:
    p = build_presentation(cfg.d, cfg.n, cfg.limits)
    table = pairing_table(p)
    det = pairing_determinant(table)
    results = {**table.to_dict(), "determinant": det}
    first = table.mismatches[0] if table.mismatches else {}
    verdicts = [
        Verdict("matches_closed_form", table.matches_closed_form, first),
        Verdict("unimodular", abs(det) == 1, {} if abs(det) == 1 else {"at": "determinant", "computed": det, "expected": "+-1"}),
    ]
    return Report("pairing", {"d": cfg.d, "n": cfg.n}, results, verdicts)


def cmd_strata(cfg: RunConfig) -> Report:
    n = cfg.n
    by_size: list[int] = []
    chi_bad: dict | None = None
    unstable: dict | None = None
    families = []
    for f in enumerate_nested_families(n, limits=cfg.limits):
        while len(by_size) <= len(f.sets):
            by_size.append(0)
        by_size[len(f.sets)] += 1
        sets = [list(s) for s in f.sets]
        chis = {v: chi(f, v) for v in f.vertices}
        total = sum(chis.values())
        if chi_bad is None and total != n - 1:
            chi_bad = {"at": sets, "computed": total, "expected": n - 1}
        low = [(v, c) for v, c in chis.items() if c < 1]
        if unstable is None and low:
            unstable = {"at": sets, "vertex": list(low[0][0]), "computed": low[0][1], "expected": ">= 1"}
        if len(families) < LISTING_LIMIT:
            families.append(sets)
    count = sum(by_size)
    results = {"n": n, "count": count, "by_size": by_size}
    if count <= LISTING_LIMIT:
        results["families"] = families
    verdicts = [
        Verdict("chi_sum", chi_bad is None, chi_bad or {}),
        Verdict("stable", unstable is None, unstable or {}),
    ]
    return Report("strata", {"n": n}, results, verdicts)


def cmd_trees(cfg: RunConfig) -> Report:
    n = cfg.n
    trees = []
    count = 0
    unstable: dict | None = None
    roundtrip_bad: dict | None = None
    for f in enumerate_nested_families(n, limits=cfg.limits):
        count += 1
        tree = family_to_tree(f)
        sets = [list(s) for s in f.sets]
        low = unstable_vertices(tree)
        if unstable is None and low:
            unstable = {"at": sets, "vertex": list(low[0][0]), "computed": low[0][1], "expected": ">= 2"}
        back = tree_to_family(tree)
        if roundtrip_bad is None and back != f:
            roundtrip_bad = {"at": sets, "computed": [list(s) for s in back.sets], "expected": sets}
        if len(trees) < LISTING_LIMIT:
            trees.append(tree.to_dict())
    verdicts = [
        Verdict("stable", unstable is None, unstable or {}),
        Verdict("roundtrip", roundtrip_bad is None, roundtrip_bad or {}),
    ]
    return Report("trees", {"n": n}, {"n": n, "count": count, "trees": trees if count <= LISTING_LIMIT else []}, verdicts)


def _parse_space(name: str, m: int | None):
    if name in ("P", "Pm"):
        if m is None:
            raise BadParams(f"--space {name} needs --m")
        return projective_space(m)
    parts = name.split("x")
    try:
        dims = [int(part[1:]) for part in parts if part.startswith("P")]
    except ValueError:
        dims = []
    if not dims or len(dims) != len(parts):
        raise BadParams(f"unknown space {name!r}; use P with --m, P2, or products like P1xP1")
    return projective_space(dims[0]) if len(dims) == 1 else product_space(*dims)


def cmd_fm_betti(cfg: RunConfig) -> Report:
    X = _parse_space(cfg.space or "P", cfg.m)
    poly = fm_ranks(X, cfg.n)
    values = ranks(poly)
    results = {
        "space": X.name,
        "dimension": X.dimension * cfg.n,
        "n": cfg.n,
        "ranks": values,
        "euler": euler_at_one(poly),
        "collision_sum": "S subset of N including S = N",
    }
    verdicts = [_palindrome_verdict("palindromic", values)]
    return Report("fm-betti", {"space": X.name, "n": cfg.n}, results, verdicts)


def cmd_conjecture(cfg: RunConfig) -> Report:
    p = build_presentation(cfg.d, cfg.n, cfg.limits)
    exponents = None
    if cfg.family:
        families = [family_from_json(cfg.family, cfg.n)]
        if cfg.exponents:
            raw = _json_arg(cfg.exponents, "--exponents")
            exponents = dict(_factor_pairs(raw, cfg.n, "--exponents"))
    else:
        families = list(enumerate_nested_families(cfg.n, limits=cfg.limits))

    reports = [conjecture_check(p, f, exponents) for f in families]
    findings = [r.to_dict() for r in reports if not r.magnitude_ok]
    proven = [
        (r.family[0], int(r.integral), expected_pairing(p.d, p.n, r.family[0], r.family[0]))
        for r in reports
        if len(r.family) == 1 and exponents is None
    ]
    results = {
        "d": cfg.d,
        "n": cfg.n,
        "checked": len(reports),
        "all_magnitude_ok": not findings,
        "findings": findings,
        "reports": [r.to_dict() for r in reports] if len(reports) <= LISTING_LIMIT else [],
    }
    verdicts = [_compare_verdict("singleton_families_match_pairing", [(list(s), c, e) for s, c, e in proven])]
    if findings:
        logger.warning(f"[cli] {len(findings)} families with |integral| != 1 (reported, not asserted)")
    return Report("conjecture", {"d": cfg.d, "n": cfg.n, "family": cfg.family}, results, verdicts)


def cmd_nef(cfg: RunConfig) -> Report:
    p = build_presentation(cfg.d, cfg.n, cfg.limits)
    entries = nef_report(p)
    results = {
        "d": cfg.d,
        "n": cfg.n,
        "entries": [
            {"S": list(e.S), "T": list(e.T), "value": e.value, "degenerate": e.degenerate, "negative": e.negative}
            for e in entries
        ],
        "negative_count": sum(1 for e in entries if e.negative),
    }
    return Report("nef", {"d": cfg.d, "n": cfg.n}, results)


COMMANDS: dict[str, Callable[[RunConfig], Report]] = {
    "betti": cmd_betti,
    "series": cmd_series,
    "verify-gf": cmd_verify_gf,
    "ring-rank": cmd_ring_rank,
    "integrate": cmd_integrate,
    "pairing": cmd_pairing,
    "strata": cmd_strata,
    "trees": cmd_trees,
    "fm-betti": cmd_fm_betti,
    "conjecture": cmd_conjecture,
    "nef": cmd_nef,
}

# -- output --------------------------------------------------------------------


def format_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _format_csv(report)
    return _format_text(report)


def _format_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    res = report.results
    if report.command == "betti":
        writer.writerow(["codimension", "betti"])
        for k, b in enumerate(res["betti"]):
            writer.writerow([k, b])
    else:
        writer.writerow(["S\\T"] + ["-".join(map(str, t)) for t in res["cols"]])
        for s, row in zip(res["rows"], res["entries"]):
            writer.writerow(["-".join(map(str, s))] + row)
    return buf.getvalue()


def _format_text(report: Report) -> str:
    lines = [f"{'=' * 60}", f"  {report.command}  {json.dumps(report.parameters, sort_keys=True)}", f"{'=' * 60}"]
    for key in sorted(report.results):
        value = report.results[key]
        text = json.dumps(value, sort_keys=True)
        if len(text) > 200:
            text = text[:200] + "..."
        lines.append(f"  {key}: {text}")
    for v in report.verdicts:
        mark = "PASS" if v.passed else "FAIL"
        lines.append(f"  [{mark}] {v.name}" + (f"  {json.dumps(v.detail, sort_keys=True)}" if v.detail else ""))
    return "\n".join(lines) + "\n"


def emit(text: str, output: str | None) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"[cli] Saved report: {output}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-c", "--config", default="config.yaml")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default=None)
    common.add_argument("--output", help="Write the report here instead of stdout")
    common.add_argument("--deterministic", action="store_true", help="Omit timing from the report")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")

    parser = _Parser(prog="fmchow", description="Intersection theory and Betti numbers of T_{d,n} and X[n]")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_text: str, *flags: str):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for flag in flags:
            if flag in ("d", "n", "order", "degree", "m"):
                sp.add_argument(f"--{flag}", type=int, required=flag in ("d", "n"))
            else:
                sp.add_argument(f"--{flag}")
        return sp

    add("betti", "Poincare polynomial, Betti numbers, Euler characteristic", "d", "n")
    add("series", "Coefficients p_n of the generating function", "d", "order")
    add("verify-gf", "Check the generating-function equations", "d", "order")
    add("ring-rank", "Ranks of the presented Chow ring", "d", "n", "degree")
    add("integrate", "Integrate a top-degree monomial", "d", "n", "monomial")
    add("pairing", "Divisor/curve pairing table", "d", "n")
    strata = sub.add_parser("strata", parents=[common], help="Count nested families (boundary strata)")
    strata.add_argument("--n", type=int, required=True)
    trees = sub.add_parser("trees", parents=[common], help="Stable rooted trees")
    trees.add_argument("--n", type=int, required=True)
    fm = sub.add_parser("fm-betti", parents=[common], help="Chow ranks of X[n] for cellular X")
    fm.add_argument("--space", default="P")
    fm.add_argument("--m", type=int)
    fm.add_argument("--n", type=int, required=True)
    add("conjecture", "Dual-monomial checks over nested families", "d", "n", "family", "exponents")
    add("nef", "eta_S . C_T table", "d", "n")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    file_cfg = load_config(args.config)
    output_cfg = config_section(file_cfg, "output")
    limits = limits_from_config(file_cfg)
    order = getattr(args, "order", None)
    if args.command in ("series", "verify-gf") and order is None:
        order = limits.series_order
    cfg = RunConfig(
        command=args.command,
        d=getattr(args, "d", None),
        n=getattr(args, "n", None),
        order=order,
        degree=getattr(args, "degree", None),
        monomial=getattr(args, "monomial", None),
        family=getattr(args, "family", None),
        exponents=getattr(args, "exponents", None),
        space=getattr(args, "space", None),
        m=getattr(args, "m", None),
        fmt=args.fmt or output_cfg.get("format", "json"),
        output=args.output,
        deterministic=args.deterministic or bool(output_cfg.get("deterministic", False)),
        limits=limits,
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    cfg.validate()
    return cfg


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        started = time.perf_counter()
        report = COMMANDS[cfg.command](cfg)
        report.version = __version__
        if not cfg.deterministic:
            report.timing_seconds = time.perf_counter() - started
    except CapExceeded as e:
        logger.error(f"[cli] Cap exceeded: {e}")
        return EXIT_CAP
    except (FmchowError, ValueError) as e:
        logger.error(f"[cli] {e}")
        return EXIT_USAGE

    emit(format_report(report, cfg.fmt), cfg.output)
    if not report.all_passed:
        failed = [v.name for v in report.verdicts if not v.passed]
        logger.error(f"[cli] Verification failed: {', '.join(failed)}")
        return EXIT_VERIFY
    return EXIT_OK


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
