"""``braceforge`` command line.

Exit codes: 0 success, 1 domain failure (a witness is reported), 2 usage or
parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Optional, Sequence

from . import fileformat
from .bicrossed import build_bicrossed_brace, criterion_meta_trivial
from .brace import analyze, build_brace, is_meta_trivial
from .corpus import entry as corpus_entry
from .corpus import run_corpus
from .errors import BraceForgeError, NoSolutionError, ParameterError, ShapeError
from .families import (
    Family1Params,
    Family2Params,
    enumerate_quadruples,
    family1_data,
    family2_data,
)
from .groups import validate_group
from .harness import (
    THEOREMS,
    Check,
    verify_lemma_product,
    verify_lemma_suite,
    verify_star_factors,
    verify_theorem,
)
from .matrices import parse_binary_rows, search_gl2_order

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Session:
    """Collects checks and output for one command invocation."""

    def __init__(self, argv: list[str], as_json: bool):
        self.argv = argv
        self.as_json = as_json
        self.start = time.perf_counter()
        self.checks: list[Check] = []
        self.extra: dict[str, Any] = {}
        self.lines: list[str] = []

    def check(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, passed, witness))
        return passed

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self, code: int) -> int:
        if self.as_json:
            elapsed = int((time.perf_counter() - self.start) * 1000)
            doc = fileformat.report_document(self.argv, [c.to_dict() for c in self.checks], elapsed, **self.extra)
            doc["exit_code"] = code
            print(json.dumps(doc, sort_keys=True))
        else:
            for c in self.checks:
                tail = "" if c.passed else f"  witness={_witness_text(c)}"
                print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}{tail}")
            for line in self.lines:
                print(line)
        return code


def _witness_text(c: Check) -> str:
    return json.dumps(c.to_dict().get("witness"))


# Brace-file helpers

def _load(s: Session, path: str):
    """Parse and validate; returns the brace or None after recording the failure."""
    bf = fileformat.read(path)
    dot, circle = bf.tables()
    for name, g in (("dot", dot), ("circle", circle)):
        report = validate_group(g)
        if not s.check(f"{name}_group", bool(report), report.witness and {"axiom": report.axiom, "at": report.witness}):
            return bf, None
    if not s.check("identities_coincide", dot.identity == circle.identity, [dot.identity, circle.identity]):
        return bf, None
    try:
        br = build_brace(dot, circle, bf.label, check_groups=False)
    except BraceForgeError as exc:
        s.check("brace_relation", False, exc.witness)
        return bf, None
    s.check("brace_relation", True)
    return bf, br


def cmd_validate(args, s: Session) -> int:
    bf, br = _load(s, args.file)
    s.extra["order"] = bf.order
    s.say(f"order {bf.order}: {'valid' if br is not None else 'INVALID'} skew brace")
    return EXIT_OK if br is not None else EXIT_DOMAIN


def _analysis_lines(s: Session, rep: dict) -> None:
    s.say(f"label  {rep['label']}")
    s.say(f"order  {rep['order']}")
    for key in ("is_trivial", "is_almost_trivial", "is_two_sided", "is_meta_trivial",
                "is_left_nilpotent3", "is_right_nilpotent3"):
        s.say(f"{key:<20} {rep[key]}")
    for key, size in rep["sizes"].items():
        s.say(f"|{key}|{'':<13} {size}")
    for name, facts in rep["ideal_facts"].items():
        s.say(f"subset {name}: " + ", ".join(f"{k}={v}" for k, v in facts.items()))


def cmd_analyze(args, s: Session) -> int:
    bf, br = _load(s, args.file)
    if br is None:
        return EXIT_DOMAIN
    rep = analyze(br, bf.subsets()).to_dict()
    s.extra["analysis"] = rep
    _analysis_lines(s, rep)
    return EXIT_OK


def _emit_family(args, s: Session, data, provenance: dict) -> int:
    br = build_bicrossed_brace(data)
    provenance["subsets"] = {"B": sorted(data.b_factor()), "C": sorted(data.c_factor())}
    bf = fileformat.BraceFile.from_brace(br, provenance)
    if args.out:
        bf.write(args.out)
        s.say(f"wrote {args.out}")
    crit, brute = criterion_meta_trivial(data), is_meta_trivial(br)
    s.check("criterion_matches_brute_force", crit == brute, {"criterion": crit, "brute_force": brute})
    s.extra.update(order=br.order, label=br.label, is_meta_trivial=brute, criterion_meta_trivial=crit)
    s.say(f"{br.label}")
    s.say(f"order {br.order}  meta-trivial {brute}")
    return EXIT_OK if crit == brute else EXIT_DOMAIN


def _merge_positional(args, names: Sequence[str], cast) -> list:
    if args.values and len(args.values) != len(names):
        raise UsageError(f"expected {len(names)} positional values ({' '.join(names)})")
    out = []
    for i, name in enumerate(names):
        flag = getattr(args, name)
        pos = args.values[i] if args.values else None
        if flag is not None and pos is not None and str(flag) != pos:
            raise UsageError(f"{name} given twice with different values")
        value = flag if flag is not None else pos
        if value is None:
            raise UsageError(f"missing {name}")
        try:
            out.append(cast[i](value) if isinstance(cast, list) else cast(value))
        except ValueError as exc:
            raise UsageError(f"bad value for {name}: {value!r}") from exc
    return out


def cmd_family1(args, s: Session) -> int:
    p, m, n, k, l = _merge_positional(args, ["p", "m", "n", "k", "l"], int)
    params = Family1Params(p, m, n, k, l)
    data = family1_data(params)
    return _emit_family(args, s, data, {"family": "family1", "params": {"p": p, "m": m, "n": n, "k": k, "l": l}})


def _parse_eps(text: str, n: int) -> tuple[int, ...]:
    if len(text) != n or set(text) - {"+", "-"}:
        raise UsageError(f"eps must be {n} characters from '+-', got {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def cmd_family2(args, s: Session) -> int:
    p, m, spec = _merge_positional(args, ["p", "m", "P"], [int, int, str])
    try:
        P = parse_binary_rows(spec)
    except (ParameterError, ShapeError) as exc:
        raise UsageError(f"bad P spec {spec!r}: {exc}") from exc
    if not P.is_square():
        raise UsageError(f"bad P spec {spec!r}: matrix is {P.rows}x{P.cols}")
    eps = _parse_eps(args.eps if args.eps is not None else "+" + "-" * (args.n - 1), args.n)
    params = Family2Params(p, m, P, args.n, eps)
    data = family2_data(params)
    prov = {"family": "family2", "params": {"p": p, "m": m, "P": spec, "n": args.n, "eps": list(eps)}}
    return _emit_family(args, s, data, prov)


def cmd_enum(args, s: Session) -> int:
    nontrivial = not args.include_boundary
    quads = enumerate_quadruples(args.max, require_nontrivial=nontrivial)
    s.extra.update(count=len(quads), nontrivial=nontrivial, quadruples=[list(q) for q in quads])
    if s.as_json:
        return EXIT_OK
    print(len(quads))
    for q in quads:
        print(" ".join(map(str, q)))
    return EXIT_OK


def _brace_for_verify(args, s: Session):
    if args.builtin:
        try:
            e = corpus_entry(args.builtin)
        except KeyError as exc:
            raise UsageError(f"unknown corpus instance {args.builtin!r}") from exc
        return e.brace, {"B": sorted(e.b_set), "C": sorted(e.c_set)}
    if not args.file:
        raise UsageError(f"suite {args.suite} needs a file or --builtin")
    bf, br = _load(s, args.file)
    return br, bf.subsets()


def cmd_verify(args, s: Session) -> int:
    s.extra["suite"] = args.suite
    if args.suite == "corpus":
        result = run_corpus()
        for name, c in result.checks:
            s.checks.append(Check(f"{name}/{c.name}", c.passed, c.witness))
        s.extra["theorems"] = [r.to_dict() for r in result.theorems]
        s.extra["red_alerts"] = len(result.red_alerts)
        s.say(f"{len(result.checks)} checks, {len(result.failed_checks)} failed; "
              f"{len(result.theorems)} theorem reports, {len(result.red_alerts)} red alerts")
        return EXIT_OK if result.ok else EXIT_DOMAIN

    br, subsets = _brace_for_verify(args, s)
    if br is None:
        return EXIT_DOMAIN
    if args.suite == "lemmas":
        suite = verify_lemma_suite(br)
        s.checks.extend(suite.checks)
        return EXIT_OK if suite.passed else EXIT_DOMAIN

    if "B" not in subsets or "C" not in subsets:
        raise UsageError("theorem suite needs distinguished subsets B and C in the file provenance")
    B, C = subsets["B"], subsets["C"]
    reports = [verify_theorem(br, which, B, C) for which in THEOREMS]
    reports += verify_star_factors(br, B, C) + verify_lemma_product(br, B, C)
    s.extra["theorems"] = [r.to_dict() for r in reports]
    for r in reports:
        s.check(f"{r.theorem}/no_red_alert", not r.red_alert, r.to_dict() if r.red_alert else None)
        s.say(f"{r.theorem:<22} applicable={str(r.applicable):<5} conclusion={r.conclusion.passed}")
    return EXIT_DOMAIN if any(r.red_alert for r in reports) else EXIT_OK


def cmd_search(args, s: Session) -> int:
    try:
        found = search_gl2_order(args.m, args.p, args.budget)
    except NoSolutionError as exc:
        s.check("solution_exists", False, {"m": args.m, "p": args.p})
        s.say(f"no solution: {exc}")
        return EXIT_DOMAIN
    s.extra["matrices"] = [{"rows": str(c.matrix), "order": c.order, "v": c.witness_v} for c in found]
    for c in found:
        s.say(f"{c.matrix}  order {c.order}  v={c.witness_v}")
    if not found:
        s.say("no solution within the search space")
        return EXIT_DOMAIN
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")

    parser = argparse.ArgumentParser(prog="braceforge", description="Finite skew brace toolkit.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (("validate", cmd_validate, "validate a brace file"),
                                 ("analyze", cmd_analyze, "predicates and derived subgroups of a brace file")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("family1", parents=[common], help="first bicrossed family")
    p.add_argument("values", nargs="*", metavar="p m n k l")
    for flag in ("p", "m", "n", "k", "l"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family1)

    p = sub.add_parser("family2", parents=[common], help="second bicrossed family")
    p.add_argument("values", nargs="*", metavar="p m P")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--P", help="binary rows separated by ';', e.g. 01;11")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--eps", help="diagonal signs, e.g. +-")
    p.add_argument("--out")
    p.set_defaults(func=cmd_family2)

    p = sub.add_parser("enum-quadruples", parents=[common], help="count admissible (m, n, k, l)")
    p.add_argument("--max", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--nontrivial", action="store_true",
                      help="require k <= m-1 and l <= n-1 (the default)")
    mode.add_argument("--include-boundary", action="store_true",
                      help="also count k = m or l = n")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=("lemmas", "theorems", "corpus"))
    p.add_argument("file", nargs="?")
    p.add_argument("--builtin", help="corpus instance name instead of a file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-P", parents=[common], help="matrices of odd prime order p in GL_m(Z/2)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--budget", type=int, default=8)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    s = Session(argv, getattr(args, "json", False))
    try:
        return s.emit(args.func(args, s))
    except (UsageError, fileformat.FileFormatError) as exc:
        s.check("usage", False, str(exc))
        s.emit(EXIT_USAGE)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BraceForgeError as exc:
        s.check(type(exc).__name__, False, exc.witness if exc.witness is not None else str(exc))
        s.emit(EXIT_DOMAIN)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
