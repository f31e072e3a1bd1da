"""Command line interface: ``hats construct|verify|eval|bounds|search|table``.

Exit codes: 0 ok / property holds, 1 property fails, 2 input error,
3 inadmissible construction, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, constructions, game, search
from .core import (
    BudgetError,
    Code,
    ConstructionError,
    HatsError,
    ImplicitCode,
    default_budget,
    format_config,
    parse_config,
    read_code,
    write_code,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CONSTRUCTION, EXIT_BUDGET = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2)


def load_code(path: str) -> Code:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    try:
        if text.lstrip().startswith("{"):
            return constructions.from_descriptor(json.loads(text))
        return read_code(text)
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise InputError(f"malformed code input: {exc}") from None


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "repetition":
        code = constructions.repetition_code(args.n or 3, args.q or 2)
    elif fam == "hamming-coset":
        code = constructions.hamming_coset_covering(_need(args, "m"))
    elif fam == "direct-sum":
        code = constructions.direct_sum_covering(_need(args, "n"))
    elif fam == "syndrome":
        code = constructions.syndrome_construction(_need(args, "q"), _need(args, "m"))
    else:
        code = constructions.generalized_construction(_need(args, "q"), _need(args, "m"), args.beta, args.max_weight)
    if args.translate:
        code = constructions.translate(code, parse_config(args.translate, code.q))
    if isinstance(code, ImplicitCode) and not args.explicit:
        _emit(args, _json(code.descriptor))
    else:
        _emit(args, write_code(code.to_explicit(_budget(args))))
    return EXIT_OK


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        what = getattr(args, "family", None) or args.command
        raise InputError(f"--{name.replace('_', '-')} is required for {what}")
    return value


def cmd_verify(args) -> int:
    code = load_code(args.code)
    budget = _budget(args)
    prop = args.property
    out = {"property": prop}
    if prop == "covering":
        bad = game.find_uncovered(code, args.radius, budget)
        out["radius"] = args.radius
    elif prop == "strong":
        bad = game.find_strong_violation(code, budget, args.threads)
    elif prop == "perfect":
        bad = game.find_strong_violation(code, budget, args.threads)
        if bad is None and not game.meets_strong_bound(code):
            out.update(holds=False, reason="strong covering, but the bound is not met with equality")
            _emit(args, _json(out))
            return EXIT_FAIL
        if bad is not None:
            out["reason"] = "not a strong covering"
    else:
        desc = getattr(code, "descriptor", None)
        if not desc:
            raise InputError("syndrome-level verification needs a construction descriptor")
        beta = desc["beta"]
        beta = beta if isinstance(beta, float) else Fraction(str(beta))
        bad = constructions.syndrome_level_witness(desc["q"], desc["m"], beta, desc["max_weight"])
    out["holds"] = bad is None
    if bad is not None:
        out["counterexample"] = format_config(bad)
    _emit(args, _json(out))
    return EXIT_OK if bad is None else EXIT_FAIL


def cmd_eval(args) -> int:
    code = load_code(args.code)
    report = game.evaluate(game.strategy_from_code(code), _budget(args), args.threads)
    _emit(args, _json(report.to_json()))
    return EXIT_OK


def cmd_bounds(args) -> int:
    code = load_code(args.code) if args.code else None
    if code is None and args.q is None:
        raise InputError("--q is required without --code")
    if code is None and args.n is None and args.m is None:
        raise InputError("need --n or --m")
    report = analysis.bounds_report(args.q, args.n, args.m, code, args.log_base)
    if args.format == "json":
        _emit(args, _json(report.to_json()))
    else:
        _emit(args, _csv([analysis.BoundsReport.CSV_FIELDS, report.csv_row()]))
    return EXIT_OK


def cmd_search(args) -> int:
    budget = _budget(args)
    kind = args.kind
    if kind == "exhaustive":
        res = search.exhaustive_strategy_search(args.n, args.q or 2, budget, args.threads).to_json()
    elif kind == "symmetric":
        res = search.symmetric_strategy_search(args.n, budget, args.threads).to_json()
    elif kind == "zeroinfo":
        res = search.zero_info_optimum(args.n).to_json()
    elif kind == "perfect-scan":
        res = search.perfect_strong_covering_scan(args.q or 2, args.n, budget).to_json()
    else:
        code = search.covering_greedy(args.q or 2, args.n, args.seed, budget)
        res = {"size": code.size(), "code": [format_config(w) for w in code.words()],
               "strong_bound": str(analysis.strong_covering_bound(code.q, code.n))}
    res = {"kind": kind, **res}
    _emit(args, _json(res))
    if kind == "perfect-scan" and res["verdict"] == "BudgetExceeded":
        return EXIT_BUDGET
    return EXIT_OK


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _rat(x: Fraction) -> list[str]:
    return [str(x), f"{float(x):.12g}"]


def cmd_table(args) -> int:
    eq = args.eq
    qs = args.q or [2]
    rows: list[list] = []
    if eq == "3":
        header = ["n", "sphere_bound", "decimal"]
        rows = [[n, *_rat(analysis.sphere_covering_bound(n))] for n in _need(args, "n")]
    elif eq == "4":
        header = ["q", "n", "strong_bound", "decimal"]
        rows = [[q, n, *_rat(analysis.strong_covering_bound(q, n))] for q in qs for n in _need(args, "n")]
    elif eq == "5":
        header = ["q", "m", "n", "p_l", "decimal"]
        rows = [[q, m, 2**m - 1, *_rat(analysis.syndrome_losing_probability(q, m))] for q in qs for m in _need(args, "m")]
    elif eq == "7":
        header = ["q", "exponent", "log_base"]
        rows = [[q, repr(analysis.decay_exponent_bound(q, args.log_base)), args.log_base] for q in _need(args, "q")]
    elif eq == "8":
        header = ["q", "n", "alon_bound", "strong_bound_fraction", "log_base"]
        rows = [[q, n, repr(analysis.alon_bound(q, n, args.log_base)),
                 f"{float(analysis.strong_covering_bound(q, n) / q**n):.12g}", args.log_base]
                for q in qs for n in _need(args, "n")]
    elif eq == "direct-sum":
        header = ["n", "prefix", "size", "p_l", "decimal", "density"]
        for n in _need(args, "n"):
            code = constructions.direct_sum_covering(n)
            p = Fraction(code.size(), 2**n)
            rows.append([n, constructions.hamming_prefix_length(n), code.size(), *_rat(p), str(analysis.density(code))])
    else:  # generalized
        header = ["q", "m", "n", "beta", "max_weight", "p_l", "decimal"]
        for q in qs:
            for m in _need(args, "m"):
                beta, mw = constructions.default_parameters(q, m)
                if args.beta is not None:
                    beta = args.beta
                if args.max_weight is not None:
                    mw = args.max_weight
                p = analysis.generalized_losing_probability(q, m, beta, mw)
                n = constructions.filtered_parity_check(m, mw).cols
                rows.append([q, m, n, str(beta), mw, *_rat(p)])
    if args.format == "csv":
        _emit(args, _csv([header, *rows]))
    else:
        _emit(args, _json([dict(zip(header, r)) for r in rows]))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hats", description="Hat guessing games and covering codes.")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget (default: $HATS_BUDGET or 1e8)")
    p.add_argument("--threads", type=int, default=1, help="worker processes for exhaustive sweeps")
    # the same options after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a code")
    c.add_argument("--family", required=True,
                   choices=["repetition", "hamming-coset", "direct-sum", "syndrome", "generalized"])
    c.add_argument("--q", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--beta", type=_fraction)
    c.add_argument("--max-weight", type=int)
    c.add_argument("--translate", help="translation vector as a digit string")
    c.add_argument("--explicit", action="store_true", help="enumerate implicit codes in file format")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check a covering property")
    v.add_argument("--code", required=True, help="code file or JSON descriptor ('-' for stdin)")
    v.add_argument("--property", required=True, choices=["covering", "strong", "perfect", "syndrome-level"])
    v.add_argument("--radius", type=int, default=1)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", parents=[common], help="exact losing probability of the code's strategy")
    e.add_argument("--code", required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("bounds", parents=[common], help="bounds report for (q, n)")
    b.add_argument("--q", type=int)
    b.add_argument("--n", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--code")
    b.add_argument("--log-base", default="e")
    b.add_argument("--format", choices=["json", "csv"], default="json")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", parents=[common], help="optimality searches")
    s.add_argument("--kind", required=True, choices=["exhaustive", "symmetric", "zeroinfo", "perfect-scan", "greedy"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("table", parents=[common], help="parameter sweeps as CSV or JSON")
    t.add_argument("--eq", required=True, choices=["3", "4", "5", "7", "8", "direct-sum", "generalized"])
    t.add_argument("--q", type=_int_range)
    t.add_argument("--m", type=_int_range)
    t.add_argument("--n", type=_int_range)
    t.add_argument("--beta", type=_fraction)
    t.add_argument("--max-weight", type=int)
    t.add_argument("--log-base", default="e")
    t.add_argument("--format", choices=["json", "csv"], default="csv")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, HatsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
