"""Command-line front end.

Every command prints one JSON document (``"schema": 1``) on stdout.  Exit
codes:

    0  success
    1  any other library error (for example the fair share did not converge)
    2  bad arguments or unreadable input
    3  a zero first signpost needs at least one seat per party with votes
    4  parity correction got stuck (the report names the party)
    5  no matrix meets the marginals and caps
    6  the fair share needs a strictly positive matrix
    7  more tied solutions than the tie cap allows
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import serialization as ser
from .biprop import (
    TwoDimInstance,
    biprop_outcomes,
    exchange_ties,
    solve_biproportional,
    verify_biproportional,
)
from .divisor import apportion, multiplier_interval
from .election import allocation_from_counts, cross_tabs, elected_counts, parity_marginal, party_totals, satisfies_parity
from .errors import (
    AdamsHouseTooSmall,
    ApportionmentError,
    Infeasible,
    InvalidSignpost,
    NotEnoughCandidates,
    NotStrictlyPositive,
    Stuck,
    TieExplosion,
)
from .fairshare import exceed_fraction, fair_share, lambda_metric, quota_report, verify_fair_share
from .generators import PAPER_ELECTIONS, gen_gap_instance, gen_paper_election, gen_row_violation_instance
from .greedy import greedy_parity
from .signpost import SignpostSequence, from_name

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_ADAMS, EXIT_STUCK, EXIT_INFEASIBLE, EXIT_NONPOSITIVE, EXIT_TIES = 0, 1, 2, 3, 4, 5, 6, 7


class UsageError(Exception):
    pass


def _method(text: str) -> SignpostSequence:
    """A built-in name, or a comma-separated custom table such as ``0,1/2,3/2``."""
    try:
        if "," in text:
            return from_name([ser.parse_rational(v) for v in text.split(",")])
        return from_name(text)
    except (InvalidSignpost, ser.ParseError) as exc:
        raise UsageError(str(exc)) from None


def _rationals(text: str) -> list[Fraction]:
    return [ser.parse_rational(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _matrix(text: str) -> list[list[Fraction]]:
    """``"a,b;c,d"`` rows separated by semicolons."""
    rows = [_rationals(r) for r in text.split(";") if r.strip()]
    if not rows or any(len(r) != 2 for r in rows):
        raise UsageError("a matrix needs rows of exactly two entries, e.g. '1035,165;552,48'")
    return rows


def _q(v) -> str:
    return ser.format_rational(v)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _interval_json(iv):
    if iv is None:
        return None
    lo, hi = iv
    return {"lo": _q(lo), "hi": None if hi == float("inf") else _q(hi)}


def cmd_apportion(args) -> int:
    votes = _rationals(args.votes)
    s = _method(args.method)
    sols = sorted(apportion(votes, args.house, s, cap=args.max_ties), reverse=True)
    _emit({
        "schema": ser.SCHEMA,
        "command": "apportion",
        "method": s.name,
        "house": args.house,
        "tie": len(sols) > 1,
        "solutions": [
            {"seats": list(S), "lambda": _interval_json(multiplier_interval(votes, S, s))} for S in sols
        ],
    })
    return EXIT_OK


def _load(args):
    try:
        return ser.load_instance(args.input, getattr(args, "config", None))
    except FileNotFoundError as exc:
        raise UsageError(f"cannot read {exc.filename}") from None


def _outcome_json(I, E, J, tie, trace=None) -> dict:
    x = elected_counts(I, E)
    out = {
        "J": list(J),
        "elected": E.as_dict(),
        "cross_tab": [list(r) for r in x],
        "parity_ok": satisfies_parity(I, E),
        "tie": tie,
    }
    if trace is not None:
        out["trace"] = trace
    return out


def cmd_elect(args) -> int:
    I = _load(args)
    party_s = _method(args.party_method)
    Js = sorted(apportion(party_totals(I), I.h, party_s, cap=args.max_ties))
    report = {
        "schema": ser.SCHEMA,
        "command": "elect",
        "mechanism": args.mechanism,
        "party_method": party_s.name,
        "parties": list(I.party_names),
        "apportionments": [list(J) for J in Js],
        "apportionment_tie": len(Js) > 1,
    }
    outcomes = []
    if args.mechanism == "greedy":
        for J in Js:
            tr = greedy_parity(I, J)
            outcomes.append(_outcome_json(I, tr.final, J, len(Js) > 1, tr.to_json() if args.trace else None))
    else:
        biprop_s = _method(args.biprop_method)
        report["biprop_method"] = biprop_s.name
        report["parity_marginal"] = list(parity_marginal(I))
        for J, sols in biprop_outcomes(I, party_s, biprop_s, cap=args.max_ties):
            log: list | None = [] if args.trace else None
            if args.trace:
                solve_biproportional(TwoDimInstance.from_election(I, J), biprop_s, cap=args.max_ties, log=log)
            for sol in sorted(sols, key=lambda s: s.x):
                E = allocation_from_counts(I, sol.x)
                outcomes.append(_outcome_json(I, E, J, sol.tie_flag or len(Js) > 1, log))
    report["outcomes"] = outcomes
    _emit(report)
    return EXIT_OK


def _against_matrix(path: str) -> list[list[int]]:
    try:
        obj = ser.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"cannot read {path}") from None
    if isinstance(obj, dict) and "x" in obj:
        return obj["x"]
    if isinstance(obj, dict) and obj.get("command") == "elect" and obj.get("outcomes"):
        return obj["outcomes"][0]["cross_tab"]
    raise UsageError("--against expects {'x': matrix} or an 'elect' report")


def cmd_fairshare(args) -> int:
    if (args.input is None) == (args.matrix is None):
        raise UsageError("give exactly one of --input or --matrix")
    if args.input is not None:
        I = _load(args)
        P, _ = cross_tabs(I)
        if args.rows:
            J = _ints(args.rows)
        else:
            Js = apportion(party_totals(I), I.h, _method(args.party_method))
            if len(Js) != 1:
                raise UsageError("party seats are tied; pass --rows explicitly")
            (J,) = Js
        phi = _ints(args.cols) if args.cols else list(parity_marginal(I))
    else:
        P = _matrix(args.matrix)
        if not args.rows or not args.cols:
            raise UsageError("--matrix needs --rows and --cols")
        J, phi = _ints(args.rows), _ints(args.cols)
    try:
        T = TwoDimInstance.uncapped(P, J, phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = fair_share(T)
    report = {
        "schema": ser.SCHEMA,
        "command": "fairshare",
        "F": [[float(v) for v in row] for row in res.F],
        "row_multipliers": [float(v) for v in res.row_mult],
        "col_multipliers": [float(v) for v in res.col_mult],
        "residual": res.residual,
        "iterations": res.iterations,
        "verified": verify_fair_share(T, res),
    }
    if args.against:
        x = _against_matrix(args.against)
        verdicts = quota_report(x, res)
        report["x"] = x
        report["quota_report"] = [v.to_json() for v in verdicts]
        report["rows_outside_quota"] = sum(1 for v in verdicts if not v.within)
        report["lambda"] = _q(lambda_metric(x, res))
        report["exceed_fraction"] = _q(exceed_fraction(x, res))
    _emit(report)
    return EXIT_OK


def cmd_biprop(args) -> int:
    try:
        T = ser.two_dim_from_json(ser.loads(Path(args.input).read_text()))
    except FileNotFoundError:
        raise UsageError(f"cannot read {args.input}") from None
    d = _method(args.method)
    sols = sorted(solve_biproportional(T, d, cap=args.max_ties), key=lambda s: s.x)
    _emit({
        "schema": ser.SCHEMA,
        "command": "biprop",
        "method": d.name,
        "tie": len(sols) > 1,
        "solutions": [
            {
                "x": [list(r) for r in sol.x],
                "unique_by_strict_exchange": verify_biproportional(T, d, sol.x, strict=True),
                "zero_cost_exchanges": [list(p) for p in exchange_ties(T, d, sol.x)],
            }
            for sol in sols
        ],
    })
    return EXIT_OK


def _write(obj, path: Path | None) -> None:
    if path is None:
        _emit(obj)
    else:
        path.write_text(json.dumps(obj, indent=2) + "\n")


def cmd_generate(args) -> int:
    out = Path(args.out) if args.out else None
    if args.family == "paper":
        if not args.which:
            raise UsageError("--family paper needs --which")
        I = gen_paper_election(args.which)
        P, S = cross_tabs(I)
        doc = ser.instance_to_json(I)
        side = {
            "family": "paper",
            "which": args.which.lower(),
            "party_totals": [_q(v) for v in party_totals(I)],
            "cross_tab_votes": [[_q(v) for v in r] for r in P],
            "cross_tab_counts": [list(r) for r in S],
        }
    else:
        d = _method(args.method or "jefferson")
        if args.family == "gap":
            if args.ell is None or args.ell < 1:
                raise UsageError("--family gap needs --ell >= 1")
            g = gen_gap_instance(args.ell, d)
        else:
            g = gen_row_violation_instance(d)
        doc = ser.two_dim_to_json(g.instance)
        side = {
            "family": args.family,
            "method": d.name,
            "ell": g.ell,
            "n_rows": g.n_rows,
            "expected_x": [list(r) for r in g.expected_x],
            "expected_F": [[_q(v) for v in r] for r in g.expected_F],
        }
    if out is None:
        _emit({"schema": ser.SCHEMA, "instance": doc, "expected": side})
    else:
        _write(doc, out)
        _write(side, out.with_name(out.stem + ".expected.json"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parity-apportion", description=__doc__.split("\n\n")[0])
    p.add_argument("--max-ties", type=int, default=None, help="cap on enumerated tied solutions (default 64)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("apportion", help="divisor-method seats for a vote vector")
    a.add_argument("--votes", required=True, help="comma-separated votes, e.g. 1200,600 or 1/3,2/3")
    a.add_argument("--house", required=True, type=int)
    a.add_argument("--method", default="jefferson")
    a.set_defaults(func=cmd_apportion)

    e = sub.add_parser("elect", help="run a parity mechanism on an election instance")
    e.add_argument("--input", required=True, help="instance JSON, or CSV with a config sidecar")
    e.add_argument("--config", help="config JSON for CSV input (default: <input>.config.json)")
    e.add_argument("--mechanism", choices=("greedy", "biprop"), default="greedy")
    e.add_argument("--party-method", default="jefferson")
    e.add_argument("--biprop-method", default="jefferson")
    e.add_argument("--trace", action="store_true")
    e.set_defaults(func=cmd_elect)

    f = sub.add_parser("fairshare", help="fair share of a vote matrix and quota comparison")
    f.add_argument("--input", help="instance JSON or CSV; uses its party-by-type vote table")
    f.add_argument("--config")
    f.add_argument("--matrix", help="rows separated by ';', e.g. 1035,165;552,48")
    f.add_argument("--rows", help="row totals J (default: party seats for --input)")
    f.add_argument("--cols", help="column totals (default: parity marginal for --input)")
    f.add_argument("--party-method", default="jefferson")
    f.add_argument("--against", help="JSON with an integer matrix 'x', or an 'elect' report")
    f.set_defaults(func=cmd_fairshare)

    b = sub.add_parser("biprop", help="solve a two-column matrix instance")
    b.add_argument("--input", required=True)
    b.add_argument("--method", default="jefferson")
    b.set_defaults(func=cmd_biprop)

    g = sub.add_parser("generate", help="write a constructed instance and its expected results")
    g.add_argument("--family", choices=("gap", "rowviol", "paper"), required=True)
    g.add_argument("--ell", type=int)
    g.add_argument("--method")
    g.add_argument("--which", choices=PAPER_ELECTIONS, type=str.lower)
    g.add_argument("--out", help="instance path; the sidecar goes to <stem>.expected.json")
    g.set_defaults(func=cmd_generate)
    return p


def _fail(code: int, kind: str, message: str, **extra) -> int:
    _emit({"schema": ser.SCHEMA, "error": kind, "message": message, **extra})
    print(f"error: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ser.ParseError, ValueError, NotEnoughCandidates) as exc:
        if isinstance(exc, NotStrictlyPositive):
            return _fail(EXIT_NONPOSITIVE, "not_strictly_positive", str(exc))
        return _fail(EXIT_USAGE, "bad_input", str(exc))
    except AdamsHouseTooSmall as exc:
        return _fail(EXIT_ADAMS, "house_too_small", str(exc), house=exc.house, positive_parties=exc.positive_parties)
    except Stuck as exc:
        return _fail(EXIT_STUCK, "stuck", str(exc), party=exc.party_name, removed=exc.removed)
    except Infeasible as exc:
        return _fail(EXIT_INFEASIBLE, "infeasible", str(exc))
    except TieExplosion as exc:
        return _fail(EXIT_TIES, "too_many_ties", str(exc), count=exc.count, cap=exc.cap)
    except ApportionmentError as exc:
        return _fail(EXIT_ERROR, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
