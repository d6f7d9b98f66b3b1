"""JSON and CSV forms of election instances and two-column matrix instances.

Votes travel as strings (``"345"``, ``"1/3"``, ``"0.25"``) so that they stay
exact.  Numeric JSON values are accepted only because the reader parses
floats as :class:`decimal.Decimal`, which converts to a fraction exactly.
"""

from __future__ import annotations

import csv
import json
import math
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from .biprop import TwoDimInstance
from .election import Candidate, CType, ElectionInstance, TieBreak

SCHEMA = 1
INSTANCE_FIELDS = {"schema", "house", "parties", "tie_break", "candidates"}
CANDIDATE_FIELDS = {"id", "party", "type", "votes"}
TWO_DIM_FIELDS = {"schema", "kind", "P", "S", "J", "phi"}


class ParseError(ValueError):
    pass


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"not a number: {v!r}")
    if isinstance(v, (int, Decimal, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact rational: {v!r}") from None
    raise ParseError(f"not an exact rational: {v!r}")


def format_rational(v) -> str:
    return str(Fraction(v))


def loads(text: str):
    return json.loads(text, parse_float=Decimal)


def _check_fields(obj, allowed: set[str], what: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object")
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"unknown fields in {what}: {sorted(extra)}")


def instance_from_json(obj) -> ElectionInstance:
    _check_fields(obj, INSTANCE_FIELDS, "instance")
    try:
        house = obj["house"]
        parties = obj["parties"]
        raw = obj["candidates"]
    except KeyError as exc:
        raise ParseError(f"instance is missing {exc.args[0]!r}") from None
    if not isinstance(house, int) or isinstance(house, bool):
        raise ParseError("house must be an integer")
    if not isinstance(parties, list) or not all(isinstance(p, str) for p in parties):
        raise ParseError("parties must be a list of names")
    if len(set(parties)) != len(parties):
        raise ParseError("party names must be unique")
    index = {p: i for i, p in enumerate(parties)}
    try:
        tie = TieBreak(obj.get("tie_break", "prefer_f"))
    except ValueError:
        raise ParseError("tie_break must be 'prefer_f' or 'prefer_m'") from None
    if not isinstance(raw, list):
        raise ParseError("candidates must be a list")
    cands = []
    for c in raw:
        _check_fields(c, CANDIDATE_FIELDS, "candidate")
        missing = CANDIDATE_FIELDS - set(c)
        if missing:
            raise ParseError(f"candidate is missing {sorted(missing)}")
        if c["party"] not in index:
            raise ParseError(f"candidate {c['id']!r} names unknown party {c['party']!r}")
        try:
            ctype = CType(str(c["type"]).lower())
        except ValueError:
            raise ParseError(f"candidate {c['id']!r} has type {c['type']!r}; expected 'f' or 'm'") from None
        cands.append(Candidate(str(c["id"]), index[c["party"]], parse_rational(c["votes"]), ctype))
    try:
        return ElectionInstance(tuple(cands), len(parties), house, tie, tuple(parties))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def instance_to_json(I: ElectionInstance) -> dict:
    names = [I.party_label(i) for i in range(I.n)]
    return {
        "schema": SCHEMA,
        "house": I.h,
        "parties": names,
        "tie_break": I.tie_break.value,
        "candidates": [
            {"id": c.id, "party": names[c.party], "type": c.ctype.value, "votes": format_rational(c.votes)}
            for c in I.candidates
        ],
    }


def read_csv_instance(path: Path, config: dict) -> ElectionInstance:
    """Candidates from a CSV with columns ``id,party,type,votes`` plus a config
    holding ``house`` and optionally ``parties`` and ``tie_break``."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(reader.fieldnames) != CANDIDATE_FIELDS:
            raise ParseError(f"CSV columns must be exactly {sorted(CANDIDATE_FIELDS)}")
        rows = [dict(r) for r in reader]
    _check_fields(config, {"house", "parties", "tie_break"}, "CSV config")
    parties = config.get("parties")
    if parties is None:
        parties = list(dict.fromkeys(r["party"] for r in rows))
    obj = {"house": config.get("house"), "parties": parties, "candidates": rows}
    if "tie_break" in config:
        obj["tie_break"] = config["tie_break"]
    return instance_from_json(obj)


def load_instance(path: str | Path, config: str | Path | None = None) -> ElectionInstance:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        cfg_path = Path(config) if config else path.with_suffix(".config.json")
        try:
            cfg = loads(cfg_path.read_text())
        except FileNotFoundError:
            raise ParseError(f"CSV input needs a config file ({cfg_path})") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"config is not valid JSON: {exc}") from None
        return read_csv_instance(path, cfg)
    try:
        return instance_from_json(loads(path.read_text()))
    except json.JSONDecodeError as exc:
        raise ParseError(f"instance is not valid JSON: {exc}") from None


def _cap_to_json(v):
    return None if v == math.inf else int(v)


def two_dim_to_json(T: TwoDimInstance) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "two_dim",
        "P": [[format_rational(v) for v in row] for row in T.P],
        "S": [[_cap_to_json(v) for v in row] for row in T.S],
        "J": list(T.J),
        "phi": list(T.phi),
    }


def two_dim_from_json(obj) -> TwoDimInstance:
    _check_fields(obj, TWO_DIM_FIELDS, "two-dimensional instance")
    if obj.get("kind", "two_dim") != "two_dim":
        raise ParseError("kind must be 'two_dim'")
    try:
        P = [[parse_rational(v) for v in row] for row in obj["P"]]
        J = [int(j) for j in obj["J"]]
        phi = [int(p) for p in obj["phi"]]
    except KeyError as exc:
        raise ParseError(f"two-dimensional instance is missing {exc.args[0]!r}") from None
    S = obj.get("S")
    if S is None:
        S = [[None, None] for _ in P]
    caps = [[math.inf if v is None else int(v) for v in row] for row in S]
    try:
        return TwoDimInstance(tuple(map(tuple, P)), tuple(map(tuple, caps)), tuple(J), tuple(phi))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
