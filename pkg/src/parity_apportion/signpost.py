"""Signpost sequences and their set-valued rounding functions.

A signpost sequence ``s`` maps a seat count ``k`` to the threshold ``s(k)`` in
``[k-1, k]`` at which rounding switches from ``k-1`` to ``k``.  All values are
:class:`fractions.Fraction` so that tie detection downstream is exact.

Three built-ins are provided (:data:`JEFFERSON`, :data:`ADAMS`,
:data:`WEBSTER`) plus finite custom tables.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidSignpost, OutOfRange


class Kind(enum.Enum):
    JEFFERSON = "jefferson"
    ADAMS = "adams"
    WEBSTER = "webster"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SignpostSequence:
    kind: Kind
    table: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if (self.kind is Kind.CUSTOM) != (self.table is not None):
            raise InvalidSignpost("a table is required for, and only for, custom sequences")

    def __call__(self, k: int) -> Fraction:
        return value(self, k)

    @property
    def name(self) -> str:
        return self.kind.value

    def __repr__(self) -> str:
        if self.table is None:
            return f"SignpostSequence({self.kind.value})"
        return f"SignpostSequence(custom {[str(v) for v in self.table]})"


JEFFERSON = SignpostSequence(Kind.JEFFERSON)
ADAMS = SignpostSequence(Kind.ADAMS)
WEBSTER = SignpostSequence(Kind.WEBSTER)
BUILTINS = (JEFFERSON, ADAMS, WEBSTER)

_HALF = Fraction(1, 2)


def custom(values: Iterable, *, check: bool = True) -> SignpostSequence:
    """Build a table-backed sequence from rationals (or ``"p/q"`` strings).

    The table is validated on its whole length unless ``check`` is false;
    an unchecked table exists only so that :func:`validate` can report on it.
    """
    table = tuple(Fraction(v) for v in values)
    if not table:
        raise InvalidSignpost("empty signpost table")
    seq = SignpostSequence(Kind.CUSTOM, table)
    if check:
        report = validate_prefix(table)
        if not report.ok:
            raise InvalidSignpost(str(report))
    return seq


def from_name(choice: str | Sequence) -> SignpostSequence:
    """Resolve ``"jefferson" | "adams" | "webster"`` or an inline table."""
    if isinstance(choice, str):
        try:
            kind = Kind(choice.strip().lower())
        except ValueError:
            raise InvalidSignpost(f"unknown signpost method {choice!r}") from None
        if kind is Kind.CUSTOM:
            raise InvalidSignpost("custom sequences need an explicit table")
        return SignpostSequence(kind)
    return custom(choice)


def value(s: SignpostSequence, k: int) -> Fraction:
    if k < 0:
        raise ValueError("signpost index must be nonnegative")
    if s.kind is Kind.JEFFERSON:
        return Fraction(k)
    if s.kind is Kind.ADAMS:
        return Fraction(max(k - 1, 0))
    if s.kind is Kind.WEBSTER:
        return Fraction(k) - _HALF if k else Fraction(0)
    if k >= len(s.table):
        raise OutOfRange(f"custom signpost table has {len(s.table)} entries, asked for index {k}")
    return s.table[k]


def rounding_set(s: SignpostSequence, t) -> frozenset[int]:
    """All ``n`` with ``s(n) <= t <= s(n+1)``; ``{0}`` at ``t = 0``."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("rounding_set is defined for t >= 0")
    if t == 0:
        return frozenset({0})
    # s(k) <= k gives s(floor t) <= t, and s(k) >= k-1 bounds the search above
    m = math.floor(t)
    if value(s, m + 1) <= t:
        m += 1
    if value(s, m) == t:
        return frozenset({m - 1, m})
    return frozenset({m})


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    index: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return f"fail ({self.axiom}) at k={self.index}: {self.detail}"


def validate(s: SignpostSequence, prefix_len: int) -> ValidationReport:
    """Check the signpost axioms on ``k = 0 .. prefix_len``.

    Per-index checks (zero start, ``[k-1, k]`` range, strict increase on
    ``k >= 1``) run in index order; the disjunction axiom needs the whole
    prefix and is checked last.
    """
    if prefix_len < 2:
        raise ValueError("prefix_len must be at least 2")
    try:
        values = [value(s, k) for k in range(prefix_len + 1)]
    except OutOfRange as exc:
        return ValidationReport(False, "table-length", len(s.table), str(exc))
    return validate_prefix(values)


def validate_prefix(values: Sequence[Fraction]) -> ValidationReport:
    if values[0] != 0:
        return ValidationReport(False, "zero-start", 0, f"s(0) = {values[0]}")
    for k in range(1, len(values)):
        v = values[k]
        if not (k - 1 <= v <= k):
            return ValidationReport(False, "range", k, f"s({k}) = {v} not in [{k - 1}, {k}]")
        if k >= 2 and v <= values[k - 1]:
            return ValidationReport(False, "monotonicity", k, f"s({k}) = {v} <= s({k - 1})")
    lower = next((k for k in range(2, len(values)) if values[k] == k - 1), None)
    upper = next((k for k in range(1, len(values)) if values[k] == k), None)
    if lower is not None and upper is not None:
        return ValidationReport(
            False, "disjunction", lower,
            f"s({lower}) = {lower - 1} and s({upper}) = {upper} both touch the range ends",
        )
    return ValidationReport(True)
