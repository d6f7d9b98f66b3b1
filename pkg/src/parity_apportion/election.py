"""Election instances with two candidate types.

An instance lists candidates with a party, a vote count and a type (F or M),
plus the house size.  This module builds the derived objects the mechanisms
work on: the candidate ranking, party totals, the party-by-type cross tables,
the parity column marginal and the feasibility test for a party seat vector.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import MarginalMismatch


class CType(enum.Enum):
    F = "f"
    M = "m"

    @property
    def other(self) -> "CType":
        return CType.M if self is CType.F else CType.F

    @property
    def column(self) -> int:
        return 0 if self is CType.F else 1


class TieBreak(enum.Enum):
    """Which type takes the odd seat when both types have exactly equal votes."""

    PREFER_F = "prefer_f"
    PREFER_M = "prefer_m"


@dataclass(frozen=True)
class Candidate:
    id: str
    party: int
    votes: Fraction
    ctype: CType

    def __post_init__(self):
        object.__setattr__(self, "votes", Fraction(self.votes))
        if self.votes < 0:
            raise ValueError(f"candidate {self.id} has negative votes")
        if self.party < 0:
            raise ValueError(f"candidate {self.id} has a negative party index")


@dataclass(frozen=True)
class ElectionInstance:
    candidates: tuple[Candidate, ...]
    n: int
    h: int
    tie_break: TieBreak = TieBreak.PREFER_F
    party_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if self.h < 1:
            raise ValueError("house size must be at least 1")
        if self.n < 1:
            raise ValueError("an instance needs at least one party")
        ids = [c.id for c in self.candidates]
        if len(set(ids)) != len(ids):
            raise ValueError("candidate ids must be unique")
        for c in self.candidates:
            if c.party >= self.n:
                raise ValueError(f"candidate {c.id} names party {c.party}, only {self.n} exist")
        names = tuple(str(i + 1) for i in range(self.n)) if self.party_names is None else tuple(self.party_names)
        if len(names) != self.n:
            raise ValueError("party_names must list every party")
        object.__setattr__(self, "party_names", names)

    def party_label(self, i: int) -> str:
        return self.party_names[i]

    def by_id(self) -> dict[str, Candidate]:
        return {c.id: c for c in self.candidates}


@dataclass(frozen=True)
class Allocation:
    """Elected flags keyed by candidate id, stored as a sorted tuple for hashing."""

    flags: tuple[tuple[str, int], ...]

    @classmethod
    def from_elected(cls, I: ElectionInstance, elected: Iterable[str]) -> "Allocation":
        chosen = set(elected)
        unknown = chosen - {c.id for c in I.candidates}
        if unknown:
            raise ValueError(f"unknown candidate ids {sorted(unknown)}")
        return cls(tuple(sorted((c.id, int(c.id in chosen)) for c in I.candidates)))

    @classmethod
    def from_mapping(cls, I: ElectionInstance, flags: Mapping[str, int]) -> "Allocation":
        if set(flags) != {c.id for c in I.candidates}:
            raise ValueError("allocation must cover exactly the instance's candidates")
        if any(v not in (0, 1) for v in flags.values()):
            raise ValueError("allocation flags must be 0 or 1")
        return cls(tuple(sorted((k, int(v)) for k, v in flags.items())))

    def __getitem__(self, cid: str) -> int:
        return dict(self.flags)[cid]

    @property
    def elected(self) -> frozenset[str]:
        return frozenset(k for k, v in self.flags if v)

    def as_dict(self) -> dict[str, int]:
        return dict(self.flags)


def _order_key(c: Candidate):
    return (-c.votes, c.party, c.id)


def candidate_order(I: ElectionInstance) -> list[str]:
    """Candidate ids best first: votes descending, then party index, then id."""
    return [c.id for c in sorted(I.candidates, key=_order_key)]


def ranked(I: ElectionInstance) -> list[Candidate]:
    return sorted(I.candidates, key=_order_key)


def party_totals(I: ElectionInstance) -> tuple[Fraction, ...]:
    totals = [Fraction(0)] * I.n
    for c in I.candidates:
        totals[c.party] += c.votes
    return tuple(totals)


Matrix = tuple[tuple, ...]


def cross_tabs(I: ElectionInstance) -> tuple[Matrix, Matrix]:
    """Votes and candidate counts per (party, type); column 0 is F, column 1 is M."""
    P = [[Fraction(0), Fraction(0)] for _ in range(I.n)]
    S = [[0, 0] for _ in range(I.n)]
    for c in I.candidates:
        P[c.party][c.ctype.column] += c.votes
        S[c.party][c.ctype.column] += 1
    return tuple(map(tuple, P)), tuple(map(tuple, S))


def type_totals(I: ElectionInstance) -> tuple[Fraction, Fraction]:
    P, _ = cross_tabs(I)
    return sum((r[0] for r in P), Fraction(0)), sum((r[1] for r in P), Fraction(0))


def leading_type(I: ElectionInstance) -> CType:
    f, m = type_totals(I)
    if f != m:
        return CType.F if f > m else CType.M
    return CType.F if I.tie_break is TieBreak.PREFER_F else CType.M


def parity_marginal(I: ElectionInstance) -> tuple[int, int]:
    """Seats per type ``(F, M)``; with an odd house the vote-leading type gets the extra seat."""
    half = I.h // 2
    if I.h % 2 == 0:
        return half, half
    return (half + 1, half) if leading_type(I) is CType.F else (half, half + 1)


def satisfies_supply(I: ElectionInstance) -> bool:
    need = math.ceil(I.h / 2)
    _, S = cross_tabs(I)
    return all(cell >= need for row in S for cell in row)


def f_column_range(J: Sequence[int], S: Sequence[Sequence]) -> list[tuple[int, float]]:
    """Per-row bounds on the F-column entry given row totals ``J`` and caps ``S``.

    Caps may be ``math.inf``.  A row whose lower bound exceeds its upper bound
    cannot be filled.
    """
    out = []
    for j, (cap_f, cap_m) in zip(J, S):
        lo = max(0, j - cap_m)
        hi = min(j, cap_f)
        out.append((lo, hi))
    return out


def feasible_for(I: ElectionInstance, J: Sequence[int]) -> bool:
    """Whether some allocation with party seats ``J`` meets type parity."""
    if len(J) != I.n:
        raise ValueError("seat vector length differs from the number of parties")
    if sum(J) != I.h:
        raise MarginalMismatch(f"seats sum to {sum(J)}, house size is {I.h}")
    _, S = cross_tabs(I)
    ranges = f_column_range(J, S)
    if any(lo > hi for lo, hi in ranges):
        return False
    lo = sum(r[0] for r in ranges)
    hi = sum(r[1] for r in ranges)
    return lo <= I.h - I.h // 2 and hi >= I.h // 2


def scale(I: ElectionInstance, alpha) -> ElectionInstance:
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("scaling factor must be positive")
    return replace(I, candidates=tuple(replace(c, votes=c.votes * alpha) for c in I.candidates))


def elected_counts(I: ElectionInstance, E: Allocation) -> Matrix:
    """Elected candidates per (party, type)."""
    flags = E.as_dict()
    x = [[0, 0] for _ in range(I.n)]
    for c in I.candidates:
        if flags[c.id]:
            x[c.party][c.ctype.column] += 1
    return tuple(map(tuple, x))


def satisfies_parity(I: ElectionInstance, E: Allocation) -> bool:
    x = elected_counts(I, E)
    f = sum(r[0] for r in x)
    m = sum(r[1] for r in x)
    return abs(f - m) == I.h % 2


def party_seats(I: ElectionInstance, E: Allocation) -> tuple[int, ...]:
    return tuple(sum(r) for r in elected_counts(I, E))


def allocation_from_counts(I: ElectionInstance, x: Sequence[Sequence[int]]) -> Allocation:
    """Elect the top ``x[i][t]`` candidates of every (party, type) cell."""
    taken = [[0, 0] for _ in range(I.n)]
    elected = []
    for c in ranked(I):
        col = c.ctype.column
        if taken[c.party][col] < x[c.party][col]:
            taken[c.party][col] += 1
            elected.append(c.id)
    for i in range(I.n):
        for t in range(2):
            if taken[i][t] != x[i][t]:
                raise ValueError(f"cell ({i}, {t}) has fewer than {x[i][t]} candidates")
    return Allocation.from_elected(I, elected)
