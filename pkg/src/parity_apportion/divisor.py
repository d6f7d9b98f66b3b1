"""One-dimensional divisor-method apportionment with full tie enumeration."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import AdamsHouseTooSmall, MarginalMismatch, TieExplosion
from .signpost import SignpostSequence

DEFAULT_TIE_CAP = 64

SeatVector = tuple[int, ...]


def tie_cap(cap: int | None = None) -> int:
    """Resolve the tie cap: explicit argument, then ``APPORTION_MAX_TIES``, then 64."""
    if cap is not None:
        return cap
    env = os.environ.get("APPORTION_MAX_TIES")
    return int(env) if env else DEFAULT_TIE_CAP


def _votes(Q: Sequence) -> list[Fraction]:
    votes = [Fraction(q) for q in Q]
    if any(q < 0 for q in votes):
        raise ValueError("votes must be nonnegative")
    return votes


def _priority(q: Fraction, d: Fraction):
    return math.inf if d == 0 else q / d


def apportion(Q: Sequence, h: int, s: SignpostSequence, *, cap: int | None = None) -> frozenset[SeatVector]:
    """Return every seat vector the divisor method ``s`` allows for ``(Q, h)``.

    Seats are handed out by highest averages.  The priority of the last seat
    given away is the critical value: every seat with a strictly higher
    priority is forced, and the remaining seats go to any subset of the
    parties whose next priority equals it exactly.  Zero-vote parties never
    receive a seat.
    """
    votes = _votes(Q)
    n = len(votes)
    if h < 0:
        raise ValueError("house size must be nonnegative")
    if h == 0:
        return frozenset({(0,) * n})
    positive = [i for i, q in enumerate(votes) if q > 0]
    if not positive:
        raise ValueError("at least one party needs votes when the house is nonempty")
    if s(1) == 0 and h < len(positive):
        raise AdamsHouseTooSmall(h, len(positive))

    seats = [0] * n
    last = None
    for _ in range(h):
        best = max(positive, key=lambda i: _priority(votes[i], s(seats[i] + 1)))
        last = _priority(votes[best], s(seats[best] + 1))
        seats[best] += 1

    forced = [0] * n
    for i in positive:
        while forced[i] < seats[i] and _priority(votes[i], s(forced[i] + 1)) > last:
            forced[i] += 1
    tied = [i for i in positive if _priority(votes[i], s(forced[i] + 1)) == last]
    free = h - sum(forced)

    limit = tie_cap(cap)
    count = math.comb(len(tied), free)
    if count > limit:
        raise TieExplosion(count, limit)
    out = set()
    for chosen in combinations(tied, free):
        vec = list(forced)
        for i in chosen:
            vec[i] += 1
        out.add(tuple(vec))
    return frozenset(out)


def multiplier_interval(Q: Sequence, S: Sequence[int], s: SignpostSequence):
    """Closed interval ``(lo, hi)`` of divisors ``lam`` with ``S_i`` in ``R(Q_i / lam)``.

    ``hi`` is ``math.inf`` when nothing bounds the divisor from above, and
    ``lo == 0`` means the interval is open at zero.  Returns ``None`` when
    no divisor works.
    """
    votes = _votes(Q)
    if len(votes) != len(S):
        raise ValueError("votes and seats differ in length")
    lo: Fraction = Fraction(0)
    hi = math.inf
    for q, k in zip(votes, S):
        if k < 0:
            return None
        if q == 0:
            if k != 0:
                return None
            continue
        up = s(k + 1)
        if up == 0:
            return None
        lo = max(lo, q / up)
        down = s(k)
        if down > 0:
            hi = min(hi, q / down)
    if lo > hi:
        return None
    return lo, hi


def is_valid_apportionment(Q: Sequence, h: int, s: SignpostSequence, S: Sequence[int]) -> bool:
    if sum(S) != h:
        raise MarginalMismatch(f"seats sum to {sum(S)}, house size is {h}")
    return multiplier_interval(Q, S, s) is not None
