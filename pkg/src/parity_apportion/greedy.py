"""Greedy election with parity correction.

Each party first elects its top candidates regardless of type.  If the two
types end up unbalanced, the worst-ranked elected candidate of the
over-represented type is swapped for the best unelected candidate of the
other type from the same party, until the imbalance is ``h mod 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .divisor import apportion
from .election import (
    Allocation,
    CType,
    ElectionInstance,
    candidate_order,
    party_totals,
    ranked,
)
from .errors import MarginalMismatch, NotEnoughCandidates, Stuck
from .signpost import SignpostSequence


@dataclass(frozen=True)
class GreedyTrace:
    J: tuple[int, ...]
    oblivious: Allocation
    swaps: tuple[tuple[str, str], ...]
    final: Allocation

    def to_json(self) -> dict:
        return {
            "J": list(self.J),
            "oblivious": sorted(self.oblivious.elected),
            "swaps": [{"removed": r, "inserted": a} for r, a in self.swaps],
            "final": sorted(self.final.elected),
        }


def type_oblivious(I: ElectionInstance, J: Sequence[int]) -> Allocation:
    """Elect the top ``J[i]`` candidates of every party, ignoring type."""
    if len(J) != I.n:
        raise ValueError("seat vector length differs from the number of parties")
    if sum(J) != I.h:
        raise MarginalMismatch(f"seats sum to {sum(J)}, house size is {I.h}")
    sizes = [0] * I.n
    for c in I.candidates:
        sizes[c.party] += 1
    for i, (want, have) in enumerate(zip(J, sizes)):
        if want > have:
            raise NotEnoughCandidates(i, want, have)
    taken = [0] * I.n
    elected = []
    for c in ranked(I):
        if taken[c.party] < J[c.party]:
            taken[c.party] += 1
            elected.append(c.id)
    return Allocation.from_elected(I, elected)


def greedy_parity(I: ElectionInstance, J: Sequence[int]) -> GreedyTrace:
    oblivious = type_oblivious(I, J)
    order = ranked(I)
    elected = set(oblivious.elected)

    def count(t: CType) -> int:
        return sum(1 for c in order if c.id in elected and c.ctype is t)

    f, m = count(CType.F), count(CType.M)
    swaps: list[tuple[str, str]] = []
    if abs(f - m) != I.h % 2:
        over = CType.F if f > m else CType.M
        under = over.other
        while abs(count(CType.F) - count(CType.M)) != I.h % 2:
            out = next(c for c in reversed(order) if c.id in elected and c.ctype is over)
            pool = [c for c in order if c.party == out.party and c.ctype is under and c.id not in elected]
            if not pool:
                raise Stuck(out.party, out.id, I.party_label(out.party))
            elected.discard(out.id)
            elected.add(pool[0].id)
            swaps.append((out.id, pool[0].id))
    return GreedyTrace(tuple(J), oblivious, tuple(swaps), Allocation.from_elected(I, elected))


def mechanism_greedy(I: ElectionInstance, s: SignpostSequence) -> frozenset[Allocation]:
    return frozenset(greedy_parity(I, J).final for J in apportion(party_totals(I), I.h, s))


def prefix_length(a: Allocation, b: Allocation, I: ElectionInstance) -> int:
    """Number of leading candidates, in ranking order, on which ``a`` and ``b`` agree."""
    fa, fb = a.as_dict(), b.as_dict()
    n = 0
    for cid in candidate_order(I):
        if fa[cid] != fb[cid]:
            break
        n += 1
    return n
