"""Constructed instances: large-gap and row-violation matrices, the three fixed
example elections, and random instances that satisfy the supply condition."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .biprop import TwoDimInstance
from .election import Candidate, CType, ElectionInstance
from .signpost import SignpostSequence

Matrix = tuple[tuple, ...]


@dataclass(frozen=True)
class HardGapInstance:
    instance: TwoDimInstance
    ell: int | None
    n_rows: int
    expected_x: tuple[tuple[int, int], ...]
    expected_F: tuple[tuple[Fraction, Fraction], ...]


def gap_gamma(ell: int, d: SignpostSequence, y: Fraction) -> Fraction:
    """Difference of the two products in the exchange test between row 1 and
    a small row of the gap instance; negative means the large-gap matrix wins."""
    y = Fraction(y)
    return d(7 + ell) * d(3) / (21 - 7 * y) - d(1) ** 2 / (ell * y)


def find_n(ell: int, d: SignpostSequence) -> int:
    """Smallest row count ``n`` (with ``ell / n < 3``) making :func:`gap_gamma` negative."""
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    if d(1) <= 0:
        raise ValueError("find_n needs a signpost sequence with a positive first value")
    n = ell // 3 + 1
    while gap_gamma(ell, d, Fraction(ell, n)) >= 0:
        n += 1
    return n


def _scale(P, a) -> Matrix:
    return tuple((p * a, q * a) for p, q in P)


def gen_gap_instance(ell: int, d: SignpostSequence) -> HardGapInstance:
    """Uncapped instance whose unique solution misses the fair share by ``ell`` in row 1."""
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    if d(1) > 0:
        n = find_n(ell, d)
        y = Fraction(ell, n)
        P = ((Fraction(7), Fraction(ell)),) + ((y, 3 - y),) * n
        J = (7 + ell,) + (3,) * n
        phi = (7 + ell, 3 * n)
        x = ((7 + ell, 0),) + ((0, 3),) * n
        factor = n
    else:
        n = ell + 1
        y = Fraction(1, ell + 1)
        P = ((Fraction(ell + 1), Fraction(1)),) + ((y, 3 - y),) * n
        J = (ell + 2,) + (3,) * n
        phi = (ell + 2, 3 * ell + 3)
        x = ((1, ell + 1),) + ((1, 2),) * n
        factor = ell + 1
    T = TwoDimInstance.uncapped(_scale(P, factor), J, phi)
    return HardGapInstance(T, ell, n + 1, x, P)


def row_violation_epsilon(d: SignpostSequence) -> Fraction:
    """Midpoint of the admissible range for the small entry, clipped to ``[0, 1]``."""
    a, b = d(5), d(6)
    lo = (3 * b - 14 * a) / (3 * b + 7 * a)
    hi = 21 * a / (3 * b + 7 * a)
    lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
    if lo > hi:
        raise ValueError("no admissible epsilon for this signpost sequence")
    return (lo + hi) / 2


def gen_row_violation_instance(d: SignpostSequence) -> HardGapInstance:
    """Uncapped instance with equal column totals whose unique solution breaks
    the rounded fair share in at least one row."""
    if d(1) > 0:
        n = math.ceil(1 / d(1) ** 2 + 1)
        y = Fraction(1, n)
        P = ((Fraction(3 * n - 1), Fraction(1)),) + ((y, 3 - y),) * n
        J = (3 * n,) + (3,) * n
        phi = (3 * n, 3 * n)
        x = ((3 * n, 0),) + ((0, 3),) * n
        factor = n
        rows = n + 1
    else:
        eps = row_violation_epsilon(d)
        P = ((Fraction(7), Fraction(3)), (eps, 3 - eps), (1 - eps, 2 + eps))
        J = (10, 3, 3)
        phi = (8, 8)
        x = ((6, 4), (1, 2), (1, 2))
        factor = eps.denominator
        rows = 3
    T = TwoDimInstance.uncapped(_scale(P, factor), J, phi)
    return HardGapInstance(T, None, rows, x, P)


PAPER_ELECTIONS = ("infeasible16", "stuck8", "theorem61")


def _cands(party: int, cells) -> list[Candidate]:
    out = []
    for j, (votes, t) in enumerate(cells, start=1):
        out.append(Candidate(f"c{party + 1}_{j}", party, Fraction(votes), CType(t)))
    return out


def gen_paper_election(which: str) -> ElectionInstance:
    key = which.lower()
    if key == "infeasible16":
        cands = _cands(0, [(1, "f")] * 8 + [(1, "m")] * 6) + _cands(1, [(1, "f"), (1, "m")])
        return ElectionInstance(tuple(cands), 2, 16)
    if key == "stuck8":
        votes = [4, 3, 1, 165, 164, 163, 93, 92, 91, 9, 8, 7]
        types = "mmmfffmmmfff"
        cands = [
            Candidate(f"c{k + 1}", 0 if k < 6 else 1, Fraction(v), CType(t))
            for k, (v, t) in enumerate(zip(votes, types))
        ]
        return ElectionInstance(tuple(cands), 2, 8)
    if key == "theorem61":
        cands = _cands(0, [(345, "f")] * 3 + [(55, "m")] * 3) + _cands(1, [(184, "f")] * 3 + [(16, "m")] * 3)
        return ElectionInstance(tuple(cands), 2, 6)
    raise ValueError(f"unknown example election {which!r}; expected one of {PAPER_ELECTIONS}")


def gen_random_supply(seed: int, n: int, h: int, max_vote: int, *, extra: int = 1) -> ElectionInstance:
    """Random instance with between ``ceil(h/2)`` and ``ceil(h/2) + extra``
    candidates per (party, type) cell and integer votes in ``[1, max_vote]``."""
    if n < 1 or h < 1 or max_vote < 1:
        raise ValueError("n, h and max_vote must be positive")
    rng = random.Random(seed)
    base = math.ceil(h / 2)
    cands = []
    for i in range(n):
        k = 0
        for t in (CType.F, CType.M):
            for _ in range(base + rng.randint(0, extra)):
                k += 1
                cands.append(Candidate(f"p{i + 1}c{k}", i, Fraction(rng.randint(1, max_vote)), t))
    return ElectionInstance(tuple(cands), n, h)
