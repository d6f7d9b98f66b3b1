"""Brute-force reference implementations.

These enumerate candidate answers exhaustively and filter them with direct
checks of the defining conditions.  They are slow by design and guarded by
hard size limits (:class:`TooLarge`), and exist so that the fast algorithms
can be cross-checked and their reference values reproduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .biprop import TwoDimInstance, verify_biproportional
from .divisor import apportion, is_valid_apportionment
from .election import Allocation, ElectionInstance, cross_tabs, party_totals
from .errors import TooLarge
from .signpost import SignpostSequence, rounding_set

MAX_CANDIDATES = 20
MAX_GRID = 10**6


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_apportion(Q: Sequence, h: int, s: SignpostSequence) -> frozenset[tuple[int, ...]]:
    """Every seat vector summing to ``h`` that passes the multiplier-interval test."""
    n = len(Q)
    if math.comb(h + n - 1, n - 1) > MAX_GRID:
        raise TooLarge("too many seat vectors to enumerate")
    return frozenset(S for S in _compositions(h, n) if is_valid_apportionment(Q, h, s, S))


def enumerate_feasible_allocations(I: ElectionInstance, s: SignpostSequence) -> frozenset[Allocation]:
    """All allocations meeting type parity and some divisor apportionment of the party totals."""
    if len(I.candidates) > MAX_CANDIDATES:
        raise TooLarge(f"{len(I.candidates)} candidates exceed the limit of {MAX_CANDIDATES}")
    targets = apportion(party_totals(I), I.h, s)
    out = set()
    for chosen in combinations(I.candidates, I.h):
        seats = [0] * I.n
        f = 0
        for c in chosen:
            seats[c.party] += 1
            f += c.ctype.value == "f"
        if abs(2 * f - I.h) != I.h % 2 or tuple(seats) not in targets:
            continue
        out.add(Allocation.from_elected(I, (c.id for c in chosen)))
    return frozenset(out)


def enumerate_marginal_matrices(J: Sequence[int], phi: Sequence[int], S) -> frozenset[tuple]:
    """All nonnegative integer ``n x 2`` matrices with the given marginals and caps."""
    if math.prod(j + 1 for j in J) > MAX_GRID:
        raise TooLarge("too many matrices to enumerate")
    if sum(J) != sum(phi):
        return frozenset()
    out = set()
    for f in product(*(range(j + 1) for j in J)):
        if sum(f) != phi[0]:
            continue
        x = tuple((a, j - a) for a, j in zip(f, J))
        if all(a <= ca and b <= cb for (a, b), (ca, cb) in zip(x, S)):
            out.add(x)
    return frozenset(out)


def brute_biproportional(T: TwoDimInstance, d: SignpostSequence) -> frozenset[tuple]:
    """Feasible matrices that pass the two-row exchange test."""
    return frozenset(
        x for x in enumerate_marginal_matrices(T.J, T.phi, T.S) if verify_biproportional(T, d, x)
    )


def lp_feasibility_oracle(I: ElectionInstance, J: Sequence[int]) -> bool:
    """Search the integer grid for per-(party, type) seat counts meeting parity bounds."""
    _, S = cross_tabs(I)
    if math.prod(cap + 1 for cap, _ in S) > MAX_GRID:
        raise TooLarge("grid too large")
    half = I.h // 2
    for f in product(*(range(cap + 1) for cap, _ in S)):
        m = [j - a for j, a in zip(J, f)]
        if any(v < 0 or v > cap for v, (_, cap) in zip(m, S)):
            continue
        if sum(f) >= half and sum(m) >= half:
            return True
    return False


@dataclass(frozen=True)
class MultiplierCertificate:
    """Multipliers witnessing that ``x`` rounds ``P[i][t] * row[i] * col[t]``.

    ``ratio`` is the closed interval of admissible ``col[F] / col[M]`` values
    (``math.inf`` as an open upper end, ``0`` as an open lower end).
    ``cells[i][t]`` is the interval the product ``row[i] * col[t]`` must lie
    in (upper end ``math.inf`` for a cell at its cap), or ``None`` when the
    cell is unconstrained.  ``row`` and ``col`` are one concrete witness with
    ``col[M] = 1``.
    """

    ratio: tuple
    cells: tuple
    row: tuple[Fraction, ...]
    col: tuple[Fraction, Fraction]


def _cell_interval(p: Fraction, x: int, cap, d: SignpostSequence):
    """``(lo, hi)`` for the multiplier product, ``None`` if free, ``False`` if impossible.

    A cell filled to its cap only keeps the lower bound: it may want more
    seats than it can hold, never fewer.
    """
    if x >= cap:
        if x == 0:
            return None
        return False if p == 0 else (d(x) / p, math.inf)
    if p == 0:
        return None if x == 0 else False
    hi = d(x + 1)
    if hi == 0:
        return False
    return d(x) / p, hi / p


def multiplier_certificate(T: TwoDimInstance, d: SignpostSequence, x):
    """Search directly for row and column multipliers; ``None`` if none exist.

    Marginals and caps are checked too, so a non-``None`` result certifies
    membership in the solution set by definition.
    """
    x = tuple(tuple(int(v) for v in row) for row in x)
    if len(x) != T.n:
        return None
    for (a, b), (ca, cb), j in zip(x, T.S, T.J):
        if a < 0 or b < 0 or a > ca or b > cb or a + b != j:
            return None
    if sum(r[0] for r in x) != T.phi[0] or sum(r[1] for r in x) != T.phi[1]:
        return None

    cells = []
    r_lo: Fraction = Fraction(0)
    r_hi = math.inf
    for i in range(T.n):
        row = []
        for t in range(2):
            c = _cell_interval(T.P[i][t], x[i][t], T.S[i][t], d)
            if c is False:
                return None
            row.append(c)
        cells.append(tuple(row))
        f, m = row
        # with col[M] = 1: row[i] in m-range and row[i] * r in f-range
        f_lo, f_hi = f if f else (Fraction(0), math.inf)
        m_lo, m_hi = m if m else (Fraction(0), math.inf)
        if f_lo > 0:
            r_lo = max(r_lo, f_lo / m_hi) if m_hi != math.inf else r_lo
        if m_lo > 0 and f_hi != math.inf:
            r_hi = min(r_hi, f_hi / m_lo)
    if r_lo > r_hi:
        return None

    r = r_lo if r_lo > 0 else (Fraction(r_hi) if r_hi != math.inf else Fraction(1))
    lams = []
    for f, m in cells:
        f_lo, f_hi = f if f else (Fraction(0), math.inf)
        m_lo, m_hi = m if m else (Fraction(0), math.inf)
        lo = max(f_lo / r, m_lo)
        hi = min(f_hi / r if f_hi != math.inf else math.inf, m_hi)
        if lo > hi:
            return None
        lam = lo if lo > 0 else (Fraction(hi) if hi != math.inf else Fraction(1))
        lams.append(lam)
    mu = (r, Fraction(1))

    for i in range(T.n):
        for t in range(2):
            v = T.P[i][t] * lams[i] * mu[t]
            if x[i][t] < T.S[i][t]:
                if x[i][t] not in rounding_set(d, v):
                    return None
            elif d(x[i][t]) > v:
                return None
    return MultiplierCertificate((r_lo, r_hi), tuple(cells), tuple(lams), mu)


def definition_biproportional(T: TwoDimInstance, d: SignpostSequence) -> frozenset[tuple]:
    """Feasible matrices admitting explicit multipliers."""
    return frozenset(
        x for x in enumerate_marginal_matrices(T.J, T.phi, T.S)
        if multiplier_certificate(T, d, x) is not None
    )
