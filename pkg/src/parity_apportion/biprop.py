"""Capacitated biproportional apportionment for two columns (F and M).

With only two columns, a matrix is fixed by its F column.  Each row's F entry
ranges over an interval set by the row total and the two caps.  The
min-cost-flow objective, a sum of ``log(d(l) / P)`` edge costs, is separable
and convex in those F entries.  The problem is therefore a resource
allocation: start every row at its lowest F value, then add the cheapest unit
increments until the F column total is reached.

Costs are never evaluated as logarithms.  The cost of moving one seat of row
``i`` from M to F at F value ``k`` is the ratio

    d(k + 1) * P[i][M] / (P[i][F] * d(J[i] - k))

and ratios are compared exactly.  A zero factor (a zero signpost value or a
zero vote cell) is replaced by a formal infinitesimal ``eps``.  A ratio then
becomes ``c * eps**e``, which orders zero-cost increments first and
infinite-cost ones last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from typing import Sequence

from .divisor import apportion, tie_cap
from .election import (
    Allocation,
    ElectionInstance,
    allocation_from_counts,
    cross_tabs,
    f_column_range,
    parity_marginal,
    party_totals,
)
from .errors import Infeasible, MarginalMismatch, TieExplosion
from .signpost import SignpostSequence

INF = math.inf
Matrix = tuple[tuple[int, int], ...]


@total_ordering
@dataclass(frozen=True)
class EpsNumber:
    """``coef * eps**power`` for a positive infinitesimal ``eps``; ``coef > 0``."""

    coef: Fraction
    power: int = 0

    @classmethod
    def of(cls, v) -> "EpsNumber":
        v = Fraction(v)
        if v < 0:
            raise ValueError("only nonnegative factors are supported")
        return cls(Fraction(1), 1) if v == 0 else cls(v, 0)

    def __mul__(self, other: "EpsNumber") -> "EpsNumber":
        return EpsNumber(self.coef * other.coef, self.power + other.power)

    def __truediv__(self, other: "EpsNumber") -> "EpsNumber":
        return EpsNumber(self.coef / other.coef, self.power - other.power)

    def __lt__(self, other: "EpsNumber") -> bool:
        if self.power != other.power:
            return self.power > other.power
        return self.coef < other.coef

    def __str__(self) -> str:
        if self.power == 0:
            return str(self.coef)
        return f"{self.coef}*eps^{self.power}"


@dataclass(frozen=True)
class TwoDimInstance:
    """Vote matrix ``P``, caps ``S`` (``math.inf`` allowed), row totals ``J``, column totals ``phi``."""

    P: tuple[tuple[Fraction, Fraction], ...]
    S: tuple[tuple, ...]
    J: tuple[int, ...]
    phi: tuple[int, int]

    def __post_init__(self):
        P = tuple((Fraction(a), Fraction(b)) for a, b in self.P)
        S = tuple((a if a == INF else int(a), b if b == INF else int(b)) for a, b in self.S)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "J", tuple(int(j) for j in self.J))
        object.__setattr__(self, "phi", tuple(int(p) for p in self.phi))
        if not (len(P) == len(S) == len(self.J)):
            raise ValueError("P, S and J must have one entry per row")
        if len(self.phi) != 2:
            raise ValueError("phi has one entry per column")
        if any(v < 0 for row in P for v in row):
            raise ValueError("votes must be nonnegative")
        if any(v < 0 for row in S for v in row) or any(j < 0 for j in self.J) or min(self.phi) < 0:
            raise ValueError("caps and marginals must be nonnegative")
        if sum(self.J) != sum(self.phi):
            raise MarginalMismatch(f"row totals sum to {sum(self.J)}, column totals to {sum(self.phi)}")

    @classmethod
    def uncapped(cls, P, J, phi) -> "TwoDimInstance":
        return cls(P, tuple((INF, INF) for _ in P), J, phi)

    @classmethod
    def from_election(cls, I: ElectionInstance, J: Sequence[int]) -> "TwoDimInstance":
        P, S = cross_tabs(I)
        return cls(P, S, tuple(J), parity_marginal(I))

    @property
    def n(self) -> int:
        return len(self.J)

    def scaled(self, alpha) -> "TwoDimInstance":
        a = Fraction(alpha)
        return TwoDimInstance(tuple((p * a, q * a) for p, q in self.P), self.S, self.J, self.phi)


@dataclass(frozen=True)
class BipropSolution:
    x: Matrix
    tie_flag: bool


def f_bounds(T: TwoDimInstance) -> list[tuple[int, int]]:
    return [(lo, int(hi)) for lo, hi in f_column_range(T.J, T.S)]


def is_feasible(T: TwoDimInstance) -> bool:
    """Whether any integral matrix meets the marginals and the caps."""
    bounds = f_bounds(T)
    if any(lo > hi for lo, hi in bounds):
        return False
    return sum(lo for lo, _ in bounds) <= T.phi[0] <= sum(hi for _, hi in bounds)


def increment_cost(T: TwoDimInstance, d: SignpostSequence, i: int, k: int) -> EpsNumber:
    """Cost of raising row ``i``'s F entry from ``k`` to ``k + 1``."""
    pf, pm = T.P[i]
    e = EpsNumber.of
    return e(d(k + 1)) * e(pm) / (e(pf) * e(d(T.J[i] - k)))


def _matrix(T: TwoDimInstance, f: Sequence[int]) -> Matrix:
    return tuple((k, j - k) for k, j in zip(f, T.J))


def solve_biproportional(
    T: TwoDimInstance,
    d: SignpostSequence,
    *,
    cap: int | None = None,
    log: list | None = None,
) -> frozenset[BipropSolution]:
    """All optimal matrices of the capacitated two-column flow problem.

    ``log``, if given, receives one dict per greedy increment of the base run.
    """
    if not is_feasible(T):
        raise Infeasible("no integral matrix satisfies the marginals and caps")
    bounds = f_bounds(T)
    base = [lo for lo, _ in bounds]
    budget = T.phi[0] - sum(base)
    if budget == 0:
        return frozenset({BipropSolution(_matrix(T, base), False)})

    # Run the greedy once to find the cost of the last increment taken.
    k = list(base)
    last = None
    for step in range(budget):
        open_rows = [i for i in range(T.n) if k[i] < bounds[i][1]]
        i = min(open_rows, key=lambda r: increment_cost(T, d, r, k[r]))
        last = increment_cost(T, d, i, k[i])
        if log is not None:
            log.append({"step": step + 1, "row": i, "from": k[i], "cost": str(last)})
        k[i] += 1

    forced = list(base)
    for i in range(T.n):
        while forced[i] < bounds[i][1] and increment_cost(T, d, i, forced[i]) < last:
            forced[i] += 1
    tied = [
        i for i in range(T.n)
        if forced[i] < bounds[i][1] and increment_cost(T, d, i, forced[i]) == last
    ]
    free = T.phi[0] - sum(forced)
    count = math.comb(len(tied), free)
    limit = tie_cap(cap)
    if count > limit:
        raise TieExplosion(count, limit)
    tie = count > 1
    out = set()
    for chosen in combinations(tied, free):
        f = list(forced)
        for i in chosen:
            f[i] += 1
        out.add(BipropSolution(_matrix(T, f), tie))
    return frozenset(out)


def _shape_ok(T: TwoDimInstance, x) -> bool:
    if len(x) != T.n or any(len(row) != 2 for row in x):
        return False
    for (a, b), (ca, cb), j in zip(x, T.S, T.J):
        if a < 0 or b < 0 or a > ca or b > cb or a + b != j:
            return False
    return sum(r[0] for r in x) == T.phi[0] and sum(r[1] for r in x) == T.phi[1]


def verify_biproportional(T: TwoDimInstance, d: SignpostSequence, x, *, strict: bool = False) -> bool:
    """Marginal, cap and two-row exchange test.

    No row that can gain an F seat may do so more cheaply than any other row
    can give one up.  With ``strict`` the exchange inequalities must all be
    strict, which certifies that ``x`` is the only solution.
    """
    x = tuple(tuple(int(v) for v in row) for row in x)
    if not _shape_ok(T, x):
        return False
    bounds = f_bounds(T)
    up = [i for i in range(T.n) if x[i][0] < bounds[i][1]]
    down = [j for j in range(T.n) if x[j][0] > bounds[j][0]]
    for i in up:
        gain = increment_cost(T, d, i, x[i][0])
        for j in down:
            if i == j:
                continue
            give = increment_cost(T, d, j, x[j][0] - 1)
            if gain < give or (strict and gain == give):
                return False
    return True


def exchange_ties(T: TwoDimInstance, d: SignpostSequence, x) -> list[tuple[int, int]]:
    """Row pairs ``(i, j)`` where moving an F seat from ``j`` to ``i`` costs exactly nothing."""
    bounds = f_bounds(T)
    out = []
    for i in range(T.n):
        if x[i][0] >= bounds[i][1]:
            continue
        for j in range(T.n):
            if i != j and x[j][0] > bounds[j][0]:
                if increment_cost(T, d, i, x[i][0]) == increment_cost(T, d, j, x[j][0] - 1):
                    out.append((i, j))
    return out


def certificate(T: TwoDimInstance, d: SignpostSequence, x):
    """Exact multiplier intervals witnessing ``x``, or ``None``.

    See :func:`parity_apportion.oracles.multiplier_certificate`.
    """
    from .oracles import multiplier_certificate

    return multiplier_certificate(T, d, x)


def biprop_outcomes(I: ElectionInstance, party_s: SignpostSequence, biprop_s: SignpostSequence, *, cap=None):
    """``(J, solutions)`` for every party seat vector ``J``, in sorted order of ``J``."""
    out = []
    for J in sorted(apportion(party_totals(I), I.h, party_s, cap=cap)):
        T = TwoDimInstance.from_election(I, J)
        out.append((J, solve_biproportional(T, biprop_s, cap=cap)))
    return out


def mechanism_biprop(
    I: ElectionInstance, party_s: SignpostSequence, biprop_s: SignpostSequence, *, cap=None
) -> frozenset[Allocation]:
    return frozenset(
        allocation_from_counts(I, sol.x)
        for _, sols in biprop_outcomes(I, party_s, biprop_s, cap=cap)
        for sol in sols
    )
