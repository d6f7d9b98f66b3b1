"""Fair share (matrix scaling) of a strictly positive vote matrix.

The fair share is the unique positive matrix ``F[i][t] = P[i][t] * lam[i] * mu[t]``
whose rows sum to ``J`` and whose columns sum to ``phi``.  It is computed by
iterative proportional fitting in ``numpy.longdouble``.  Fitting alternately
rescales rows and columns until both sets of sums match to within ``tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .biprop import TwoDimInstance
from .errors import NonConvergence, NotStrictlyPositive

DTYPE = np.longdouble
SNAP = 1e-9


def to_ld(v) -> np.longdouble:
    """Exact-as-possible conversion of a rational to extended precision."""
    f = Fraction(v)
    return DTYPE(str(f.numerator)) / DTYPE(str(f.denominator))


@dataclass(frozen=True)
class FairShareResult:
    F: np.ndarray
    row_mult: np.ndarray
    col_mult: np.ndarray
    iterations: int
    residual: float

    def as_floats(self) -> list[list[float]]:
        return [[float(v) for v in row] for row in self.F]


def _residual(F: np.ndarray, J: np.ndarray, phi: np.ndarray) -> np.longdouble:
    return max(np.max(np.abs(F.sum(axis=1) - J)), np.max(np.abs(F.sum(axis=0) - phi)))


def fair_share(
    T: TwoDimInstance,
    *,
    tol: float = 1e-12,
    max_iter: int = 100_000,
    row_start: Sequence | None = None,
    col_start: Sequence | None = None,
) -> FairShareResult:
    """Scale ``T.P`` to the marginals ``(T.J, T.phi)``; caps are ignored.

    ``row_start`` and ``col_start`` optionally prescale the matrix so that
    fitting starts from ``diag(row_start) P diag(col_start)`` instead of ``P``.
    The limit does not depend on the start.
    """
    if any(v <= 0 for row in T.P for v in row):
        raise NotStrictlyPositive("the fair share needs every vote cell to be positive")
    if any(j <= 0 for j in T.J) or min(T.phi) <= 0:
        raise ValueError("the fair share needs positive row and column totals")

    P = np.array([[to_ld(v) for v in row] for row in T.P], dtype=DTYPE)
    J = np.array([to_ld(j) for j in T.J], dtype=DTYPE)
    phi = np.array([to_ld(p) for p in T.phi], dtype=DTYPE)
    lam = np.ones(T.n, dtype=DTYPE) if row_start is None else np.array([to_ld(v) for v in row_start], dtype=DTYPE)
    mu = np.ones(2, dtype=DTYPE) if col_start is None else np.array([to_ld(v) for v in col_start], dtype=DTYPE)
    if np.any(lam <= 0) or np.any(mu <= 0):
        raise ValueError("starting scalings must be positive")

    F = P * lam[:, None] * mu[None, :]
    it = 0
    res = _residual(F, J, phi)
    while res > tol:
        if it >= max_iter:
            raise NonConvergence(float(res), it)
        r = J / F.sum(axis=1)
        lam *= r
        F *= r[:, None]
        c = phi / F.sum(axis=0)
        mu *= c
        F *= c[None, :]
        it += 1
        res = _residual(F, J, phi)

    # only the products lam[i] * mu[t] are canonical; fix mu_F * mu_M = 1
    g = np.sqrt(mu[0] * mu[1])
    return FairShareResult(F, lam * g, mu / g, it, float(res))


def verify_fair_share(T: TwoDimInstance, F, tol: float = 1e-9) -> bool:
    """Marginals within ``tol`` and all two-row cross ratios equal to those of ``P``."""
    F = np.asarray(F.F if isinstance(F, FairShareResult) else F, dtype=DTYPE)
    if F.shape != (T.n, 2) or np.any(F <= 0):
        return False
    P = np.array([[to_ld(v) for v in row] for row in T.P], dtype=DTYPE)
    J = np.array([to_ld(j) for j in T.J], dtype=DTYPE)
    phi = np.array([to_ld(p) for p in T.phi], dtype=DTYPE)
    if _residual(F, J, phi) > tol:
        return False
    for i in range(T.n):
        for j in range(i + 1, T.n):
            a = F[i, 0] * F[j, 1] * P[i, 1] * P[j, 0]
            b = F[i, 1] * F[j, 0] * P[i, 0] * P[j, 1]
            if abs(a - b) > tol * max(a, b):
                return False
    return True


def quota_bounds(v) -> tuple[int, int]:
    """Floor and ceiling, treating values within 1e-9 of an integer as that integer."""
    v = float(v)
    near = round(v)
    if abs(v - near) <= SNAP:
        return near, near
    return math.floor(v), math.ceil(v)


@dataclass(frozen=True)
class EntryViolation:
    column: int
    value: int
    lower: int
    upper: int
    direction: str  # "above" or "below"


@dataclass(frozen=True)
class RowVerdict:
    row: int
    within: bool
    violations: tuple[EntryViolation, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "row": self.row,
            "within_quota": self.within,
            "violations": [
                {"column": "fm"[v.column], "value": v.value, "lower": v.lower, "upper": v.upper, "direction": v.direction}
                for v in self.violations
            ],
        }


def _matrix(F):
    return F.F if isinstance(F, FairShareResult) else F


def quota_report(x, F) -> list[RowVerdict]:
    F = _matrix(F)
    if len(x) != len(F):
        raise ValueError("x and F have different numbers of rows")
    out = []
    for i, (row_x, row_f) in enumerate(zip(x, F)):
        bad = []
        for t, (v, f) in enumerate(zip(row_x, row_f)):
            lo, hi = quota_bounds(f)
            if v < lo:
                bad.append(EntryViolation(t, int(v), lo, hi, "below"))
            elif v > hi:
                bad.append(EntryViolation(t, int(v), lo, hi, "above"))
        out.append(RowVerdict(i, not bad, tuple(bad)))
    return out


def lambda_metric(x, F) -> Fraction:
    """Share of rows with at least one entry outside its rounded fair-share bounds."""
    report = quota_report(x, F)
    return Fraction(sum(1 for r in report if not r.within), len(report))


def exceed_fraction(x, F) -> Fraction:
    """Entries strictly above the fair share, divided by the number of rows."""
    F = _matrix(F)
    count = sum(1 for row_x, row_f in zip(x, F) for v, f in zip(row_x, row_f) if v > float(f) + SNAP)
    return Fraction(count, len(F))
