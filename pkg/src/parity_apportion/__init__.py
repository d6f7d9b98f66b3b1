"""Seat apportionment with a two-type parity constraint.

Party seat totals come from a divisor method.  The seats are then filled
either by a greedy pass with parity correction or by capacitated
biproportional rounding.  Fair-share comparison tools and brute-force
reference oracles are included.
"""

from .biprop import (
    BipropSolution,
    TwoDimInstance,
    certificate,
    mechanism_biprop,
    solve_biproportional,
    verify_biproportional,
)
from .divisor import apportion, is_valid_apportionment, multiplier_interval
from .election import (
    Allocation,
    Candidate,
    CType,
    ElectionInstance,
    TieBreak,
    candidate_order,
    cross_tabs,
    feasible_for,
    parity_marginal,
    party_totals,
    satisfies_supply,
    scale,
)
from .errors import *  # noqa: F401,F403
from .fairshare import FairShareResult, fair_share, lambda_metric, quota_report, verify_fair_share
from .generators import (
    HardGapInstance,
    find_n,
    gen_gap_instance,
    gen_paper_election,
    gen_random_supply,
    gen_row_violation_instance,
)
from .greedy import GreedyTrace, greedy_parity, mechanism_greedy, prefix_length, type_oblivious
from .signpost import ADAMS, JEFFERSON, WEBSTER, SignpostSequence, custom, rounding_set, validate

__version__ = "0.1.0"
