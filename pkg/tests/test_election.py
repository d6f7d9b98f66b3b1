import random
from dataclasses import replace
from fractions import Fraction
from itertools import product

import pytest

from parity_apportion import (
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
from parity_apportion.election import allocation_from_counts, elected_counts, leading_type, satisfies_parity
from parity_apportion.errors import MarginalMismatch
from parity_apportion.generators import gen_paper_election, gen_random_supply
from parity_apportion.oracles import lp_feasibility_oracle

from support import SEEDS, small_election


def _tiny(h, *cells):
    cands = [Candidate(f"c{k}", p, v, CType(t)) for k, (p, v, t) in enumerate(cells)]
    return ElectionInstance(tuple(cands), max(p for p, _, _ in cells) + 1, h)


def test_ranking_of_stuck_instance():
    I = gen_paper_election("stuck8")
    assert candidate_order(I) == [f"c{k}" for k in (4, 5, 6, 7, 8, 9, 10, 11, 12, 1, 2, 3)]


def test_equal_votes_rank_lower_party_first():
    I = ElectionInstance((Candidate("b", 1, 5, CType.F), Candidate("a", 0, 5, CType.M)), 2, 1)
    assert candidate_order(I) == ["a", "b"]


def test_scaling_keeps_order():
    I = gen_paper_election("stuck8")
    assert candidate_order(scale(I, 3)) == candidate_order(I)
    assert scale(I, 1) == I
    with pytest.raises(ValueError):
        scale(I, 0)


def test_party_totals():
    assert party_totals(gen_paper_election("stuck8")) == (500, 300)
    assert party_totals(gen_paper_election("theorem61")) == (1200, 600)
    assert party_totals(_tiny(1, (0, 0, "f"), (1, 0, "m"))) == (0, 0)


def test_cross_tabs():
    P, S = cross_tabs(gen_paper_election("theorem61"))
    assert P == ((1035, 165), (552, 48)) and S == ((3, 3), (3, 3))
    P, S = cross_tabs(gen_paper_election("stuck8"))
    assert P == ((492, 8), (24, 276))
    P, S = cross_tabs(_tiny(1, (0, 5, "f")))
    assert P == ((5, 0),) and S == ((1, 0),)


def test_parity_marginal():
    assert parity_marginal(gen_paper_election("theorem61")) == (3, 3)
    f_leads = _tiny(5, (0, 3, "f"), (0, 2, "m"))
    assert parity_marginal(f_leads) == (3, 2)
    m_leads = _tiny(5, (0, 1, "f"), (0, 2, "m"))
    assert parity_marginal(m_leads) == (2, 3)
    tie = _tiny(5, (0, 2, "f"), (0, 2, "m"))
    assert parity_marginal(tie) == (3, 2)
    assert parity_marginal(replace(tie, tie_break=TieBreak.PREFER_M)) == (2, 3)


def test_leading_type_ignores_scale():
    I = _tiny(3, (0, 7, "f"), (1, 9, "m"))
    assert leading_type(I) is leading_type(scale(I, Fraction(1, 9))) is CType.M


def test_supply_condition():
    assert satisfies_supply(gen_paper_election("theorem61"))
    assert not satisfies_supply(gen_paper_election("infeasible16"))
    assert satisfies_supply(_tiny(1, (0, 1, "f"), (0, 1, "m")))


def test_infeasible_instance_for_every_split():
    I = gen_paper_election("infeasible16")
    for a in range(17):
        assert not feasible_for(I, (a, 16 - a))
        assert not lp_feasibility_oracle(I, (a, 16 - a))


def test_stuck_instance_is_feasible():
    I = gen_paper_election("stuck8")
    assert feasible_for(I, (5, 3)) and lp_feasibility_oracle(I, (5, 3))


def test_feasible_for_checks_marginal():
    with pytest.raises(MarginalMismatch):
        feasible_for(gen_paper_election("stuck8"), (5, 2))


def test_supply_instances_feasible_for_every_split():
    for seed in range(30):
        I = gen_random_supply(seed, 2, 1 + seed % 8, 10)
        for a in range(I.h + 1):
            assert feasible_for(I, (a, I.h - a))


def test_feasible_for_matches_grid_search():
    for seed in SEEDS:
        I = small_election(seed, n_max=4, h_max=8, per_cell_max=3, cap=20)
        for J in product(range(I.h + 1), repeat=I.n):
            if sum(J) == I.h:
                assert feasible_for(I, J) == lp_feasibility_oracle(I, J), (seed, J)


def test_allocation_helpers():
    I = gen_paper_election("theorem61")
    E = allocation_from_counts(I, ((3, 1), (0, 2)))
    assert E.elected == {"c1_1", "c1_2", "c1_3", "c1_4", "c2_4", "c2_5"}
    assert elected_counts(I, E) == ((3, 1), (0, 2))
    assert satisfies_parity(I, E)
    assert E["c1_1"] == 1 and E["c2_1"] == 0
    assert Allocation.from_mapping(I, E.as_dict()) == E
    with pytest.raises(ValueError):
        Allocation.from_elected(I, ["nobody"])
    with pytest.raises(ValueError):
        allocation_from_counts(I, ((4, 0), (0, 2)))


def test_instance_validation():
    with pytest.raises(ValueError):
        Candidate("x", 0, -1, CType.F)
    with pytest.raises(ValueError):
        ElectionInstance((Candidate("x", 0, 1, CType.F), Candidate("x", 0, 1, CType.M)), 1, 1)
    with pytest.raises(ValueError):
        ElectionInstance((Candidate("x", 2, 1, CType.F),), 1, 1)
    with pytest.raises(ValueError):
        ElectionInstance((), 1, 0)


def test_random_supply_is_deterministic():
    a = gen_random_supply(42, 2, 4, 10)
    assert a == gen_random_supply(42, 2, 4, 10)
    assert satisfies_supply(a)
    assert a != gen_random_supply(43, 2, 4, 10)


def test_random_votes_are_integers_in_range():
    I = gen_random_supply(random.Random(1).randint(0, 99), 3, 5, 7)
    assert all(1 <= c.votes <= 7 and c.votes.denominator == 1 for c in I.candidates)
