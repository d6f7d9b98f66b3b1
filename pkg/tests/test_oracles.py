import math

import pytest

from parity_apportion import ADAMS, JEFFERSON, TwoDimInstance, greedy_parity
from parity_apportion.election import Candidate, CType, ElectionInstance
from parity_apportion.errors import TooLarge
from parity_apportion.generators import (
    gen_gap_instance,
    gen_paper_election,
    gen_random_supply,
    gen_row_violation_instance,
)
from parity_apportion.oracles import (
    brute_apportion,
    brute_biproportional,
    definition_biproportional,
    enumerate_feasible_allocations,
    enumerate_marginal_matrices,
    lp_feasibility_oracle,
    multiplier_certificate,
)

INF = math.inf


def test_brute_apportion():
    assert brute_apportion((1200, 600), 6, JEFFERSON) == {(4, 2)}
    assert brute_apportion((1, 1), 1, JEFFERSON) == {(1, 0), (0, 1)}
    with pytest.raises(TooLarge):
        brute_apportion([1] * 30, 200, JEFFERSON)


def test_feasible_allocations():
    assert enumerate_feasible_allocations(gen_paper_election("infeasible16"), JEFFERSON) == set()
    stuck = gen_paper_election("stuck8")
    found = enumerate_feasible_allocations(stuck, JEFFERSON)
    assert any(E.elected == {"c4", "c5", "c6", "c1", "c2", "c7", "c8", "c10"} for E in found)
    I = gen_paper_election("theorem61")
    assert greedy_parity(I, (4, 2)).final in enumerate_feasible_allocations(I, JEFFERSON)


def test_feasible_allocations_guard():
    cands = tuple(Candidate(f"c{k}", 0, 1, CType.F) for k in range(21))
    with pytest.raises(TooLarge):
        enumerate_feasible_allocations(ElectionInstance(cands, 1, 2), JEFFERSON)


def test_marginal_matrices():
    assert len(enumerate_marginal_matrices((1, 1), (1, 1), ((INF, INF),) * 2)) == 2
    # frozen from direct enumeration
    assert enumerate_marginal_matrices((4, 2), (3, 3), ((3, 3), (3, 3))) == {
        ((1, 3), (2, 0)),
        ((2, 2), (1, 1)),
        ((3, 1), (0, 2)),
    }
    assert enumerate_marginal_matrices((1, 1), (3, 0), ((INF, INF),) * 2) == set()
    with pytest.raises(TooLarge):
        enumerate_marginal_matrices((99,) * 4, (198, 198), ((INF, INF),) * 4)


def test_brute_biproportional():
    assert brute_biproportional(gen_gap_instance(1, JEFFERSON).instance, JEFFERSON) == {((8, 0), (0, 3), (0, 3))}
    T = TwoDimInstance.uncapped(((1, 1), (1, 1)), (1, 1), (1, 1))
    assert len(brute_biproportional(T, JEFFERSON)) == 2
    R = gen_row_violation_instance(JEFFERSON)
    assert brute_biproportional(R.instance, JEFFERSON) == {((6, 0), (0, 3), (0, 3))}


def test_multiplier_definition_agrees_on_known_cases():
    T = gen_gap_instance(1, JEFFERSON).instance
    assert definition_biproportional(T, JEFFERSON) == {((8, 0), (0, 3), (0, 3))}
    assert multiplier_certificate(T, JEFFERSON, ((8, 0), (0, 2), (0, 3))) is None


def test_capped_cells_keep_their_lower_bound():
    I = gen_paper_election("theorem61")
    T = TwoDimInstance.from_election(I, (4, 2))
    # party 2 type M is capped at 3 but two seats do not make it full
    assert multiplier_certificate(T, JEFFERSON, ((3, 1), (0, 2))) is None
    full = TwoDimInstance(((1, 5), (5, 1)), ((2, 2), (2, 2)), (2, 2), (2, 2))
    assert definition_biproportional(full, JEFFERSON) == brute_biproportional(full, JEFFERSON)


def test_lp_oracle():
    I = gen_paper_election("infeasible16")
    assert not any(lp_feasibility_oracle(I, (a, 16 - a)) for a in range(17))
    assert lp_feasibility_oracle(gen_paper_election("stuck8"), (5, 3))
    R = gen_random_supply(11, 3, 5, 9)
    for a in range(6):
        assert lp_feasibility_oracle(R, (a, 5 - a, 0))


def test_adams_gives_every_cell_a_seat():
    T = TwoDimInstance.uncapped(((2, 1), (1, 2)), (2, 2), (2, 2))
    assert brute_biproportional(T, ADAMS) == definition_biproportional(T, ADAMS) == {((1, 1), (1, 1))}
