from fractions import Fraction

import pytest

from parity_apportion import (
    ADAMS,
    JEFFERSON,
    WEBSTER,
    fair_share,
    lambda_metric,
    solve_biproportional,
    verify_biproportional,
)
from parity_apportion.election import CType, satisfies_supply
from parity_apportion.generators import (
    PAPER_ELECTIONS,
    find_n,
    gap_gamma,
    gen_gap_instance,
    gen_paper_election,
    gen_random_supply,
    gen_row_violation_instance,
    row_violation_epsilon,
)
from parity_apportion.greedy import mechanism_greedy
from parity_apportion.biprop import mechanism_biprop

from support import SIGNPOSTS, SIGNPOST_IDS


@pytest.mark.parametrize("ell, d, n", [(1, JEFFERSON, 2), (1, WEBSTER, 4), (3, JEFFERSON, 14)])
def test_find_n(ell, d, n):
    # values frozen from an exact scan
    assert find_n(ell, d) == n
    assert gap_gamma(ell, d, Fraction(ell, n)) < 0
    if ell / (n - 1) < 3:
        assert gap_gamma(ell, d, Fraction(ell, n - 1)) >= 0


def test_find_n_rejects_bad_input():
    with pytest.raises(ValueError):
        find_n(0, JEFFERSON)
    with pytest.raises(ValueError):
        find_n(1, ADAMS)
    with pytest.raises(ValueError):
        gen_gap_instance(0, JEFFERSON)


def test_gap_instance_shape():
    G = gen_gap_instance(1, JEFFERSON)
    assert G.n_rows == 3 and G.expected_x[0] == (8, 0)
    assert G.expected_F[0] == (7, 1)


def test_adams_gap_instance_shape():
    G = gen_gap_instance(2, ADAMS)
    assert G.n_rows == 4
    assert G.expected_x == ((1, 3), (1, 2), (1, 2), (1, 2))


@pytest.mark.parametrize("d", SIGNPOSTS, ids=SIGNPOST_IDS)
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_gap_instances_have_single_strict_solution(d, ell):
    G = gen_gap_instance(ell, d)
    T = G.instance
    assert {s.x for s in solve_biproportional(T, d)} == {G.expected_x}
    assert verify_biproportional(T, d, G.expected_x, strict=True)
    F = fair_share(T).F
    x = G.expected_x
    assert abs(x[0][0] - F[0][0]) >= ell - 1e-9
    assert abs(x[0][1] - F[0][1]) >= ell - 1e-9
    assert sum(abs(x[i][t] - F[i][t]) for i in range(T.n) for t in range(2)) >= 2 * ell - 1e-9


def test_adams_epsilon():
    assert row_violation_epsilon(ADAMS) == Fraction(1, 2)
    R = gen_row_violation_instance(ADAMS)
    assert R.instance.P[0] == (14, 6)
    assert R.expected_x == ((6, 4), (1, 2), (1, 2))


@pytest.mark.parametrize("d, rows, share", [(JEFFERSON, 3, Fraction(1, 3)), (WEBSTER, 6, Fraction(1, 6)), (ADAMS, 3, Fraction(1, 3))], ids=["jefferson", "webster", "adams"])
def test_row_violation_instances(d, rows, share):
    R = gen_row_violation_instance(d)
    T = R.instance
    assert R.n_rows == rows == T.n
    assert T.phi[0] == T.phi[1]
    assert {s.x for s in solve_biproportional(T, d)} == {R.expected_x}
    assert verify_biproportional(T, d, R.expected_x, strict=True)
    assert lambda_metric(R.expected_x, fair_share(T)) == share


def test_fixed_example_elections():
    assert PAPER_ELECTIONS == ("infeasible16", "stuck8", "theorem61")
    I = gen_paper_election("infeasible16")
    assert I.h == 16 and len(I.candidates) == 16
    assert sum(1 for c in I.candidates if c.party == 0 and c.ctype is CType.F) == 8
    S = gen_paper_election("stuck8")
    assert [int(c.votes) for c in S.candidates] == [4, 3, 1, 165, 164, 163, 93, 92, 91, 9, 8, 7]
    assert "".join(c.ctype.value for c in S.candidates) == "mmmfffmmmfff"
    T = gen_paper_election("theorem61")
    assert sorted({int(c.votes) for c in T.candidates}) == [16, 55, 184, 345]
    with pytest.raises(ValueError):
        gen_paper_election("unknown")


def test_random_supply_example():
    I = gen_random_supply(42, 2, 4, 10)
    assert satisfies_supply(I)
    J = gen_random_supply(7, 3, 5, 100)
    assert satisfies_supply(J)
    assert mechanism_greedy(J, JEFFERSON)
    assert mechanism_biprop(J, JEFFERSON, JEFFERSON)
    with pytest.raises(ValueError):
        gen_random_supply(1, 0, 3, 5)
