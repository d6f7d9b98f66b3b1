"""Shared helpers for the test suite."""

import random
from fractions import Fraction

from parity_apportion import ADAMS, JEFFERSON, WEBSTER
from parity_apportion.election import Candidate, CType, ElectionInstance

SIGNPOSTS = (JEFFERSON, ADAMS, WEBSTER)
SIGNPOST_IDS = tuple(s.name for s in SIGNPOSTS)
SEEDS = range(200)


def random_votes(rng: random.Random, n: int, max_vote: int = 20, zeros: bool = True) -> list[Fraction]:
    lo = 0 if zeros else 1
    votes = [Fraction(rng.randint(lo, max_vote)) for _ in range(n)]
    if not any(votes):
        votes[rng.randrange(n)] = Fraction(1)
    return votes


def small_election(seed: int, *, n_max: int = 3, h_max: int = 6, per_cell_max: int = 3,
                   max_vote: int = 9, cap: int = 12) -> ElectionInstance:
    """Random election with at most ``cap`` candidates, some cells possibly empty."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(1, n_max)
        h = rng.randint(1, h_max)
        cands = []
        for i in range(n):
            k = 0
            for t in (CType.F, CType.M):
                for _ in range(rng.randint(0, per_cell_max)):
                    k += 1
                    cands.append(Candidate(f"p{i + 1}c{k}", i, rng.randint(1, max_vote), t))
        if h <= len(cands) <= cap and len({c.party for c in cands}) == n:
            return ElectionInstance(tuple(cands), n, h)


def zero_one_election(seed: int, *, n_max: int = 3, h_max: int = 6) -> tuple[ElectionInstance, frozenset]:
    """Instance whose 0/1 votes mark a parity-satisfying allocation.

    Returns the instance and the ids of the candidates with one vote.
    """
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    h = rng.randint(max(1, n), h_max)
    n_f = (h + 1) // 2 if rng.random() < 0.5 else h // 2
    types = [CType.F] * n_f + [CType.M] * (h - n_f)
    rng.shuffle(types)
    # every party gets at least one elected seat so no party has zero votes
    owners = list(range(n)) + [rng.randrange(n) for _ in range(h - n)]
    rng.shuffle(owners)
    cands, chosen = [], set()
    for k, (party, t) in enumerate(zip(owners, types)):
        cid = f"w{k}"
        cands.append(Candidate(cid, party, 1, t))
        chosen.add(cid)
    for k in range(rng.randint(0, 4)):
        cands.append(Candidate(f"z{k}", rng.randrange(n), 0, rng.choice([CType.F, CType.M])))
    return ElectionInstance(tuple(cands), n, h), frozenset(chosen)


# acceptance results, printed by the terminal summary hook in conftest.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class criterion:
    """Context manager recording whether acceptance criterion ``number`` held."""

    def __init__(self, number: int, text: str):
        self.number, self.text = number, text

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ACCEPTANCE[self.number] = (exc_type is None, self.text)
        return False
