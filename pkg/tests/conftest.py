import random
from pathlib import Path

import pytest

from orbitrace.groups import (
    FiniteCyclicOracle,
    FreeAbelianOracle,
    SeifertOracle,
    Word,
)
from orbitrace.seifert import SeifertData

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

CLOSED_DATA = [
    SeifertData.closed_data(1, 0, [(2, 1), (3, 1)]),
    SeifertData.closed_data(1, 1, [(2, 1), (2, 1)]),
    SeifertData.closed_data(0, 1, [(2, 1), (3, 1), (5, 1)]),
    SeifertData.closed_data(2, 0, []),
    SeifertData.closed_data(0, 2, [(3, 1), (3, 2), (3, 1)]),
    SeifertData.closed_data(1, -1, [(5, 2)]),
]

BOUNDED_DATA = [
    SeifertData.bounded_data(0, 1, [2, 3]),
    SeifertData.bounded_data(0, 2, [2, 2]),
    SeifertData.bounded_data(1, 1, [3]),
]

ALL_DATA = CLOSED_DATA + BOUNDED_DATA


@pytest.fixture
def corpus_dir():
    return CORPUS


def sample_oracles():
    return [
        FreeAbelianOracle(1),
        FreeAbelianOracle(2),
        FiniteCyclicOracle(5),
        SeifertOracle(closed=False, genus=0, fibers=(2, 3), boundary=1),
        SeifertOracle(closed=True, genus=1, fibers=((2, 1), (3, 1)), b=0),
    ]


def random_word(oracle, rng, max_len=5, max_exp=3):
    pairs = []
    for _ in range(rng.randrange(max_len + 1)):
        g = rng.randrange(oracle.ngens) if oracle.ngens else None
        if g is None:
            break
        e = rng.choice([x for x in range(-max_exp, max_exp + 1) if x])
        pairs.append((g, e))
    return Word.of(*pairs)


def random_sublanguage_word(oracle, rng, max_k=2):
    """A word of the form gamma0^k g_j^i for a Seifert oracle."""
    k = rng.randint(-max_k, max_k)
    pairs = [(0, k)]
    if oracle.fiber_ids and rng.random() < 0.8:
        gid = rng.choice(oracle.fiber_ids)
        mu = oracle._mu_of_gen[gid]
        pairs.append((gid, rng.randrange(1, mu)))
    return oracle.normalize(Word.of(*pairs))


def rng_for(seed):
    return random.Random(seed)
