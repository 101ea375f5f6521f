from pathlib import Path

import pytest

from fanforge.chains import FanChain
from fanforge.corpus import generate_corpus
from fanforge.formats import parse_forest
from fanforge.spectral import FanSpace

DATA = Path(__file__).parent / "data"

# Shared desk fixtures.  E1 is the 7-element fan with one root and two
# leaves; E1P is the same shape with the other minus class; E2 is a
# single level of dimension 2; EA has a full-rank transition (two
# disjoint chains), EB a rank-1 transition (a vee plus an isolated
# root); TRIV is the one-character fan; CHAIN3 a three-level chain.
E1 = FanChain((1, 2), (1, 1), ((1, 0),))
E1P = FanChain((1, 2), (1, 2), ((0, 1),))
E2 = FanChain((2,), (3,), ())
EA = FanChain((2, 2), (1, 1), ((1, 2),))
EB = FanChain((2, 2), (1, 1), ((1, 0),))
TRIV = FanChain((1,), (1,), ())
CHAIN3 = FanChain((1, 1, 1), (1, 1, 1), ((1,), (1,)))

CORPUS_SEED = 20170301


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus(CORPUS_SEED, count=200, max_levels=4, max_dim=4)


@pytest.fixture(scope="session")
def corpus_spaces(corpus):
    return [FanSpace(c) for c in corpus]


@pytest.fixture(scope="session")
def impossible_forests():
    return {
        i: parse_forest((DATA / f"impossible{i}.forest").read_text())
        for i in (1, 2, 3)
    }
