import random

from fanforge import gf2
from fanforge.chains import validate_chain
from fanforge.corpus import generate_corpus, random_transition
from fanforge.suite import run_suite


def test_corpus_is_deterministic():
    assert generate_corpus(11, count=12) == generate_corpus(11, count=12)
    assert generate_corpus(11, count=12) != generate_corpus(12, count=12)


def test_corpus_chains_are_valid(corpus):
    for chain in corpus:
        assert validate_chain(chain) == []
        assert chain.n <= 4 and max(chain.dims) <= 4


def test_random_transition_preserves_minus():
    rng = random.Random(3)
    for _ in range(100):
        k_from, k_to = rng.randint(1, 4), rng.randint(1, 4)
        m_from = rng.randrange(1, 1 << k_from)
        m_to = rng.randrange(1, 1 << k_to)
        rows = random_transition(rng, k_from, k_to, m_from, m_to)
        assert gf2.mat_vec(rows, m_from) == m_to


def test_run_suite_clean_on_small_corpus():
    report = run_suite(generate_corpus(5, count=8), seed=5, cap=80)
    assert report.ok
    assert report.fans == 8
    assert set(report.sections) >= {"cardinality", "involutions", "round-trips"}
    assert any("ok" in line for line in report.lines())
