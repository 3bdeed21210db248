"""Test Remy sampling and stream seeding."""

from collections import Counter

import pytest
from hypothesis import given, strategies as st
from scipy import stats

from rrdist.oracle import enumerate_trees
from rrdist.sampling import (
    GOLDEN_GAMMA,
    MASK64,
    SampleConfig,
    Seed,
    derive_seed,
    draw_size,
    sample_pair,
    sample_tree,
    sample_trees,
    splitmix64,
)
from rrdist.tree import parse_encoding

from .strategies import seeds


def test_splitmix64_reference_output():
    # first output of a SplitMix64 sequence started from state 0
    assert splitmix64(GOLDEN_GAMMA) == 0xE220A8397B1DCDAF
    assert splitmix64(0) == 0


def test_seed_validation():
    with pytest.raises(ValueError):
        Seed(-1)
    with pytest.raises(ValueError):
        Seed(MASK64 + 1)
    with pytest.raises(ValueError):
        Seed(0, -1)
    with pytest.raises(ValueError):
        derive_seed(Seed(0), -1)


def test_smallest_trees():
    assert sample_tree(0, 123).bits == "0"
    assert sample_tree(1, 123).bits == "100"
    s, t = sample_pair(0, Seed(5))
    assert (s.bits, t.bits) == ("0", "0")


@given(st.integers(0, 200), seeds)
def test_sample_tree_is_valid_and_reproducible(n, seed):
    t = sample_tree(n, seed)
    assert parse_encoding(t.bits).size == n
    assert sample_tree(n, seed) == t


@given(st.integers(0, 50), seeds)
def test_sample_pair_is_reproducible(n, seed):
    assert sample_pair(n, seed) == sample_pair(n, seed)


def test_derive_seed_is_deterministic():
    s = Seed(42, 3)
    assert derive_seed(s, 7) == derive_seed(s, 7)
    assert derive_seed(s, 7).key != derive_seed(s, 8).key
    assert derive_seed(42, 0) == derive_seed(Seed(42), 0)


def test_derived_keys_do_not_collide():
    keys = {derive_seed(Seed(2024), i).key for i in range(100_000)}
    assert len(keys) == 100_000


@pytest.mark.slow
def test_derived_keys_do_not_collide_over_a_million_indices():
    keys = {Seed(7, i).key for i in range(1_000_000)}
    assert len(keys) == 1_000_000


def test_pair_trees_come_from_different_streams():
    seed = Seed(9, 1)
    s, t = sample_pair(40, seed)
    assert s == sample_tree(40, derive_seed(seed, 0))
    assert t == sample_tree(40, derive_seed(seed, 1))
    assert s != t


def test_sample_trees_uses_one_stream_per_item():
    config = SampleConfig(size=6, count=5, seed=Seed(11))
    trees = list(sample_trees(config))
    assert len(trees) == 5
    assert trees[3] == sample_tree(6, Seed(11, 3))
    with pytest.raises(ValueError):
        SampleConfig(size=-1, count=1)


def test_sample_trees_starts_at_the_seed_stream_index():
    trees = list(sample_trees(SampleConfig(size=6, count=3, seed=Seed(11, 40))))
    assert trees == [sample_tree(6, Seed(11, i)) for i in (40, 41, 42)]


def test_draw_size_stays_in_range():
    sizes = {draw_size(10, 19, Seed(1, i)) for i in range(500)}
    assert sizes == set(range(10, 20))
    assert draw_size(7, 7, Seed(1)) == 7


def _chi_square_p(n, draws, master):
    shapes = enumerate_trees(n)
    counts = Counter(sample_tree(n, Seed(master, i)).bits for i in range(draws))
    assert set(counts) <= set(shapes)
    observed = [counts[s] for s in shapes]
    return stats.chisquare(observed).pvalue


def test_size_three_shapes_are_uniform():
    # 10^4 draws per shape
    assert _chi_square_p(3, 50_000, master=3) > 0.001


@pytest.mark.slow
def test_size_four_shapes_are_uniform():
    assert _chi_square_p(4, 140_000, master=4) > 0.001


@pytest.mark.slow
def test_size_five_shapes_are_uniform():
    assert _chi_square_p(5, 420_000, master=5) > 0.001
