"""Tests for level-wise frequent itemset generation."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from basket_miner.apriori import (
    apriori,
    apriori_gen,
    count_candidates,
    frequent_1_itemsets,
    join,
    prune,
)
from basket_miner.exceptions import EmptyDatabaseError, InvalidThresholdError
from basket_miner.models import SupportFraction, TransactionDatabase
from basket_miner.oracle import bf_frequent_itemsets

from .strategies import databases

MIN_SUPPORTS = [Fraction(tenths, 10) for tenths in range(1, 10)]


def test_example_levels(example_db) -> None:
    """The market example yields L1, L2 and L3 at 30%."""
    frequent = apriori(example_db, "30%")

    assert frequent.level(1) == ((0,), (1,), (2,), (3,))
    assert frequent.level(2) == ((0, 1), (0, 2), (0, 3), (1, 2))
    assert frequent.level(3) == ((0, 1, 2),)
    assert frequent.level(4) == ()
    assert frequent.support_of((0, 1, 2)) == SupportFraction(2, 5)


def test_frequent_1_itemsets(example_db) -> None:
    """One scan counts every item."""
    assert dict(frequent_1_itemsets(example_db, "30%")) == {
        (0,): SupportFraction(4, 5),
        (1,): SupportFraction(2, 5),
        (2,): SupportFraction(3, 5),
        (3,): SupportFraction(3, 5),
    }
    assert frequent_1_itemsets(example_db, 1) == []


def test_apriori_gen_prunes_example_candidates() -> None:
    """Joining L2 gives ABC, ABD and ACD; the latter two lack frequent subsets."""
    level_2 = [(0, 1), (0, 2), (0, 3), (1, 2)]

    assert join(level_2) == [(0, 1, 2), (0, 1, 3), (0, 2, 3)]
    candidates = apriori_gen(level_2)
    assert candidates.k == 3
    assert tuple(candidates) == ((0, 1, 2),)
    assert candidates.pruned == ((0, 1, 3), (0, 2, 3))


def test_apriori_gen_edge_cases() -> None:
    """Empty input gives nothing; single items pair up."""
    assert len(apriori_gen([])) == 0
    assert tuple(apriori_gen([(0,), (1,), (2,)])) == ((0, 1), (0, 2), (1, 2))
    assert prune([(0, 1, 2)], [(0, 1), (1, 2)]) == ([], [(0, 1, 2)])


def test_apriori_gen_exclusion_hook() -> None:
    """Vetoed candidates are reported as pruned."""
    candidates = apriori_gen([(0,), (1,), (2,)], exclude=lambda itemset: itemset == (0, 1))
    assert tuple(candidates) == ((0, 2), (1, 2))
    assert candidates.pruned == ((0, 1),)


def test_apriori_rejects_bad_input() -> None:
    """Mining needs a valid threshold and at least one transaction."""
    db = TransactionDatabase.from_baskets([["A"]])
    with pytest.raises(InvalidThresholdError):
        apriori(db, 0)
    with pytest.raises(EmptyDatabaseError):
        apriori(TransactionDatabase(item_names=("A",), transactions=()), "50%")


def test_identical_transactions_make_everything_frequent() -> None:
    """All subsets of a repeated transaction have support 1."""
    db = TransactionDatabase.from_baskets([["A", "B", "C"]] * 3)
    frequent = apriori(db, 1)
    assert len(frequent) == 7
    assert frequent.support_of((0, 1, 2)).value == 1


def test_count_candidates_threads_agree(example_db) -> None:
    """Per-worker tallies add up to the single-threaded count."""
    candidates = apriori_gen([(0,), (1,), (2,), (3,), (4,)])
    rows = [t.items for t in example_db.transactions]
    single = count_candidates(candidates, rows)
    assert count_candidates(candidates, rows, threads=3) == single
    assert count_candidates(candidates, rows, use_hash_tree=False) == single
    assert single[(0, 2)] == 3
    assert single[(3, 4)] == 1


@given(
    db=databases(max_items=8, max_transactions=50),
    min_support=st.sampled_from(MIN_SUPPORTS),
    bucket_count=st.sampled_from((2, 8, 32)),
    leaf_split_threshold=st.sampled_from((1, 4, 16)),
    threads=st.sampled_from((1, 3)),
)
@settings(max_examples=200, deadline=None)
def test_apriori_matches_brute_force(
    db: TransactionDatabase,
    min_support: Fraction,
    bucket_count: int,
    leaf_split_threshold: int,
    threads: int,
) -> None:
    """Apriori finds exactly the itemsets an exhaustive count finds."""
    options = {
        "bucket_count": bucket_count,
        "leaf_split_threshold": leaf_split_threshold,
        "threads": threads,
    }

    assert apriori(db, min_support, **options).as_dict() == (
        bf_frequent_itemsets(db, min_support).as_dict())
