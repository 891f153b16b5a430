"""Timing of hash tree counting against direct subset tests.

Set BASKET_MINER_BENCHMARK to run it.
"""

import os
from random import Random
import time

import pytest

from basket_miner.apriori import apriori
from basket_miner.oracle import random_database


@pytest.mark.skipif(
    not os.environ.get("BASKET_MINER_BENCHMARK"), reason="benchmark not requested")
def test_hash_tree_against_naive_counting() -> None:
    """Both counting paths agree; the timings are printed."""
    db = random_database(Random(1), n_items=26, n_transactions=2000, density=0.3)
    timings = {}
    results = {}
    for use_hash_tree in (True, False):
        start = time.perf_counter()
        results[use_hash_tree] = apriori(db, "0.02", use_hash_tree=use_hash_tree, threads=1)
        timings[use_hash_tree] = time.perf_counter() - start

    assert results[True].as_dict() == results[False].as_dict()
    print(f"hash tree {timings[True]:.3f}s, naive {timings[False]:.3f}s")
