"""Level-wise frequent itemset generation."""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
import logging
from math import ceil
from typing import Protocol

from .const import DEFAULT_BUCKET_COUNT, DEFAULT_LEAF_SPLIT_THRESHOLD
from .exceptions import EmptyDatabaseError
from .hashtree import build_hash_tree
from .models import (
    Itemset,
    SupportFraction,
    TransactionDatabase,
    contains,
    unit_threshold,
)

_LOGGER: logging.Logger = logging.getLogger(__package__)


class ItemsetExtender(Protocol):
    """Expands transactions before counting and vetoes candidates after the join."""

    def extend(self, items: tuple[int, ...], keep: frozenset[int] | None) -> tuple[int, ...]:
        """Return the transaction items plus the extra items to count, restricted to keep."""

    def is_redundant(self, itemset: Itemset) -> bool:
        """Return True if the itemset should never be counted."""


@dataclass(frozen=True)
class CandidateSet:
    """Candidate k-itemsets produced by one join/prune round."""

    k: int
    candidates: tuple[Itemset, ...]
    # Joined candidates removed by the subset check or the extender
    pruned: tuple[Itemset, ...] = ()

    def __iter__(self) -> Iterator[Itemset]:
        return iter(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def items(self) -> frozenset[int]:
        """Return every item occurring in some candidate."""
        return frozenset(item for candidate in self.candidates for item in candidate)


@dataclass(frozen=True)
class FrequentItemsets:
    """Frequent itemsets grouped by size, each with its exact support."""

    total: int
    by_size: Mapping[int, tuple[tuple[Itemset, SupportFraction], ...]] = field(
        default_factory=dict)

    @classmethod
    def from_supports(
        cls, total: int, supports: Mapping[Itemset, SupportFraction]
    ) -> FrequentItemsets:
        """Create the collection from an itemset -> support map."""
        by_size: dict[int, list[tuple[Itemset, SupportFraction]]] = {}
        for itemset in sorted(supports):
            by_size.setdefault(len(itemset), []).append((itemset, supports[itemset]))
        return cls(total=total, by_size={k: tuple(level) for k, level in sorted(by_size.items())})

    @cached_property
    def _support_map(self) -> dict[Itemset, SupportFraction]:
        return {
            itemset: support
            for level in self.by_size.values()
            for itemset, support in level
        }

    def support_of(self, itemset: Itemset) -> SupportFraction:
        """Return the stored support of a frequent itemset."""
        return self._support_map[itemset]

    def level(self, k: int) -> tuple[Itemset, ...]:
        """Return the frequent k-itemsets."""
        return tuple(itemset for itemset, _ in self.by_size.get(k, ()))

    def as_dict(self) -> dict[Itemset, SupportFraction]:
        """Return a copy of the itemset -> support map."""
        return dict(self._support_map)

    def __contains__(self, itemset: object) -> bool:
        return itemset in self._support_map

    def __iter__(self) -> Iterator[Itemset]:
        return iter(self._support_map)

    def __len__(self) -> int:
        return len(self._support_map)


def join(previous: Iterable[Itemset]) -> list[Itemset]:
    """Join (k-1)-itemsets agreeing on their first k-2 items.

    Each pair is taken once with the smaller last item first, so every
    k-itemset has exactly one way of being constructed.
    """
    ordered = sorted(set(previous))
    joined: list[Itemset] = []
    for index, first in enumerate(ordered):
        prefix = first[:-1]
        for second in ordered[index + 1:]:
            if second[:-1] != prefix:
                break
            joined.append(first + second[-1:])
    return joined


def prune(
    joined: Iterable[Itemset], previous: Iterable[Itemset]
) -> tuple[list[Itemset], list[Itemset]]:
    """Split joined candidates into (kept, pruned) by the (k-1)-subset check."""
    known = set(previous)
    kept: list[Itemset] = []
    pruned: list[Itemset] = []
    for candidate in joined:
        if all(subset in known for subset in combinations(candidate, len(candidate) - 1)):
            kept.append(candidate)
        else:
            pruned.append(candidate)
    return kept, pruned


def apriori_gen(
    previous: Iterable[Itemset],
    exclude: Callable[[Itemset], bool] | None = None,
) -> CandidateSet:
    """Generate candidate k-itemsets from the frequent (k-1)-itemsets."""
    previous = list(previous)
    k = len(previous[0]) + 1 if previous else 0
    kept, pruned = prune(join(previous), previous)
    if exclude is not None:
        vetoed = [candidate for candidate in kept if exclude(candidate)]
        if vetoed:
            _LOGGER.debug("Excluded %d redundant %d-candidates", len(vetoed), k)
            kept = [candidate for candidate in kept if not exclude(candidate)]
            pruned.extend(vetoed)
    return CandidateSet(k=k, candidates=tuple(kept), pruned=tuple(pruned))


def naive_subset(candidates: Iterable[Itemset], items: Sequence[int]) -> list[Itemset]:
    """Return the candidates contained in the items by testing each one."""
    return [candidate for candidate in candidates if contains(items, candidate)]


def _rows(
    db: TransactionDatabase,
    extender: ItemsetExtender | None,
    keep: frozenset[int] | None = None,
) -> list[tuple[int, ...]]:
    if extender is None:
        return [transaction.items for transaction in db.transactions]
    return [extender.extend(transaction.items, keep) for transaction in db.transactions]


def frequent_1_itemsets(
    db: TransactionDatabase,
    min_support: Fraction | float | str,
    extender: ItemsetExtender | None = None,
) -> list[tuple[Itemset, SupportFraction]]:
    """Count every item in one scan and keep those meeting min support."""
    threshold = unit_threshold("min_support", min_support)
    counts = Counter(item for items in _rows(db, extender) for item in items)
    frequent = []
    for item in range(db.n_items):
        support = SupportFraction(counts[item], db.n_transactions)
        if support.meets(threshold):
            frequent.append(((item,), support))
    return frequent


def count_candidates(
    candidates: CandidateSet,
    rows: Sequence[Sequence[int]],
    bucket_count: int = DEFAULT_BUCKET_COUNT,
    leaf_split_threshold: int = DEFAULT_LEAF_SPLIT_THRESHOLD,
    use_hash_tree: bool = True,
    threads: int = 1,
) -> Counter[Itemset]:
    """Count the transactions containing each candidate.

    Rows are split into contiguous slices, one per worker; each worker keeps
    its own tally and the tallies are added up afterwards.
    """
    if use_hash_tree:
        tree = build_hash_tree(candidates, bucket_count, leaf_split_threshold, k=candidates.k)
        contained: Callable[[Sequence[int]], list[Itemset]] = tree.subset
    else:
        def contained(items: Sequence[int]) -> list[Itemset]:
            return naive_subset(candidates, items)

    def tally(chunk: Sequence[Sequence[int]]) -> Counter[Itemset]:
        counter: Counter[Itemset] = Counter()
        for items in chunk:
            if len(items) >= candidates.k:
                counter.update(contained(items))
        return counter

    if threads > 1 and len(rows) > 1:
        size = ceil(len(rows) / threads)
        chunks = [rows[start:start + size] for start in range(0, len(rows), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tallies = list(pool.map(tally, chunks))
    else:
        tallies = [tally(rows)]

    counts: Counter[Itemset] = Counter(dict.fromkeys(candidates.candidates, 0))
    for partial in tallies:
        counts.update(partial)
    return counts


def apriori(
    db: TransactionDatabase,
    min_support: Fraction | float | str,
    bucket_count: int = DEFAULT_BUCKET_COUNT,
    leaf_split_threshold: int = DEFAULT_LEAF_SPLIT_THRESHOLD,
    use_hash_tree: bool = True,
    threads: int = 1,
    extender: ItemsetExtender | None = None,
) -> FrequentItemsets:
    """Return every itemset whose support meets min support, with its support."""
    threshold = unit_threshold("min_support", min_support)
    if db.n_transactions < 1:
        raise EmptyDatabaseError

    supports: dict[Itemset, SupportFraction] = dict(
        frequent_1_itemsets(db, threshold, extender))
    level = list(supports)
    _LOGGER.debug("Pass 1: %d frequent items of %d", len(level), db.n_items)

    k = 2
    while level:
        exclude = extender.is_redundant if extender is not None else None
        candidates = apriori_gen(level, exclude)
        if not candidates:
            break
        keep = candidates.items() if extender is not None else None
        counts = count_candidates(
            candidates,
            _rows(db, extender, keep),
            bucket_count=bucket_count,
            leaf_split_threshold=leaf_split_threshold,
            use_hash_tree=use_hash_tree,
            threads=threads,
        )
        level = []
        for candidate in candidates:
            support = SupportFraction(counts[candidate], db.n_transactions)
            if support.meets(threshold):
                supports[candidate] = support
                level.append(candidate)
        _LOGGER.debug(
            "Pass %d: %d candidates (%d pruned), %d frequent",
            k, len(candidates), len(candidates.pruned), len(level))
        k += 1

    return FrequentItemsets.from_supports(db.n_transactions, supports)
