"""Hash tree over candidate itemsets for per-transaction containment queries."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .const import DEFAULT_BUCKET_COUNT, DEFAULT_LEAF_SPLIT_THRESHOLD
from .exceptions import InvalidItemsetError, InvalidThresholdError
from .models import Itemset, contains


@dataclass
class _Leaf:
    candidates: list[Itemset] = field(default_factory=list)


@dataclass
class _Interior:
    children: list[_Leaf | _Interior | None]


class HashTree:
    """Candidates of one size indexed by the hash of the item at each depth.

    An interior node at depth d dispatches on hash(candidate[d]); a leaf
    holds the candidates whose first d items hash along its path. Leaves
    above depth k split once they exceed the threshold; leaves at depth k
    never split.
    """

    def __init__(
        self,
        k: int,
        bucket_count: int = DEFAULT_BUCKET_COUNT,
        leaf_split_threshold: int = DEFAULT_LEAF_SPLIT_THRESHOLD,
    ) -> None:
        """Initialize an empty tree for k-itemsets."""
        if bucket_count < 1:
            raise InvalidThresholdError("bucket_count", bucket_count, ">= 1")
        if leaf_split_threshold < 1:
            raise InvalidThresholdError(
                "leaf_split_threshold", leaf_split_threshold, ">= 1")
        self.k = k
        self.bucket_count = bucket_count
        self.leaf_split_threshold = leaf_split_threshold
        self.root: _Leaf | _Interior = _Leaf()
        self._stored: set[Itemset] = set()

    def _hash(self, item: int) -> int:
        return item % self.bucket_count

    def insert(self, candidate: Itemset) -> None:
        """Insert a k-itemset."""
        if len(candidate) != self.k:
            raise InvalidItemsetError(candidate)
        if candidate in self._stored:
            return
        self._stored.add(candidate)
        self.root = self._insert(self.root, candidate, 0)

    def _insert(
        self, node: _Leaf | _Interior, candidate: Itemset, depth: int
    ) -> _Leaf | _Interior:
        if isinstance(node, _Interior):
            bucket = self._hash(candidate[depth])
            child = node.children[bucket] or _Leaf()
            node.children[bucket] = self._insert(child, candidate, depth + 1)
            return node

        node.candidates.append(candidate)
        if len(node.candidates) <= self.leaf_split_threshold or depth >= self.k:
            return node

        interior = _Interior([None] * self.bucket_count)
        for moved in node.candidates:
            self._insert(interior, moved, depth)
        return interior

    def subset(self, items: Sequence[int]) -> list[Itemset]:
        """Return the candidates contained in the ordered transaction items.

        Every suffix of the transaction is hashed at each interior node;
        buckets only over-approximate, so leaves confirm containment.
        """
        found: dict[Itemset, None] = {}
        n_items = len(items)

        def visit(node: _Leaf | _Interior, start: int, depth: int) -> None:
            if isinstance(node, _Leaf):
                for candidate in node.candidates:
                    if candidate not in found and contains(items, candidate):
                        found[candidate] = None
                return
            # need k - depth items from position i onwards
            for position in range(start, n_items - (self.k - depth) + 1):
                child = node.children[self._hash(items[position])]
                if child is not None:
                    visit(child, position + 1, depth + 1)

        if n_items >= self.k:
            visit(self.root, 0, 0)
        return list(found)

    def leaves(self) -> Iterator[tuple[int, list[Itemset]]]:
        """Yield (depth, candidates) for every leaf."""
        stack: list[tuple[_Leaf | _Interior, int]] = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if isinstance(node, _Leaf):
                yield depth, node.candidates
                continue
            stack.extend((child, depth + 1) for child in node.children if child is not None)

    def flatten(self) -> list[Itemset]:
        """Return every stored candidate in sorted order."""
        return sorted(candidate for _, candidates in self.leaves() for candidate in candidates)

    def __len__(self) -> int:
        return len(self._stored)


def build_hash_tree(
    candidates: Iterable[Itemset],
    bucket_count: int = DEFAULT_BUCKET_COUNT,
    leaf_split_threshold: int = DEFAULT_LEAF_SPLIT_THRESHOLD,
    k: int | None = None,
) -> HashTree:
    """Build a hash tree holding the given candidates, all of one size."""
    candidates = list(candidates)
    if k is None:
        k = len(candidates[0]) if candidates else 1
    tree = HashTree(k, bucket_count, leaf_split_threshold)
    for candidate in candidates:
        tree.insert(candidate)
    return tree
