"""Conversion between interval partitionings and taxonomies, in both directions."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
import logging
import re

from .exceptions import InvalidPartitioningError, NonTreeTaxonomyError
from .models import TransactionDatabase
from .quantitative import Interval, Partitioning, QuantitativeAttribute
from .taxonomy import TaxonomyGraph

_LOGGER: logging.Logger = logging.getLogger(__package__)

_DIGITS = re.compile(r"(\d+)")


def natural_key(name: str) -> list[str | int]:
    """Sort key comparing digit runs numerically and everything else by text."""
    return [int(part) if index % 2 else part for index, part in enumerate(_DIGITS.split(name))]


@dataclass(frozen=True)
class IntervalTaxonomy:
    """A tree of rank intervals: the root covers every rank, leaves are single ranks."""

    attribute: QuantitativeAttribute
    root: Interval
    children: Mapping[Interval, tuple[Interval, ...]]

    def __post_init__(self) -> None:
        """Validate that every node is the adjacent union of its children."""
        for node, node_children in self.children.items():
            if (
                node_children[0].lo != node.lo
                or node_children[-1].hi != node.hi
                or any(a.hi + 1 != b.lo for a, b in zip(node_children, node_children[1:]))
            ):
                raise InvalidPartitioningError(
                    self.attribute.name, f"children of {node} do not cover it")

    def nodes(self) -> Iterator[Interval]:
        """Yield every node, parents before children."""
        pending = [self.root]
        while pending:
            node = pending.pop(0)
            yield node
            pending.extend(self.children.get(node, ()))

    def leaves(self) -> list[Interval]:
        """Return the leaves in rank order."""
        return sorted(node for node in self.nodes() if node not in self.children)

    def depth(self) -> int:
        """Return the number of levels."""
        def levels(node: Interval) -> int:
            return 1 + max((levels(child) for child in self.children.get(node, ())), default=0)
        return levels(self.root)

    def edges(self) -> list[tuple[Interval, Interval]]:
        """Return every (parent, child) pair."""
        return [
            (parent, child)
            for parent in self.nodes()
            for child in self.children.get(parent, ())
        ]

    def named_edges(self) -> list[tuple[str, str]]:
        """Return the edges as synthetic item names."""
        label = self.attribute.label
        return [(label(parent), label(child)) for parent, child in self.edges()]

    def to_graph(self, db: TransactionDatabase | None = None) -> TaxonomyGraph:
        """Return the tree as a taxonomy over the singleton items."""
        return TaxonomyGraph.from_edges(self.named_edges(), db)


def _split(
    node: Interval,
    bisect: bool,
    children: dict[Interval, tuple[Interval, ...]],
) -> None:
    if node.width == 1:
        return
    if not bisect:
        children[node] = tuple(Interval(rank, rank) for rank in range(node.lo, node.hi + 1))
        return
    middle = (node.lo + node.hi) // 2
    halves = (Interval(node.lo, middle), Interval(middle + 1, node.hi))
    children[node] = halves
    for half in halves:
        _split(half, bisect, children)


def quantitative_to_taxonomy(
    attr: QuantitativeAttribute, p: Partitioning, bisect: bool = False
) -> IntervalTaxonomy:
    """Return the interval tree root -> partitions -> single values.

    With bisect each partition is halved recursively instead of being split
    into its single values at once.
    """
    root = attr.full_range
    children: dict[Interval, tuple[Interval, ...]] = {}
    if len(p.intervals) > 1:
        children[root] = p.intervals
        for partition in p.intervals:
            _split(partition, bisect, children)
    else:
        _split(root, bisect, children)
    taxonomy = IntervalTaxonomy(attribute=attr, root=root, children=children)
    _LOGGER.debug(
        "Interval taxonomy of %s: %d levels, %d nodes",
        attr.name, taxonomy.depth(), sum(1 for _ in taxonomy.nodes()))
    return taxonomy


@dataclass(frozen=True)
class LeafNumbering:
    """Left-to-right numbering of the leaves below one taxonomy root."""

    root: str
    leaves: tuple[str, ...]
    # Leaf-number span of every node below the root, the root included
    spans: Mapping[str, Interval]
    attribute: QuantitativeAttribute

    def number(self, leaf: str) -> int:
        """Return the number of a leaf."""
        return self.leaves.index(leaf)

    def categories_for(self, interval: Interval) -> list[str]:
        """Return the categories whose leaf span equals the interval."""
        return sorted(
            (name for name, span in self.spans.items()
             if span == interval and name not in self.leaves),
            key=natural_key)

    def label(self, interval: Interval) -> str:
        """Return the synthetic item name of a leaf-number interval."""
        return f"{self.root}[{interval.lo},{interval.hi}]"

    def annotated_label(self, interval: Interval) -> str:
        """Return the label followed by "=category" when the interval is a category's span."""
        categories = self.categories_for(interval)
        if not categories:
            return self.label(interval)
        return f"{self.label(interval)}={'/'.join(categories)}"


def taxonomy_to_quantitative(tax: TaxonomyGraph) -> list[LeafNumbering]:
    """Number the leaves of every root left to right, one attribute per root.

    Children are visited in natural name order. Only trees qualify: a node
    with two parents would make the leaf spans overlap.
    """
    for node, parents in enumerate(tax.parents):
        if len(parents) > 1:
            raise NonTreeTaxonomyError(
                tax.item_names[node], sorted(tax.item_names[parent] for parent in parents))

    occurrences: dict[int, int] = {}
    if tax.source is not None:
        for transaction in tax.source.transactions:
            for item in transaction.items:
                occurrences[item] = occurrences.get(item, 0) + 1

    numberings = []
    for root in tax.roots():
        leaves: list[str] = []
        spans: dict[str, Interval] = {}

        def visit(name: str) -> Interval:
            children = sorted(tax.children_of(name), key=natural_key)
            if not children:
                leaves.append(name)
                span = Interval(len(leaves) - 1, len(leaves) - 1)
            else:
                child_spans = [visit(child) for child in children]
                span = Interval(child_spans[0].lo, child_spans[-1].hi)
            spans[name] = span
            return span

        visit(root)
        attribute = QuantitativeAttribute(
            item=tax.node_id(root),
            name=root,
            values=tuple(range(len(leaves))),
            counts=tuple(occurrences.get(tax.node_id(leaf), 0) for leaf in leaves),
        )
        numberings.append(
            LeafNumbering(root=root, leaves=tuple(leaves), spans=spans, attribute=attribute))
    _LOGGER.debug("Numbered leaves of %d taxonomy roots", len(numberings))
    return numberings


def all_leaf_intervals(numbering: LeafNumbering) -> list[Interval]:
    """Return every consecutive leaf interval, O(v^2) for v leaves."""
    count = len(numbering.leaves)
    return [Interval(lo, hi) for lo in range(count) for hi in range(lo, count)]


def taxonomy_leaf_intervals(numbering: LeafNumbering) -> list[Interval]:
    """Return the distinct spans of the taxonomy's own nodes, O(v) for a tree."""
    return sorted(set(numbering.spans.values()))


def interval_items(
    db: TransactionDatabase,
    numberings: Iterable[LeafNumbering],
    intervals: Mapping[str, Iterable[Interval]],
    annotate: bool = False,
) -> TransactionDatabase:
    """Replace taxonomy leaves by one item per root interval holding any of them.

    Items outside every numbered tree pass through unchanged. With annotate
    the item names carry the categories spanning exactly their interval.
    """
    leaf_numbers: dict[str, tuple[str, int]] = {}
    by_root: dict[str, LeafNumbering] = {}
    for numbering in numberings:
        by_root[numbering.root] = numbering
        for number, leaf in enumerate(numbering.leaves):
            leaf_numbers[leaf] = (numbering.root, number)
    admitted = {root: list(root_intervals) for root, root_intervals in intervals.items()}

    rows: list[list[str]] = []
    for transaction in db.transactions:
        row: list[str] = []
        present: dict[str, set[int]] = {}
        for name in db.names(transaction.items):
            if name in leaf_numbers:
                root, number = leaf_numbers[name]
                present.setdefault(root, set()).add(number)
            else:
                row.append(name)
        for root, numbers in present.items():
            root_numbering = by_root[root]
            name_of = root_numbering.annotated_label if annotate else root_numbering.label
            row.extend(
                name_of(interval)
                for interval in admitted.get(root, ())
                if any(number in interval for number in numbers)
            )
        rows.append(row)
    return TransactionDatabase.from_baskets(rows)


def format_numbering(numbering: LeafNumbering) -> list[str]:
    """Return "root leaf number" lines, then "root category lo hi" for inner categories.

    A leading comment records that siblings were numbered in natural name order.
    """
    lines = [f"# {numbering.root}: leaves numbered in natural name order"]
    lines.extend(
        f"{numbering.root} {leaf} {number}"
        for number, leaf in enumerate(numbering.leaves)
    )
    for interval in sorted(
        taxonomy_leaf_intervals(numbering), key=lambda span: (span.lo, -span.hi)
    ):
        lines.extend(
            f"{numbering.root} {name} {interval.lo} {interval.hi}"
            for name in numbering.categories_for(interval)
            if name != numbering.root
        )
    return lines
