"""Generalized association rules over an is-a taxonomy."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
import logging
from pathlib import Path
import re
from typing import Any, BinaryIO

from .apriori import FrequentItemsets, apriori
from .exceptions import (
    TaxonomyCycleError,
    TaxonomyFormatError,
    TaxonomyLeafError,
    UnknownItemError,
    UnknownTaxonomyNodeError,
)
from .models import Itemset, Transaction, TransactionDatabase
from .rules import Rule, generate_rules

_LOGGER: logging.Logger = logging.getLogger(__package__)

_SEPARATORS = re.compile(r"\s+")


@dataclass(frozen=True)
class TaxonomyGraph:
    """Directed acyclic is-a graph from generalizations to specializations.

    Node ids extend the database dictionary: database items keep their ids
    and categories follow in name order.
    """

    item_names: tuple[str, ...]
    n_leaf_items: int
    parents: tuple[frozenset[int], ...]
    children: tuple[tuple[int, ...], ...]
    ancestor_closure: tuple[frozenset[int], ...]
    source: TransactionDatabase | None = None

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[str, str]], db: TransactionDatabase | None = None
    ) -> TaxonomyGraph:
        """Create a validated graph from (parent, child) name pairs."""
        parents_by_name: dict[str, set[str]] = {}
        children_by_name: dict[str, set[str]] = {}
        for parent, child in edges:
            parents_by_name.setdefault(parent, set())
            parents_by_name.setdefault(child, set()).add(parent)
            children_by_name.setdefault(parent, set()).add(child)

        try:
            order = list(TopologicalSorter(parents_by_name).static_order())
        except CycleError as err:
            raise TaxonomyCycleError(list(err.args[1])) from err

        categories = sorted(children_by_name)
        if db is not None:
            leaf_names = db.item_names
            database_items = set(leaf_names)
            with_children = sorted(database_items & set(children_by_name))
            if with_children:
                raise TaxonomyLeafError(with_children)
            unknown = sorted(
                name for name in parents_by_name
                if name not in children_by_name and name not in database_items)
            if unknown:
                raise UnknownTaxonomyNodeError(unknown)
        else:
            leaf_names = tuple(sorted(
                name for name in parents_by_name if name not in children_by_name))

        item_names = tuple(leaf_names) + tuple(categories)
        ids = {name: item_id for item_id, name in enumerate(item_names)}
        parents: list[frozenset[int]] = [frozenset()] * len(item_names)
        children: list[tuple[int, ...]] = [()] * len(item_names)
        for name, node_parents in parents_by_name.items():
            parents[ids[name]] = frozenset(ids[parent] for parent in node_parents)
        for name, node_children in children_by_name.items():
            children[ids[name]] = tuple(sorted(ids[child] for child in node_children))

        # static_order yields every parent before its children
        closure: list[frozenset[int]] = [frozenset()] * len(item_names)
        for name in order:
            node = ids[name]
            ancestors: set[int] = set()
            for parent in parents[node]:
                ancestors.add(parent)
                ancestors.update(closure[parent])
            closure[node] = frozenset(ancestors)

        graph = cls(
            item_names=item_names,
            n_leaf_items=len(leaf_names),
            parents=tuple(parents),
            children=tuple(children),
            ancestor_closure=tuple(closure),
            source=db,
        )
        _LOGGER.debug(
            "Loaded taxonomy with %d leaves and %d categories",
            graph.n_leaf_items, len(categories))
        return graph

    @cached_property
    def _ids(self) -> dict[str, int]:
        return {name: node for node, name in enumerate(self.item_names)}

    def node_id(self, name: str) -> int:
        """Return the id of a named node."""
        try:
            return self._ids[name]
        except KeyError as err:
            raise UnknownItemError(name) from err

    def ancestors(self, name: str) -> set[str]:
        """Return the names of every generalization of a node."""
        return {self.item_names[node] for node in self.ancestor_closure[self.node_id(name)]}

    def children_of(self, name: str) -> list[str]:
        """Return the names of a node's direct specializations."""
        return [self.item_names[node] for node in self.children[self.node_id(name)]]

    def parents_of(self, name: str) -> list[str]:
        """Return the names of a node's direct generalizations."""
        return sorted(self.item_names[node] for node in self.parents[self.node_id(name)])

    def roots(self) -> list[str]:
        """Return the names of the categories without a generalization."""
        return sorted(
            name for node, name in enumerate(self.item_names)
            if self.children[node] and not self.parents[node])

    def edges(self) -> list[tuple[str, str]]:
        """Return every (parent, child) pair in name order."""
        return sorted(
            (self.item_names[parent], self.item_names[child])
            for child, node_parents in enumerate(self.parents)
            for parent in node_parents)

    def extend(self, items: tuple[int, ...], keep: frozenset[int] | None) -> tuple[int, ...]:
        """Return the items plus their ancestors, ancestors restricted to keep."""
        extended = set(items)
        for item in items:
            ancestors = self.ancestor_closure[item]
            extended.update(ancestors if keep is None else ancestors & keep)
        return tuple(sorted(extended))

    def is_redundant(self, itemset: Itemset) -> bool:
        """Return True if the itemset holds an item together with one of its ancestors."""
        members = set(itemset)
        return any(self.ancestor_closure[item] & members for item in itemset)

    def augmented(self, db: TransactionDatabase) -> TransactionDatabase:
        """Return the database over the dictionary extended by the categories."""
        for item_id, name in enumerate(db.item_names):
            if item_id >= self.n_leaf_items or self.item_names[item_id] != name:
                raise UnknownItemError(name)
        return TransactionDatabase(item_names=self.item_names, transactions=db.transactions)

    def extended_database(self, db: TransactionDatabase) -> TransactionDatabase:
        """Return the database with every transaction fully extended."""
        base = self.augmented(db)
        return TransactionDatabase(
            item_names=base.item_names,
            transactions=tuple(extend_transaction(t, self) for t in base.transactions),
        )


def _parse_edges(text: str) -> list[tuple[str, str]]:
    edges = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = _SEPARATORS.split(stripped)
        if len(tokens) != 2:
            raise TaxonomyFormatError(
                line_number, f"expected 'parent child', got {len(tokens)} field(s)")
        edges.append((tokens[0], tokens[1]))
    return edges


def load_taxonomy(
    source: BinaryIO | bytes, db: TransactionDatabase | None = None
) -> TaxonomyGraph:
    """Load and validate a taxonomy from a "parent child" edge list."""
    raw = source if isinstance(source, bytes) else source.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as err:
        raise TaxonomyFormatError(raw[: err.start].count(b"\n") + 1, "not valid UTF-8") from err
    return TaxonomyGraph.from_edges(_parse_edges(text), db)


def load_taxonomy_from_path(
    path: str | Path, db: TransactionDatabase | None = None
) -> TaxonomyGraph:
    """Load a taxonomy file from disk."""
    with open(path, "rb") as source:
        return load_taxonomy(source, db)


def extend_transaction(
    t: Transaction, tax: TaxonomyGraph, candidate_items: Iterable[int] | None = None
) -> Transaction:
    """Return the transaction extended by the ancestors of its items.

    With a candidate filter only ancestors occurring in some candidate are added.
    """
    keep = None if candidate_items is None else frozenset(candidate_items)
    return Transaction(tid=t.tid, items=tax.extend(t.items, keep), quantities=t.quantities)


def mine_generalized_itemsets(
    db: TransactionDatabase,
    tax: TaxonomyGraph,
    min_support: Fraction | float | str,
    **apriori_options: Any,
) -> FrequentItemsets:
    """Return the frequent itemsets over items and categories, without x/x̂ itemsets."""
    return apriori(tax.augmented(db), min_support, extender=tax, **apriori_options)


def mine_generalized(
    db: TransactionDatabase,
    tax: TaxonomyGraph,
    min_support: Fraction | float | str,
    min_confidence: Fraction | float | str,
    **apriori_options: Any,
) -> list[Rule]:
    """Return the rules over items and their generalizations."""
    frequent = mine_generalized_itemsets(db, tax, min_support, **apriori_options)
    return generate_rules(frequent, min_confidence)
