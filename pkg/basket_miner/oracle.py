"""Brute-force reference implementations and seeded generators for differential testing."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import logging
from random import Random
from string import ascii_uppercase

from .apriori import FrequentItemsets, apriori, apriori_gen, naive_subset
from .const import (
    DEFAULT_BUCKET_COUNT,
    DEFAULT_LEAF_SPLIT_THRESHOLD,
    ORACLE_MAX_ITEMS,
)
from .exceptions import OracleLimitError
from .hashtree import build_hash_tree
from .models import (
    Itemset,
    SupportFraction,
    TransactionDatabase,
    as_fraction,
    contains,
    unit_threshold,
)
from .quantitative import Interval, Partitioning, QuantitativeAttribute
from .rules import Rule, confidence, generate_rules
from .taxonomy import TaxonomyGraph

_LOGGER: logging.Logger = logging.getLogger(__package__)

__all__ = [
    "OracleReport",
    "bf_frequent_itemsets",
    "bf_frequent_ranges",
    "bf_interval_unions",
    "bf_rules",
    "check_partial_completeness",
    "differential_check",
    "naive_generalized",
    "naive_subset",
    "random_database",
    "random_quantitative_database",
    "random_tree_taxonomy",
]


def _count(db: TransactionDatabase, itemset: Itemset) -> SupportFraction:
    hits = sum(1 for transaction in db.transactions if contains(transaction.items, itemset))
    return SupportFraction(hits, db.n_transactions)


def bf_frequent_itemsets(
    db: TransactionDatabase, min_support: Fraction | float | str
) -> FrequentItemsets:
    """Count every non-empty itemset of the dictionary by a direct scan."""
    threshold = unit_threshold("min_support", min_support)
    if db.n_items > ORACLE_MAX_ITEMS:
        raise OracleLimitError(db.n_items, ORACLE_MAX_ITEMS)
    longest = max((len(transaction.items) for transaction in db.transactions), default=0)
    supports: dict[Itemset, SupportFraction] = {}
    # No itemset longer than the longest transaction can have support
    for k in range(1, longest + 1):
        for itemset in combinations(range(db.n_items), k):
            support = _count(db, itemset)
            if support.meets(threshold):
                supports[itemset] = support
    return FrequentItemsets.from_supports(db.n_transactions, supports)


def bf_rules(frequent: FrequentItemsets, min_conf: Fraction | float | str) -> list[Rule]:
    """Test s -> (I - s) for every frequent I and every non-empty proper subset s."""
    threshold = unit_threshold("min_confidence", min_conf)
    rules = []
    for itemset in frequent:
        if len(itemset) < 2:
            continue
        support = frequent.support_of(itemset)
        for size in range(1, len(itemset)):
            for antecedent in combinations(itemset, size):
                consequent = tuple(item for item in itemset if item not in antecedent)
                conf = confidence(support, frequent.support_of(antecedent))
                if conf >= threshold:
                    rules.append(Rule(antecedent, consequent, support, conf))
    rules.sort(key=Rule.sort_key)
    return rules


def _range_support(
    attr: QuantitativeAttribute, db: TransactionDatabase, interval: Interval
) -> SupportFraction:
    hits = 0
    for transaction in db.transactions:
        quantity = transaction.quantity(attr.item)
        if quantity is not None and attr.rank(quantity) in interval:
            hits += 1
    return SupportFraction(hits, db.n_transactions)


def bf_interval_unions(
    p: Partitioning, db: TransactionDatabase, max_support: Fraction | float | str
) -> list[Interval]:
    """Return the base intervals plus every consecutive union within max support."""
    high = unit_threshold("max_support", max_support)
    emitted = set(p.intervals)
    for first, last in combinations(range(len(p.intervals)), 2):
        union = Interval(p.intervals[first].lo, p.intervals[last].hi)
        if _range_support(p.attribute, db, union).at_most(high):
            emitted.add(union)
    return sorted(emitted)


def bf_frequent_ranges(
    attr: QuantitativeAttribute,
    db: TransactionDatabase,
    min_support: Fraction | float | str,
) -> list[tuple[Interval, SupportFraction]]:
    """Return every consecutive rank range meeting min support."""
    threshold = unit_threshold("min_support", min_support)
    frequent = []
    for lo in range(attr.n_ranks):
        for hi in range(lo, attr.n_ranks):
            support = _range_support(attr, db, Interval(lo, hi))
            if support.meets(threshold):
                frequent.append((Interval(lo, hi), support))
    return frequent


def check_partial_completeness(
    p: Partitioning,
    db: TransactionDatabase,
    min_support: Fraction | float | str,
    partial_completeness: Fraction | float | str,
) -> list[Interval]:
    """Return the frequent ranges lacking a partition-level generalization.

    A range is covered when the narrowest union of base partitions holding it
    has at most K times its support. Every wider union only gains support.
    """
    level = as_fraction(partial_completeness)
    violations = []
    for interval, support in bf_frequent_ranges(p.attribute, db, min_support):
        first = next(index for index, base in enumerate(p.intervals) if interval.lo in base)
        last = next(index for index, base in enumerate(p.intervals) if interval.hi in base)
        union = Interval(p.intervals[first].lo, p.intervals[last].hi)
        if _range_support(p.attribute, db, union).value > level * support.value:
            violations.append(interval)
    if violations:
        _LOGGER.debug(
            "Partitioning of %s is not %s-complete for %d ranges",
            p.attribute.name, level, len(violations))
    return violations


def naive_generalized(
    db: TransactionDatabase,
    tax: TaxonomyGraph,
    min_support: Fraction | float | str,
) -> FrequentItemsets:
    """Mine the fully extended database exhaustively, then drop x/x̂ itemsets."""
    everything = bf_frequent_itemsets(tax.extended_database(db), min_support)
    kept = {
        itemset: everything.support_of(itemset)
        for itemset in everything
        if not tax.is_redundant(itemset)
    }
    return FrequentItemsets.from_supports(everything.total, kept)


def random_database(
    rng: Random,
    n_items: int = 8,
    n_transactions: int = 50,
    density: float = 0.4,
) -> TransactionDatabase:
    """Return a database over items A, B, ... with each item present at the given density."""
    names = ascii_uppercase[:n_items]
    rows = [
        [name for name in names if rng.random() < density]
        for _ in range(rng.randint(1, n_transactions))
    ]
    return TransactionDatabase.from_baskets(rows, extra_items=names)


def random_quantitative_database(
    rng: Random,
    n_transactions: int = 100,
    n_values: int = 20,
    name: str = "Q",
) -> TransactionDatabase:
    """Return a database with one quantified item drawn from up to n_values values."""
    values = sorted(rng.sample(range(1, 10 * n_values), rng.randint(1, n_values)))
    weights = [rng.uniform(1, 2) for _ in values]
    rows = [
        {name: rng.choices(values, weights)[0]}
        for _ in range(rng.randint(1, n_transactions))
    ]
    return TransactionDatabase.from_baskets(rows)


def random_tree_taxonomy(
    rng: Random,
    db: TransactionDatabase,
    n_categories: int = 4,
    levels: int = 3,
) -> TaxonomyGraph:
    """Return a random tree over the database items with at most the given levels.

    Categories are named c0, c1, ... and each gets at most one parent among
    the categories created before it, which keeps the graph a forest.
    """
    categories = [f"c{index}" for index in range(n_categories)]
    depth = {category: 1 for category in categories}
    edges: list[tuple[str, str]] = []
    for index, category in enumerate(categories):
        candidates = [parent for parent in categories[:index] if depth[parent] < levels - 1]
        if candidates and rng.random() < 0.5:
            parent = rng.choice(candidates)
            depth[category] = depth[parent] + 1
            edges.append((parent, category))
    for name in db.item_names:
        if rng.random() < 0.7:
            edges.append((rng.choice(categories), name))
    return TaxonomyGraph.from_edges(_drop_empty_categories(edges, set(categories)), db)


def _drop_empty_categories(
    edges: list[tuple[str, str]], categories: set[str]
) -> list[tuple[str, str]]:
    """Remove categories without items below them, which would otherwise read as leaves."""
    children: dict[str, set[str]] = {}
    for parent, child in edges:
        children.setdefault(parent, set()).add(child)

    def has_leaf(node: str) -> bool:
        return node not in categories or any(has_leaf(child) for child in children.get(node, ()))

    return [(parent, child) for parent, child in edges if has_leaf(child)]


@dataclass
class OracleReport:
    """Outcome of a differential check: the comparisons run and the mismatches found."""

    checks: int = 0
    mismatches: list[str] = field(default_factory=list)

    def compare(self, label: str, expected: object, actual: object) -> None:
        """Record one comparison."""
        self.checks += 1
        if expected != actual:
            self.mismatches.append(label)
            _LOGGER.warning("Oracle mismatch: %s", label)

    @property
    def ok(self) -> bool:
        """Return True when every comparison agreed."""
        return not self.mismatches


def differential_check(
    db: TransactionDatabase,
    min_support: Fraction | float | str,
    min_confidence: Fraction | float | str,
    tax: TaxonomyGraph | None = None,
    tree_shapes: Iterable[tuple[int, int]] = (
        (2, 1), (DEFAULT_BUCKET_COUNT, 4), (32, DEFAULT_LEAF_SPLIT_THRESHOLD)),
    report: OracleReport | None = None,
    label: str = "input",
) -> OracleReport:
    """Compare apriori, rule generation and the hash tree against the brute-force oracles."""
    report = report if report is not None else OracleReport()
    frequent = apriori(db, min_support)
    expected = bf_frequent_itemsets(db, min_support)
    report.compare(f"{label}: frequent itemsets", expected.as_dict(), frequent.as_dict())
    report.compare(
        f"{label}: rules",
        bf_rules(expected, min_confidence),
        generate_rules(frequent, min_confidence))

    for k in range(2, max(frequent.by_size, default=1) + 2):
        candidates = apriori_gen(frequent.level(k - 1))
        if not candidates:
            break
        for bucket_count, leaf_split_threshold in tree_shapes:
            tree = build_hash_tree(candidates, bucket_count, leaf_split_threshold, k=k)
            report.compare(
                f"{label}: hash tree k={k} buckets={bucket_count} split={leaf_split_threshold}",
                [sorted(naive_subset(candidates, t.items)) for t in db.transactions],
                [sorted(tree.subset(t.items)) for t in db.transactions])

    if tax is not None:
        generalized = apriori(tax.augmented(db), min_support, extender=tax)
        report.compare(
            f"{label}: generalized itemsets",
            naive_generalized(db, tax, min_support).as_dict(),
            generalized.as_dict())
    return report
