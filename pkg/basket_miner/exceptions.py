"""Exceptions for the basket_miner package."""

from __future__ import annotations

from typing import Any


class BasketMinerError(Exception):
    """Base class for every error raised by this package."""


class InvalidConfigError(BasketMinerError):
    """Exception raised when a run configuration is invalid."""


class InvalidThresholdError(InvalidConfigError):
    """Exception raised when a threshold lies outside its allowed range."""

    def __init__(self, name: str, value: Any, allowed: str):
        """Initialize the exception."""
        self.name = name
        self.value = value
        self.allowed = allowed
        super().__init__(f"Invalid {name} {value!r}: must be {allowed}")


class DataError(BasketMinerError):
    """Base class for errors caused by input data."""


class BasketFormatError(DataError):
    """Exception raised when a basket file line cannot be parsed."""

    def __init__(self, line_number: int, reason: str):
        """Initialize the exception."""
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"Line {line_number}: {reason}")


class SourceReadError(DataError):
    """Exception raised when an input file cannot be read."""

    def __init__(self, path: str, reason: str):
        """Initialize the exception."""
        self.path = path
        self.reason = reason
        super().__init__(f"Cannot read {path}: {reason}")


class EmptyDatabaseError(DataError):
    """Exception raised when a basket source holds no items."""

    def __init__(self) -> None:
        """Initialize the exception."""
        super().__init__("Empty file: no items found")


class UnknownItemError(DataError):
    """Exception raised when an item is not in the item dictionary."""

    def __init__(self, item: int | str):
        """Initialize the exception."""
        self.item = item
        super().__init__(f"Unknown item: {item!r}")


class InvalidItemsetError(DataError):
    """Exception raised when an itemset is empty or not strictly increasing."""

    def __init__(self, itemset: Any):
        """Initialize the exception."""
        self.itemset = itemset
        super().__init__(
            f"Invalid itemset {itemset!r}: must be a non-empty strictly increasing tuple of item ids")


class InvalidRuleError(DataError):
    """Exception raised when a rule's sides are empty or overlap."""

    def __init__(self, antecedent: Any, consequent: Any):
        """Initialize the exception."""
        self.antecedent = antecedent
        self.consequent = consequent
        super().__init__(
            f"Invalid rule {antecedent!r} -> {consequent!r}: sides must be non-empty and disjoint")


class ZeroSupportError(DataError):
    """Exception raised when a confidence is requested for an unsupported antecedent."""

    def __init__(self, antecedent: Any = None):
        """Initialize the exception."""
        self.antecedent = antecedent
        super().__init__(f"Antecedent {antecedent!r} has zero support")


class TaxonomyFormatError(DataError):
    """Exception raised when a taxonomy edge line cannot be parsed."""

    def __init__(self, line_number: int, reason: str):
        """Initialize the exception."""
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"Taxonomy line {line_number}: {reason}")


class TaxonomyCycleError(DataError):
    """Exception raised when the taxonomy is not acyclic."""

    def __init__(self, cycle: list[str]):
        """Initialize the exception."""
        self.cycle = cycle
        super().__init__(f"Taxonomy cycle detected: {' -> '.join(cycle)}")


class TaxonomyLeafError(DataError):
    """Exception raised when a database item has children in the taxonomy."""

    def __init__(self, items: list[str]):
        """Initialize the exception."""
        self.items = items
        super().__init__(
            f"Database item(s) must be taxonomy leaves: {', '.join(items)}")


class UnknownTaxonomyNodeError(DataError):
    """Exception raised when a taxonomy leaf names no database item."""

    def __init__(self, nodes: list[str]):
        """Initialize the exception."""
        self.nodes = nodes
        super().__init__(
            f"Taxonomy leaf node(s) not in the database: {', '.join(nodes)}")


class NonTreeTaxonomyError(DataError):
    """Exception raised when a tree-shaped taxonomy is required but a DAG was given."""

    def __init__(self, node: str, parents: list[str]):
        """Initialize the exception."""
        self.node = node
        self.parents = parents
        super().__init__(
            f"Non-tree taxonomy: {node} has parents {', '.join(parents)}")


class MissingPartitioningError(DataError):
    """Exception raised when a quantified item has no admitted intervals."""

    def __init__(self, item: str):
        """Initialize the exception."""
        self.item = item
        super().__init__(f"No partitioning for quantified item {item}")


class StalePartitioningError(DataError):
    """Exception raised when a quantity lies outside the partitioned value range."""

    def __init__(self, item: str, quantity: int):
        """Initialize the exception."""
        self.item = item
        self.quantity = quantity
        super().__init__(
            f"Quantity {quantity} of {item} is not an observed value of the partitioning")


class InvalidPartitioningError(DataError):
    """Exception raised when intervals do not form an adjacent exact cover."""

    def __init__(self, item: str, reason: str):
        """Initialize the exception."""
        self.item = item
        self.reason = reason
        super().__init__(f"Invalid partitioning of {item}: {reason}")


class PartitioningFormatError(DataError):
    """Exception raised when a partitioning export line cannot be parsed."""

    def __init__(self, line_number: int, reason: str):
        """Initialize the exception."""
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"Partitioning line {line_number}: {reason}")


class ZeroMarginalError(DataError):
    """Exception raised when lift is requested for a table with an empty margin."""

    def __init__(self, table: Any):
        """Initialize the exception."""
        self.table = table
        super().__init__(f"Contingency table {table} has a zero marginal")


class ChiSquaredNotApplicableError(DataError):
    """Exception raised when a contingency table has a zero expected cell."""

    def __init__(self, table: Any):
        """Initialize the exception."""
        self.table = table
        super().__init__(f"Chi-squared not applicable to {table}: zero expected cell")


class OracleLimitError(DataError):
    """Exception raised when a brute-force oracle is asked to enumerate too many items."""

    def __init__(self, n_items: int, limit: int):
        """Initialize the exception."""
        self.n_items = n_items
        self.limit = limit
        super().__init__(
            f"Brute-force oracle limited to {limit} items, database has {n_items}")
