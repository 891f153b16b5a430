"""Models for the basket_miner package."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, TypeAlias, TypeGuard

from .exceptions import (
    InvalidItemsetError,
    InvalidThresholdError,
    UnknownItemError,
)

# Strictly increasing tuple of item ids
Itemset: TypeAlias = tuple[int, ...]

# A basket row is either a bag of names or a map name -> quantity (None for unquantified)
BasketRow: TypeAlias = Iterable[str] | Mapping[str, int | None]


def is_itemset(obj: Any) -> TypeGuard[Itemset]:
    """Return True if the object is a non-empty strictly increasing tuple of item ids."""
    if not isinstance(obj, tuple) or not obj:
        return False
    if not all(isinstance(item, int) and item >= 0 for item in obj):
        return False
    return all(a < b for a, b in zip(obj, obj[1:]))


def make_itemset(items: Iterable[int]) -> Itemset:
    """Return the itemset holding the given item ids."""
    itemset = tuple(sorted(set(items)))
    if not is_itemset(itemset):
        raise InvalidItemsetError(itemset)
    return itemset


def contains(items: Sequence[int], itemset: Itemset) -> bool:
    """Return True if every item of the itemset occurs in the ordered items.

    Both sequences are ordered, so a single linear merge decides containment.
    """
    if not itemset:
        raise InvalidItemsetError(itemset)
    position = 0
    n_items = len(items)
    for wanted in itemset:
        while position < n_items and items[position] < wanted:
            position += 1
        if position == n_items or items[position] != wanted:
            return False
        position += 1
    return True


def as_fraction(value: Fraction | int | float | str) -> Fraction:
    """Return a threshold as an exact fraction.

    Accepts fractions, integers, decimal strings ("0.3"), percentages ("30%")
    and floats, which are converted through their shortest decimal repr.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidThresholdError("threshold", value, "a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    text = str(value).strip()
    try:
        if text.endswith("%"):
            return Fraction(text[:-1].strip()) / 100
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise InvalidThresholdError("threshold", value, "a decimal or a percentage") from err


def unit_threshold(name: str, value: Fraction | int | float | str) -> Fraction:
    """Return a threshold in (0, 1] as an exact fraction."""
    threshold = as_fraction(value)
    if not 0 < threshold <= 1:
        raise InvalidThresholdError(name, value, "in (0, 1]")
    return threshold


@dataclass(frozen=True)
class SupportFraction:
    """Exact support of an itemset: containing transactions over all transactions."""

    count: int
    total: int

    def __post_init__(self) -> None:
        """Validate the counts."""
        if self.total < 0 or not 0 <= self.count <= self.total:
            raise ValueError(f"Invalid support {self.count}/{self.total}")

    @property
    def value(self) -> Fraction:
        """Return the support as a fraction."""
        return Fraction(self.count, self.total)

    def meets(self, threshold: Fraction) -> bool:
        """Return True if support >= threshold, compared by cross-multiplication."""
        return self.count * threshold.denominator >= threshold.numerator * self.total

    def at_most(self, threshold: Fraction) -> bool:
        """Return True if support <= threshold, compared by cross-multiplication."""
        return self.count * threshold.denominator <= threshold.numerator * self.total

    def __str__(self) -> str:
        return f"{self.count}/{self.total}"


@dataclass(frozen=True)
class Transaction:
    """A transaction: ordered distinct item ids plus optional quantities."""

    tid: int
    items: tuple[int, ...]
    quantities: Mapping[int, int] = field(default_factory=dict)

    def quantity(self, item: int) -> int | None:
        """Return the quantity of an item, or None when it is not quantified."""
        return self.quantities.get(item)


@dataclass(frozen=True)
class TransactionDatabase:
    """Item dictionary plus the transactions referencing it."""

    item_names: tuple[str, ...]
    transactions: tuple[Transaction, ...]

    @classmethod
    def from_baskets(
        cls, rows: Iterable[BasketRow], extra_items: Iterable[str] = ()
    ) -> TransactionDatabase:
        """Create a database from named rows, assigning ids in name order."""
        named_rows: list[dict[str, int | None]] = []
        names: set[str] = set(extra_items)
        for row in rows:
            if isinstance(row, Mapping):
                named = dict(row)
            else:
                named = dict.fromkeys(row)
            names.update(named)
            named_rows.append(named)

        item_names = tuple(sorted(names))
        ids = {name: item_id for item_id, name in enumerate(item_names)}
        transactions = tuple(
            Transaction(
                tid=tid,
                items=tuple(sorted(ids[name] for name in named)),
                quantities={
                    ids[name]: quantity
                    for name, quantity in named.items()
                    if quantity is not None
                },
            )
            for tid, named in enumerate(named_rows)
        )
        return cls(item_names=item_names, transactions=transactions)

    @property
    def n_transactions(self) -> int:
        """Return the number of transactions, empty ones included."""
        return len(self.transactions)

    @property
    def n_items(self) -> int:
        """Return the size of the item dictionary."""
        return len(self.item_names)

    @cached_property
    def _ids(self) -> dict[str, int]:
        return {name: item_id for item_id, name in enumerate(self.item_names)}

    def item_id(self, name: str) -> int:
        """Return the id of a named item."""
        try:
            return self._ids[name]
        except KeyError as err:
            raise UnknownItemError(name) from err

    def item_name(self, item_id: int) -> str:
        """Return the name of an item id."""
        if not 0 <= item_id < len(self.item_names):
            raise UnknownItemError(item_id)
        return self.item_names[item_id]

    def itemset(self, names: Iterable[str]) -> Itemset:
        """Return the itemset for the given names."""
        return make_itemset(self.item_id(name) for name in names)

    def names(self, itemset: Iterable[int]) -> tuple[str, ...]:
        """Return the names of an itemset's items."""
        return tuple(self.item_name(item_id) for item_id in itemset)

    def quantified_items(self) -> tuple[int, ...]:
        """Return the ids of items that carry quantities."""
        quantified: set[int] = set()
        for transaction in self.transactions:
            quantified.update(transaction.quantities)
        return tuple(sorted(quantified))
