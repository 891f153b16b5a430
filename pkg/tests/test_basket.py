"""Tests for basket file loading and support counting."""

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st
import pytest

from basket_miner.basket import dump_transactions, load_transactions, support
from basket_miner.exceptions import (
    BasketFormatError,
    EmptyDatabaseError,
    InvalidItemsetError,
    UnknownItemError,
)
from basket_miner.models import TransactionDatabase

from .strategies import databases


def test_load_example_database(example_db) -> None:
    """The market example has five transactions over A to E."""
    assert example_db.n_transactions == 5
    assert example_db.item_names == ("A", "B", "C", "D", "E")
    assert [t.items for t in example_db.transactions] == [
        (3,), (0, 1, 2), (0, 2), (0, 3), (0, 1, 2, 3, 4)]


def test_load_single_item() -> None:
    """A one-line file is a one-transaction database."""
    db = load_transactions(b"A\n")
    assert (db.n_transactions, db.n_items) == (1, 1)


def test_load_quantities_commas_and_comments() -> None:
    """Quantities, comma separators, comments and blank lines are understood."""
    db = load_transactions(b"# header\nBeer:2, Charcoal\n\nBeer:1 Beer:3\n")

    assert db.n_transactions == 3
    beer = db.item_id("Beer")
    assert db.transactions[0].quantity(beer) == 2
    assert db.transactions[1].items == ()
    # repeated quantified occurrences on one line add up
    assert db.transactions[2].quantity(beer) == 4


def test_duplicate_items_are_deduplicated() -> None:
    """A raw transaction is a set."""
    db = load_transactions(b"A A B\n")
    assert db.transactions[0].items == (0, 1)


@pytest.mark.parametrize(
    ("content", "line_number"),
    [
        (b"A\nB:x\n", 2),
        (b"A:1\nA\n", 2),
        (b"A\n\xff\n", 2),
        (b"A:1:2\n", 1),
    ],
)
def test_load_reports_line_numbers(content: bytes, line_number: int) -> None:
    """Malformed lines are reported with their position."""
    with pytest.raises(BasketFormatError) as excinfo:
        load_transactions(content)
    assert excinfo.value.line_number == line_number


def test_load_empty_file() -> None:
    """A file without items is rejected."""
    for content in (b"", b"# nothing\n\n"):
        with pytest.raises(EmptyDatabaseError):
            load_transactions(content)


def test_support_of_examples(example_db) -> None:
    """Support counts the containing transactions."""
    assert support(example_db, (0,)).value == Fraction(4, 5)
    assert support(example_db, (4,)).value == Fraction(1, 5)
    assert support(example_db, (0, 1, 2)).value == Fraction(2, 5)


def test_support_rejects_bad_itemsets(example_db) -> None:
    """Itemsets are validated before counting."""
    with pytest.raises(InvalidItemsetError):
        support(example_db, ())
    with pytest.raises(UnknownItemError):
        support(example_db, (0, 9))


@given(
    db=databases(min_items=6, max_items=6, max_transactions=30),
    chosen=st.lists(st.integers(0, 5), min_size=3, max_size=3, unique=True),
)
@settings(max_examples=50, deadline=None)
def test_support_is_anti_monotone(db: TransactionDatabase, chosen: list[int]) -> None:
    """Adding an item never raises support."""
    items = sorted(chosen)
    assert support(db, tuple(items)).count <= support(db, tuple(items[:2])).count


@given(db=databases(max_items=5, max_transactions=20))
@settings(max_examples=50, deadline=None)
def test_dump_then_load_preserves_the_database(db: TransactionDatabase) -> None:
    """Serializing and reloading gives back the same transactions."""
    assume(any(t.items for t in db.transactions))
    reloaded = load_transactions(dump_transactions(db).encode())
    assert [reloaded.names(t.items) for t in reloaded.transactions] == [
        db.names(t.items) for t in db.transactions]
