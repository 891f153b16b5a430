"""Shared fixtures for the basket_miner tests."""

from __future__ import annotations

from pathlib import Path

import pytest

from basket_miner.basket import load_transactions
from basket_miner.models import TransactionDatabase

EXAMPLE_BASKETS = b"D\nA B C\nA C\nA D\nA B C D E\n"


def tea_coffee_rows() -> list[list[str]]:
    """Return the 100 transactions of the tea and coffee shop table."""
    return (
        [["Tea", "Coffee"]] * 25
        + [["Tea"]] * 5
        + [["Coffee"]] * 65
        + [[]] * 5
    )


@pytest.fixture
def example_db() -> TransactionDatabase:
    """The five-transaction market example over items A to E."""
    return load_transactions(EXAMPLE_BASKETS)


@pytest.fixture
def tea_coffee_db() -> TransactionDatabase:
    """Tea and coffee purchases with a negative correlation."""
    return TransactionDatabase.from_baskets(tea_coffee_rows())


@pytest.fixture
def example_file(tmp_path: Path) -> Path:
    """The market example written to a basket file."""
    path = tmp_path / "example.basket"
    path.write_bytes(EXAMPLE_BASKETS)
    return path
