"""Basket file reading and writing, and support counting over a database."""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import BinaryIO

from .exceptions import (
    BasketFormatError,
    EmptyDatabaseError,
    InvalidItemsetError,
    UnknownItemError,
)
from .models import (
    Itemset,
    SupportFraction,
    TransactionDatabase,
    contains,
    is_itemset,
)

_LOGGER: logging.Logger = logging.getLogger(__package__)

_SEPARATORS = re.compile(r"[\s,]+")
_TOKEN = re.compile(r"^(?P<name>[^:]+)(?::(?P<quantity>\d+))?$")


def load_transactions(source: BinaryIO | bytes) -> TransactionDatabase:
    """Load a database from a basket-format byte stream.

    One transaction per line, items separated by whitespace or commas, an
    optional ":<integer>" suffix carries the item's quantity. Lines starting
    with "#" are comments and blank lines are empty transactions.
    """
    raw = source if isinstance(source, bytes) else source.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as err:
        line_number = raw[: err.start].count(b"\n") + 1
        raise BasketFormatError(line_number, "not valid UTF-8") from err

    rows: list[dict[str, int | None]] = []
    # item name -> (quantified?, first line seen)
    seen: dict[str, tuple[bool, int]] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        row: dict[str, int | None] = {}
        for token in filter(None, _SEPARATORS.split(stripped)):
            match = _TOKEN.match(token)
            if match is None:
                raise BasketFormatError(line_number, f"malformed item {token!r}")
            name = match["name"]
            quantity = None if match["quantity"] is None else int(match["quantity"])

            quantified, first_line = seen.setdefault(name, (quantity is not None, line_number))
            if quantified != (quantity is not None):
                raise BasketFormatError(
                    line_number,
                    f"item {name!r} is quantified on one occurrence but not another "
                    f"(first seen on line {first_line})",
                )
            if quantity is not None and row.get(name) is not None:
                quantity += row[name]
            row[name] = quantity
        rows.append(row)

    if not seen:
        raise EmptyDatabaseError

    db = TransactionDatabase.from_baskets(rows)
    _LOGGER.debug(
        "Loaded %d transactions over %d items (%d quantified)",
        db.n_transactions, db.n_items, len(db.quantified_items()))
    return db


def load_transactions_from_path(path: str | Path) -> TransactionDatabase:
    """Load a database from a basket file on disk."""
    with open(path, "rb") as source:
        return load_transactions(source)


def dump_transactions(db: TransactionDatabase) -> str:
    """Serialize a database back to the basket format."""
    lines = []
    for transaction in db.transactions:
        tokens = []
        for item in transaction.items:
            quantity = transaction.quantity(item)
            name = db.item_name(item)
            tokens.append(name if quantity is None else f"{name}:{quantity}")
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"


def support(db: TransactionDatabase, itemset: Itemset) -> SupportFraction:
    """Return the exact support of an itemset by a full scan."""
    if not is_itemset(itemset):
        raise InvalidItemsetError(itemset)
    if itemset[-1] >= db.n_items:
        raise UnknownItemError(itemset[-1])
    count = sum(1 for transaction in db.transactions if contains(transaction.items, itemset))
    return SupportFraction(count, db.n_transactions)
