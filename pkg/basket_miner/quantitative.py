"""Discretization of quantified items into boolean interval items."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import logging
from math import ceil
from pathlib import Path

import numpy as np

from .const import (
    DEFAULT_PARTIAL_COMPLETENESS,
    DISCRETIZE_EQUI_DEPTH,
    DISCRETIZE_EQUI_WIDTH,
)
from .exceptions import (
    InvalidConfigError,
    InvalidPartitioningError,
    InvalidThresholdError,
    MissingPartitioningError,
    PartitioningFormatError,
    StalePartitioningError,
)
from .models import SupportFraction, TransactionDatabase, as_fraction, unit_threshold

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(frozen=True, order=True)
class Interval:
    """Closed range of value ranks."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        """Validate the bounds."""
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"Invalid interval [{self.lo},{self.hi}]")

    def __contains__(self, rank: object) -> bool:
        return isinstance(rank, int) and self.lo <= rank <= self.hi

    @property
    def width(self) -> int:
        """Return the number of ranks covered."""
        return self.hi - self.lo + 1

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class QuantitativeAttribute:
    """A quantified item with its distinct observed values mapped to ranks."""

    item: int
    name: str
    # Distinct observed values in ascending order; a value's index is its rank
    values: tuple[int, ...]
    # Number of transactions carrying each value, by rank
    counts: tuple[int, ...]

    @classmethod
    def from_values(cls, item: int, name: str, observed: Iterable[int]) -> QuantitativeAttribute:
        """Create an attribute from the multiset of observed quantities."""
        occurrences = Counter(observed)
        values = tuple(sorted(occurrences))
        return cls(item=item, name=name, values=values,
                   counts=tuple(occurrences[value] for value in values))

    @classmethod
    def from_database(cls, db: TransactionDatabase) -> list[QuantitativeAttribute]:
        """Create one attribute per quantified item of the database."""
        observed: dict[int, list[int]] = {}
        for transaction in db.transactions:
            for item, quantity in transaction.quantities.items():
                observed.setdefault(item, []).append(quantity)
        return [
            cls.from_values(item, db.item_name(item), observed[item])
            for item in sorted(observed)
        ]

    @cached_property
    def value_map(self) -> dict[int, int]:
        """Return the order-preserving map raw value -> rank."""
        return {value: rank for rank, value in enumerate(self.values)}

    @property
    def n_ranks(self) -> int:
        """Return the number of distinct values."""
        return len(self.values)

    @property
    def full_range(self) -> Interval:
        """Return the interval covering every rank."""
        return Interval(0, self.n_ranks - 1)

    def rank(self, value: int) -> int:
        """Return the rank of an observed value."""
        try:
            return self.value_map[value]
        except KeyError as err:
            raise StalePartitioningError(self.name, value) from err

    def count(self, interval: Interval) -> int:
        """Return the number of occurrences whose rank lies in the interval."""
        return sum(self.counts[interval.lo:interval.hi + 1])

    def label(self, interval: Interval) -> str:
        """Return the synthetic item name of an interval, in raw values."""
        return f"{self.name}[{self.values[interval.lo]},{self.values[interval.hi]}]"


@dataclass(frozen=True)
class Partitioning:
    """Adjacent intervals exactly covering an attribute's ranks."""

    attribute: QuantitativeAttribute
    intervals: tuple[Interval, ...]

    def __post_init__(self) -> None:
        """Validate that the intervals are adjacent and cover every rank."""
        name = self.attribute.name
        if not self.intervals:
            raise InvalidPartitioningError(name, "no intervals")
        if self.intervals[0].lo != 0 or self.intervals[-1].hi != self.attribute.n_ranks - 1:
            raise InvalidPartitioningError(name, "intervals do not cover every rank")
        for before, after in zip(self.intervals, self.intervals[1:]):
            if before.hi + 1 != after.lo:
                raise InvalidPartitioningError(name, f"{before} and {after} are not adjacent")

    def __len__(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class AdmittedIntervals:
    """The intervals of one attribute that become boolean items."""

    attribute: QuantitativeAttribute
    intervals: tuple[Interval, ...]


def num_partitions(
    n_quant_attributes: int,
    min_support: Fraction | float | str,
    partial_completeness: Fraction | float | str = DEFAULT_PARTIAL_COMPLETENESS,
) -> int:
    """Return ceil(2n / (m (K - 1))), the partition count for K-partial completeness."""
    support = as_fraction(min_support)
    level = as_fraction(partial_completeness)
    if level <= 1:
        raise InvalidThresholdError("K", partial_completeness, "> 1")
    if not 0 < support < 1:
        raise InvalidThresholdError("min_support", min_support, "in (0, 1)")
    return max(1, ceil(Fraction(2 * n_quant_attributes) / (support * (level - 1))))


def _furthest_end(prefix: np.ndarray, start: int, cap: int) -> int:
    """Return the last rank of the widest interval from start holding at most cap.

    A single rank always qualifies, whatever its count.
    """
    end = int(np.searchsorted(prefix, prefix[start] + cap, side="right")) - 2
    return max(start, end)


def _interval_count(prefix: np.ndarray, cap: int) -> int:
    """Return the fewest intervals covering every rank within the cap."""
    n_ranks = len(prefix) - 1
    count = start = 0
    while start < n_ranks:
        start = _furthest_end(prefix, start, cap) + 1
        count += 1
    return count


def _fewest_intervals(prefix: np.ndarray, cap: int) -> list[int]:
    """Return, for every start rank, the fewest intervals covering the ranks from it on."""
    n_ranks = len(prefix) - 1
    fewest = [0] * (n_ranks + 1)
    for start in range(n_ranks - 1, -1, -1):
        fewest[start] = 1 + fewest[_furthest_end(prefix, start, cap) + 1]
    return fewest


def balanced_partition(counts: Sequence[int], n_partitions: int) -> tuple[Interval, ...]:
    """Cut the ranks into min(n_partitions, ranks) intervals of near equal counts.

    The cap is the smallest count any interval wider than one rank must
    respect for that many intervals to cover the ranks; single ranks are
    exempt, so a heavy value ends up alone. Within the cap, each cut goes
    after the first rank whose running count reaches its share of the total.
    """
    if n_partitions < 1:
        raise InvalidThresholdError("partitions", n_partitions, ">= 1")
    n_ranks = len(counts)
    buckets = min(n_partitions, n_ranks)
    prefix = np.concatenate(([0], np.cumsum(np.asarray(counts, dtype=np.int64))))
    total = int(prefix[-1])

    low, high = 0, total
    while low < high:
        middle = (low + high) // 2
        if _interval_count(prefix, middle) <= buckets:
            high = middle
        else:
            low = middle + 1
    cap = low
    fewest = _fewest_intervals(prefix, cap)
    scaled = prefix[1:] * buckets

    intervals: list[Interval] = []
    start = 0
    for cut in range(1, buckets):
        remaining = buckets - cut
        # cut positions keeping this interval within the cap and the rest coverable
        last = min(_furthest_end(prefix, start, cap), n_ranks - 1 - remaining)
        first = start
        while fewest[first + 1] > remaining:
            first += 1
        # first rank whose running count reaches the cut's share of the total
        reached = int(np.searchsorted(scaled, cut * total, side="left"))
        end = min(max(reached, first), last)
        intervals.append(Interval(start, end))
        start = end + 1
    intervals.append(Interval(start, n_ranks - 1))
    return tuple(intervals)


def equi_width_partition(attr: QuantitativeAttribute, n_partitions: int) -> Partitioning:
    """Split the rank range into contiguous intervals whose widths differ by at most one."""
    return Partitioning(attr, balanced_partition([1] * attr.n_ranks, n_partitions))


def equi_depth_partition(attr: QuantitativeAttribute, n_partitions: int) -> Partitioning:
    """Split the ranks so each interval holds about the same number of occurrences.

    A rank is never split. With uniform counts this is the equi-width split.
    """
    p = Partitioning(attr, balanced_partition(attr.counts, n_partitions))
    _LOGGER.debug(
        "Equi-depth partitioning of %s: %s",
        attr.name, [attr.count(interval) for interval in p.intervals])
    return p


def _interval_counts(p: Partitioning, db: TransactionDatabase) -> list[int]:
    counts = [0] * len(p.intervals)
    starts = [interval.lo for interval in p.intervals]
    for transaction in db.transactions:
        quantity = transaction.quantity(p.attribute.item)
        if quantity is None:
            continue
        rank = p.attribute.rank(quantity)
        counts[int(np.searchsorted(starts, rank, side="right")) - 1] += 1
    return counts


def merge_adjacent(
    p: Partitioning,
    db: TransactionDatabase,
    min_support: Fraction | float | str,
    max_support: Fraction | float | str,
) -> list[Interval]:
    """Return the base intervals plus unions of consecutive ones within max support.

    Unions grow left to right from each base interval and stop at the first
    one exceeding max support, since wider unions only gain support.
    """
    low = unit_threshold("min_support", min_support)
    high = unit_threshold("max_support", max_support)
    if high < low:
        raise InvalidThresholdError("max_support", max_support, f">= min support {low}")

    counts = _interval_counts(p, db)
    emitted = list(p.intervals)
    for first in range(len(p.intervals)):
        running = counts[first]
        for last in range(first + 1, len(p.intervals)):
            running += counts[last]
            if not SupportFraction(running, db.n_transactions).at_most(high):
                break
            emitted.append(Interval(p.intervals[first].lo, p.intervals[last].hi))

    emitted.sort()
    frequent = sum(
        1 for interval in emitted
        if SupportFraction(p.attribute.count(interval), db.n_transactions).meets(low))
    _LOGGER.debug(
        "Attribute %s: %d base intervals, %d admitted, %d meeting min support",
        p.attribute.name, len(p.intervals), len(emitted), frequent)
    return emitted


def all_consecutive_intervals(attr: QuantitativeAttribute) -> list[Interval]:
    """Return every consecutive rank range of the attribute."""
    return [
        Interval(lo, hi)
        for lo in range(attr.n_ranks)
        for hi in range(lo, attr.n_ranks)
    ]


def partition_attributes(
    db: TransactionDatabase,
    mode: str,
    min_support: Fraction | float | str,
    partial_completeness: Fraction | float | str = DEFAULT_PARTIAL_COMPLETENESS,
    partitions: int | None = None,
) -> list[Partitioning]:
    """Partition every quantified item of the database.

    The partition count comes from the override, is 1 at min support 1 and
    otherwise comes from num_partitions. It is clamped to each attribute's
    number of distinct values.
    """
    attributes = QuantitativeAttribute.from_database(db)
    if not attributes:
        return []
    if partitions is None and as_fraction(min_support) == 1:
        # only the full range can reach support 1
        partitions = 1
    elif partitions is None:
        partitions = num_partitions(len(attributes), min_support, partial_completeness)
    if mode == DISCRETIZE_EQUI_WIDTH:
        partitioner = equi_width_partition
    elif mode == DISCRETIZE_EQUI_DEPTH:
        partitioner = equi_depth_partition
    else:
        raise InvalidConfigError(f"Unsupported discretization mode {mode!r}")

    result = []
    for attribute in attributes:
        requested = min(partitions, attribute.n_ranks)
        if requested < partitions:
            _LOGGER.debug(
                "Clamped %d partitions of %s to its %d distinct values",
                partitions, attribute.name, attribute.n_ranks)
        result.append(partitioner(attribute, requested))
    return result


def booleanize(
    db: TransactionDatabase, admitted: Mapping[int, AdmittedIntervals]
) -> TransactionDatabase:
    """Replace each quantified item by one synthetic item per admitted interval holding its value.

    Unquantified items pass through; the new dictionary is ordered by name.
    """
    rows: list[list[str]] = []
    for transaction in db.transactions:
        row: list[str] = []
        for item in transaction.items:
            name = db.item_name(item)
            quantity = transaction.quantity(item)
            if quantity is None:
                row.append(name)
                continue
            if item not in admitted:
                raise MissingPartitioningError(name)
            intervals = admitted[item]
            rank = intervals.attribute.rank(quantity)
            row.extend(
                intervals.attribute.label(interval)
                for interval in intervals.intervals
                if rank in interval
            )
        rows.append(row)
    return TransactionDatabase.from_baskets(rows)


def format_partitioning(p: Partitioning) -> list[str]:
    """Return the text export lines "attr lo hi raw_lo raw_hi count"."""
    attr = p.attribute
    return [
        f"{attr.name} {interval.lo} {interval.hi} "
        f"{attr.values[interval.lo]} {attr.values[interval.hi]} {attr.count(interval)}"
        for interval in p.intervals
    ]


def parse_partitioning(text: str, db: TransactionDatabase) -> list[Partitioning]:
    """Read "attr lo hi raw_lo raw_hi count" lines back into partitionings of db.

    Every line is checked against the database's observed values, so an
    export only loads against the data it was computed from. Attributes
    absent from the text are left out of the result.
    """
    attributes = {attr.name: attr for attr in QuantitativeAttribute.from_database(db)}
    found: dict[str, list[Interval]] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if len(fields) != 6:
            raise PartitioningFormatError(
                line_number,
                f"expected 'attr lo hi raw_lo raw_hi count', got {len(fields)} field(s)")
        name = fields[0]
        try:
            lo, hi, raw_lo, raw_hi, count = (int(field) for field in fields[1:])
        except ValueError as err:
            raise PartitioningFormatError(line_number, "non-integer bound or count") from err
        if name not in attributes:
            raise PartitioningFormatError(line_number, f"{name} is not a quantified item")
        attr = attributes[name]
        if not 0 <= lo <= hi < attr.n_ranks:
            raise InvalidPartitioningError(
                name, f"ranks [{lo},{hi}] outside 0..{attr.n_ranks - 1}")
        interval = Interval(lo, hi)
        if (attr.values[lo], attr.values[hi], attr.count(interval)) != (raw_lo, raw_hi, count):
            raise InvalidPartitioningError(
                name, f"line {line_number} does not match the observed values")
        found.setdefault(name, []).append(interval)

    return [
        Partitioning(attr, tuple(found[name]))
        for name, attr in attributes.items()
        if name in found
    ]


def load_partitioning_from_path(path: str | Path, db: TransactionDatabase) -> list[Partitioning]:
    """Load a partitioning export from disk."""
    with open(path, encoding="utf-8") as source:
        return parse_partitioning(source.read(), db)
