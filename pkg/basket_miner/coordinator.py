"""Coordinates one run: loading, discretization, taxonomy, mining and screening."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
from random import Random

from .apriori import FrequentItemsets, apriori
from .basket import load_transactions_from_path
from .config import RunConfig
from .const import (
    CONF_INPUT,
    CONF_MIN_CONFIDENCE,
    CONF_MIN_SUPPORT,
    CONF_TAXONOMY,
    DIRECTION_Q2T,
    DISCRETIZE_EQUI_DEPTH,
    DISCRETIZE_NONE,
    TAXONOMY_INTERVALS_ALL,
)
from .exceptions import InvalidConfigError, SourceReadError
from .interest import ScreenedRule, screen_rules
from .models import TransactionDatabase
from .oracle import OracleReport, differential_check, random_database, random_tree_taxonomy
from .quantitative import (
    AdmittedIntervals,
    Partitioning,
    booleanize,
    format_partitioning,
    load_partitioning_from_path,
    merge_adjacent,
    partition_attributes,
)
from .rules import generate_rules
from .taxonomy import TaxonomyGraph, load_taxonomy_from_path, mine_generalized_itemsets
from .transform import (
    all_leaf_intervals,
    format_numbering,
    interval_items,
    quantitative_to_taxonomy,
    taxonomy_leaf_intervals,
    taxonomy_to_quantitative,
)

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass
class MiningReport:
    """Outcome of a mining run."""

    # Dictionary the rules' item ids refer to, categories included
    item_names: tuple[str, ...]
    frequent: FrequentItemsets
    rules: list[ScreenedRule]
    partitionings: list[Partitioning] = field(default_factory=list)
    taxonomy: TaxonomyGraph | None = None


class MiningCoordinator:
    """Run the configured pipeline over the configured input files."""

    def __init__(self, config: RunConfig) -> None:
        """Initialize coordinator."""
        self.config = config

    def load(self) -> TransactionDatabase:
        """Load the basket input."""
        self.config.require(CONF_INPUT)
        try:
            return load_transactions_from_path(self.config.input)
        except OSError as err:
            raise SourceReadError(str(self.config.input), err.strerror or str(err)) from err

    def load_taxonomy(self, db: TransactionDatabase | None) -> TaxonomyGraph | None:
        """Load the taxonomy bound to the database, if one is configured."""
        if self.config.taxonomy is None:
            return None
        try:
            return load_taxonomy_from_path(self.config.taxonomy, db)
        except OSError as err:
            raise SourceReadError(self.config.taxonomy, err.strerror or str(err)) from err

    def partition(self, db: TransactionDatabase, mode: str | None = None) -> list[Partitioning]:
        """Partition every quantified item of the database, or load a saved partitioning."""
        if self.config.partitioning is not None:
            try:
                return load_partitioning_from_path(self.config.partitioning, db)
            except OSError as err:
                raise SourceReadError(
                    self.config.partitioning, err.strerror or str(err)) from err
        mode = mode or self.config.discretize
        if mode == DISCRETIZE_NONE:
            return []
        if self.config.partitions is None:
            self.config.require(CONF_MIN_SUPPORT)
        partitionings = partition_attributes(
            db,
            mode,
            self.config.min_support,
            self.config.partial_completeness,
            self.config.partitions,
        )
        if not partitionings:
            _LOGGER.warning("No quantified items found in %s", self.config.input)
        return partitionings

    def discretize(
        self, db: TransactionDatabase
    ) -> tuple[TransactionDatabase, list[Partitioning]]:
        """Replace quantified items by interval items, leaving other databases untouched."""
        partitionings = self.partition(db)
        if not partitionings:
            return db, []
        self.config.require(CONF_MIN_SUPPORT)
        admitted = {
            p.attribute.item: AdmittedIntervals(
                p.attribute,
                tuple(merge_adjacent(
                    p, db, self.config.min_support, self.config.max_support)),
            )
            for p in partitionings
        }
        return booleanize(db, admitted), partitionings

    def mine(self) -> MiningReport:
        """Run the full mining pipeline and return the screened rules."""
        self.config.require(CONF_MIN_SUPPORT, CONF_MIN_CONFIDENCE)
        if self.config.taxonomy_intervals is not None:
            self.config.require(CONF_TAXONOMY)
        db, partitionings = self.discretize(self.load())
        taxonomy = self.load_taxonomy(db)

        options = {
            "bucket_count": self.config.bucket_count,
            "leaf_split_threshold": self.config.leaf_split_threshold,
            "use_hash_tree": not self.config.naive_counting,
            "threads": self.config.threads,
        }
        if taxonomy is not None and self.config.taxonomy_intervals is not None:
            mined_db = self.leaf_interval_items(db, taxonomy)
            frequent = apriori(mined_db, self.config.min_support, **options)
            screening_db = mined_db
        elif taxonomy is None:
            mined_db = db
            frequent = apriori(db, self.config.min_support, **options)
            screening_db = db
        else:
            mined_db = taxonomy.augmented(db)
            frequent = mine_generalized_itemsets(
                db, taxonomy, self.config.min_support, **options)
            screening_db = taxonomy.extended_database(db)

        rules = generate_rules(frequent, self.config.min_confidence)
        screened = screen_rules(
            screening_db,
            rules,
            self.config.interest,
            self.config.chi2_threshold,
            threads=self.config.threads,
        )
        _LOGGER.debug(
            "Mined %d frequent itemsets and %d rules", len(frequent), len(screened))
        return MiningReport(
            item_names=mined_db.item_names,
            frequent=frequent,
            rules=screened,
            partitionings=partitionings,
            taxonomy=taxonomy,
        )

    def leaf_interval_items(
        self, db: TransactionDatabase, taxonomy: TaxonomyGraph
    ) -> TransactionDatabase:
        """Read a tree taxonomy as numbered leaves and replace leaves by annotated intervals."""
        numberings = taxonomy_to_quantitative(taxonomy)
        if self.config.taxonomy_intervals == TAXONOMY_INTERVALS_ALL:
            enumerate_intervals = all_leaf_intervals
        else:
            enumerate_intervals = taxonomy_leaf_intervals
        intervals = {numbering.root: enumerate_intervals(numbering) for numbering in numberings}
        _LOGGER.debug(
            "Mining %d leaf intervals over %d taxonomy roots",
            sum(len(found) for found in intervals.values()), len(numberings))
        return interval_items(db, numberings, intervals, annotate=True)

    def discretize_report(self) -> list[str]:
        """Return the partitioning export lines without mining."""
        mode = self.config.discretize
        if mode == DISCRETIZE_NONE:
            mode = DISCRETIZE_EQUI_DEPTH
        lines: list[str] = []
        for p in self.partition(self.load(), mode):
            lines.extend(format_partitioning(p))
        return lines

    def transform(self, direction: str) -> list[str]:
        """Return the opposite representation of the input as text lines."""
        if direction == DIRECTION_Q2T:
            if self.config.discretize == DISCRETIZE_NONE and self.config.partitioning is None:
                raise InvalidConfigError(
                    "Converting quantities to a taxonomy needs a discretization mode"
                    " or a partitioning file")
            lines: list[str] = []
            for p in self.partition(self.load()):
                tree = quantitative_to_taxonomy(p.attribute, p, bisect=self.config.bisect)
                lines.extend(f"{parent} {child}" for parent, child in tree.named_edges())
            return lines

        self.config.require(CONF_TAXONOMY)
        db = self.load() if self.config.input is not None else None
        taxonomy = self.load_taxonomy(db)
        assert taxonomy is not None
        lines = []
        for numbering in taxonomy_to_quantitative(taxonomy):
            lines.extend(format_numbering(numbering))
        return lines

    def oracle_check(self) -> OracleReport:
        """Compare the miners with the brute-force oracles on the input and on random data."""
        self.config.require(CONF_MIN_SUPPORT, CONF_MIN_CONFIDENCE)
        db = self.load()
        report = differential_check(
            db,
            self.config.min_support,
            self.config.min_confidence,
            tax=self.load_taxonomy(db),
            label=str(self.config.input),
        )
        rng = Random(self.config.seed)
        for trial in range(self.config.random_trials):
            trial_db = random_database(rng)
            differential_check(
                trial_db,
                self.config.min_support,
                self.config.min_confidence,
                tax=random_tree_taxonomy(rng, trial_db),
                report=report,
                label=f"trial {trial}",
            )
        _LOGGER.debug(
            "Oracle check: %d comparisons, %d mismatches",
            report.checks, len(report.mismatches))
        return report
