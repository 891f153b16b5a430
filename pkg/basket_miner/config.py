"""Run configuration for basket_miner."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
import logging
import os
from typing import Any

import voluptuous as vol

from .const import (
    CONF_BISECT,
    CONF_BUCKET_COUNT,
    CONF_CHI2_THRESHOLD,
    CONF_DIRECTION,
    CONF_DISCRETIZE,
    CONF_FORMAT,
    CONF_INPUT,
    CONF_INTEREST,
    CONF_LEAF_SPLIT_THRESHOLD,
    CONF_MAX_SUPPORT,
    CONF_MIN_CONFIDENCE,
    CONF_MIN_SUPPORT,
    CONF_NAIVE_COUNTING,
    CONF_PARTIAL_COMPLETENESS,
    CONF_PARTITIONING,
    CONF_PARTITIONS,
    CONF_RANDOM_TRIALS,
    CONF_SEED,
    CONF_TAXONOMY,
    CONF_TAXONOMY_INTERVALS,
    CONF_THREADS,
    DEFAULT_BUCKET_COUNT,
    DEFAULT_CHI2_THRESHOLD,
    DEFAULT_LEAF_SPLIT_THRESHOLD,
    DEFAULT_MAX_SUPPORT_FACTOR,
    DEFAULT_PARTIAL_COMPLETENESS,
    DIRECTION_Q2T,
    DIRECTION_T2Q,
    DISCRETIZE_MODES,
    DISCRETIZE_NONE,
    FORMAT_TABLE,
    INTEREST_MODES,
    INTEREST_NONE,
    OUTPUT_FORMATS,
    TAXONOMY_INTERVAL_MODES,
)
from .exceptions import InvalidConfigError, InvalidThresholdError
from .models import as_fraction, unit_threshold

_LOGGER: logging.Logger = logging.getLogger(__package__)


def _fraction(value: Any) -> Fraction:
    """Coerce a decimal, a percentage or a number to an exact fraction."""
    try:
        return as_fraction(value)
    except InvalidThresholdError as err:
        raise vol.Invalid(str(err)) from err


_COUNT = vol.All(vol.Coerce(int), vol.Range(min=1))

RUN_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_INPUT, default=None): vol.Any(None, str),
        vol.Optional(CONF_MIN_SUPPORT, default=None): vol.Any(None, _fraction),
        vol.Optional(CONF_MIN_CONFIDENCE, default=None): vol.Any(None, _fraction),
        vol.Optional(CONF_MAX_SUPPORT, default=None): vol.Any(None, _fraction),
        vol.Optional(
            CONF_PARTIAL_COMPLETENESS, default=DEFAULT_PARTIAL_COMPLETENESS
        ): _fraction,
        vol.Optional(CONF_DISCRETIZE, default=DISCRETIZE_NONE): vol.In(DISCRETIZE_MODES),
        vol.Optional(CONF_PARTITIONS, default=None): vol.Any(None, _COUNT),
        vol.Optional(CONF_PARTITIONING, default=None): vol.Any(None, str),
        vol.Optional(CONF_TAXONOMY, default=None): vol.Any(None, str),
        vol.Optional(CONF_TAXONOMY_INTERVALS, default=None): vol.Any(
            None, vol.In(TAXONOMY_INTERVAL_MODES)
        ),
        vol.Optional(CONF_INTEREST, default=INTEREST_NONE): vol.In(INTEREST_MODES),
        vol.Optional(CONF_CHI2_THRESHOLD, default=DEFAULT_CHI2_THRESHOLD): _fraction,
        vol.Optional(CONF_BUCKET_COUNT, default=DEFAULT_BUCKET_COUNT): _COUNT,
        vol.Optional(
            CONF_LEAF_SPLIT_THRESHOLD, default=DEFAULT_LEAF_SPLIT_THRESHOLD
        ): _COUNT,
        vol.Optional(CONF_NAIVE_COUNTING, default=False): bool,
        vol.Optional(CONF_FORMAT, default=FORMAT_TABLE): vol.In(OUTPUT_FORMATS),
        vol.Optional(CONF_THREADS, default=None): vol.Any(
            None, vol.All(vol.Coerce(int), vol.Clamp(min=1))
        ),
        vol.Optional(CONF_SEED, default=0): vol.Coerce(int),
        vol.Optional(CONF_BISECT, default=False): bool,
        vol.Optional(CONF_DIRECTION, default=None): vol.Any(
            None, vol.In((DIRECTION_Q2T, DIRECTION_T2Q))
        ),
        vol.Optional(CONF_RANDOM_TRIALS, default=0): vol.All(
            vol.Coerce(int), vol.Clamp(min=0)
        ),
    }
)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one run."""

    input: str | None
    min_support: Fraction | None
    min_confidence: Fraction | None
    max_support: Fraction | None
    partial_completeness: Fraction
    discretize: str
    partitions: int | None
    partitioning: str | None
    taxonomy: str | None
    taxonomy_intervals: str | None
    interest: str
    chi2_threshold: Fraction
    bucket_count: int
    leaf_split_threshold: int
    naive_counting: bool
    format: str
    threads: int
    seed: int
    bisect: bool
    direction: str | None
    random_trials: int

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RunConfig:
        """Create a config from raw options, rejecting invalid values and combinations."""
        try:
            options = RUN_SCHEMA(dict(data))
        except vol.Invalid as err:
            raise InvalidConfigError(f"Invalid configuration: {err}") from err

        min_support = options[CONF_MIN_SUPPORT]
        if min_support is not None:
            min_support = unit_threshold(CONF_MIN_SUPPORT, min_support)
        if options[CONF_MIN_CONFIDENCE] is not None:
            options[CONF_MIN_CONFIDENCE] = unit_threshold(
                CONF_MIN_CONFIDENCE, options[CONF_MIN_CONFIDENCE])
        if options[CONF_PARTIAL_COMPLETENESS] <= 1:
            raise InvalidThresholdError(
                CONF_PARTIAL_COMPLETENESS, options[CONF_PARTIAL_COMPLETENESS], "> 1")

        max_support = options[CONF_MAX_SUPPORT]
        if max_support is None and min_support is not None:
            max_support = min(Fraction(1), DEFAULT_MAX_SUPPORT_FACTOR * min_support)
        elif max_support is not None:
            max_support = unit_threshold(CONF_MAX_SUPPORT, max_support)
            if min_support is not None and max_support < min_support:
                raise InvalidThresholdError(
                    CONF_MAX_SUPPORT, max_support, f">= min_support {min_support}")

        threads = options[CONF_THREADS]
        if threads is None:
            threads = os.cpu_count() or 1

        config = cls(
            input=options[CONF_INPUT],
            min_support=min_support,
            min_confidence=options[CONF_MIN_CONFIDENCE],
            max_support=max_support,
            partial_completeness=options[CONF_PARTIAL_COMPLETENESS],
            discretize=options[CONF_DISCRETIZE],
            partitions=options[CONF_PARTITIONS],
            partitioning=options[CONF_PARTITIONING],
            taxonomy=options[CONF_TAXONOMY],
            taxonomy_intervals=options[CONF_TAXONOMY_INTERVALS],
            interest=options[CONF_INTEREST],
            chi2_threshold=options[CONF_CHI2_THRESHOLD],
            bucket_count=options[CONF_BUCKET_COUNT],
            leaf_split_threshold=options[CONF_LEAF_SPLIT_THRESHOLD],
            naive_counting=options[CONF_NAIVE_COUNTING],
            format=options[CONF_FORMAT],
            threads=threads,
            seed=options[CONF_SEED],
            bisect=options[CONF_BISECT],
            direction=options[CONF_DIRECTION],
            random_trials=options[CONF_RANDOM_TRIALS],
        )
        _LOGGER.debug("Run configuration: %s", config)
        return config

    def require(self, *names: str) -> None:
        """Raise if any of the named options is unset."""
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise InvalidConfigError(f"Missing required option(s): {', '.join(missing)}")
