"""Interestingness screening of mined rules: lift and chi-squared."""

from __future__ import annotations

from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import logging

from scipy.stats import chi2 as chi2_distribution

from .const import DEFAULT_CHI2_THRESHOLD, INTEREST_CHI2, INTEREST_LIFT, INTEREST_MODES
from .exceptions import (
    ChiSquaredNotApplicableError,
    InvalidConfigError,
    UnknownItemError,
    ZeroMarginalError,
)
from .models import TransactionDatabase, as_fraction, contains
from .rules import Rule

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class ContingencyTable:
    """Presence/absence counts of a rule's antecedent (first) and consequent (second)."""

    n11: int
    n10: int
    n01: int
    n00: int

    def __post_init__(self) -> None:
        """Validate that every cell is non-negative."""
        if min(self.n11, self.n10, self.n01, self.n00) < 0:
            raise ValueError(f"Negative cell in {self}")

    @property
    def total(self) -> int:
        """Return the number of transactions tabulated."""
        return self.n11 + self.n10 + self.n01 + self.n00

    def cells(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Return the table as rows (antecedent present, absent)."""
        return ((self.n11, self.n10), (self.n01, self.n00))

    def expected(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """Return the cell counts expected under independence."""
        rows = (self.n11 + self.n10, self.n01 + self.n00)
        columns = (self.n11 + self.n01, self.n10 + self.n00)
        return tuple(  # type: ignore[return-value]
            tuple(Fraction(row * column, self.total) for column in columns)
            for row in rows
        )

    def __str__(self) -> str:
        return f"[[{self.n11}, {self.n10}], [{self.n01}, {self.n00}]]"


def contingency(db: TransactionDatabase, rule: Rule) -> ContingencyTable:
    """Tabulate the rule's antecedent and consequent over the database in one scan."""
    largest = max(rule.antecedent[-1], rule.consequent[-1])
    if largest >= db.n_items:
        raise UnknownItemError(largest)
    cells = [[0, 0], [0, 0]]
    for transaction in db.transactions:
        has_antecedent = contains(transaction.items, rule.antecedent)
        has_consequent = contains(transaction.items, rule.consequent)
        cells[not has_antecedent][not has_consequent] += 1
    return ContingencyTable(
        n11=cells[0][0], n10=cells[0][1], n01=cells[1][0], n00=cells[1][1])


def lift(ct: ContingencyTable) -> Fraction:
    """Return n11 * total / (antecedent count * consequent count)."""
    antecedent = ct.n11 + ct.n10
    consequent = ct.n11 + ct.n01
    if antecedent == 0 or consequent == 0:
        raise ZeroMarginalError(ct)
    return Fraction(ct.n11 * ct.total, antecedent * consequent)


def chi_squared(ct: ContingencyTable) -> Fraction:
    """Return the exact chi-squared statistic of the 2x2 table, without continuity correction."""
    if ct.total == 0:
        raise ChiSquaredNotApplicableError(ct)
    statistic = Fraction(0)
    for observed_row, expected_row in zip(ct.cells(), ct.expected()):
        for observed, expected in zip(observed_row, expected_row):
            if expected == 0:
                raise ChiSquaredNotApplicableError(ct)
            statistic += (observed - expected) ** 2 / expected
    return statistic


def _upper_tail(statistic: Fraction) -> float:
    return float(chi2_distribution.sf(float(statistic), df=1))


def p_value(ct: ContingencyTable) -> float:
    """Return the upper-tail probability of the statistic at one degree of freedom."""
    return _upper_tail(chi_squared(ct))


@dataclass(frozen=True)
class ScreenedRule:
    """A rule with its interest annotations."""

    rule: Rule
    table: ContingencyTable | None = None
    lift: Fraction | None = None
    chi2: Fraction | None = None
    p_value: float | None = None
    # lift < 1
    negative: bool = False
    # chi2 above the threshold
    significant: bool = False
    # chi2 mode only: some expected cell is zero
    not_applicable: bool = False


def screen_rule(
    db: TransactionDatabase,
    rule: Rule,
    mode: str,
    threshold: Fraction = DEFAULT_CHI2_THRESHOLD,
) -> ScreenedRule:
    """Annotate one rule according to the interest mode."""
    if mode not in (INTEREST_LIFT, INTEREST_CHI2):
        return ScreenedRule(rule)
    table = contingency(db, rule)
    rule_lift = lift(table)
    if mode == INTEREST_LIFT:
        return ScreenedRule(rule, table, lift=rule_lift, negative=rule_lift < 1)
    try:
        statistic = chi_squared(table)
    except ChiSquaredNotApplicableError:
        _LOGGER.debug("Chi-squared not applicable to %s", table)
        return ScreenedRule(
            rule, table, lift=rule_lift, negative=rule_lift < 1, not_applicable=True)
    return ScreenedRule(
        rule,
        table,
        lift=rule_lift,
        chi2=statistic,
        p_value=_upper_tail(statistic),
        negative=rule_lift < 1,
        significant=statistic > threshold,
    )


def screen_rules(
    db: TransactionDatabase,
    rules: Iterable[Rule],
    mode: str,
    threshold: Fraction | float | str = DEFAULT_CHI2_THRESHOLD,
    threads: int = 1,
) -> list[ScreenedRule]:
    """Annotate every rule, keeping the input order; no rule is dropped."""
    if mode not in INTEREST_MODES:
        raise InvalidConfigError(f"Unsupported interest mode {mode!r}")
    cutoff = as_fraction(threshold)
    rules = list(rules)

    def screen(rule: Rule) -> ScreenedRule:
        return screen_rule(db, rule, mode, cutoff)

    if threads > 1 and len(rules) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            screened = list(pool.map(screen, rules))
    else:
        screened = [screen(rule) for rule in rules]
    _LOGGER.debug(
        "Screened %d rules (%s): %d negative, %d significant",
        len(screened), mode,
        sum(entry.negative for entry in screened),
        sum(entry.significant for entry in screened))
    return screened
