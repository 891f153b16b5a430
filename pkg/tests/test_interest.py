"""Tests for lift and chi-squared rule screening."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest
from scipy.stats import chi2_contingency

from basket_miner.apriori import apriori
from basket_miner.const import INTEREST_CHI2, INTEREST_LIFT, INTEREST_NONE
from basket_miner.exceptions import (
    ChiSquaredNotApplicableError,
    InvalidConfigError,
    ZeroMarginalError,
)
from basket_miner.interest import (
    ContingencyTable,
    chi_squared,
    contingency,
    lift,
    p_value,
    screen_rules,
)
from basket_miner.models import SupportFraction, TransactionDatabase
from basket_miner.rules import Rule, generate_rules

TEA_COFFEE = ContingencyTable(n11=25, n10=5, n01=65, n00=5)


def _tea_to_coffee(db: TransactionDatabase) -> Rule:
    return Rule(
        antecedent=(db.item_id("Tea"),),
        consequent=(db.item_id("Coffee"),),
        support=SupportFraction(25, 100),
        confidence=Fraction(25, 30),
    )


def test_contingency_of_tea_and_coffee(tea_coffee_db) -> None:
    """One scan fills the four cells."""
    table = contingency(tea_coffee_db, _tea_to_coffee(tea_coffee_db))
    assert table == TEA_COFFEE
    assert table.total == 100


def test_contingency_of_disjoint_items() -> None:
    """Items never bought together have an empty first cell."""
    db = TransactionDatabase.from_baskets([["A"], ["B"], []])
    table = contingency(db, Rule((0,), (1,), SupportFraction(0, 3), Fraction(0)))
    assert table == ContingencyTable(n11=0, n10=1, n01=1, n00=1)


def test_lift_values() -> None:
    """Lift is below one for tea and coffee, one under independence."""
    assert lift(TEA_COFFEE) == Fraction(25, 27)
    assert lift(ContingencyTable(10, 10, 10, 10)) == 1
    assert lift(ContingencyTable(30, 0, 0, 70)) == Fraction(100, 30)
    with pytest.raises(ZeroMarginalError):
        lift(ContingencyTable(0, 0, 5, 5))


def test_chi_squared_values() -> None:
    """The statistic is exact and agrees with scipy."""
    assert chi_squared(TEA_COFFEE) == Fraction(400, 189)
    statistic, expected_p, _, _ = chi2_contingency(TEA_COFFEE.cells(), correction=False)
    assert float(chi_squared(TEA_COFFEE)) == pytest.approx(statistic)
    assert p_value(TEA_COFFEE) == pytest.approx(expected_p)
    assert chi_squared(ContingencyTable(10, 10, 10, 10)) == 0


def test_chi_squared_not_applicable() -> None:
    """A zero expected cell has no statistic."""
    with pytest.raises(ChiSquaredNotApplicableError):
        chi_squared(ContingencyTable(5, 5, 0, 0))


@given(cells=st.tuples(*[st.integers(1, 40)] * 4))
@settings(max_examples=50, deadline=None)
def test_measure_properties(cells: tuple[int, int, int, int]) -> None:
    """Lift is symmetric, chi-squared is non-negative and scales with the total."""
    table = ContingencyTable(*cells)
    swapped = ContingencyTable(table.n11, table.n01, table.n10, table.n00)
    doubled = ContingencyTable(*(2 * cell for cell in (table.n11, table.n10, table.n01, table.n00)))

    assert lift(table) == lift(swapped)
    assert chi_squared(table) >= 0
    assert chi_squared(doubled) == 2 * chi_squared(table)
    statistic, _, _, _ = chi2_contingency(table.cells(), correction=False)
    assert float(chi_squared(table)) == pytest.approx(statistic)


def test_negative_correlation_survives_mining_and_is_flagged(tea_coffee_db) -> None:
    """Tea -> Coffee passes 20% and 80% yet has lift 25/27."""
    rules = generate_rules(apriori(tea_coffee_db, "20%"), "80%")
    screened = screen_rules(tea_coffee_db, rules, INTEREST_LIFT)

    (entry,) = [
        entry for entry in screened
        if tea_coffee_db.names(entry.rule.antecedent) == ("Tea",)]
    assert entry.rule.confidence == Fraction(25, 30)
    assert entry.lift == Fraction(25, 27)
    assert entry.negative
    assert entry.chi2 is None


def test_screening_modes(tea_coffee_db) -> None:
    """Chi-squared mode adds the statistic and the significance flag."""
    rule = _tea_to_coffee(tea_coffee_db)

    (plain,) = screen_rules(tea_coffee_db, [rule], INTEREST_NONE)
    assert plain.lift is None and not plain.negative

    (default,) = screen_rules(tea_coffee_db, [rule], INTEREST_CHI2)
    assert default.chi2 == Fraction(400, 189)
    assert not default.significant
    assert 0 < default.p_value < 1

    (strict,) = screen_rules(tea_coffee_db, [rule], INTEREST_CHI2, threshold="2")
    assert strict.significant

    with pytest.raises(InvalidConfigError):
        screen_rules(tea_coffee_db, [rule], "conviction")


def test_screening_keeps_rules_without_statistic() -> None:
    """A consequent in every transaction is annotated, not dropped."""
    db = TransactionDatabase.from_baskets([["A", "B"], ["B"]])
    rule = Rule((0,), (1,), SupportFraction(1, 2), Fraction(1))

    (entry,) = screen_rules(db, [rule], INTEREST_CHI2, threads=2)
    assert entry.not_applicable
    assert entry.chi2 is None
    assert entry.lift == 1
