"""Tests for rule report rendering."""

import json
from fractions import Fraction

import pytest

from basket_miner.apriori import apriori
from basket_miner.const import FORMAT_CSV, FORMAT_JSONL, FORMAT_TABLE, INTEREST_CHI2
from basket_miner.exceptions import BasketFormatError
from basket_miner.interest import screen_rules
from basket_miner.output import format_rules, parse_rules_csv
from basket_miner.rules import generate_rules


def test_csv_round_trip(example_db) -> None:
    """Rules parsed back from CSV equal the mined rules."""
    rules = generate_rules(apriori(example_db, "30%"), "60%")
    text = format_rules(screen_rules(example_db, rules, "none"), example_db.item_names, FORMAT_CSV)

    assert text.splitlines()[0] == "antecedent,consequent,support_num,support_den,conf_num,conf_den,lift,chi2"
    assert text.splitlines()[1] == "A,C,3,5,3,4,,"
    assert parse_rules_csv(text, example_db.item_names) == rules


def test_csv_rejects_foreign_header(example_db) -> None:
    """Only reports with the expected columns are parsed."""
    with pytest.raises(BasketFormatError):
        parse_rules_csv("a,b\n1,2\n", example_db.item_names)


def test_jsonl_and_table_carry_interest(tea_coffee_db) -> None:
    """Interest annotations appear in every format."""
    rules = generate_rules(apriori(tea_coffee_db, "20%"), "80%")
    screened = screen_rules(tea_coffee_db, rules, INTEREST_CHI2)

    (record,) = [
        json.loads(line)
        for line in format_rules(screened, tea_coffee_db.item_names, FORMAT_JSONL).splitlines()
        if json.loads(line)["antecedent"] == ["Tea"]]
    assert record["consequent"] == ["Coffee"]
    assert Fraction(record["lift"]) == Fraction(25, 27)
    assert Fraction(record["chi2"]) == Fraction(400, 189)
    assert (record["conf_num"], record["conf_den"]) == (5, 6)
    assert record["negative"] is True

    table = format_rules(screened, tea_coffee_db.item_names, FORMAT_TABLE)
    assert "Tea -> Coffee" in table
    assert "25/100 (0.2500)" in table
    assert "5/6 (0.8333)" in table
    assert "negative" in table
