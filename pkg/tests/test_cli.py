"""Tests for the command line interface."""

from pathlib import Path
from random import Random

import pytest

from basket_miner.apriori import apriori
from basket_miner.basket import dump_transactions, load_transactions_from_path
from basket_miner.cli import main
from basket_miner.const import (
    EXIT_CONFIG_ERROR,
    EXIT_DATA_ERROR,
    EXIT_OK,
)
from basket_miner.oracle import random_database
from basket_miner.output import parse_rules_csv
from basket_miner.rules import generate_rules

from .conftest import tea_coffee_rows


def _write(tmp_path: Path, name: str, content: str) -> str:
    path = tmp_path / name
    path.write_text(content, encoding="utf-8")
    return str(path)


def test_mine_example_csv(example_file: Path, capsys) -> None:
    """The example yields its eleven rules in report order."""
    code = main([
        "mine", str(example_file), "--min-support", "0.3", "--min-confidence", "0.6",
        "--format", "csv"])

    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 12
    assert lines[-5:] == [
        "A B,C,2,5,1,1,,",
        "A C,B,2,5,2,3,,",
        "B,A C,2,5,1,1,,",
        "B C,A,2,5,1,1,,",
        "C,A B,2,5,2,3,,",
    ]


def test_mine_csv_round_trip(example_file: Path, capsys) -> None:
    """The CSV report parses back into the in-memory rules."""
    main(["mine", str(example_file), "--min-support", "30%", "--min-confidence", "60%",
          "--format", "csv", "--naive-counting"])
    db = load_transactions_from_path(example_file)

    parsed = parse_rules_csv(capsys.readouterr().out, db.item_names)
    assert parsed == generate_rules(apriori(db, "30%"), "60%")


@pytest.mark.parametrize("seed", range(20))
def test_mine_is_deterministic(tmp_path: Path, capsys, seed: int) -> None:
    """Identical input gives identical output whatever the worker count."""
    db = random_database(Random(seed), n_items=8, n_transactions=60)
    path = _write(tmp_path, "random.basket", dump_transactions(db))
    if not any(t.items for t in db.transactions):
        pytest.skip("no items drawn")
    outputs = []
    for threads in ("1", "4", "4"):
        assert main([
            "mine", path, "--min-support", "0.2", "--min-confidence", "0.5",
            "--interest", "chi2", "--threads", threads, "--bucket-count", "2",
            "--leaf-split-threshold", "1"]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_mine_flags_negative_correlation(tmp_path: Path, capsys) -> None:
    """Tea -> Coffee is reported with its lift and flagged."""
    content = "".join(" ".join(row) + "\n" for row in tea_coffee_rows())
    path = _write(tmp_path, "shop.basket", content)

    assert main([
        "mine", path, "--min-support", "20%", "--min-confidence", "80%",
        "--interest", "lift", "--format", "csv"]) == EXIT_OK
    assert "Tea,Coffee,25,100,5,6,25/27," in capsys.readouterr().out.splitlines()


def test_mine_with_taxonomy(example_file: Path, tmp_path: Path, capsys) -> None:
    """Categories appear in generalized rules."""
    taxonomy = _write(tmp_path, "veg.tax", "Vegetables A\n")
    assert main([
        "mine", str(example_file), "--min-support", "0.3", "--min-confidence", "0.6",
        "--taxonomy", taxonomy]) == EXIT_OK
    assert "Vegetables" in capsys.readouterr().out


def test_mine_with_discretization(tmp_path: Path, capsys) -> None:
    """Quantified items are mined as interval items."""
    path = _write(
        tmp_path, "beer.basket", "Beer:1 Charcoal\nBeer:2 Charcoal\nBeer:5\nBeer:2 Dijon\n")
    assert main([
        "mine", path, "--min-support", "0.3", "--min-confidence", "0.5",
        "--discretize", "equi-depth", "--K", "1.5", "--max-support", "0.8"]) == EXIT_OK
    assert "Charcoal -> Beer[1,2]" in capsys.readouterr().out


def test_output_file(example_file: Path, tmp_path: Path, capsys) -> None:
    """The report may be written to a file instead of stdout."""
    target = tmp_path / "rules.txt"
    main(["mine", str(example_file), "--min-support", "0.3", "--min-confidence", "0.6",
          "-o", str(target)])
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8").startswith("rule")


@pytest.mark.parametrize(
    ("args", "expected"),
    [
        (["--min-support", "0", "--min-confidence", "0.5"], EXIT_CONFIG_ERROR),
        (["--min-support", "0.5", "--min-confidence", "2"], EXIT_CONFIG_ERROR),
        (["--min-support", "0.5"], EXIT_CONFIG_ERROR),
        (["--min-support", "0.3", "--min-confidence", "0.5", "--max-support", "0.1"],
         EXIT_CONFIG_ERROR),
    ],
)
def test_config_errors(example_file: Path, capsys, args: list[str], expected: int) -> None:
    """Configuration problems exit with the configuration code."""
    assert main(["mine", str(example_file), *args]) == expected
    assert capsys.readouterr().err.startswith("error:")


def test_data_errors(tmp_path: Path, capsys) -> None:
    """Missing or malformed input exits with the data code."""
    assert main([
        "mine", str(tmp_path / "missing.basket"), "--min-support", "0.5",
        "--min-confidence", "0.5"]) == EXIT_DATA_ERROR
    bad = _write(tmp_path, "bad.basket", "A\nB:x\n")
    assert main(["mine", bad, "--min-support", "0.5", "--min-confidence", "0.5"]) == (
        EXIT_DATA_ERROR)
    assert "Line 2" in capsys.readouterr().err


def test_discretize_reports(tmp_path: Path, capsys) -> None:
    """The partition count is derived, clamped or overridden."""
    path = _write(tmp_path, "q.basket", "Q:1\nQ:2\nQ:3\nQ:4\nQ:5\n")

    assert main(["discretize", path, "--min-support", "0.1", "--K", "1.5"]) == EXIT_OK
    # 40 partitions requested, five distinct values
    assert capsys.readouterr().out.splitlines() == [
        f"Q {rank} {rank} {rank + 1} {rank + 1} 1" for rank in range(5)]

    assert main(["discretize", path, "--partitions", "2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["Q 0 2 1 3 3", "Q 3 4 4 5 2"]

    plain = _write(tmp_path, "plain.basket", "A B\n")
    assert main(["discretize", plain, "--min-support", "0.1"]) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_transform_both_directions(tmp_path: Path, capsys) -> None:
    """Quantities become an edge list; a tree becomes leaf numbers."""
    path = _write(tmp_path, "q.basket", "Q:1\nQ:2\nQ:3\nQ:4\n")
    assert main([
        "transform", path, "--direction", "q2t", "--discretize", "equi-width",
        "--partitions", "2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "Q[1,4] Q[1,2]", "Q[1,4] Q[3,4]",
        "Q[1,2] Q[1,1]", "Q[1,2] Q[2,2]",
        "Q[3,4] Q[3,3]", "Q[3,4] Q[4,4]",
    ]

    tree = _write(tmp_path, "veg.tax", "Vegetables Courgette\nVegetables Aubergine\n")
    assert main(["transform", "--direction", "t2q", "--taxonomy", tree]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "# Vegetables: leaves numbered in natural name order",
        "Vegetables Aubergine 0",
        "Vegetables Courgette 1",
    ]


def test_saved_partitioning_feeds_q2t_and_mine(tmp_path: Path, capsys) -> None:
    """A discretize export is read back instead of partitioning again."""
    path = _write(tmp_path, "q.basket", "Q:1 A\nQ:2 A\nQ:3\nQ:4\n")
    saved = tmp_path / "q.partitioning"
    assert main(["discretize", path, "--partitions", "2", "-o", str(saved)]) == EXIT_OK
    assert saved.read_text(encoding="utf-8").splitlines() == ["Q 0 1 1 2 2", "Q 2 3 3 4 2"]

    assert main([
        "transform", path, "--direction", "q2t", "--partitioning", str(saved)]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[:2] == ["Q[1,4] Q[1,2]", "Q[1,4] Q[3,4]"]

    assert main([
        "mine", path, "--min-support", "0.5", "--min-confidence", "1",
        "--partitioning", str(saved), "--max-support", "0.5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "A -> Q[1,2]" in out
    assert "Q[1,2] -> A" in out

    stale = _write(tmp_path, "stale.partitioning", "Q 0 1 1 3 2\nQ 2 3 3 4 2\n")
    assert main([
        "transform", path, "--direction", "q2t", "--partitioning", stale]) == EXIT_DATA_ERROR
    assert "Invalid partitioning of Q" in capsys.readouterr().err


def test_mine_taxonomy_as_leaf_intervals(example_file: Path, tmp_path: Path, capsys) -> None:
    """A tree taxonomy is mined as numbered leaf intervals named after their categories."""
    taxonomy = _write(tmp_path, "veg.tax", "Vegetables A\nVegetables C\n")
    assert main([
        "mine", str(example_file), "--min-support", "0.3", "--min-confidence", "0.6",
        "--taxonomy", taxonomy, "--taxonomy-intervals", "tree"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "D -> Vegetables[0,0]" in out
    assert "D -> Vegetables[0,1]=Vegetables" in out

    assert main([
        "mine", str(example_file), "--min-support", "0.3", "--min-confidence", "0.6",
        "--taxonomy-intervals", "all"]) == EXIT_CONFIG_ERROR


def test_mine_at_min_support_one_with_discretization(tmp_path: Path, capsys) -> None:
    """Min support 1 keeps each quantified item as one full-range interval."""
    path = _write(tmp_path, "q.basket", "Q:1 A\nQ:2 A\nQ:5 A\n")
    assert main([
        "mine", path, "--min-support", "1", "--min-confidence", "1",
        "--discretize", "equi-depth"]) == EXIT_OK
    assert "A -> Q[1,5]" in capsys.readouterr().out


def test_transform_rejects_dag(tmp_path: Path, capsys) -> None:
    """Taxonomies with shared children cannot be numbered."""
    dag = _write(tmp_path, "dag.tax", "Drinks Milk\nDairy Milk\n")
    assert main(["transform", "--direction", "t2q", "--taxonomy", dag]) == EXIT_DATA_ERROR
    assert "non-tree taxonomy" in capsys.readouterr().err.lower()


def test_transform_q2t_needs_a_mode(tmp_path: Path, capsys) -> None:
    """Without a discretization mode there is nothing to convert."""
    path = _write(tmp_path, "q.basket", "Q:1\n")
    assert main(["transform", path, "--direction", "q2t"]) == EXIT_CONFIG_ERROR


def test_oracle_check(example_file: Path, tmp_path: Path, capsys) -> None:
    """The miners agree with brute force on the input and random databases."""
    taxonomy = _write(tmp_path, "veg.tax", "Vegetables A\nVegetables C\n")
    assert main([
        "oracle-check", str(example_file), "--min-support", "0.3", "--min-confidence",
        "0.6", "--taxonomy", taxonomy, "--random-trials", "3", "--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out.endswith(", 0 mismatches\n")
