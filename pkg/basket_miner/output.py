"""Rule report rendering as a table, CSV or JSON lines, and CSV parsing."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import csv
from fractions import Fraction
import io
import json

from .const import CSV_COLUMNS, FORMAT_CSV, FORMAT_JSONL
from .exceptions import BasketFormatError
from .interest import ScreenedRule
from .models import SupportFraction, make_itemset
from .rules import Rule

NOT_APPLICABLE = "n/a"


def _names(itemset: Iterable[int], item_names: Sequence[str]) -> str:
    return " ".join(item_names[item] for item in itemset)


def _exact(value: Fraction | None) -> str:
    return "" if value is None else str(value)


def _chi2(entry: ScreenedRule) -> str:
    return NOT_APPLICABLE if entry.not_applicable else _exact(entry.chi2)


def _flags(entry: ScreenedRule) -> str:
    flags = []
    if entry.negative:
        flags.append("negative")
    if entry.significant:
        flags.append("significant")
    if entry.not_applicable:
        flags.append("chi2 n/a")
    return ",".join(flags)


def format_table(rules: Sequence[ScreenedRule], item_names: Sequence[str]) -> str:
    """Return a fixed-width table, one rule per row."""
    header = ["rule", "support", "confidence", "lift", "chi2", "flags"]
    rows = [header]
    for entry in rules:
        rule = entry.rule
        rows.append([
            f"{_names(rule.antecedent, item_names)} -> {_names(rule.consequent, item_names)}",
            f"{rule.support} ({float(rule.support.value):.4f})",
            f"{rule.confidence} ({float(rule.confidence):.4f})",
            "" if entry.lift is None else f"{float(entry.lift):.4f}",
            NOT_APPLICABLE if entry.not_applicable else (
                "" if entry.chi2 is None else f"{float(entry.chi2):.4f}"),
            _flags(entry),
        ])
    widths = [max(len(row[column]) for row in rows) for column in range(len(header))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]
    return "\n".join(lines) + "\n"


def _csv_row(entry: ScreenedRule, item_names: Sequence[str]) -> list[str]:
    rule = entry.rule
    return [
        _names(rule.antecedent, item_names),
        _names(rule.consequent, item_names),
        str(rule.support.count),
        str(rule.support.total),
        str(rule.confidence.numerator),
        str(rule.confidence.denominator),
        _exact(entry.lift),
        _chi2(entry),
    ]


def format_csv(rules: Sequence[ScreenedRule], item_names: Sequence[str]) -> str:
    """Return the rules as CSV with the exact-fraction columns."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(_csv_row(entry, item_names) for entry in rules)
    return buffer.getvalue()


def format_jsonl(rules: Sequence[ScreenedRule], item_names: Sequence[str]) -> str:
    """Return one JSON object per rule."""
    lines = []
    for entry in rules:
        record: dict[str, object] = dict(zip(CSV_COLUMNS, _csv_row(entry, item_names)))
        record["antecedent"] = [item_names[item] for item in entry.rule.antecedent]
        record["consequent"] = [item_names[item] for item in entry.rule.consequent]
        for column in ("support_num", "support_den", "conf_num", "conf_den"):
            record[column] = int(record[column])  # type: ignore[call-overload]
        record["p_value"] = entry.p_value
        record["negative"] = entry.negative
        record["significant"] = entry.significant
        lines.append(json.dumps(record, sort_keys=False))
    return "".join(f"{line}\n" for line in lines)


def format_rules(
    rules: Sequence[ScreenedRule], item_names: Sequence[str], output_format: str
) -> str:
    """Render the rules in the requested format."""
    if output_format == FORMAT_CSV:
        return format_csv(rules, item_names)
    if output_format == FORMAT_JSONL:
        return format_jsonl(rules, item_names)
    return format_table(rules, item_names)


def parse_rules_csv(text: str, item_names: Sequence[str]) -> list[Rule]:
    """Parse a CSV report back into rules over the given dictionary."""
    ids = {name: item for item, name in enumerate(item_names)}
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise BasketFormatError(1, f"expected CSV header {','.join(CSV_COLUMNS)}")
    rules = []
    for row in reader:
        try:
            rules.append(Rule(
                antecedent=make_itemset(ids[name] for name in row["antecedent"].split()),
                consequent=make_itemset(ids[name] for name in row["consequent"].split()),
                support=SupportFraction(int(row["support_num"]), int(row["support_den"])),
                confidence=Fraction(int(row["conf_num"]), int(row["conf_den"])),
            ))
        except (KeyError, ValueError) as err:
            raise BasketFormatError(reader.line_num, f"malformed rule row: {err}") from err
    return rules
