"""Association rule extraction from frequent itemsets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging

from .apriori import FrequentItemsets, apriori_gen
from .exceptions import InvalidRuleError, ZeroSupportError
from .models import Itemset, SupportFraction, is_itemset, unit_threshold

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class Rule:
    """An association rule antecedent -> consequent with exact support and confidence."""

    antecedent: Itemset
    consequent: Itemset
    support: SupportFraction
    confidence: Fraction

    def __post_init__(self) -> None:
        """Validate that both sides are non-empty and disjoint."""
        if (
            not is_itemset(self.antecedent)
            or not is_itemset(self.consequent)
            or set(self.antecedent) & set(self.consequent)
        ):
            raise InvalidRuleError(self.antecedent, self.consequent)

    @property
    def itemset(self) -> Itemset:
        """Return the itemset the rule was generated from."""
        return tuple(sorted(self.antecedent + self.consequent))

    def sort_key(self) -> tuple[int, Itemset, Itemset]:
        """Return the report ordering: itemset size, antecedent, consequent."""
        return (len(self.antecedent) + len(self.consequent), self.antecedent, self.consequent)


def confidence(supp_union: SupportFraction, supp_ante: SupportFraction) -> Fraction:
    """Return support(X u Y) / support(X) as an exact fraction."""
    if supp_ante.count == 0:
        raise ZeroSupportError
    if supp_union.count > supp_ante.count or supp_union.total != supp_ante.total:
        raise ValueError(
            f"Support {supp_union} of the union cannot exceed antecedent support {supp_ante}")
    return Fraction(supp_union.count, supp_ante.count)


def _rules_from_itemset(
    frequent: FrequentItemsets,
    itemset: Itemset,
    min_conf: Fraction,
) -> list[Rule]:
    """Grow consequents level by level while their rules keep min confidence."""
    support = frequent.support_of(itemset)
    rules: list[Rule] = []
    consequents: list[Itemset] = [(item,) for item in itemset]
    m = 1
    while len(itemset) > m and consequents:
        passing = []
        for consequent in consequents:
            antecedent = tuple(item for item in itemset if item not in consequent)
            conf = confidence(support, frequent.support_of(antecedent))
            if conf >= min_conf:
                rules.append(Rule(antecedent, consequent, support, conf))
                passing.append(consequent)
        consequents = list(apriori_gen(passing))
        m += 1
    return rules


def generate_rules(
    frequent: FrequentItemsets, min_conf: Fraction | float | str
) -> list[Rule]:
    """Return every rule over the frequent itemsets meeting min confidence."""
    threshold = unit_threshold("min_confidence", min_conf)
    rules: list[Rule] = []
    for k, level in frequent.by_size.items():
        if k < 2:
            continue
        for itemset, _ in level:
            rules.extend(_rules_from_itemset(frequent, itemset, threshold))
    rules.sort(key=Rule.sort_key)
    _LOGGER.debug("Generated %d rules at min confidence %s", len(rules), threshold)
    return rules
