"""Frequent itemset and association rule mining over basket files."""

from __future__ import annotations

from .apriori import FrequentItemsets, apriori, apriori_gen
from .basket import dump_transactions, load_transactions, load_transactions_from_path, support
from .config import RunConfig
from .coordinator import MiningCoordinator, MiningReport
from .models import SupportFraction, Transaction, TransactionDatabase
from .rules import Rule, generate_rules

__all__ = [
    "FrequentItemsets",
    "MiningCoordinator",
    "MiningReport",
    "Rule",
    "RunConfig",
    "SupportFraction",
    "Transaction",
    "TransactionDatabase",
    "apriori",
    "apriori_gen",
    "dump_transactions",
    "generate_rules",
    "load_transactions",
    "load_transactions_from_path",
    "support",
]
