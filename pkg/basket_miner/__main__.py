"""Entry point for python -m basket_miner."""

import sys

from .cli import main

sys.exit(main())
