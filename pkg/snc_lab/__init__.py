"""
SNC Lab package.

Exact relation algebra on digraph pairs, the two weighted counterexample
fixtures, losing densities, tournament-pair certificates and a counterexample
search harness around the second neighbourhood property.
"""

# Initialize logging configuration as early as possible
from snc_lab.utils import logging_config  # This will run setup_logging()

from snc_lab.snc_lab import PairLab
from snc_lab.pair_properties import DigraphPair, Variant, WeightVector
from snc_lab.relation import Relation
from snc_lab.utils.data import PairDocument

VERSION = PairLab.VERSION

__all__ = [
    "PairLab",
    "DigraphPair",
    "PairDocument",
    "Relation",
    "Variant",
    "WeightVector",
    "logging_config",
    "VERSION",
]
