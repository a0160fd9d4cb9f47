"""Exact small-scale computation with forbidden configurations in r-matrices."""

from forbconf.engine import ForbResult, SearchConfig, forb_exact, forb_k_exact, forbmax, validate_result
from forbconf.family_spec import parse_family
from forbconf.matrix import RMatrix, format_matrix, parse_matrix
from forbconf.patterns import ConfigFamily, Witness, avoids, canonical_config, config_equal, contains

__all__ = [
    "ConfigFamily",
    "ForbResult",
    "RMatrix",
    "SearchConfig",
    "Witness",
    "avoids",
    "canonical_config",
    "config_equal",
    "contains",
    "forb_exact",
    "forb_k_exact",
    "forbmax",
    "format_matrix",
    "parse_family",
    "parse_matrix",
    "validate_result",
]
