"""Exact diameters, word lengths and ranks of finite permutation groups and their direct powers."""

from ._version import __version__
from .bounds import (
    BoundReport,
    abelian_diameter,
    canonical_bound,
    general_upper_bound,
    product_bound,
    sn_diameter_bound,
    strong_conjecture_bound,
    wiegold_threshold,
)
from .conjecture import ConjectureReport, check_strong, check_weak, replay
from .diameter import LengthTable, Word, diam, express, length_table, max_diameter, max_length_over
from .errors import ParseError, ResourceLimitError
from .families import dihedral_power_express, dn_generators, sn_express, sn_generators
from .group import (
    AbelianType,
    FiniteGroup,
    GenSet,
    abelian_invariants,
    closure,
    commutator_subgroup,
    is_nilpotent,
    is_perfect,
    quotient,
    rank,
)
from .perm import Permutation, compose, format_cycles, order, parse_cycles
from .power import PowerGroup, canonical_genset, coprime_genset, direct_power, power_rank

__all__ = [
    "AbelianType", "BoundReport", "ConjectureReport", "FiniteGroup", "GenSet", "LengthTable",
    "ParseError", "Permutation", "PowerGroup", "ResourceLimitError", "Word", "__version__",
    "abelian_diameter", "abelian_invariants", "canonical_bound", "canonical_genset",
    "check_strong", "check_weak", "closure", "commutator_subgroup", "compose", "coprime_genset",
    "diam", "dihedral_power_express", "direct_power", "dn_generators", "express",
    "format_cycles", "general_upper_bound", "is_nilpotent", "is_perfect", "length_table",
    "max_diameter", "max_length_over", "order", "parse_cycles", "power_rank", "product_bound",
    "quotient", "rank", "replay", "sn_diameter_bound", "sn_express", "sn_generators",
    "strong_conjecture_bound", "wiegold_threshold",
]
