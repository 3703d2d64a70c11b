"""Dual groups for simply transitive actions on pitch-class segments.

Covers T/I-PLR duality, its extension by voice permutations, the Cohn
operations, and the RICH transformation on the 144 ordered consonant triads.
"""

from .actions import (
    Domain,
    FiniteGroup,
    MappingTable,
    asymmetry_check,
    centralizer_of_simply_transitive,
    internal_direct_product_check,
    is_simply_transitive,
    lambda_embed,
    orbit,
    orbit_partition,
    rho_basepoint_independence,
    rho_construct,
    verify_dual,
)
from .modular import AffineMap, PitchClass, Segment, make_segment, parse_affine, parse_segment, ti_group
from .perms import Permutation, cycle_decomposition, parse_cycles, permute_segment, print_cycles

__version__ = "0.1.0"

__all__ = [
    "Domain",
    "FiniteGroup",
    "MappingTable",
    "asymmetry_check",
    "centralizer_of_simply_transitive",
    "internal_direct_product_check",
    "is_simply_transitive",
    "lambda_embed",
    "orbit",
    "orbit_partition",
    "rho_basepoint_independence",
    "rho_construct",
    "verify_dual",
    "AffineMap",
    "PitchClass",
    "Segment",
    "make_segment",
    "parse_affine",
    "parse_segment",
    "ti_group",
    "Permutation",
    "cycle_decomposition",
    "parse_cycles",
    "permute_segment",
    "print_cycles",
]
