"""Finite skew braces: Cayley-table groups, brace predicates, bicrossed
constructions and brute-force verification of the factorization theorems."""

from .bicrossed import (
    BicrossedData,
    build_bicrossed_brace,
    certify_bicrossed,
    criterion_meta_trivial,
    ideal_profile,
)
from .brace import (
    SkewBrace,
    almost_trivial_from_group,
    analyze,
    build_brace,
    derived_series3,
    is_meta_trivial,
    opposite,
    subset_status,
    trivial_from_group,
)
from .errors import BraceForgeError
from .families import (
    Family1Params,
    Family2Params,
    enumerate_quadruples,
    example_params,
    family1_data,
    family2_data,
)
from .groups import GroupTable, make_cyclic, validate_group

__version__ = "0.1.0"
