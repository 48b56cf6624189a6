"""Finite semirings built as strong distributive lattices of group semirings."""
from .analyze import (
    AnalysisReport,
    full_analysis,
    is_clifford,
    is_left_normal_band,
    lattice_isomorphism,
    multiplicative_idempotents,
    recover_connecting_maps,
)
from .core import (
    BinaryOpTable,
    CheckResult,
    FiniteDistributiveLattice,
    FiniteGroup,
    HomMap,
    check_associative,
    check_distributive_lattice,
    check_group,
    check_semiring,
    is_homomorphism,
    partial_order,
)
from .group_semiring import Flavor, GroupSemiring, make_group_semiring
from .sdl import (
    GroupComponentFamily,
    IsoFamily,
    SemiringTable,
    build_strong_sdl,
    check_compatibility,
    derive_psi,
    validate_iso_family,
)
