"""Exact toolkit for group determinants, character tables, k-characters,
k-character-table equivalence, and reconstruction of a group from the
1-, 2-, 3-characters of its regular representation."""

from .cyclotomic import Cyclotomic, cyclotomic_polynomial
from .groups import (
    ConjugacyClasses,
    FiniteGroup,
    GroupTableError,
    IsoWitness,
    build_group,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    from_generators,
    from_table,
    heisenberg,
    inverse_map,
    isomorphism_search,
    opposite_group,
    quaternion,
    symmetric,
)

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "ConjugacyClasses",
    "FiniteGroup",
    "GroupTableError",
    "IsoWitness",
    "build_group",
    "conjugacy_classes",
    "cyclic",
    "dihedral",
    "direct_product",
    "from_generators",
    "from_table",
    "heisenberg",
    "inverse_map",
    "isomorphism_search",
    "opposite_group",
    "quaternion",
    "symmetric",
    "__version__",
]
