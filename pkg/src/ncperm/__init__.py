"""ncperm: exact noncrossing-chain triangulations of Coxeter permutahedra.

The package builds finite Coxeter groups in their reflection representation
over exact real number fields, enumerates the simplices indexed by pairs
(base element, maximal noncrossing-partition chain), certifies that they
triangulate the permutahedron, and machine-checks the combinatorial
structure of the construction (Cambrian classes, cluster complexes,
regularity via totally stable slope functions, lattice conjectures).
"""

from .errors import GroupTooLargeError, InvalidInputError
from .numfield import FieldSpec, RATIONALS, Scalar, field_make
from .coxeter import CoxeterSystem, build_group

__all__ = [
    "CoxeterSystem",
    "FieldSpec",
    "GroupTooLargeError",
    "InvalidInputError",
    "RATIONALS",
    "Scalar",
    "build_group",
    "field_make",
]
