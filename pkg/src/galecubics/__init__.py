"""Exact-arithmetic toolkit for Gale dual cubic fourfolds.

The package computes, over exact coefficient fields, everything needed to
manipulate cubic fourfolds with an equation of the shape
``det(M) + L1*L2*L3 = 0``: the Gale duality transform and its Lagrangian
construction data, the invariant quadric and the big cubic hypersurfaces on
the 20-dimensional wedge space, membership in the associated degeneracy
sextic with the pointwise line correspondence, the quadric-ideal membership
certificate linking the big cubics to Grassmannian-type varieties, the
overlattice count giving the number of derived partners, and a family of
examples with a faithful alternating-group action.
"""

from .fields import QQ, Cyclotomic3, Field, PrimeField, cyclotomic3, parse_field
from .gale import NonSyzygeticEquation, composition_is_zero, gale_dual
from .lagrangian import (QPPresentation, RhoLagrangianData, gale_from_lagrangian,
                         lagrangian_from_gale, validate)

__all__ = [
    "QQ", "Cyclotomic3", "Field", "PrimeField", "cyclotomic3", "parse_field",
    "NonSyzygeticEquation", "composition_is_zero", "gale_dual",
    "QPPresentation", "RhoLagrangianData", "gale_from_lagrangian",
    "lagrangian_from_gale", "validate",
]
