"""Equivariant Chow rings of the flop's GIT quotients.

The torus side: for each chamber index c the quotient of X by the maximal
torus has equivariant Chow ring presented on the monomial basis
{H^b : 0 <= b_i <= n-1} with one univariate relation per variable, and
isolated fixed points indexed by tuples (j_1..j_k).  The nonabelian side is
realized through Weyl-symmetric representatives, the fundamental
anti-invariant Delta, and the divide-by-Delta transfer map, with fixed
points indexed by k-subsets.
"""

from .chamber import ChamberSpec, FlopContext, FixedPointTable
from .ring import AbelianChowRing, ChowClass, weyl_act, project, divide_by_delta
from .nonabelian import RootData, NonabelianChowModule, monomial_orbits, p_a, p_a_inverse
from .pairing import pairing_abelian, pairing_nonabelian, symplectic_gram, SymplecticGram

__all__ = [
    "ChamberSpec",
    "FlopContext",
    "FixedPointTable",
    "AbelianChowRing",
    "ChowClass",
    "weyl_act",
    "project",
    "divide_by_delta",
    "RootData",
    "NonabelianChowModule",
    "monomial_orbits",
    "p_a",
    "p_a_inverse",
    "pairing_abelian",
    "pairing_nonabelian",
    "symplectic_gram",
    "SymplecticGram",
]
