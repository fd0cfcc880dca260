"""grassflop: symbolic-numeric wall-crossing engine for the Grassmannian flop.

The two GIT quotients of X = Mat(k x n) x Mat(n x k) by GL(k) (one for each
determinant character) are the two sides of the Grassmannian flop.  This
package builds their torus-equivariant I-functions exactly, relates them by
abelianization from the maximal-torus quotients, and computes the symplectic
wall-crossing transformation by numeric analytic continuation of the
underlying hypergeometric solutions.

Subpackages
-----------
exact_core    exact rationals, sparse polynomials, truncated multi-graded series
chow_rings    equivariant Chow rings, Weyl projectors, localization pairings
ifactory      small/big toric I-functions and their abelianization
hypercontinue numeric continuation, connection matrices, property checks
cone_lab      genus-zero axioms and big-point cone reconstruction at truncation
flopctl       command-line orchestration (the ``flopctl`` script)
"""

__version__ = "0.1.0"
