"""Root data, Weyl orbits of monomials, and the nonabelian Chow module.

Nonabelian classes are represented by Weyl-symmetric polynomials in the H_i
(the pullback to the torus quotient is implicit), evaluated at k-subset
fixed points.  The transfer map p^a divides an anti-invariant abelian class
by Delta and reinterprets the symmetric quotient as a nonabelian class; its
inverse multiplies by Delta.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ConsistencyError, SpecError
from ..exact_core.poly import Poly
from .chamber import FixedPointTable, FlopContext, grassmannian_fixed_points
from .ring import AbelianChowRing, ChowClass, HExpo


@dataclass(frozen=True)
class Root:
    """A root e_i - e_j of GL(k), stored 1-based."""

    i: int
    j: int

    def h_form(self, ctx: FlopContext) -> Poly:
        return ctx.H(self.i) - ctx.H(self.j)

    def pairing(self, d: tuple[int, ...]) -> int:
        """Value of a cocharacter d = (d_1..d_k) on this root."""
        return d[self.i - 1] - d[self.j - 1]


class RootData:
    """Positive roots, Delta, zeta, and the per-chamber-basis coordinates.

    ``flips`` lists positive roots to replace by their negatives; the
    default empty set is the standard choice e_i - e_j for i < j.  The
    output of abelianization must not depend on this choice, which is
    exercised by the root-flip independence test.
    """

    def __init__(self, context: FlopContext, flips: frozenset[tuple[int, int]] = frozenset()):
        self.context = context
        k = context.k
        self.positive_roots: list[Root] = []
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                if (i, j) in flips:
                    self.positive_roots.append(Root(j, i))
                else:
                    self.positive_roots.append(Root(i, j))
        if len(self.positive_roots) != k * (k - 1) // 2:
            raise ConsistencyError("wrong number of positive roots")
        # zeta = sum of positive roots, in e-coordinates
        zeta = [0] * k
        for rho in self.positive_roots:
            zeta[rho.i - 1] += 1
            zeta[rho.j - 1] -= 1
        self.zeta_e = tuple(zeta)

    @property
    def count(self) -> int:
        return len(self.positive_roots)

    def delta_poly(self) -> Poly:
        out = self.context.ring.one()
        for rho in self.positive_roots:
            out = out * rho.h_form(self.context)
        return out

    def zeta_coords(self, side: str) -> tuple[int, ...]:
        """Coordinates a_i of zeta in the chamber basis pr_i = +/- e_i."""
        if side == "+":
            return self.zeta_e
        if side == "-":
            return tuple(-a for a in self.zeta_e)
        raise SpecError(f"side must be '+' or '-', got {side!r}")

    def zeta_pairing(self, d: tuple[int, ...]) -> int:
        """beta(zeta) = sum of beta(rho) over the positive roots."""
        return sum(rho.pairing(d) for rho in self.positive_roots)

    def check_sign_identity(self, side: str) -> bool:
        """(-1)^{a_i} = (-1)^{k-1} for every chamber-basis coordinate of zeta.

        Only guaranteed for the standard positive roots.
        """
        k = self.context.k
        return all((a - (k - 1)) % 2 == 0 for a in self.zeta_coords(side))


def monomial_orbits(k: int, n: int) -> tuple[list[HExpo], list[int], list[dict[HExpo, Fraction]]]:
    """The monomial catalog underlying the insertion variables.

    Returns (mu_list, orbit_of, orbit_sums):
      mu_list    exponent tuples b with 0 <= b_i <= n-k and sum(b) != 1,
                 enumerated in lexicographic order;
      orbit_of   index of each monomial's Weyl orbit (orbits numbered by
                 first appearance; representative = lexicographically least);
      orbit_sums the orbit-sum polynomials P_j as H-exponent dicts.
    """
    mu_list = [b for b in itertools.product(range(n - k + 1), repeat=k) if sum(b) != 1]
    orbit_index: dict[HExpo, int] = {}
    orbit_of: list[int] = []
    orbit_sums: list[dict[HExpo, Fraction]] = []
    for b in mu_list:
        rep = tuple(sorted(b))
        if rep not in orbit_index:
            orbit_index[rep] = len(orbit_sums)
            orbit_sums.append({})
        orbit_of.append(orbit_index[rep])
    for b, j in zip(mu_list, orbit_of):
        orbit_sums[j][b] = Fraction(1)
    return mu_list, orbit_of, orbit_sums


class NonabelianChowModule:
    """Equivariant Chow module of one Grassmannian-bundle side.

    Basis: the hyperplane class sum_i(+/-H_i) first, then the orbit sums
    P_1..P_N (which include the unit, P_1 = 1).  Elements are stored as
    Weyl-symmetric H-polynomials; localization evaluates them at k-subset
    fixed points.
    """

    def __init__(self, context: FlopContext, side: str):
        if side not in ("+", "-"):
            raise SpecError(f"side must be '+' or '-', got {side!r}")
        self.context = context
        self.side = side
        k, n = context.k, context.n
        self.mu_list, self.orbit_of, orbit_sums = monomial_orbits(k, n)
        self.n_orbits = len(orbit_sums)
        sign = Fraction(1 if side == "+" else -1)
        hyper: dict[HExpo, Fraction] = {}
        for i in range(k):
            e = [0] * k
            e[i] = 1
            hyper[tuple(e)] = sign
        self.basis: list[dict[HExpo, Fraction]] = [hyper] + orbit_sums
        self.grading: list[int] = [1] + [sum(next(iter(p))) for p in orbit_sums]
        self.fixed_points: FixedPointTable = grassmannian_fixed_points(context, side)
        expected = len(list(itertools.combinations(range(n), k)))
        if self.rank != expected:
            raise ConsistencyError(
                f"rank {self.rank} does not match the number of k-subsets {expected}")
        if not self._independent_under_localization():
            raise ConsistencyError("basis not independent under localization")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def chamber_ring(self) -> AbelianChowRing:
        """The abelian chamber this side abelianizes to (c = 0 or k)."""
        c = 0 if self.side == "+" else self.context.k
        return self.context.chamber(c)

    def basis_class(self, a: int) -> ChowClass:
        return ChowClass(self.chamber_ring(), self.basis[a])

    def restrict_basis(self, a: int, subset: tuple[int, ...]):
        return self.basis_class(a).restrict(self.fixed_points, subset)

    def evaluation_rows(self) -> list[list[Poly]]:
        """Rows = fixed subsets, columns = basis values (exact polynomials)."""
        rows = []
        for sub in self.fixed_points.points:
            rows.append([self.restrict_basis(a, sub) for a in range(self.rank)])
        return rows

    def _independent_under_localization(self) -> bool:
        """Full rank of the evaluation matrix, certified at an exact sample."""
        rows = self.evaluation_rows()
        rng = random.Random(20231115)
        vals = {}
        for j in range(1, self.context.n + 1):
            vals[f"lam{j}"] = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 997))
            vals[f"sig{j}"] = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 997))
        vals["z"] = Fraction(0)
        mat = [[entry.eval(vals) for entry in row] for row in rows]
        return _exact_rank(mat) == self.rank

    def solve_coefficients(self, values: dict[tuple[int, ...], object]) -> list:
        """Express subset-values in the basis: solve evaluation * coeffs = values.

        Values and the returned coefficients are RatFn-like scalars; the
        solve is exact Gaussian elimination over the fraction field.
        """
        from ..exact_core.poly import RatFn

        ring = self.context.ring
        rows = self.evaluation_rows()
        mat = [[RatFn(entry) for entry in row] for row in rows]
        rhs = []
        for sub in self.fixed_points.points:
            v = values[sub]
            rhs.append(v if isinstance(v, RatFn) else RatFn(v) if isinstance(v, Poly)
                       else RatFn.from_const(ring, v))
        return _exact_solve(mat, rhs)


def _exact_rank(mat: list[list[Fraction]]) -> int:
    m = [row[:] for row in mat]
    rank = 0
    rows, cols = len(m), len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _exact_solve(mat: list[list], rhs: list) -> list:
    """Gaussian elimination over a field-like scalar type; raises if singular."""
    nrows = len(mat)
    ncols = len(mat[0])
    aug = [mat[r][:] + [rhs[r]] for r in range(nrows)]
    row = 0
    pivots = []
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [a / pv for a in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == ncols:
            break
    if row < ncols:
        raise ConsistencyError("singular evaluation matrix in exact solve")
    for r in range(row, nrows):
        if aug[r][ncols]:
            raise ConsistencyError("inconsistent system in exact solve")
    out = [None] * ncols
    for r, col in enumerate(pivots):
        out[col] = aug[r][ncols]
    return out


def p_a(alpha: ChowClass, module: NonabelianChowModule) -> ChowClass:
    """Transfer an anti-invariant abelian class to the nonabelian side.

    The result is the Weyl-invariant quotient by Delta, reinterpreted as a
    nonabelian class; on a subset fixed point it equals the restriction of
    alpha at any ordering of the subset divided by the restriction of Delta.
    """
    ring = alpha.ring
    if ring is not module.chamber_ring():
        raise SpecError("class does not live on the module's abelian chamber")
    return ring.divide_by_delta(alpha)


def p_a_inverse(beta: ChowClass, module: NonabelianChowModule) -> ChowClass:
    """Multiply by Delta: the inverse transfer back to anti-invariants."""
    ring = beta.ring
    if ring is not module.chamber_ring():
        raise SpecError("class does not live on the module's abelian chamber")
    return ring.delta_class() * beta
