"""Chamber data, the shared polynomial ring, and fixed-point tables.

The GIT chambers used are the k+1 characters theta_c = -e_1-...-e_c +
e_{c+1}+...+e_k for c = 0..k; c = 0 is the plus side (determinant) and
c = k the minus side (inverse determinant).  Equivariant parameters are
lam_1..lam_n for the torus factor acting on x and sig_1..sig_n for the
factor acting on y.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ..errors import SpecError
from ..exact_core.poly import Poly, PolyRing
from ..exact_core.linfactor import Factored


@dataclass(frozen=True)
class ChamberSpec:
    """One GIT chamber of the torus quotient: c of the k signs are negative."""

    k: int
    n: int
    c: int

    def __post_init__(self):
        if not (0 < self.k < self.n):
            raise SpecError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if not (0 <= self.c <= self.k):
            raise SpecError(f"chamber index c={self.c} outside [0, {self.k}]")

    @property
    def signs(self) -> tuple[int, ...]:
        """epsilon^c: -1 for i <= c, +1 for i > c (1-based positions)."""
        return tuple(-1 if i <= self.c else 1 for i in range(1, self.k + 1))

    @property
    def theta(self) -> tuple[int, ...]:
        return self.signs

    def is_plus(self) -> bool:
        return self.c == 0

    def is_minus(self) -> bool:
        return self.c == self.k


class FlopContext:
    """Shared (k, n) data: the polynomial ring and variable atoms."""

    def __init__(self, k: int, n: int):
        if not (0 < k < n):
            raise SpecError(f"need 0 < k < n, got k={k}, n={n}")
        self.k = k
        self.n = n
        names = (
            [f"lam{j}" for j in range(1, n + 1)]
            + [f"sig{j}" for j in range(1, n + 1)]
            + [f"H{i}" for i in range(1, k + 1)]
            + ["z"]
        )
        self.ring = PolyRing(names)
        self._rings: dict[int, object] = {}

    def lam(self, j: int) -> Poly:
        return self.ring.var(f"lam{j}")

    def sig(self, j: int) -> Poly:
        return self.ring.var(f"sig{j}")

    def H(self, i: int) -> Poly:
        return self.ring.var(f"H{i}")

    @property
    def z(self) -> Poly:
        return self.ring.var("z")

    def h_slots(self) -> tuple[int, ...]:
        return tuple(self.ring.index(f"H{i}") for i in range(1, self.k + 1))

    def chamber(self, c: int):
        """Cached AbelianChowRing for chamber c."""
        from .ring import AbelianChowRing

        if c not in self._rings:
            self._rings[c] = AbelianChowRing(self, ChamberSpec(self.k, self.n, c))
        return self._rings[c]

    def weyl_elements(self) -> list[tuple[int, ...]]:
        """All of S_k as 1-based image tuples w = (w(1), .., w(k))."""
        return [tuple(p) for p in itertools.permutations(range(1, self.k + 1))]

    @staticmethod
    def sgn(w: Sequence[int]) -> int:
        """Sign of a permutation given as a 1-based image tuple."""
        sign = 1
        seen = [False] * len(w)
        for i in range(len(w)):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = w[j] - 1
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign


class FixedPointTable:
    """Isolated fixed points with restriction maps and Euler classes.

    Abelian tables index points by tuples (j_1..j_k) with j_i in 1..n;
    Grassmannian tables index by increasing k-subsets.  The restriction of
    H_i at a point is lam_{j_i} or sig_{j_i} depending on the chamber sign,
    and the Euler class is the product of the tangent and fiber weights at
    the point, kept factored.
    """

    def __init__(self, context: FlopContext, points: list[tuple[int, ...]],
                 h_values: Mapping[tuple[int, ...], tuple[Poly, ...]],
                 euler: Mapping[tuple[int, ...], Factored]):
        self.context = context
        self.points = points
        self._h_values = dict(h_values)
        self._euler = dict(euler)
        self._h_atom_index: dict[tuple[int, ...], tuple[int, ...]] = {}
        for pt, vals in self._h_values.items():
            idx = []
            for v in vals:
                ((expo, coeff),) = v.terms.items()
                if coeff != 1 or sum(expo) != 1:
                    idx = None
                    break
                idx.append(expo.index(1))
            if idx is not None:
                self._h_atom_index[pt] = tuple(idx)

    def h_values(self, point: tuple[int, ...]) -> tuple[Poly, ...]:
        """Values of (H_1, .., H_k) at the point, as ring atoms."""
        return self._h_values[point]

    def euler(self, point: tuple[int, ...]) -> Factored:
        return self._euler[point]

    def restrict_poly(self, point: tuple[int, ...], p: Poly) -> Poly:
        """Substitute the point's H-values into a polynomial (fast path for atoms)."""
        ctx = self.context
        slots = ctx.h_slots()
        atoms = self._h_atom_index.get(point)
        if atoms is None:
            mapping = {f"H{i+1}": v for i, v in enumerate(self._h_values[point])}
            return p.subst(mapping)
        out: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in p.terms.items():
            new = list(expo)
            for i, slot in enumerate(slots):
                e = new[slot]
                if e:
                    new[slot] = 0
                    new[atoms[i]] += e
            key = tuple(new)
            s = out.get(key)
            out[key] = coeff if s is None else s + coeff
        return Poly(ctx.ring, {e: c for e, c in out.items() if c})

    def restrict_scalar_map(self, point: tuple[int, ...]) -> dict[str, Poly]:
        return {f"H{i+1}": v for i, v in enumerate(self._h_values[point])}


def abelian_fixed_points(context: FlopContext, chamber: ChamberSpec) -> FixedPointTable:
    """All n^k index tuples with chamber-dependent restrictions and weights."""
    k, n, c = chamber.k, chamber.n, chamber.c
    points = [tuple(t) for t in itertools.product(range(1, n + 1), repeat=k)]
    h_values = {}
    euler = {}
    for pt in points:
        vals = []
        fact = Factored.one(context.ring)
        for i0, j in enumerate(pt):
            i = i0 + 1
            if i <= c:
                vals.append(context.sig(j))
                for jj in range(1, n + 1):
                    if jj != j:
                        fact = fact.times_form(context.sig(j) - context.sig(jj))
                for jj in range(1, n + 1):
                    fact = fact.times_form(context.sig(j) - context.lam(jj))
            else:
                vals.append(context.lam(j))
                for jj in range(1, n + 1):
                    if jj != j:
                        fact = fact.times_form(context.lam(j) - context.lam(jj))
                for jj in range(1, n + 1):
                    fact = fact.times_form(context.sig(jj) - context.lam(j))
        h_values[pt] = tuple(vals)
        euler[pt] = fact
    return FixedPointTable(context, points, h_values, euler)


def grassmannian_fixed_points(context: FlopContext, side: str) -> FixedPointTable:
    """k-subset fixed points of the plus or minus Grassmannian-bundle side."""
    if side not in ("+", "-"):
        raise SpecError(f"side must be '+' or '-', got {side!r}")
    k, n = context.k, context.n
    atom = context.lam if side == "+" else context.sig
    points = [tuple(s) for s in itertools.combinations(range(1, n + 1), k)]
    h_values = {}
    euler = {}
    for sub in points:
        h_values[sub] = tuple(atom(j) for j in sub)
        fact = Factored.one(context.ring)
        comp = [j for j in range(1, n + 1) if j not in sub]
        for i in sub:
            for j in comp:
                fact = fact.times_form(atom(i) - atom(j))
        for i in sub:
            for j in range(1, n + 1):
                if side == "+":
                    fact = fact.times_form(context.sig(j) - context.lam(i))
                else:
                    fact = fact.times_form(context.sig(i) - context.lam(j))
        euler[sub] = fact
    return FixedPointTable(context, points, h_values, euler)


@lru_cache(maxsize=None)
def _context_cache(k: int, n: int) -> FlopContext:
    return FlopContext(k, n)


def get_context(k: int, n: int) -> FlopContext:
    """Shared per-(k, n) context so chamber rings are built once."""
    return _context_cache(k, n)
