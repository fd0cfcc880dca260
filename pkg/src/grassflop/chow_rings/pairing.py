"""Localization pairings and the symplectic form.

The equivariant Poincare pairing is the fixed-point sum
sum_F alpha|_F * beta|_F / e(N_F), an exact rational function of the
equivariant parameters.  The nonabelian pairing is computed two ways and
compared exactly: directly over k-subset fixed points, and through the
anti-invariant transfer, which rescales by (-1)^{#positive roots} / |W|.
Agreement is the acceptance gate for the Euler-class conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ConsistencyError, SpecError
from ..exact_core.linfactor import Factored, fold_terms
from ..exact_core.poly import Poly, RatFn
from ..exact_core.series import ZLaurent
from .chamber import FlopContext
from .nonabelian import NonabelianChowModule, RootData
from .ring import AbelianChowRing, ChowClass


def _restrict_to_poly(cls: ChowClass, table, point) -> Poly:
    val = cls.restrict(table, point)
    if isinstance(val, Poly):
        return val
    if isinstance(val, (int, Fraction)):
        return cls.ring.context.ring.const(val)
    raise SpecError("pairing requires polynomial scalars (got a rational function)")


def pairing_abelian(alpha: ChowClass, beta: ChowClass, ring: AbelianChowRing) -> RatFn:
    """Poincare pairing on an abelian chamber, as one exact rational function."""
    if alpha.ring is not ring or beta.ring is not ring:
        raise SpecError("classes do not belong to the given ring")
    prod = alpha * beta
    table = ring.fixed_points
    terms = []
    for pt in table.points:
        num = _restrict_to_poly(prod, table, pt)
        if num.is_zero():
            continue
        terms.append((num, table.euler(pt).inverse()))
    return fold_terms(ring.context.ring, terms)


@dataclass
class DualRouteReport:
    """Outcome of the two-route nonabelian pairing comparison."""

    value: RatFn
    termwise_ok: bool
    folded_ok: bool | None  # None when the symbolic fold was skipped
    detail: str = ""


def pairing_nonabelian(alpha: ChowClass, beta: ChowClass, module: NonabelianChowModule,
                       fold_both_routes: bool | None = None) -> DualRouteReport:
    """Nonabelian Poincare pairing with the dual-route consistency check.

    Route (i) sums over k-subset fixed points.  Route (ii) transfers both
    classes to anti-invariants (multiplication by Delta), sums over all
    torus fixed points, and rescales by (-1)^{#roots}/|W|.  The two routes
    are compared termwise per subset after clearing denominators, which is
    an exact proof of agreement; for small n the fully folded rational
    functions are compared as well.
    """
    ctx = module.context
    ring = module.chamber_ring()
    if fold_both_routes is None:
        fold_both_routes = ctx.n <= 3
    roots = RootData(ctx)
    w_order = 1
    for i in range(2, ctx.k + 1):
        w_order *= i
    const = Fraction((-1) ** roots.count, w_order)

    prod_g = alpha * beta
    table_g = module.fixed_points
    route_i_terms = {}
    for sub in table_g.points:
        num = _restrict_to_poly(prod_g, table_g, sub)
        route_i_terms[sub] = (num, table_g.euler(sub).inverse())

    delta = ring.delta_class()
    prod_t = (delta * alpha) * (delta * beta)
    table_t = ring.fixed_points
    # group torus fixed points by underlying subset; repeated tuples restrict to 0
    route_ii_terms: dict[tuple[int, ...], list] = {}
    zero_checked = True
    for pt in table_t.points:
        num = _restrict_to_poly(prod_t, table_t, pt)
        if len(set(pt)) < len(pt):
            if not num.is_zero():
                zero_checked = False
            continue
        sub = tuple(sorted(pt))
        route_ii_terms.setdefault(sub, []).append((num, table_t.euler(pt).inverse()))

    termwise_ok = zero_checked
    for sub in table_g.points:
        num_i, inv_e_i = route_i_terms[sub]
        pieces = route_ii_terms.get(sub, [])
        if len(pieces) != w_order:
            termwise_ok = False
            continue
        # each tuple above the subset must contribute the identical term, and
        # const * |W| * (that term) must equal the subset term
        folded = fold_terms(ctx.ring, [(n.scale(const * w_order), f) for n, f in pieces[:1]])
        target = fold_terms(ctx.ring, [(num_i, inv_e_i)])
        if not _ratfn_equal(folded, target):
            termwise_ok = False
        for num2, inv2 in pieces[1:]:
            if not _ratfn_equal(fold_terms(ctx.ring, [(num2, inv2)]),
                                fold_terms(ctx.ring, [p for p in pieces[:1]])):
                termwise_ok = False
    value = fold_terms(ctx.ring, [(n, f) for n, f in route_i_terms.values()])
    folded_ok = None
    if fold_both_routes:
        all_ii = [t for pieces in route_ii_terms.values() for t in pieces]
        value_ii = fold_terms(ctx.ring, [(n.scale(const), f) for n, f in all_ii])
        folded_ok = _ratfn_equal(value, value_ii)
    if not termwise_ok or folded_ok is False:
        raise ConsistencyError(
            "dual-route pairing disagreement: Euler-class convention defect")
    return DualRouteReport(value=value, termwise_ok=termwise_ok, folded_ok=folded_ok)


def _ratfn_equal(a: RatFn, b: RatFn) -> bool:
    return (a.num * b.den) == (b.num * a.den)


def gram_matrix(module: NonabelianChowModule) -> list[list[RatFn]]:
    """Poincare Gram matrix of the module basis (route (i) values)."""
    out = []
    for a in range(module.rank):
        row = []
        for b in range(module.rank):
            rep = pairing_nonabelian(module.basis_class(a), module.basis_class(b),
                                     module, fold_both_routes=False)
            row.append(rep.value)
        out.append(row)
    return out


@dataclass
class SymplecticGram:
    """Poincare Gram data plus the residue-pairing rule.

    The symplectic form on Laurent vectors is
    Omega(f, g) = [coefficient of z^{-1}] (f(-z), g(z)), where the pairing
    is extended z-linearly from the Gram matrix of the chosen basis.
    """

    gram: list[list[RatFn]]
    basis_labels: list[str] = field(default_factory=list)

    def pair_vectors(self, f: list, g: list):
        """(f, g) for plain coefficient vectors over the basis."""
        total = None
        for a, fa in enumerate(f):
            if not fa:
                continue
            for b, gb in enumerate(g):
                if not gb:
                    continue
                term = self.gram[a][b] * fa * gb
                total = term if total is None else total + term
        return total

    def omega(self, f: list[ZLaurent], g: list[ZLaurent]):
        """Omega(f, g) for vectors of ZLaurent coordinates over the basis."""
        total = None
        for a, fa in enumerate(f):
            for p, fc in fa.items():
                for b, gb in enumerate(g):
                    for q, gc in gb.items():
                        if p + q != -1:
                            continue
                        term = self.gram[a][b] * ((-1) ** p) * fc * gc
                        total = term if total is None else total + term
        return total


def symplectic_gram(module_or_ring) -> SymplecticGram:
    """Package the Poincare Gram matrix with the z -> -z residue rule."""
    if isinstance(module_or_ring, NonabelianChowModule):
        labels = ["hyperplane"] + [f"P{j+1}" for j in range(module_or_ring.rank - 1)]
        return SymplecticGram(gram=gram_matrix(module_or_ring), basis_labels=labels)
    if isinstance(module_or_ring, AbelianChowRing):
        ring = module_or_ring
        gram = []
        for b1 in ring.basis:
            row = []
            cls1 = ChowClass(ring, {b1: Fraction(1)})
            for b2 in ring.basis:
                cls2 = ChowClass(ring, {b2: Fraction(1)})
                row.append(pairing_abelian(cls1, cls2, ring))
            gram.append(row)
        labels = ["*".join(f"H{i+1}^{e}" for i, e in enumerate(b) if e) or "1"
                  for b in ring.basis]
        return SymplecticGram(gram=gram, basis_labels=labels)
    raise SpecError("symplectic_gram expects a module or an abelian ring")
