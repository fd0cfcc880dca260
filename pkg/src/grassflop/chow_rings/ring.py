"""Abelian equivariant Chow rings, Weyl projectors, and division by Delta.

The chamber-c ring is presented as a tensor product of univariate quotients:
one relation prod_j(H_i - lam_j) = 0 for each i > c and prod_j(H_i - sig_j)
= 0 for each i <= c (the latter is the monic form of prod_j(-H_i + sig_j)).
Normal forms reduce each H_i-power independently, so the monomial basis
{H^b : 0 <= b_i <= n-1} gives unique representatives and the ring is free of
rank n^k over the scalar field.

Scalars of a ``ChowClass`` are duck-typed: Fraction, Poly in the equivariant
parameters, or RatFn all work; mixed arithmetic coerces upward.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Mapping

from ..errors import SpecError
from ..exact_core.poly import Poly, RatFn
from .chamber import ChamberSpec, FixedPointTable, FlopContext, abelian_fixed_points

HExpo = tuple[int, ...]


def _scalar_is_zero(s) -> bool:
    return not s


def _as_ratfn(scalar, ring) -> RatFn:
    if isinstance(scalar, RatFn):
        return scalar
    if isinstance(scalar, Poly):
        return RatFn(scalar, ring.one(), _normalized=True)
    return RatFn.from_const(ring, scalar)


class ChowClass:
    """Element of an AbelianChowRing on the monomial basis {H^b}."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "AbelianChowRing", coeffs: Mapping[HExpo, object]):
        self.ring = ring
        self.coeffs = {e: c for e, c in coeffs.items() if not _scalar_is_zero(c)}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other) -> "ChowClass":
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if _scalar_is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return ChowClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "ChowClass":
        return ChowClass(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> "ChowClass":
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def scale(self, s) -> "ChowClass":
        if _scalar_is_zero(s):
            return ChowClass(self.ring, {})
        return ChowClass(self.ring, {e: c * s for e, c in self.coeffs.items()})

    def __mul__(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            if other.ring is not self.ring:
                raise SpecError("classes from different rings")
            raw: dict[HExpo, object] = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = c1 * c2
                    if e in raw:
                        raw[e] = raw[e] + v
                    else:
                        raw[e] = v
            return self.ring.normal_form_dict(raw)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "ChowClass":
        out = self.ring.one_class()
        for _ in range(m):
            out = out * self
        return out

    def equals(self, other: "ChowClass") -> bool:
        """Exact equality with scalar coercion (RatFn cross-multiplication)."""
        ring = self.ring.context.ring
        keys = set(self.coeffs) | set(other.coeffs)
        for e in keys:
            a = _as_ratfn(self.coeffs.get(e, 0), ring)
            b = _as_ratfn(other.coeffs.get(e, 0), ring)
            if a != b:
                return False
        return True

    def total_degree(self) -> int:
        """Top H-degree present (grading of the leading basis monomials)."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def as_poly(self) -> Poly:
        """Polynomial representative, only valid when scalars are Poly/Fraction."""
        ring = self.ring.context.ring
        slots = self.ring.context.h_slots()
        out = ring.zero()
        for e, c in self.coeffs.items():
            expo = [0] * ring.nvars
            for i, d in enumerate(e):
                expo[slots[i]] = d
            mono = ring.monomial(tuple(expo))
            piece = mono.scale(c) if isinstance(c, (int, Fraction)) else mono * c
            out = out + piece
        return out

    def restrict(self, table: FixedPointTable, point: tuple[int, ...]):
        """Value at a fixed point (scalar: Poly, Fraction, or RatFn)."""
        vals = table.h_values(point)
        total = None
        for e, c in self.coeffs.items():
            term = c
            for i, d in enumerate(e):
                if d:
                    term = term * vals[i] ** d
            total = term if total is None else total + term
        if total is None:
            return self.ring.context.ring.zero()
        return total

    def __repr__(self) -> str:
        if not self.coeffs:
            return "ChowClass(0)"
        bits = []
        for e in sorted(self.coeffs, key=lambda t: (sum(t), t)):
            mono = "*".join(f"H{i+1}^{d}" if d > 1 else f"H{i+1}"
                            for i, d in enumerate(e) if d) or "1"
            bits.append(f"({self.coeffs[e]})*{mono}")
        return "ChowClass(" + " + ".join(bits) + ")"


class AbelianChowRing:
    """Equivariant Chow ring of a chamber's torus quotient."""

    def __init__(self, context: FlopContext, chamber: ChamberSpec):
        if (context.k, context.n) != (chamber.k, chamber.n):
            raise SpecError("chamber does not match context")
        self.context = context
        self.chamber = chamber
        k, n = context.k, context.n
        self.basis: list[HExpo] = [tuple(b) for b in itertools.product(range(n), repeat=k)]
        self.basis_index = {b: i for i, b in enumerate(self.basis)}
        # roots of the monic relation for each H_i
        self._roots: list[list[Poly]] = []
        for i in range(1, k + 1):
            atom = context.sig if i <= chamber.c else context.lam
            self._roots.append([atom(j) for j in range(1, n + 1)])
        # rel_i(H) = H^n + sum_m a_m H^m; store a_m (Poly scalars)
        self._rel_tail: list[list[Poly]] = []
        for roots in self._roots:
            coeffs = [context.ring.one()]
            for r in roots:
                new = [context.ring.zero()] * (len(coeffs) + 1)
                for d, cd in enumerate(coeffs):
                    new[d + 1] = new[d + 1] + cd
                    new[d] = new[d] - cd * r
                coeffs = new
            self._rel_tail.append(coeffs[:-1])  # degree < n part of the monic relation
        self._pow_cache: list[dict[int, list[Poly]]] = [dict() for _ in range(k)]
        self.fixed_points: FixedPointTable = abelian_fixed_points(context, chamber)

    @property
    def rank(self) -> int:
        return len(self.basis)

    # -- construction --------------------------------------------------------

    def const(self, value) -> ChowClass:
        k = self.context.k
        return ChowClass(self, {(0,) * k: Fraction(value)} if value else {})

    def zero_class(self) -> ChowClass:
        return ChowClass(self, {})

    def one_class(self) -> ChowClass:
        return self.const(1)

    def h_class(self, i: int) -> ChowClass:
        e = [0] * self.context.k
        e[i - 1] = 1
        return ChowClass(self, {tuple(e): Fraction(1)})

    def from_h_poly(self, coeffs: Mapping[HExpo, object]) -> ChowClass:
        return self.normal_form_dict(dict(coeffs))

    # -- normal form ----------------------------------------------------------

    def _reduced_power(self, i: int, d: int) -> list[Poly]:
        """H_{i+1}^d reduced: coefficient list over H-powers 0..n-1 (Poly scalars)."""
        n = self.context.n
        cache = self._pow_cache[i]
        if d < n:
            out = [self.context.ring.zero()] * n
            out[d] = self.context.ring.one()
            return out
        if d in cache:
            return cache[d]
        prev = self._reduced_power(i, d - 1)
        # multiply by H, then fold the H^n overflow through the relation
        shifted = [self.context.ring.zero()] + prev[:-1]
        top = prev[-1]
        if top:
            for m, a in enumerate(self._rel_tail[i]):
                if a:
                    shifted[m] = shifted[m] - top * a
        cache[d] = shifted
        return shifted

    def normal_form_dict(self, raw: Mapping[HExpo, object]) -> ChowClass:
        """Reduce an H-exponent dict to the monomial basis."""
        n = self.context.n
        k = self.context.k
        current = {tuple(e): c for e, c in raw.items() if not _scalar_is_zero(c)}
        for i in range(k):
            nxt: dict[HExpo, object] = {}
            for e, c in current.items():
                d = e[i]
                if d < n:
                    _acc(nxt, e, c)
                    continue
                red = self._reduced_power(i, d)
                for m, a in enumerate(red):
                    if a.is_zero():
                        continue
                    ne = list(e)
                    ne[i] = m
                    _acc(nxt, tuple(ne), c * a)
            current = {e: c for e, c in nxt.items() if not _scalar_is_zero(c)}
        return ChowClass(self, current)

    def normal_form(self, p: Poly) -> ChowClass:
        """Normal form of a polynomial in H_1..H_k with parameter coefficients."""
        if p.ring != self.context.ring:
            raise SpecError("polynomial from a different ring")
        slots = self.context.h_slots()
        raw: dict[HExpo, object] = {}
        for expo, coeff in p.terms.items():
            h_part = tuple(expo[s] for s in slots)
            rest = list(expo)
            for s in slots:
                rest[s] = 0
            scalar = self.context.ring.monomial(tuple(rest), coeff)
            _acc(raw, h_part, scalar)
        return self.normal_form_dict(raw)

    # -- Weyl action -----------------------------------------------------------

    def weyl_symmetric_relations(self) -> bool:
        return self.chamber.c in (0, self.context.k)

    def weyl_act(self, w: tuple[int, ...], alpha: ChowClass) -> ChowClass:
        """H_i -> H_{w(i)} followed by normal form (group action on the ring)."""
        raw: dict[HExpo, object] = {}
        for e, c in alpha.coeffs.items():
            ne = [0] * len(e)
            for i, d in enumerate(e):
                ne[w[i] - 1] = d
            _acc(raw, tuple(ne), c)
        return self.normal_form_dict(raw)

    def project(self, alpha: ChowClass, mode: str) -> ChowClass:
        """Weyl projector: 'invariant' averages, 'antiinvariant' sign-averages."""
        if not self.weyl_symmetric_relations():
            raise SpecError("Weyl projectors need a Weyl-stable chamber (c = 0 or k)")
        if mode not in ("invariant", "antiinvariant"):
            raise SpecError(f"unknown projector mode {mode!r}")
        ctx = self.context
        total = self.zero_class()
        count = 0
        for w in ctx.weyl_elements():
            img = self.weyl_act(w, alpha)
            if mode == "antiinvariant" and ctx.sgn(w) < 0:
                img = -img
            total = total + img
            count += 1
        return total.scale(Fraction(1, count))

    def is_antiinvariant(self, alpha: ChowClass) -> bool:
        return self.project(alpha, "antiinvariant").equals(alpha)

    # -- division by the fundamental anti-invariant ------------------------------

    def delta_class(self) -> ChowClass:
        """Delta = prod_{i<j} (H_i - H_j) as a reduced class."""
        k = self.context.k
        raw: dict[HExpo, object] = {(0,) * k: Fraction(1)}
        cls = ChowClass(self, raw)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                cls = cls * (self.h_class(i) - self.h_class(j))
        return cls

    def divide_by_delta(self, alpha: ChowClass) -> ChowClass:
        """beta with Delta*beta = alpha, for Weyl anti-invariant alpha.

        The reduced representative of an anti-invariant class is an
        alternating polynomial (the monomial basis is Weyl-stable), so exact
        division by the Vandermonde applies variable pair by variable pair.
        """
        if not self.weyl_symmetric_relations():
            raise SpecError("divide_by_delta needs a Weyl-stable chamber")
        anti = self.project(alpha, "antiinvariant")
        if not anti.equals(alpha):
            raise SpecError("divide_by_delta input is not anti-invariant")
        coeffs = dict(alpha.coeffs)
        k = self.context.k
        for a in range(k):
            for b in range(a + 1, k):
                coeffs = _divide_linear_h(coeffs, a, b)
        out = self.normal_form_dict(coeffs)
        return self.project(out, "invariant")


def _acc(d: dict, key, value) -> None:
    if key in d:
        d[key] = d[key] + value
    else:
        d[key] = value


def _divide_linear_h(coeffs: dict[HExpo, object], a: int, b: int) -> dict[HExpo, object]:
    """Exact division of an H-exponent dict by (H_{a+1} - H_{b+1})."""
    rem = {e: c for e, c in coeffs.items() if not _scalar_is_zero(c)}
    quot: dict[HExpo, object] = {}
    while rem:
        # leading term in H_a (ties broken by total degree then lex)
        e = max(rem, key=lambda t: (t[a], sum(t), t))
        c = rem.pop(e)
        if e[a] == 0:
            raise SpecError("polynomial not divisible by the root difference")
        qe = list(e)
        qe[a] -= 1
        _acc(quot, tuple(qe), c)
        # subtract (H_a - H_b) * c*H^qe  => remove c*H^e, add c*H^(qe with b+1)
        be = list(qe)
        be[b] += 1
        be = tuple(be)
        cur = rem.get(be)
        s = c if cur is None else cur + c
        if _scalar_is_zero(s):
            rem.pop(be, None)
        else:
            rem[be] = s
    return quot


# -- module-level wrappers matching the operation names --------------------------


def weyl_act(w: tuple[int, ...], alpha: ChowClass) -> ChowClass:
    return alpha.ring.weyl_act(w, alpha)


def project(alpha: ChowClass, mode: str) -> ChowClass:
    return alpha.ring.project(alpha, mode)


def divide_by_delta(alpha: ChowClass) -> ChowClass:
    return alpha.ring.divide_by_delta(alpha)
