"""Factored products of linear forms.

Every denominator produced by the I-function machinery is a product of
affine-linear forms in the equivariant parameters and z (restrictions of
factors like H_i - lambda_j + l*z).  Keeping these products factored makes
cancellation a multiset operation and avoids multivariate gcd entirely.

A ``Factored`` value is  coef * prod(form^e)  where each form is stored by
its canonical key: the primitive representative with positive leading
coefficient under the ring's graded-lex order.  Sums of factored terms are
folded into a single ``RatFn`` over the factored least common denominator,
with exact trial division used to cancel spurious factors afterwards.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .poly import Poly, PolyRing, RatFn

FormKey = tuple  # Poly.key() of the canonical representative

_ONE = Fraction(1)


def canon_linear(form: Poly) -> tuple[FormKey, Poly, Fraction]:
    """Canonicalize a (linear or not) polynomial factor.

    Returns (key, canonical polynomial, unit) with form = unit * canonical.
    """
    if form.is_zero():
        raise ZeroDivisionError("zero polynomial cannot be a factor")
    prim, scale = form.primitive()
    return prim.key(), prim, scale


class Factored:
    """coef * prod(canonical_form ** exponent), exponents in Z."""

    __slots__ = ("ring", "coef", "powers", "_forms")

    def __init__(self, ring: PolyRing, coef=Fraction(1),
                 powers: Mapping[FormKey, int] | None = None,
                 forms: Mapping[FormKey, Poly] | None = None):
        self.ring = ring
        self.coef = Fraction(coef)
        self.powers: dict[FormKey, int] = dict(powers or {})
        self._forms: dict[FormKey, Poly] = dict(forms or {})

    @classmethod
    def one(cls, ring: PolyRing) -> "Factored":
        return cls(ring)

    @classmethod
    def from_factors(cls, ring: PolyRing, factors: Iterable[tuple[Poly, int]],
                     coef=Fraction(1)) -> "Factored":
        out = cls(ring, coef)
        for form, expo in factors:
            out = out.times_form(form, expo)
        return out

    def copy(self) -> "Factored":
        return Factored(self.ring, self.coef, self.powers, self._forms)

    def is_zero(self) -> bool:
        return self.coef == 0

    def __bool__(self) -> bool:
        return self.coef != 0

    def form(self, key: FormKey) -> Poly:
        return self._forms[key]

    def times_form(self, form: Poly, expo: int = 1) -> "Factored":
        if expo == 0:
            return self
        key, canon, unit = canon_linear(form)
        out = self.copy()
        out.coef *= unit**expo
        e = out.powers.get(key, 0) + expo
        if e:
            out.powers[key] = e
            out._forms[key] = canon
        else:
            out.powers.pop(key, None)
        return out

    def __mul__(self, other) -> "Factored":
        if isinstance(other, (int, Fraction)):
            out = self.copy()
            out.coef *= other
            return out
        if not isinstance(other, Factored):
            return NotImplemented
        out = self.copy()
        out.coef *= other.coef
        for key, e in other.powers.items():
            s = out.powers.get(key, 0) + e
            if s:
                out.powers[key] = s
                out._forms[key] = other._forms[key]
            else:
                out.powers.pop(key, None)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Factored":
        out = Factored(self.ring, self.coef**n)
        for key, e in self.powers.items():
            out.powers[key] = e * n
            out._forms[key] = self._forms[key]
        return out

    def inverse(self) -> "Factored":
        if self.coef == 0:
            raise ZeroDivisionError("inverting a zero factored value")
        out = Factored(self.ring, 1 / self.coef)
        for key, e in self.powers.items():
            out.powers[key] = -e
            out._forms[key] = self._forms[key]
        return out

    def __truediv__(self, other) -> "Factored":
        if isinstance(other, Factored):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            out = self.copy()
            out.coef /= other
            return out
        return NotImplemented

    def same_structure(self, other: "Factored") -> bool:
        return self.powers == other.powers

    def __eq__(self, other) -> bool:
        if not isinstance(other, Factored):
            return NotImplemented
        return self.coef == other.coef and self.powers == other.powers

    def __hash__(self):
        raise TypeError("Factored is unhashable")

    def numerator_part(self) -> Poly:
        out = self.ring.const(self.coef)
        for key, e in self.powers.items():
            if e > 0:
                out = out * self._forms[key] ** e
        return out

    def denominator_part(self) -> Poly:
        out = self.ring.one()
        for key, e in self.powers.items():
            if e < 0:
                out = out * self._forms[key] ** (-e)
        return out

    def to_ratfn(self) -> RatFn:
        return RatFn(self.numerator_part(), self.denominator_part())

    def eval(self, values: Mapping[str, object], cast=None):
        """Evaluate at a point (exact rationals or mpmath numbers)."""
        total = cast(self.coef) if cast is not None else self.coef
        for key, e in self.powers.items():
            v = self._forms[key].eval(values, cast)
            if e >= 0:
                total = total * v**e
            else:
                total = total / v ** (-e)
        return total

    def __repr__(self) -> str:
        bits = [str(self.coef)]
        for key in sorted(self.powers):
            e = self.powers[key]
            bits.append(f"({self._forms[key]!r})^{e}")
        return " * ".join(bits)


def fold_terms(ring: PolyRing, terms: Iterable[tuple[Poly, Factored]]) -> RatFn:
    """Exact sum of poly * factored terms, returned as a single RatFn.

    The common denominator is the factored lcm; after summing, denominator
    factors that divide the numerator exactly are cancelled.
    """
    terms = list(terms)
    if not terms:
        return RatFn.from_const(ring, 0)
    # least common denominator as max negative exponent per form
    den_pows: dict[FormKey, int] = {}
    forms: dict[FormKey, Poly] = {}
    for _, fact in terms:
        for key, e in fact.powers.items():
            forms[key] = fact.form(key)
            if e < 0:
                den_pows[key] = max(den_pows.get(key, 0), -e)
    num = ring.zero()
    for poly, fact in terms:
        if fact.is_zero() or poly.is_zero():
            continue
        piece = poly.scale(fact.coef)
        for key in set(den_pows) | set(fact.powers):
            e = den_pows.get(key, 0) + fact.powers.get(key, 0)
            if e < 0:
                raise ValueError("factored term deeper than the common denominator")
            if e:
                piece = piece * forms[key] ** e
        num = num + piece
    den = ring.one()
    if num.is_zero():
        return RatFn.from_const(ring, 0)
    for key, e in sorted(den_pows.items()):
        form = forms[key]
        for _ in range(e):
            try:
                num = num.div_exact(form)
            except ValueError:
                den = den * form
    return RatFn(num, den)
