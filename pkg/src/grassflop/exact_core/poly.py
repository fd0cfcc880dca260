"""Sparse exact polynomials and rational functions over Q.

A polynomial is a dict mapping exponent tuples to ``Fraction`` coefficients;
zero coefficients are never stored.  Variables live in a ``PolyRing``, an
ordered tuple of names.  The term order is graded lexicographic: compare
total degree first, then exponents starting from the *last* ring variable
(so with the ring order lambda < sigma < H < z, the variable z dominates).
The order is used only to pick canonical leading coefficients, never for
Groebner-style computations.

``RatFn`` is a quotient num/den canonicalized by content normalization: the
denominator is primitive (integer coefficients with gcd 1) with positive
leading coefficient, and the rational scale factor is absorbed into the
numerator.  Equality is decided by cross-multiplication, so no polynomial
gcd is ever required.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Expo = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class PolyRing:
    """Ordered variable universe with a graded-lex term order."""

    __slots__ = ("names", "_index", "_zero_expo")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self._index = {name: i for i, name in enumerate(self.names)}
        self._zero_expo = (0,) * len(self.names)

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, PolyRing) and self.names == other.names)

    def __hash__(self) -> int:
        return hash(self.names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self!r}") from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_expo: _ONE})

    def const(self, value) -> "Poly":
        c = _as_fraction(value)
        return Poly(self, {self._zero_expo: c} if c else {})

    def var(self, name: str, power: int = 1) -> "Poly":
        expo = [0] * self.nvars
        expo[self.index(name)] = power
        return Poly(self, {tuple(expo): _ONE})

    def monomial(self, expo: Expo, coeff=_ONE) -> "Poly":
        c = _as_fraction(coeff)
        return Poly(self, {tuple(expo): c} if c else {})

    def linear(self, coeffs: Mapping[str, object], const=0) -> "Poly":
        """Affine-linear polynomial sum(c_v * v) + const."""
        terms: dict[Expo, Fraction] = {}
        for name, c in coeffs.items():
            c = _as_fraction(c)
            if not c:
                continue
            expo = [0] * self.nvars
            expo[self.index(name)] = 1
            terms[tuple(expo)] = c
        c0 = _as_fraction(const)
        if c0:
            terms[self._zero_expo] = c0
        return Poly(self, terms)

    def poly(self, terms: Mapping[Expo, object]) -> "Poly":
        clean = {}
        for expo, c in terms.items():
            c = _as_fraction(c)
            if c:
                clean[tuple(expo)] = c
        return Poly(self, clean)


def _lead_key(expo: Expo):
    # graded first, then lex from the last (largest) variable down
    return (sum(expo), expo[::-1])


class Poly:
    """Immutable-by-convention sparse polynomial over Q."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[Expo, Fraction]):
        self.ring = ring
        self.terms = terms

    # -- basics -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return not self.terms
            return self.terms == {self.ring._zero_expo: c}
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, self.key()))

    def key(self) -> tuple:
        """Canonical hashable form (sorted term list)."""
        return tuple(sorted(self.terms.items()))

    def copy_terms(self) -> dict[Expo, Fraction]:
        return dict(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring._zero_expo, _ZERO)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def leading(self) -> tuple[Expo, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=_lead_key)
        return expo, self.terms[expo]

    def variables(self) -> set[str]:
        used: set[str] = set()
        for expo in self.terms:
            for i, e in enumerate(expo):
                if e:
                    used.add(self.ring.names[i])
        return used

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")
        if not self.terms or not other.terms:
            return self.ring.zero()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Expo, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- content and normal forms ------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return _ZERO
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> tuple["Poly", Fraction]:
        """Return (p, c) with self = c*p, p primitive with positive leading coefficient."""
        if not self.terms:
            return self, _ZERO
        c = self.content()
        _, lead = self.leading()
        if lead < 0:
            c = -c
        return self.scale(1 / c), c

    # -- substitution and evaluation ---------------------------------------

    def subst(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute polynomials or rationals for variables (others unchanged)."""
        idx_map = {self.ring.index(n): v for n, v in mapping.items()}
        out = self.ring.zero()
        pow_cache: dict[tuple[int, int], Poly] = {}
        for expo, coeff in self.terms.items():
            term = self.ring.const(coeff)
            rest = [0] * self.ring.nvars
            for i, e in enumerate(expo):
                if not e:
                    continue
                if i in idx_map:
                    v = idx_map[i]
                    if isinstance(v, (int, Fraction)):
                        term = term.scale(_as_fraction(v) ** e)
                    else:
                        p = pow_cache.get((i, e))
                        if p is None:
                            p = v**e
                            pow_cache[(i, e)] = p
                        term = term * p
                else:
                    rest[i] = e
            out = out + term * self.ring.monomial(tuple(rest))
        return out

    def permute_vars(self, perm: Mapping[str, str]) -> "Poly":
        """Rename variables by a bijection name -> name (exponent shuffle only)."""
        idx = {self.ring.index(a): self.ring.index(b) for a, b in perm.items()}
        out: dict[Expo, Fraction] = {}
        for expo, coeff in self.terms.items():
            new = list(expo)
            for i, j in idx.items():
                new[j] = expo[i]
            for i in idx:
                if i not in idx.values():
                    new[i] = 0
            # bijectivity: positions in the permutation swap among themselves
            e = tuple(new)
            out[e] = out.get(e, _ZERO) + coeff
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    def eval(self, values: Mapping[str, object], cast: Callable | None = None):
        """Evaluate fully; ``values`` must cover every variable that occurs.

        Works for exact (Fraction) and numeric (mpmath) value types alike;
        ``cast`` converts each rational coefficient first when given.
        """
        vals = [values.get(name) for name in self.ring.names]
        total = None
        for expo, coeff in self.terms.items():
            term = cast(coeff) if cast is not None else coeff
            for i, e in enumerate(expo):
                if e:
                    if vals[i] is None:
                        raise KeyError(f"no value for {self.ring.names[i]}")
                    term = term * vals[i] ** e
            total = term if total is None else total + term
        if total is None:
            return cast(_ZERO) if cast is not None else _ZERO
        return total

    def derivative(self, name: str) -> "Poly":
        i = self.ring.index(name)
        out: dict[Expo, Fraction] = {}
        for expo, coeff in self.terms.items():
            e = expo[i]
            if not e:
                continue
            new = list(expo)
            new[i] = e - 1
            out[tuple(new)] = coeff * e
        return Poly(self.ring, out)

    # -- division -----------------------------------------------------------

    def div_exact(self, divisor: "Poly") -> "Poly":
        """Exact division; raises ValueError if the remainder is nonzero.

        Single-divisor reduction under the graded-lex order, with a fast
        synthetic path for affine-linear divisors (the only divisors the
        I-function machinery ever produces).
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if divisor.total_degree() == 1:
            return self._div_linear(divisor)
        lead_e, lead_c = divisor.leading()
        quot: dict[Expo, Fraction] = {}
        rem = dict(self.terms)
        while rem:
            expo = max(rem, key=_lead_key)
            coeff = rem[expo]
            diff = tuple(a - b for a, b in zip(expo, lead_e))
            if any(d < 0 for d in diff):
                raise ValueError("not exactly divisible")
            q = coeff / lead_c
            quot[diff] = quot.get(diff, _ZERO) + q
            for e, c in divisor.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, e))
                s = rem.get(tgt, _ZERO) - q * c
                if s:
                    rem[tgt] = s
                else:
                    rem.pop(tgt, None)
        return Poly(self.ring, {e: c for e, c in quot.items() if c})

    def _div_linear(self, divisor: "Poly") -> "Poly":
        """Synthetic division by c*v + g with g free of the variable v."""
        lead_e, lead_c = divisor.leading()
        v = lead_e.index(1)
        g_terms = {e: c for e, c in divisor.terms.items() if e != lead_e}
        # bucket the dividend by v-degree, with the v slot zeroed out
        buckets: dict[int, dict[Expo, Fraction]] = {}
        for expo, c in self.terms.items():
            d = expo[v]
            if d:
                e0 = list(expo)
                e0[v] = 0
                e0 = tuple(e0)
            else:
                e0 = expo
            buckets.setdefault(d, {})[e0] = c
        quot: dict[Expo, Fraction] = {}
        for d in range(max(buckets), 0, -1):
            pd = buckets.pop(d, None)
            if not pd:
                continue
            lower = buckets.setdefault(d - 1, {})
            for e, c in pd.items():
                q = c / lead_c
                qe = list(e)
                qe[v] = d - 1
                qe = tuple(qe)
                quot[qe] = quot.get(qe, _ZERO) + q
                for eg, cg in g_terms.items():
                    tgt = tuple(a + b for a, b in zip(e, eg))
                    s = lower.get(tgt, _ZERO) - q * cg
                    if s:
                        lower[tgt] = s
                    else:
                        lower.pop(tgt, None)
        rem = buckets.get(0, {})
        if any(rem.values()):
            raise ValueError("not exactly divisible")
        return Poly(self.ring, {e: c for e, c in quot.items() if c})

    def divisible_by(self, divisor: "Poly") -> bool:
        try:
            self.div_exact(divisor)
            return True
        except ValueError:
            return False

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for expo in sorted(self.terms, key=_lead_key, reverse=True):
            c = self.terms[expo]
            mono = "*".join(
                f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                for i, e in enumerate(expo)
                if e
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits).replace("+ -", "- ")


class RatFn:
    """Rational function num/den with a content-normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _normalized: bool = False):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            den_prim, scale = den.primitive()
            num = num.scale(1 / scale)
            den = den_prim
        self.num = num
        self.den = den

    @classmethod
    def from_const(cls, ring: PolyRing, value) -> "RatFn":
        return cls(ring.const(value), ring.one(), _normalized=True)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = _coerce_ratfn(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        raise TypeError("RatFn is unhashable (equality is by cross-multiplication)")

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den, _normalized=True)

    def __add__(self, other) -> "RatFn":
        other = _coerce_ratfn(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den, _normalized=True)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFn":
        other = _coerce_ratfn(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFn":
        return (-self) + other

    def __mul__(self, other) -> "RatFn":
        other = _coerce_ratfn(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        # cheap cross-cancellation for the common factored cases
        if self.num == other.den and self.num:
            return RatFn(other.num, self.den)
        if other.num == self.den and other.num:
            return RatFn(self.num, other.den)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        other = _coerce_ratfn(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFn":
        return self.inverse() * other

    def inverse(self) -> "RatFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverting the zero rational function")
        return RatFn(self.den, self.num)

    def reduced(self) -> "RatFn":
        """Cancel the denominator when the numerator is exactly divisible."""
        if self.den.is_constant():
            return self
        try:
            q = self.num.div_exact(self.den)
        except ValueError:
            return self
        return RatFn(q, self.ring.one(), _normalized=True)

    def eval(self, values: Mapping[str, object], cast: Callable | None = None):
        d = self.den.eval(values, cast)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.eval(values, cast) / d

    def as_fraction(self) -> Fraction:
        """Exact value when both parts are constants."""
        if not (self.num.is_constant() and self.den.is_constant()):
            raise ValueError("not a constant rational function")
        return self.num.constant_term() / self.den.constant_term()

    def __repr__(self) -> str:
        if self.den == self.den.ring.one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _coerce_ratfn(value, ring: PolyRing):
    if isinstance(value, RatFn):
        if value.ring != ring:
            raise ValueError("rational functions from different rings")
        return value
    if isinstance(value, Poly):
        if value.ring != ring:
            raise ValueError("polynomial from a different ring")
        return RatFn(value, ring.one(), _normalized=True)
    if isinstance(value, (int, Fraction)):
        return RatFn.from_const(ring, value)
    return NotImplemented
