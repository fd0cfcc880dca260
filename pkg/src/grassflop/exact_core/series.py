"""Truncated multi-graded formal series with Laurent-in-z coefficients.

A ``MultiSeries`` is graded by three variable roles: Novikov variables
(q or q_1..q_k), logarithms log(y_i), and insertion variables x_j.  Each
role has its own total-degree truncation bound and every arithmetic
operation discards degrees beyond the bounds, so arithmetic is closed and
deterministic at fixed truncation.

Coefficients are ``ZLaurent`` values: finite Laurent polynomials in z whose
entries can be any ring-like value (Fraction, Poly, RatFn, or a Chow class)
supporting +, *, and truthiness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ..errors import SpecError

Expo = tuple[int, ...]
Key = tuple[Expo, Expo, Expo]  # (novikov, logy, x) exponents


class ZLaurent:
    """Finite Laurent polynomial in z with generic ring entries."""

    __slots__ = ("minpow", "coeffs")

    def __init__(self, minpow: int, coeffs: Iterable):
        coeffs = list(coeffs)
        # trim zero ends
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            minpow += 1
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.minpow = minpow if coeffs else 0
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls) -> "ZLaurent":
        return cls(0, ())

    @classmethod
    def single(cls, zpow: int, entry) -> "ZLaurent":
        return cls(zpow, (entry,))

    @classmethod
    def from_dict(cls, entries: Mapping[int, object]) -> "ZLaurent":
        live = {p: v for p, v in entries.items() if v}
        if not live:
            return cls.zero()
        lo, hi = min(live), max(live)
        return cls(lo, tuple(live.get(p, _zero_like(next(iter(live.values())))) for p in range(lo, hi + 1)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def maxpow(self) -> int:
        return self.minpow + len(self.coeffs) - 1

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.minpow + i, c

    def __getitem__(self, zpow: int):
        i = zpow - self.minpow
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZLaurent):
            return NotImplemented
        return dict(self.items()) == dict(other.items())

    def __hash__(self):
        raise TypeError("ZLaurent is unhashable")

    def __add__(self, other: "ZLaurent") -> "ZLaurent":
        if not isinstance(other, ZLaurent):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.minpow, other.minpow)
        hi = max(self.maxpow, other.maxpow)
        out = []
        for p in range(lo, hi + 1):
            a, b = self[p], other[p]
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return ZLaurent(lo, out)

    def __neg__(self) -> "ZLaurent":
        return ZLaurent(self.minpow, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ZLaurent") -> "ZLaurent":
        return self + (-other)

    def __mul__(self, other) -> "ZLaurent":
        if isinstance(other, ZLaurent):
            if self.is_zero() or other.is_zero():
                return ZLaurent.zero()
            acc: dict[int, object] = {}
            for p, a in self.items():
                for q, b in other.items():
                    r = p + q
                    v = a * b
                    if r in acc:
                        acc[r] = acc[r] + v
                    else:
                        acc[r] = v
            return ZLaurent.from_dict(acc)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, entry) -> "ZLaurent":
        if not entry or self.is_zero():
            return ZLaurent.zero()
        return ZLaurent(self.minpow, tuple(c * entry for c in self.coeffs))

    def shift(self, zpow: int) -> "ZLaurent":
        if self.is_zero():
            return self
        return ZLaurent(self.minpow + zpow, self.coeffs)

    def map_entries(self, fn: Callable) -> "ZLaurent":
        return ZLaurent(self.minpow, tuple(fn(c) for c in self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"({c})*z^{p}" for p, c in self.items())


def _zero_like(entry):
    return entry * 0 if not isinstance(entry, (int, Fraction)) else Fraction(0)


class VarSpec:
    """Named formal variables with roles and per-role total-degree bounds."""

    __slots__ = ("novikov", "logy", "x", "d_q", "l_logy", "x_x")

    def __init__(self, novikov: Iterable[str], logy: Iterable[str], x: Iterable[str],
                 d_q: int, l_logy: int, x_x: int):
        self.novikov = tuple(novikov)
        self.logy = tuple(logy)
        self.x = tuple(x)
        if min(d_q, l_logy, x_x) < 0:
            raise SpecError("truncation bounds must be nonnegative")
        self.d_q = d_q
        self.l_logy = l_logy
        self.x_x = x_x

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSpec) and (
            self.novikov, self.logy, self.x, self.d_q, self.l_logy, self.x_x
        ) == (other.novikov, other.logy, other.x, other.d_q, other.l_logy, other.x_x)

    def __hash__(self):
        return hash((self.novikov, self.logy, self.x, self.d_q, self.l_logy, self.x_x))

    def zero_key(self) -> Key:
        return ((0,) * len(self.novikov), (0,) * len(self.logy), (0,) * len(self.x))

    def within(self, key: Key) -> bool:
        nov, ly, xx = key
        return sum(nov) <= self.d_q and sum(ly) <= self.l_logy and sum(xx) <= self.x_x

    def logy_index(self, name: str) -> int:
        try:
            return self.logy.index(name)
        except ValueError:
            raise SpecError(f"unknown logy variable {name!r}") from None

    def __repr__(self):
        return (f"VarSpec(novikov={self.novikov}, logy={self.logy}, x={self.x}, "
                f"D_q={self.d_q}, L_logy={self.l_logy}, X_x={self.x_x})")


class MultiSeries:
    """Truncated formal series over (novikov, logy, x) with ZLaurent coefficients."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: VarSpec, terms: Mapping[Key, ZLaurent] | None = None):
        self.spec = spec
        clean: dict[Key, ZLaurent] = {}
        for key, zl in (terms or {}).items():
            if zl and spec.within(key):
                clean[key] = zl
        self.terms = clean

    @classmethod
    def zero(cls, spec: VarSpec) -> "MultiSeries":
        return cls(spec, {})

    @classmethod
    def constant(cls, spec: VarSpec, zl: ZLaurent) -> "MultiSeries":
        return cls(spec, {spec.zero_key(): zl})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        raise TypeError("MultiSeries is unhashable")

    def coefficient(self, key: Key) -> ZLaurent:
        return self.terms.get(key, ZLaurent.zero())

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        out = dict(self.terms)
        for key, zl in other.terms.items():
            cur = out.get(key)
            s = zl if cur is None else cur + zl
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MultiSeries(self.spec, out)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.spec, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def __mul__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        self._check(other)
        spec = self.spec
        acc: dict[Key, ZLaurent] = {}
        for (n1, l1, x1), z1 in self.terms.items():
            for (n2, l2, x2), z2 in other.terms.items():
                key = (
                    tuple(a + b for a, b in zip(n1, n2)),
                    tuple(a + b for a, b in zip(l1, l2)),
                    tuple(a + b for a, b in zip(x1, x2)),
                )
                if not spec.within(key):
                    continue
                prod = z1 * z2
                if key in acc:
                    acc[key] = acc[key] + prod
                else:
                    acc[key] = prod
        return MultiSeries(spec, acc)

    def scale(self, factor) -> "MultiSeries":
        """Multiply by a ZLaurent or a bare ring entry."""
        if isinstance(factor, ZLaurent):
            return MultiSeries(self.spec, {k: v * factor for k, v in self.terms.items()})
        return MultiSeries(self.spec, {k: v.scale(factor) for k, v in self.terms.items()})

    def map_coeffs(self, fn: Callable[[ZLaurent], ZLaurent]) -> "MultiSeries":
        return MultiSeries(self.spec, {k: fn(v) for k, v in self.terms.items()})

    def _check(self, other: "MultiSeries") -> None:
        if self.spec != other.spec:
            raise SpecError("mismatched variable specs or truncations")

    def __repr__(self) -> str:
        return f"MultiSeries({len(self.terms)} terms, {self.spec!r})"


def series_arith(a: MultiSeries, b, op: str) -> MultiSeries:
    """Spec-level arithmetic dispatcher: op in {'add', 'mul', 'scale'}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise SpecError(f"unknown series operation {op!r}")


def exp_linear(L: MultiSeries, one) -> MultiSeries:
    """Truncated exponential of L = z^{-1} * (class-linear form in logy variables).

    The input series may only carry logy-degree-1 keys whose coefficients sit
    in the single z-power -1; anything else is a contract violation.  The term
    of logy-degree m in the output carries z^{-m}.  ``one`` is the
    multiplicative identity of the coefficient ring.
    """
    spec = L.spec
    lin: dict[int, object] = {}
    for (nov, ly, xx), zl in L.terms.items():
        if any(nov) or any(xx) or sum(ly) != 1:
            raise SpecError("exp_linear input must be linear in logy variables only")
        if zl.minpow != -1 or zl.maxpow != -1:
            raise SpecError("exp_linear input must be z^{-1} times a class")
        lin[ly.index(1)] = zl[-1]
    out: dict[Key, ZLaurent] = {spec.zero_key(): ZLaurent.single(0, one)}
    # build degree m terms as products of degree-1 pieces divided by m!
    frontier = dict(out)
    for m in range(1, spec.l_logy + 1):
        new_frontier: dict[Key, ZLaurent] = {}
        for (nov, ly, xx), zl in frontier.items():
            for i, coeff in lin.items():
                nly = list(ly)
                nly[i] += 1
                key = (nov, tuple(nly), xx)
                if not spec.within(key):
                    continue
                piece = zl * ZLaurent.single(-1, coeff)
                if key in new_frontier:
                    new_frontier[key] = new_frontier[key] + piece
                else:
                    new_frontier[key] = piece
        frontier = {}
        inv_m = Fraction(1, m)
        for key, zl in new_frontier.items():
            scaled = zl.map_entries(lambda c: c * inv_m)
            frontier[key] = scaled
            if scaled:
                out[key] = scaled
    return MultiSeries(spec, out)


def series_derivative(s: MultiSeries, name: str) -> MultiSeries:
    """Formal partial derivative with respect to a logy variable."""
    i = s.spec.logy_index(name)
    acc: dict[Key, ZLaurent] = {}
    for (nov, ly, xx), zl in s.terms.items():
        e = ly[i]
        if not e:
            continue
        nly = list(ly)
        nly[i] = e - 1
        key = (nov, tuple(nly), xx)
        scaled = zl.map_entries(lambda c: c * Fraction(e))
        if key in acc:
            acc[key] = acc[key] + scaled
        else:
            acc[key] = scaled
    return MultiSeries(s.spec, acc)
