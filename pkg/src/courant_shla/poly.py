"""Exact multivariate polynomials over the rationals.

A :class:`Poly` stands in for a smooth function on R^n. Coefficients are kept
as integer numerators over one positive common denominator, reduced so the
gcd of all numerators and the denominator is 1. Equality is therefore
structural.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .kernels import FIELD_BITS, FIELD_MASK, diff_terms, dot_terms, lincomb_terms, mul_terms

Rational = Fraction

_MAX_DEGREE = FIELD_MASK


class DimensionError(ValueError):
    pass


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MAX_DEGREE:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (FIELD_BITS * i)
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (FIELD_BITS * i)) & FIELD_MASK for i in range(nvars))


def _key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & FIELD_MASK
        key >>= FIELD_BITS
    return d


class Poly:
    """Immutable polynomial in x1..xn with rational coefficients."""

    __slots__ = ("nvars", "_num", "_den", "_deg", "_key")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        num: dict[int, int] = {}
        den = 1
        deg = 0
        if terms:
            fracs = {}
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise DimensionError(f"exponent {exps} has wrong length for n={nvars}")
                c = Fraction(c)
                if c:
                    k = _pack(exps)
                    fracs[k] = fracs.get(k, 0) + c
            fracs = {k: c for k, c in fracs.items() if c}
            for c in fracs.values():
                den = den * c.denominator // math.gcd(den, c.denominator)
            num = {k: int(c * den) for k, c in fracs.items()}
            deg = max((sum(_unpack(k, nvars)) for k in num), default=0)
        self._set(nvars, num, den, deg)

    def _set(self, nvars, num, den, deg):
        self.nvars = nvars
        if num:
            g = math.gcd(den, *num.values())
            if g != 1:
                num = {k: c // g for k, c in num.items()}
                den //= g
        else:
            den = 1
            deg = 0
        self._num = num
        self._den = den
        self._deg = deg
        self._key = None

    @classmethod
    def _raw(cls, nvars, num, den, deg) -> "Poly":
        p = cls.__new__(cls)
        p._set(nvars, num, den, deg)
        return p

    # construction ----------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {}, 1, 0)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return cls.zero(nvars)
        return cls._raw(nvars, {0: c.numerator}, c.denominator, 0)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The coordinate x_{i+1} (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for n={nvars}")
        return cls._raw(nvars, {1 << (FIELD_BITS * i): 1}, 1, 1)

    @classmethod
    def monomial(cls, nvars: int, exps: Iterable[int], c=1) -> "Poly":
        return cls(nvars, {tuple(exps): c})

    # inspection ------------------------------------------------------------

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        den = self._den
        return {_unpack(k, self.nvars): Fraction(c, den) for k, c in self._num.items()}

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_constant(self) -> bool:
        return not self._num or (len(self._num) == 1 and 0 in self._num)

    def constant_value(self) -> Fraction:
        """Value at the origin; the whole polynomial when it is constant."""
        return Fraction(self._num.get(0, 0), self._den)

    @property
    def degree(self) -> int:
        """Total degree (0 for the zero polynomial)."""
        return max((_key_degree(k) for k in self._num), default=0)

    def __len__(self) -> int:
        return len(self._num)

    def key(self) -> tuple:
        """Canonical hashable form; equal polynomials have equal keys."""
        if self._key is None:
            self._key = (self.nvars, self._den, tuple(sorted(self._num.items())))
        return self._key

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(f"dimension mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    @staticmethod
    def dot(nvars: int, pairs) -> "Poly":
        """sum(a * b for a, b in pairs), accumulated without intermediate Polys."""
        live = []
        den, deg = 1, 0
        for a, b in pairs:
            if not a._num or not b._num:
                continue
            if a.nvars != nvars or b.nvars != nvars:
                raise DimensionError(f"dimension mismatch in dot product (n={nvars})")
            d = a._den * b._den
            if d != den:
                den = den // math.gcd(den, d) * d
            live.append((a, b, d))
            if a._deg + b._deg > deg:
                deg = a._deg + b._deg
        if not live:
            return Poly.zero(nvars)
        if deg > _MAX_DEGREE:
            raise OverflowError("polynomial degree exceeds exponent field")
        num = dot_terms([(a._num, b._num, den // d) for a, b, d in live])
        return Poly._raw(nvars, num, den, deg)

    def _lincomb(self, other: "Poly", sign: int) -> "Poly":
        if not other._num:
            return self
        if not self._num:
            return other if sign == 1 else -other
        d1, d2 = self._den, other._den
        if d1 == d2:
            num = lincomb_terms(self._num, 1, other._num, sign)
            den = d1
        else:
            g = math.gcd(d1, d2)
            den = d1 // g * d2
            num = lincomb_terms(self._num, d2 // g, other._num, sign * (d1 // g))
        return Poly._raw(self.nvars, num, den, max(self._deg, other._deg))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._lincomb(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._lincomb(other, -1)

    def __rsub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return other._lincomb(self, -1)

    def __neg__(self):
        return Poly._raw(self.nvars, {k: -c for k, c in self._num.items()}, self._den, self._deg)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self._num or not other._num:
            return Poly.zero(self.nvars)
        deg = self._deg + other._deg
        if deg > _MAX_DEGREE:
            raise OverflowError("polynomial degree exceeds exponent field")
        a, b = self._num, other._num
        if len(b) == 1 or len(a) == 1:
            if len(a) == 1:
                a, b = b, a
            ((k0, c0),) = b.items()
            if k0:
                num = {k + k0: c * c0 for k, c in a.items()}
            elif c0 == 1:
                num = a
            else:
                num = {k: c * c0 for k, c in a.items()}
        else:
            num = mul_terms(a, b)
        return Poly._raw(self.nvars, num, self._den * other._den, deg)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c or not self._num:
            return Poly.zero(self.nvars)
        if c == 1:
            return self
        p, q = c.numerator, c.denominator
        return Poly._raw(self.nvars, {k: p * v for k, v in self._num.items()}, self._den * q, self._deg)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Poly":
        """Formal partial derivative with respect to x_{i+1} (0-based ``i``)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for n={self.nvars}")
        if not self._num:
            return self
        return Poly._raw(self.nvars, diff_terms(self._num, i), self._den, max(self._deg - 1, 0))

    def gradient(self) -> tuple["Poly", ...]:
        return tuple(self.diff(i) for i in range(self.nvars))

    def evaluate(self, point: Iterable) -> Fraction:
        pt = [Fraction(v) for v in point]
        if len(pt) != self.nvars:
            raise DimensionError("point has wrong dimension")
        total = Fraction(0)
        for exps, c in self.terms().items():
            t = c
            for v, e in zip(pt, exps):
                if e:
                    t *= v**e
            total += t
        return total

    # text ------------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if p.nvars != q.nvars:
        raise DimensionError(f"dimension mismatch: {p.nvars} vs {q.nvars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(p: Poly, i: int) -> Poly:
    """Partial derivative with respect to x_i, 1-based as in the literal syntax."""
    return p.diff(i - 1)


def _mono_order(exps: tuple[int, ...]):
    # graded, then lexicographic with x1 first
    return (-sum(exps), tuple(-e for e in exps))


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in sorted(p.terms().items(), key=lambda t: _mono_order(t[0])):
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\^)|([-+*()]))")


class PolySyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at column {pos + 1}")
        self.pos = pos


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse ``3/2*x1^2*x2 - x3`` style literals (parentheses allowed)."""
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", Fraction(m.group(1)), start))
        elif m.group(2):
            toks.append(("var", int(m.group(2)), start))
        else:
            toks.append((m.group(3) or m.group(4), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    i = 0

    def peek():
        return toks[i][0]

    def take(kind=None):
        nonlocal i
        t = toks[i]
        if kind and t[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, found {t[0]!r}", t[2])
        i += 1
        return t

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take()[0] == "-" else 1
        acc = term().scale(sign)
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() == "*":
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            e = take("num")[1]
            if e.denominator != 1:
                raise PolySyntaxError("exponent must be an integer", toks[i - 1][2])
            base = base ** int(e)
        return base

    def atom():
        kind, val, at = toks[i]
        if kind == "num":
            take()
            return Poly.const(nvars, val)
        if kind == "var":
            take()
            if not 1 <= val <= nvars:
                raise PolySyntaxError(f"variable x{val} out of range for n={nvars}", at)
            return Poly.var(nvars, val - 1)
        if kind == "(":
            take()
            inner = expr()
            take(")")
            return inner
        if kind == "-":
            take()
            return -atom()
        raise PolySyntaxError(f"unexpected {kind!r}", at)

    if not text.strip():
        raise PolySyntaxError("empty polynomial", 0)
    out = expr()
    if peek() != "end":
        raise PolySyntaxError(f"unexpected {peek()!r}", toks[i][2])
    return out


def as_poly(value, nvars: int) -> Poly:
    if isinstance(value, Poly):
        if value.nvars != nvars:
            raise DimensionError(f"dimension mismatch: {value.nvars} vs {nvars}")
        return value
    if isinstance(value, str):
        return parse_poly(value, nvars)
    return Poly.const(nvars, value)
