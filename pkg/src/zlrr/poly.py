"""Exact dense univariate polynomials over the rationals.

Coefficients are stored low degree first as a tuple of ``Fraction``; the
zero polynomial is the empty tuple and has degree ``None``.  Interval
evaluation works on rational endpoints, so it is exact rather than
outward-rounded.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import BothZero, EndpointRoot, InvalidInput, NotDivisible, ZeroDivisor

MAX_NUDGES = 64


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings like ``"-3/2"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise InvalidInput(f"not a rational number: {value!r}") from exc
    raise InvalidInput(f"not a rational number: {value!r}")


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", to_fraction(self.lo))
        object.__setattr__(self, "hi", to_fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidInput(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    def shift(self, c: Fraction) -> "Interval":
        return Interval(self.lo + c, self.hi + c)


class Polynomial:
    """Immutable polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # construction helpers
    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "Polynomial":
        """Build from coefficients listed highest power first."""
        return cls(reversed(list(coeffs)))

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    # basic properties
    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic
    @staticmethod
    def _lift(other) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        return divmod_poly(self, self._lift(other))

    def __call__(self, x):
        return eval_poly(self, x)

    def scale(self, c) -> "Polynomial":
        c = to_fraction(c)
        return Polynomial(c * a for a in self.coeffs)

    def shift_up(self, n: int) -> "Polynomial":
        """Multiply by x**n."""
        if self.is_zero:
            return self
        return Polynomial((0,) * n + self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)


def eval_poly(p: Polynomial, x) -> Fraction:
    """Exact Horner evaluation; works for any numeric type supporting + and *."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    if isinstance(acc, int):
        return Fraction(acc)
    return acc


def eval_interval(p: Polynomial, iv: Interval) -> Interval:
    """Enclosure of ``{p(x) : x in iv}`` by interval Horner.

    Inclusion-monotone: a narrower ``iv`` never gives a wider result.
    """
    if p.is_zero:
        return Interval(0, 0)
    acc = Interval(p.leading, p.leading)
    for c in reversed(p.coeffs[:-1]):
        acc = (acc * iv).shift(c)
    return acc


def divmod_poly(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    if b.is_zero:
        raise ZeroDivisor("division by the zero polynomial")
    rem = list(a.coeffs)
    db = b.degree
    if a.is_zero or a.degree < db:
        return Polynomial(), a
    lead = b.leading
    quot = [Fraction(0)] * (a.degree - db + 1)
    for i in range(a.degree - db, -1, -1):
        c = rem[i + db] / lead
        quot[i] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= c * bc
    return Polynomial(quot), Polynomial(rem[:db])


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    q, r = divmod_poly(a, b)
    if not r.is_zero:
        raise NotDivisible(f"{format_poly(b)} does not divide {format_poly(a)} "
                           f"(remainder {format_poly(r)})")
    return q


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, divmod_poly(a, b)[1].monic()
    return a.monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``[(f_i, i)]`` with ``monic(p) = prod f_i**i``, f_i squarefree."""
    if p.is_zero or p.degree == 0:
        return []
    p = p.monic()
    out = []
    dp = p.derivative()
    g = gcd(p, dp)
    w = divide_exact(p, g)
    y = divide_exact(dp, g)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        h = gcd(w, z) if not z.is_zero else w
        if h.degree > 0:
            out.append((h, i))
        w = divide_exact(w, h)
        y = divide_exact(z, h) if not z.is_zero else Polynomial()
        i += 1
    return out


def is_squarefree(p: Polynomial) -> bool:
    return gcd(p, p.derivative()).degree == 0


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        seq.append(-divmod_poly(seq[-2], seq[-1])[1])
    seq.pop()
    return seq


def _sign_changes(seq: Sequence[Polynomial], x: Fraction) -> int:
    signs = [s for s in (_sgn(eval_poly(q, x)) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sturm_root_count(p: Polynomial, iv: Interval, sturm: Sequence[Polynomial] | None = None) -> int:
    """Number of distinct real roots of ``p`` in ``(iv.lo, iv.hi]``.

    An endpoint that is itself a root is moved inward by ``width / 2**i``
    (i = 1, 2, ...), taking the first step that lands off a root and skips
    no other root.  A root sitting exactly at ``hi`` is still counted.
    """
    if p.is_zero:
        raise InvalidInput("root count of the zero polynomial is undefined")
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return 0
    width = hi - lo
    extra = 0
    if eval_poly(p, lo) == 0:
        lo = _nudge(p, lo, width, +1)
    if eval_poly(p, hi) == 0:
        hi = _nudge(p, hi, width, -1)
        extra = 1
    if lo >= hi:
        return extra
    seq = sturm if sturm is not None else sturm_sequence(p)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi) + extra


def _deflate(p: Polynomial, x: Fraction) -> Polynomial:
    lin = Polynomial([-x, 1])
    while eval_poly(p, x) == 0:
        p = divide_exact(p, lin)
    return p


def _nudge(p: Polynomial, x: Fraction, width: Fraction, direction: int) -> Fraction:
    rest = _deflate(p, x)
    seq = sturm_sequence(rest) if rest.degree else None
    for i in range(1, MAX_NUDGES + 1):
        y = x + direction * width / 2**i
        if eval_poly(p, y) == 0:
            continue
        if seq is None:
            return y
        a, b = (x, y) if x < y else (y, x)
        if _sign_changes(seq, a) == _sign_changes(seq, b):
            return y
    raise EndpointRoot(f"could not move endpoint {x} off a root of {format_poly(p)}")


# text form -----------------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c})"


def format_poly(p: Polynomial, var: str = "x") -> str:
    """Compact descending form, e.g. ``x^5-x^4-2x-4``; full decimal integers."""
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else _fmt_coeff(mag) + mono
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    return out + "".join(s + b for s, b in parts[1:])


_TERM = re.compile(
    r"""^(?P<sign>[+-]?)
        (?:\((?P<frac>-?\d+(?:/\d+)?)\)|(?P<num>\d+(?:/\d+)?))?
        (?P<x>x(?:\^(?P<exp>\d+))?)?$""",
    re.VERBOSE,
)


def parse_poly(text: str) -> Polynomial:
    """Inverse of ``format_poly``; also accepts spaces, ``*`` and ``0x^2`` terms."""
    s = text.replace(" ", "").replace("*", "").replace("\\,", "")
    if not s:
        raise InvalidInput("empty polynomial")
    terms = re.findall(r"[+-]?(?:\([^)]*\)|[^+-])+", s)
    if "".join(terms) != s:
        raise InvalidInput(f"cannot parse polynomial {text!r}")
    out: dict[int, Fraction] = {}
    for term in terms:
        m = _TERM.match(term)
        if not m or (m.group("frac") is None and m.group("num") is None and not m.group("x")):
            raise InvalidInput(f"cannot parse term {term!r} in {text!r}")
        c = Fraction(m.group("frac") or m.group("num") or 1)
        if m.group("sign") == "-":
            c = -c
        e = 0 if not m.group("x") else int(m.group("exp") or 1)
        out[e] = out.get(e, Fraction(0)) + c
    n = max(out) + 1
    return Polynomial(out.get(i, 0) for i in range(n))
