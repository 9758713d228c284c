"""Principal-root isolation, exact sign decisions at the principal root, and
numeric root sets.

The exact path never touches floating point: the principal root is held as a
rational isolating interval and refined by bisection.  Numeric roots come
from mpmath at a caller-chosen precision and live in a private mpmath
context so nothing depends on the global ``mp.dps``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .errors import IndexOutOfRange, NotCharacteristic, PrecisionUnreachable
from .poly import (
    Interval,
    Polynomial,
    eval_interval,
    eval_poly,
    gcd,
    squarefree_decomposition,
    sturm_root_count,
    to_fraction,
)

DEFAULT_DIGITS = 30


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class RootEnclosure:
    """Rational interval holding the unique positive root of ``poly``.

    Either ``poly(lo) < 0 < poly(hi)`` or ``lo == hi`` is the root itself.
    """

    poly: Polynomial
    interval: Interval

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    @property
    def width(self) -> Fraction:
        return self.interval.width

    @property
    def midpoint(self) -> Fraction:
        return self.interval.midpoint

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def bisect(self) -> "RootEnclosure":
        if self.is_exact:
            return self
        mid = self.midpoint
        v = eval_poly(self.poly, mid)
        if v == 0:
            return RootEnclosure(self.poly, Interval(mid, mid))
        if v < 0:
            return RootEnclosure(self.poly, Interval(mid, self.hi))
        return RootEnclosure(self.poly, Interval(self.lo, mid))

    def refine(self, width) -> "RootEnclosure":
        width = to_fraction(width)
        enc = self
        while enc.width > width:
            enc = enc.bisect()
        return enc

    def __float__(self):
        return float(self.midpoint)


@lru_cache(maxsize=1024)
def _isolate(P: Polynomial) -> RootEnclosure:
    if P.is_zero or P.degree < 1 or not P.is_monic():
        raise NotCharacteristic(f"not a monic polynomial of positive degree: {P}")
    bound = 1 + max(abs(c) for c in P.coeffs[:-1])
    lo, hi = Fraction(0), Fraction(bound)
    if not (eval_poly(P, lo) < 0 < eval_poly(P, hi)):
        raise NotCharacteristic(f"no sign-change bracket on (0, {bound}] for {P}")
    if sturm_root_count(P, Interval(lo, hi)) != 1:
        raise NotCharacteristic(f"{P} has more than one positive root")
    return RootEnclosure(P, Interval(lo, hi))


@lru_cache(maxsize=4096)
def _principal_root_cached(P: Polynomial, width: Fraction) -> RootEnclosure:
    return _isolate(P).refine(width)


def principal_root(P: Polynomial, width=Fraction(1, 10**6)) -> RootEnclosure:
    """Isolating enclosure of the unique positive root, no wider than ``width``."""
    return _principal_root_cached(P, to_fraction(width))


def sign_at_principal_root(Q: Polynomial, P: Polynomial,
                           enclosure: RootEnclosure | None = None) -> int:
    """Exact sign of ``Q(r)`` where r is the principal root of ``P``.

    Interval evaluation settles the nonzero case; a vanishing ``Q(r)`` is
    detected through ``gcd(Q, P)`` having r as a root, since refinement alone
    cannot terminate there.
    """
    if Q.is_zero:
        return 0
    enc = enclosure if enclosure is not None else principal_root(P, Fraction(1, 2**16))
    if enc.is_exact:
        return _sgn(eval_poly(Q, enc.lo))
    val = eval_interval(Q, enc.interval)
    if not val.contains_zero():
        return _sgn(val.lo)
    g = gcd(Q, P)
    if g.degree > 0 and sturm_root_count(g, enc.interval) == 1:
        return 0
    while True:
        enc = enc.bisect()
        if enc.is_exact:
            return _sgn(eval_poly(Q, enc.lo))
        val = eval_interval(Q, enc.interval)
        if not val.contains_zero():
            return _sgn(val.lo)


# numeric roots -------------------------------------------------------------

def make_context(digits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


@dataclass(frozen=True)
class NumericRoot:
    value: object  # mpc in the owning set's context
    multiplicity: int
    error: object  # mpf error estimate


@dataclass(frozen=True)
class NumericRootSet:
    roots: tuple[NumericRoot, ...]
    precision: int
    squarefree: bool
    ctx: object

    @property
    def values(self) -> list:
        return [r.value for r in self.roots]

    @property
    def principal(self):
        return self.roots[0].value

    def __len__(self):
        return len(self.roots)


def _to_ctx(ctx, c: Fraction):
    return ctx.mpf(c.numerator) / c.denominator


def all_roots_numeric(P: Polynomial, digits: int = DEFAULT_DIGITS,
                      maxsteps: int = 400) -> NumericRootSet:
    """All complex roots of ``P`` with multiplicities.

    Multiplicities come from an exact squarefree decomposition; each factor is
    then solved with Durand-Kerner iteration at ``digits`` plus guard digits.
    Roots are sorted by decreasing modulus, then by decreasing real part.
    """
    if P.is_zero or P.degree < 1:
        raise NotCharacteristic(f"need degree >= 1, got {P}")
    guard = 15
    ctx = make_context(digits + guard)
    tol = ctx.mpf(10) ** (-digits)
    factors = squarefree_decomposition(P)
    found: list[NumericRoot] = []
    for f, mult in factors:
        coeffs = [_to_ctx(ctx, c) for c in f.descending()]
        if f.degree == 1:
            vals, err = [-coeffs[1] / coeffs[0]], ctx.mpf(0)
        else:
            steps = maxsteps
            for _ in range(4):
                try:
                    vals, err = ctx.polyroots(coeffs, maxsteps=steps, extraprec=2 * ctx.prec,
                                              error=True)
                except ctx.NoConvergence:
                    err = None
                if err is not None and err <= tol:
                    break
                steps *= 4
            else:
                raise PrecisionUnreachable(f"roots of {f} not resolved to {digits} digits")
        found.extend(NumericRoot(ctx.mpc(v), mult, ctx.mpf(err)) for v in vals)
    found.sort(key=lambda r: (-abs(r.value), -r.value.real, -r.value.imag))
    return NumericRootSet(tuple(found), digits, len(factors) == 1 and factors[0][1] == 1, ctx)


def elementary_symmetric(values: Sequence, n: int):
    """Sum of all n-fold products of ``values``; S_0 = 1."""
    k = len(values)
    if not 0 <= n <= k:
        raise IndexOutOfRange(f"S_{n} undefined for {k} values")
    e = [1] + [0] * n
    for v in values:
        for j in range(n, 0, -1):
            e[j] = e[j] + v * e[j - 1]
    return e[n]
