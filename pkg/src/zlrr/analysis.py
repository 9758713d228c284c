"""Eventual behaviour of recurrence sequences.

``predict_divergence`` decides, exactly, the sign of the coefficient on r^n
in the Binet expansion of a sequence from its initial values.  The Binet
helpers work numerically on squarefree characteristic polynomials.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AllZeroInit,
    HypothesisViolated,
    ImaginaryResidue,
    NotSquarefree,
    WrongInitLength,
)
from .poly import Polynomial, eval_interval, gcd, is_squarefree, to_fraction
from .recurrence import Recurrence, characteristic_polynomial
from .roots import (
    DEFAULT_DIGITS,
    NumericRootSet,
    all_roots_numeric,
    principal_root,
    sign_at_principal_root,
)
from .zeroing import ZeroingInput

IMAG_TOLERANCE = 1e-6


class Divergence(enum.Enum):
    POSITIVE_INFINITY = "+infinity"
    NEGATIVE_INFINITY = "-infinity"
    ZERO_COEFFICIENT = "zero"

    @classmethod
    def from_sign(cls, sign: int) -> "Divergence":
        return {1: cls.POSITIVE_INFINITY, -1: cls.NEGATIVE_INFINITY, 0: cls.ZERO_COEFFICIENT}[sign]

    def describe(self) -> str:
        if self is Divergence.ZERO_COEFFICIENT:
            return "principal coefficient is zero: oscillates in sign with magnitude o(r^n)"
        return f"diverges to {self.value}"


@dataclass(frozen=True)
class DivergenceVerdict:
    sign: Divergence
    Q: Polynomial
    d: tuple  # d_2..d_k
    residual: Polynomial | None = None  # gcd(Q, P) when Q(r) = 0

    def d_at(self, i: int) -> Fraction:
        return self.d[i - 2]


def divergence_polynomial(rec: Recurrence, init: Sequence) -> tuple[Polynomial, tuple]:
    """The test polynomial ``Q`` and corrections ``d_2..d_k`` for ``init``.

    ``d_i = sum_{j<i} a_j c_{i-j}`` and
    ``Q(x) = a_1 x^{k-1} + sum_{i>=2} (a_i - d_i) x^{k-i}``.
    """
    k = rec.order
    a = [to_fraction(v) for v in init]
    if len(a) != k:
        raise WrongInitLength(f"expected {k} initial values, got {len(a)}")
    c = rec.coeffs
    d = tuple(sum((a[j - 1] * c[i - j - 1] for j in range(1, i)), Fraction(0))
              for i in range(2, k + 1))
    desc = [a[0]] + [a[i - 1] - d[i - 2] for i in range(2, k + 1)]
    return Polynomial.from_descending(desc), d


def predict_divergence(rec: Recurrence, init: Sequence) -> DivergenceVerdict:
    Q, d = divergence_polynomial(rec, init)
    if Q.is_zero:
        # Q is an invertible linear image of init
        raise AllZeroInit("initial values must not all be zero")
    P = characteristic_polynomial(rec)
    sign = sign_at_principal_root(Q, P)
    residual = gcd(Q, P) if sign == 0 else None
    return DivergenceVerdict(Divergence.from_sign(sign), Q, d, residual)


# Binet coefficients ----------------------------------------------------------

@dataclass(frozen=True)
class BinetSquarefree:
    """``a_n = sum_i c_i r_i^n`` for the impulse start a_0..a_{k-2} = 0, a_{k-1} = 1."""

    P: Polynomial
    roots: NumericRootSet
    coeffs: tuple

    @property
    def ctx(self):
        return self.roots.ctx

    def term(self, n: int):
        """Complex value of the expansion at index n (no residue check)."""
        ctx = self.ctx
        return ctx.fsum(c * r ** n for c, r in zip(self.coeffs, self.roots.values))


def binet_squarefree(P: Polynomial, digits: int = DEFAULT_DIGITS) -> BinetSquarefree:
    if not is_squarefree(P):
        raise NotSquarefree(f"{P} has a repeated root")
    roots = all_roots_numeric(P, digits)
    ctx = roots.ctx
    dP = [ctx.mpf(c.numerator) / c.denominator for c in P.derivative().descending()]
    coeffs = tuple(1 / ctx.polyval(dP, r) for r in roots.values)
    return BinetSquarefree(P, roots, coeffs)


def reconstruct_terms(b: BinetSquarefree, n: int, start: int = 0) -> list:
    """Real values of the expansion at indices ``start .. start+n-1``.

    The imaginary parts must cancel; a residue above ``IMAG_TOLERANCE`` of the
    term's natural scale means the roots were not resolved finely enough.
    """
    ctx = b.ctx
    out = []
    for idx in range(start, start + n):
        parts = [c * r ** idx for c, r in zip(b.coeffs, b.roots.values)]
        z = ctx.fsum(parts)
        scale = max(ctx.fsum(abs(p) for p in parts), ctx.mpf(1) * 10 ** (-b.roots.precision))
        if abs(z.imag) > IMAG_TOLERANCE * scale:
            raise ImaginaryResidue(f"imaginary residue {ctx.nstr(z.imag, 5)} at n={idx}")
        out.append(z.real)
    return out


# principal coefficient -------------------------------------------------------

@dataclass(frozen=True)
class PrincipalCoefficient:
    a1: object  # mpf
    error: object  # mpf bound from enclosure width and root precision
    numerator_sign: int
    numerator: object
    denominator: object
    denominator_positive: bool
    tied_magnitudes: bool
    digits: int


def principal_coefficient(inp: ZeroingInput, digits: int = DEFAULT_DIGITS) -> PrincipalCoefficient:
    """Coefficient of r^t in the Binet expansion of q(1, t).

    ``a_1 = Q_0(r) / prod_{i>=2} (r - r_i)``: the numerator comes from an
    exact rational enclosure of r and carries the exact sign; the
    denominator uses the numeric roots.
    """
    P = inp.P
    if not is_squarefree(P):
        raise NotSquarefree(f"{P} has a repeated root")
    roots = all_roots_numeric(P, digits)
    ctx = roots.ctx
    enc = principal_root(P, Fraction(1, 10 ** (digits + 5)))
    r1 = ctx.mpf(enc.midpoint.numerator) / enc.midpoint.denominator
    tol = ctx.mpf(10) ** (-(digits // 2))
    if abs(roots.principal - r1) > tol:
        raise HypothesisViolated("numeric principal root disagrees with its enclosure")
    others = roots.values[1:]
    if any(abs(z) >= r1 - tol for z in others):
        raise HypothesisViolated("principal root is not strictly dominant")
    mags = sorted((abs(z) for z in others), reverse=True)
    tied = any(u - v < tol for u, v in zip(mags, mags[1:]))

    num_iv = eval_interval(inp.Q0, enc.interval)
    num = ctx.mpf(num_iv.midpoint.numerator) / num_iv.midpoint.denominator
    num_err = ctx.mpf(num_iv.width.numerator) / num_iv.width.denominator / 2
    den = ctx.fprod(r1 - z for z in others) if others else ctx.mpc(1)
    denominator_positive = abs(den.imag) <= tol * max(abs(den), 1) and den.real > 0
    den_real = den.real
    err_roots = max((r.error for r in roots.roots), default=ctx.mpf(0))
    rel_den = ctx.fsum((err_roots + ctx.mpf(enc.width.numerator) / enc.width.denominator) / abs(r1 - z)
                       for z in others)
    a1 = num / den_real
    error = num_err / abs(den_real) + abs(a1) * rel_den
    return PrincipalCoefficient(
        a1=a1,
        error=error,
        numerator_sign=sign_at_principal_root(inp.Q0, P),
        numerator=num,
        denominator=den_real,
        denominator_positive=bool(denominator_positive),
        tied_magnitudes=bool(tied),
        digits=digits,
    )
