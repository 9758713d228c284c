"""Recurrence relations with non-negative integer coefficients.

A relation ``a_{n+1} = c_1 a_n + ... + c_L a_{n+1-L}`` is a PLRR when
``c_1 > 0`` and an s-deep ZLRR when its first s coefficients vanish.
Sequences are indexed from 1: the initial window is ``a_1, ..., a_L``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .errors import (
    DegenerateRecurrence,
    EmptyRecurrence,
    InvalidInput,
    NegativeCoefficient,
    TrailingZero,
    WrongInitLength,
)
from .poly import Polynomial, to_fraction


def _to_int(value) -> int:
    if isinstance(value, bool):
        raise InvalidInput(f"not an integer coefficient: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError as exc:
            raise InvalidInput(f"not an integer coefficient: {value!r}") from exc
    raise InvalidInput(f"not an integer coefficient: {value!r}")


def support_gcd(coeffs: Sequence[int]) -> int:
    support = [i for i, c in enumerate(coeffs, start=1) if c]
    return reduce(gcd, support, 0)


@dataclass(frozen=True)
class Recurrence:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(_to_int(c) for c in self.coeffs)
        if not cs:
            raise EmptyRecurrence("a recurrence needs at least one coefficient")
        if any(c < 0 for c in cs):
            raise NegativeCoefficient(f"negative coefficient in {list(cs)}")
        if cs[-1] == 0:
            raise TrailingZero(f"last coefficient c_L must be positive: {list(cs)}")
        g = support_gcd(cs)
        if g != 1:
            raise DegenerateRecurrence(g, cs)
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def depth(self) -> int:
        s = 0
        while self.coeffs[s] == 0:
            s += 1
        return s

    @property
    def is_plrr(self) -> bool:
        return self.depth == 0

    @property
    def kind(self) -> str:
        return "PLRR" if self.is_plrr else "ZLRR"

    def describe(self) -> str:
        if self.is_plrr:
            return f"PLRR (0-deep), order L = {self.order}"
        return f"{self.depth}-deep ZLRR, order L = {self.order}"

    def relation(self, name: str = "H") -> str:
        """Render as e.g. ``H_{n+1}=H_n+4H_{n-16}``."""
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            sub = "n" if i == 1 else f"{{n-{i - 1}}}"
            terms.append(("" if c == 1 else str(c)) + f"{name}_{sub}")
        return f"{name}_{{n+1}}=" + "+".join(terms)


def build_recurrence(coeffs: Sequence) -> Recurrence:
    return Recurrence(tuple(coeffs))


def characteristic_polynomial(rec: Recurrence) -> Polynomial:
    """``x^L - c_1 x^{L-1} - ... - c_L``."""
    return Polynomial.from_descending([1] + [-c for c in rec.coeffs])


def recurrence_from_polynomial(p: Polynomial) -> Recurrence:
    """Read c_i = -[x^{L-i}] p off a monic integer polynomial.

    Factors of x are dropped first; they only prepend zeros to the sequence
    and carry no roots shared with a characteristic polynomial.
    """
    if not p.is_monic() or not p.is_integral():
        raise InvalidInput(f"not a monic integer polynomial: {p}")
    cs = p.coeffs
    lo = 0
    while cs[lo] == 0:
        lo += 1
    desc = list(reversed(cs[lo:]))
    return Recurrence(tuple(-c for c in desc[1:]))


@dataclass(frozen=True)
class SequenceWindow:
    start_index: int
    terms: tuple

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def term(self, n: int):
        """Term with 1-based index ``n``."""
        return self.terms[n - self.start_index]


def _normalize_init(init: Sequence):
    vals = [to_fraction(a) for a in init]
    if all(v.denominator == 1 for v in vals):
        return [v.numerator for v in vals]
    return vals


def iterate_terms(rec: Recurrence, init: Sequence, n: int) -> SequenceWindow:
    """The first ``n`` terms of the sequence starting from ``init``."""
    L = rec.order
    if len(init) != L:
        raise WrongInitLength(f"expected {L} initial values, got {len(init)}")
    terms = _normalize_init(init)
    cs = rec.coeffs
    nz = [(i, c) for i, c in enumerate(cs, start=1) if c]
    while len(terms) < n:
        terms.append(sum(c * terms[-i] for i, c in nz))
    return SequenceWindow(1, tuple(terms[:n]))
