"""Shared generators for the test suite.  All randomness is seeded."""
from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from hypothesis import strategies as st

from zlrr.errors import InvalidInput
from zlrr.poly import Polynomial, divmod_poly, is_squarefree, parse_poly
from zlrr.recurrence import Recurrence, characteristic_polynomial

SEED = 42
DATA = Path(__file__).parent / "data"


def appendix_b():
    with open(DATA / "appendix_b.json") as fh:
        items = json.load(fh)
    for it in items:
        yield it["item"], Polynomial.from_descending(it["characteristic"]), \
            Polynomial.from_descending(it["derived"])


def random_zlrr_coeffs(rng: random.Random, degree: int, bound: int = 9) -> Recurrence:
    while True:
        cs = [0] + [rng.randint(0, bound) for _ in range(degree - 2)] + [rng.randint(1, bound)]
        try:
            return Recurrence(tuple(cs))
        except InvalidInput:
            continue


def random_plrr(rng: random.Random, degree: int, bound: int = 9) -> Recurrence:
    while True:
        cs = [rng.randint(1, bound)] + [rng.randint(0, bound) for _ in range(degree - 2)] \
            + ([rng.randint(1, bound)] if degree > 1 else [])
        try:
            return Recurrence(tuple(cs[:degree]))
        except InvalidInput:
            continue


def random_rational(rng: random.Random, bound: int = 10) -> Fraction:
    """Integer most of the time, otherwise p/q with q <= 4, always within [-bound, bound]."""
    if rng.random() < 0.7:
        return Fraction(rng.randint(-bound, bound))
    q = rng.randint(2, 4)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def random_beta(rng: random.Random, k: int, bound: int = 10, rational: bool = False) -> tuple:
    while True:
        beta = tuple(random_rational(rng, bound) if rational else Fraction(rng.randint(-bound, bound))
                     for _ in range(k))
        if any(beta):
            return beta


_SMALL_FACTORS = ("x+1", "x^2+x+1", "x^2+1", "x^2-x+1")


@lru_cache(maxsize=None)
def reducible_zlrrs() -> tuple:
    """ZLRRs (coefficients <= 3, degree 3..6) with a cyclotomic factor of degree <= 2.

    Each entry is (P, A) where A = P / factor still carries the principal root.
    """
    facs = [parse_poly(s) for s in _SMALL_FACTORS]
    out = []
    for L in range(3, 7):
        for cs in itertools.product(range(4), repeat=L - 1):
            try:
                rec = Recurrence((0,) + cs)
            except InvalidInput:
                continue
            P = characteristic_polynomial(rec)
            for f in facs:
                A, rem = divmod_poly(P, f)
                if rem.is_zero:
                    out.append((P, A))
                    break
    return tuple(out)


def zero_case(rng: random.Random) -> tuple[Polynomial, tuple]:
    """(P, beta) with Q0(r) = 0 exactly: Q0 is a multiple of a factor of P carrying r."""
    P, A = rng.choice(reducible_zlrrs())
    room = P.degree - A.degree  # degree of the multiplier is below this
    while True:
        mult = Polynomial([rng.randint(-3, 3) for _ in range(room)])
        if not mult.is_zero:
            break
    Q0 = A * mult
    beta = tuple(Q0.coeff(i) for i in range(P.degree - 1, -1, -1))
    return P, beta


def squarefree_characteristic(rng: random.Random, max_degree: int = 6) -> Polynomial:
    """Characteristic polynomial of a random PLRR or ZLRR of degree 1..max_degree, squarefree."""
    while True:
        d = rng.randint(1, max_degree)
        if d >= 3 and rng.random() < 0.6:
            rec = random_zlrr_coeffs(rng, d)
        else:
            rec = random_plrr(rng, d)
        P = characteristic_polynomial(rec)
        if is_squarefree(P):
            return P


# hypothesis strategies ---------------------------------------------------------

small_ints = st.integers(min_value=-20, max_value=20)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def polynomials(draw, max_degree: int = 6, elements=rationals, nonzero: bool = False):
    coeffs = draw(st.lists(elements, min_size=0 if not nonzero else 1, max_size=max_degree + 1))
    p = Polynomial(coeffs)
    if nonzero and p.is_zero:
        p = Polynomial([1])
    return p


@st.composite
def zlrrs(draw, min_degree: int = 3, max_degree: int = 6, bound: int = 9):
    L = draw(st.integers(min_degree, max_degree))
    mid = draw(st.lists(st.integers(0, bound), min_size=L - 2, max_size=L - 2))
    last = draw(st.integers(1, bound))
    cs = (0, *mid, last)
    try:
        return Recurrence(cs)
    except InvalidInput:
        # force support gcd 1 by adding a coefficient at index L - 1 (coprime to L)
        cs = (0, *mid[:-1], max(mid[-1], 1), last)
        return Recurrence(cs)


@st.composite
def recurrences(draw, max_degree: int = 6, bound: int = 9):
    L = draw(st.integers(1, max_degree))
    cs = draw(st.lists(st.integers(0, bound), min_size=L, max_size=L))
    cs[-1] = max(cs[-1], 1)
    try:
        return Recurrence(tuple(cs))
    except InvalidInput:
        cs[0] = max(cs[0], 1)  # index 1 in the support makes the gcd 1
        return Recurrence(tuple(cs))
