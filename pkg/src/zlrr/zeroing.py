"""The Zeroing Algorithm and its prefix-constrained (modified) variant.

With ``P(x) = x^k - c_1 x^{k-1} - ... - c_k`` and a start polynomial ``Q_0`` of
degree below k, each step computes ``Q_t = x Q_{t-1} - q(1, t-1) P`` where
``q(n, t)`` is the coefficient of ``x^{k-n}`` in ``Q_t``.  The run stops at the
first ``Q_t`` without positive coefficients, which happens exactly when
``Q_0(r) < 0``; that sign is decided up front so no run loops forever.

Internally ``Q_t`` is a list ``[q(1,t), ..., q(k,t)]`` (highest power first),
which turns one step into k multiply-adds on Python ints or Fractions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    AllZeroBeta,
    BudgetExhausted,
    GammaNotPositiveAtRoot,
    InvalidInput,
    NTooLarge,
    NotCharacteristic,
)
from .poly import Polynomial, divide_exact, to_fraction
from .recurrence import Recurrence, characteristic_polynomial, recurrence_from_polynomial
from .roots import RootEnclosure, sign_at_principal_root

DEFAULT_BUDGET = 10**6


class Termination(enum.Enum):
    TERMINATED = "terminated"
    WONT_TERMINATE = "wont_terminate"
    BUDGET = "budget"


def _compact(values):
    """Use plain ints when every value is integral; Fractions otherwise."""
    fr = [to_fraction(v) for v in values]
    if all(v.denominator == 1 for v in fr):
        return [v.numerator for v in fr]
    return fr


def _recurrence_coeffs(P: Polynomial) -> list:
    """c_1..c_k from a monic P (no sign restriction)."""
    if P.is_zero or P.degree < 1 or not P.is_monic():
        raise NotCharacteristic(f"expected a monic polynomial of positive degree, got {P}")
    return _compact([-c for c in P.descending()[1:]])


def _to_poly(q: Sequence) -> Polynomial:
    return Polynomial.from_descending(q)


def _step(q: list, c: list) -> list:
    q1 = q[0]
    k = len(c)
    return [q[i + 1] + c[i] * q1 for i in range(k - 1)] + [c[k - 1] * q1]


def _has_positive(q: Sequence) -> bool:
    return any(v > 0 for v in q)


@dataclass(frozen=True)
class ZeroingInput:
    P: Polynomial
    beta: tuple

    def __post_init__(self):
        k = self.P.degree
        if k is None or k < 1:
            raise InvalidInput("P must have positive degree")
        beta = tuple(to_fraction(b) for b in self.beta)
        if len(beta) != k:
            raise InvalidInput(f"expected {k} beta values, got {len(beta)}")
        if not any(beta):
            raise AllZeroBeta("beta must not be all zero")
        object.__setattr__(self, "beta", beta)

    @property
    def k(self) -> int:
        return self.P.degree

    @property
    def Q0(self) -> Polynomial:
        return Polynomial.from_descending(self.beta)


@dataclass
class ZeroingTrace:
    P: Polynomial
    Q0: Polynomial
    sign_Q0_at_r: int
    termination: Termination
    steps_taken: int
    q1: list = field(default_factory=list)
    steps: list | None = None
    final: Polynomial | None = None
    last_q1_positive: int | None = None

    @property
    def k(self) -> int:
        return self.P.degree

    @property
    def terminated(self) -> bool:
        return self.termination is Termination.TERMINATED

    @property
    def terminated_at(self) -> int | None:
        return self.steps_taken if self.terminated else None

    @property
    def q1_nonpositive_at(self) -> int | None:
        """First step from which q(1, t) stays non-positive (terminated runs only)."""
        if not self.terminated:
            return None
        return 0 if self.last_q1_positive is None else self.last_q1_positive + 1

    @property
    def q_table(self) -> list[list[Fraction]]:
        """Row t is [q(1,t), ..., q(k,t)]."""
        if self.steps is None:
            raise InvalidInput("trace was run without step history")
        k = self.k
        return [[Q.coeff(k - n) for n in range(1, k + 1)] for Q in self.steps]

    def q(self, n: int, t: int) -> Fraction:
        """Coefficient of x^{k-n} in Q_t; needs the stored history."""
        if self.steps is None:
            raise InvalidInput("trace was run without step history")
        return self.steps[t].coeff(self.k - n)


def q1_initial_values(inp: ZeroingInput) -> list:
    """First k terms of q(1, t), read off the inputs without iterating.

    ``q(1, j) = beta_{j+1} + sum_{i=1}^{j} c_i q(1, j-i)``; for a ZLRR the
    i = 1 term vanishes.
    """
    c = _recurrence_coeffs(inp.P)
    beta = _compact(inp.beta)
    out = []
    for j in range(inp.k):
        out.append(beta[j] + sum(c[i - 1] * out[j - i] for i in range(1, j + 1)))
    return out


def run_zeroing(inp: ZeroingInput, budget: int = DEFAULT_BUDGET, *, force: bool = False,
                keep_steps: bool = True, enclosure: RootEnclosure | None = None) -> ZeroingTrace:
    """Run the unmodified algorithm from ``Q_0``.

    The sign of ``Q_0(r)`` is decided first.  When it is not negative the run
    stops straight away with ``WONT_TERMINATE`` unless ``force`` is set, in
    which case ``budget`` steps are traced and ``BudgetExhausted`` is raised
    with the partial trace attached.  A negative sign always runs to
    termination, or raises ``BudgetExhausted`` past ``budget`` steps.
    """
    c = _recurrence_coeffs(inp.P)
    sign = sign_at_principal_root(inp.Q0, inp.P, enclosure)
    q = _compact(inp.beta)
    trace = ZeroingTrace(inp.P, inp.Q0, sign, Termination.WONT_TERMINATE, 0,
                         q1=[q[0]], steps=[inp.Q0] if keep_steps else None)
    if sign >= 0 and not force:
        trace.final = inp.Q0
        return trace

    last_pos = 0 if q[0] > 0 else None
    t = 0
    while _has_positive(q):
        if t >= budget:
            trace.termination = Termination.BUDGET
            trace.steps_taken = t
            trace.final = _to_poly(q)
            trace.last_q1_positive = last_pos
            raise BudgetExhausted(f"no termination within {budget} steps", partial=trace)
        q = _step(q, c)
        t += 1
        trace.q1.append(q[0])
        if q[0] > 0:
            last_pos = t
        if keep_steps:
            trace.steps.append(_to_poly(q))
    # a non-negative sign cannot reach here: the loop only exits on termination
    trace.termination = Termination.TERMINATED
    trace.steps_taken = t
    trace.final = _to_poly(q)
    trace.last_q1_positive = last_pos
    return trace


# modified algorithm ----------------------------------------------------------

@dataclass(frozen=True)
class DerivationRequest:
    P: Polynomial
    gamma: tuple

    def __post_init__(self):
        gamma = tuple(to_fraction(g) for g in self.gamma)
        if not gamma:
            raise InvalidInput("gamma must have at least one entry")
        object.__setattr__(self, "gamma", gamma)

    @property
    def Gamma(self) -> Polynomial:
        return Polynomial.from_descending(self.gamma)


@dataclass(frozen=True)
class DerivationResult:
    P: Polynomial
    gamma: tuple
    p: Polynomial
    quotient: Polynomial
    t0: int
    steps: int
    last_q1_positive: int | None
    derived_recurrence: Recurrence | None

    @property
    def degree(self) -> int:
        return self.p.degree

    @property
    def q1_nonpositive_at(self) -> int:
        """Step (counted within the unmodified phase) from which q(1, .) stays <= 0."""
        return 0 if self.last_q1_positive is None else self.last_q1_positive + 1


def run_modified(req: DerivationRequest, budget: int = DEFAULT_BUDGET) -> DerivationResult:
    """Prefix-constrained run: pin the leading coefficients to gamma, then zero out.

    ``Q_1 = gamma_1 (P - x^k)`` and, for t <= m,
    ``Q_t = x Q_{t-1} - (q(1,t-1) - gamma_t) P - gamma_t x^k``; afterwards the
    plain iteration runs until no coefficient is positive.  The returned
    ``p = x^k Gamma(x) + Q`` is divisible by P, starts with gamma, and has no
    positive coefficient after it.
    """
    P = req.P
    c = _recurrence_coeffs(P)
    gamma = _compact(req.gamma)
    m = len(gamma)
    if sign_at_principal_root(req.Gamma, P) <= 0:
        raise GammaNotPositiveAtRoot(f"Gamma_m(r) <= 0 for gamma={list(req.gamma)}")
    k = P.degree

    # Q_1 = gamma_1 (P - x^k): coefficients -gamma_1 c_i
    q = [-gamma[0] * ci for ci in c]
    for t in range(2, m + 1):
        g = gamma[t - 1]
        q1 = q[0] - g
        # x Q - q1 P - g x^k, with the x^k coefficient cancelling
        q = [q[i + 1] + c[i] * q1 for i in range(k - 1)] + [c[k - 1] * q1]

    t0 = 0
    last_pos = 0 if q[0] > 0 else None
    while _has_positive(q):
        if t0 >= budget:
            raise BudgetExhausted(f"derivation exceeded {budget} steps")
        q = _step(q, c)
        t0 += 1
        if q[0] > 0:
            last_pos = t0

    prefix = list(gamma) + [0] * t0
    p = Polynomial.from_descending(prefix + q)
    quotient = divide_exact(p, P)
    desc = p.descending()
    assert desc[:m] == list(req.gamma), "prefix must equal gamma"
    assert all(v <= 0 for v in desc[m:]), "no positive coefficient after the prefix"

    derived = None
    if gamma[0] == 1 and p.is_integral():
        try:
            derived = recurrence_from_polynomial(p)
        except InvalidInput:
            # e.g. a positive gamma_i gives a negative recurrence coefficient
            derived = None
    return DerivationResult(P, req.gamma, p, quotient, t0, m + t0, last_pos, derived)


def derive_plrr(rec: Recurrence, n: int = 1, budget: int = DEFAULT_BUDGET) -> DerivationResult:
    """Derived PLRR with characteristic polynomial starting ``x^D - n x^{D-1}``.

    Requires ``n < r``; for n = 1 this holds for every ZLRR.
    """
    if n < 1:
        raise InvalidInput("n must be a positive integer")
    P = characteristic_polynomial(rec)
    if sign_at_principal_root(Polynomial([-n, 1]), P) <= 0:
        raise NTooLarge(f"n = {n} is not below the principal root of {P}")
    return run_modified(DerivationRequest(P, (1, -n)), budget)
