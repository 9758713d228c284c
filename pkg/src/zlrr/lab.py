"""Run-time experiments for the Zeroing Algorithm.

``runtime_experiment`` samples random ZLRRs and random start polynomials and
records how long each run takes against ``Q_0(r)``; ``slowdown_experiment``
measures how the conversion to a PLRR slows down as the principal root
approaches 1.  All randomness flows from ``ExperimentConfig.seed``: every
(degree, poly_id) pair gets its own ``random.Random`` keyed on the seed, so
results do not depend on execution order or worker count.
"""
from __future__ import annotations

import csv
import io
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExhausted, InvalidInput
from .poly import Polynomial, eval_interval
from .recurrence import Recurrence, characteristic_polynomial, iterate_terms, support_gcd
from .roots import principal_root, sign_at_principal_root
from .zeroing import DEFAULT_BUDGET, ZeroingInput, derive_plrr, run_zeroing

log = logging.getLogger(__name__)

NO_TERMINATION = -1
BUDGET_EXHAUSTED = -2
Q0_ENCLOSURE_WIDTH = Fraction(1, 10**12)
CSV_HEADER = ("degree", "poly_id", "p_coeffs", "q0_at_r", "steps", "terminated", "q1_nonpos_step")


@dataclass(frozen=True)
class ExperimentConfig:
    degrees: tuple = (3, 4, 5, 6)
    polys_per_degree: int = 10
    samples_per_poly: int = 500
    coeff_bound: int = 9
    beta_bound: int = 10
    seed: int = 42
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if self.polys_per_degree < 0 or self.samples_per_poly < 0:
            raise InvalidInput("counts must be non-negative")
        if self.coeff_bound < 1 or self.beta_bound < 1 or self.budget < 1:
            raise InvalidInput("bounds and budget must be positive")
        if any(d < 3 for d in self.degrees):
            raise InvalidInput("ZLRR degrees start at 3")


@dataclass(frozen=True)
class TrialRecord:
    degree: int
    poly_id: int
    p_coeffs: tuple  # descending coefficients of P as decimal strings
    q0_at_r: float
    steps: int
    terminated: bool
    q1_nonpos_step: int
    sample_id: int = -1
    beta: tuple = field(default=(), compare=False)
    exact_sign: int | None = field(default=None, compare=False)

    def csv_row(self) -> list[str]:
        return [str(self.degree), str(self.poly_id), ";".join(self.p_coeffs),
                repr(self.q0_at_r), str(self.steps), "1" if self.terminated else "0",
                str(self.q1_nonpos_step)]


def random_zlrr(degree: int, coeff_bound: int, rng: random.Random) -> Recurrence:
    """Uniform c_2..c_{L-1} in [0, bound], c_L in [1, bound], c_1 = 0.

    Degenerate draws (gcd of the support > 1) are resampled.  Degree 2 is
    rejected: ``[0, c]`` always has support {2}.
    """
    if degree < 3:
        raise InvalidInput("no non-degenerate ZLRR has degree below 3")
    if coeff_bound < 1:
        raise InvalidInput("coeff_bound must be positive")
    while True:
        cs = [0] + [rng.randint(0, coeff_bound) for _ in range(degree - 2)]
        cs.append(rng.randint(1, coeff_bound))
        if support_gcd(cs) == 1:
            return Recurrence(tuple(cs))


def _poly_rng(seed: int, degree: int, poly_id: int) -> random.Random:
    return random.Random(f"zlrr:{seed}:{degree}:{poly_id}")


def _random_beta(k: int, bound: int, rng: random.Random) -> tuple:
    while True:
        beta = tuple(rng.randint(-bound, bound) for _ in range(k))
        if any(beta):
            return beta


def _run_poly(cfg: ExperimentConfig, degree: int, poly_id: int) -> list[TrialRecord]:
    rng = _poly_rng(cfg.seed, degree, poly_id)
    rec = random_zlrr(degree, cfg.coeff_bound, rng)
    P = characteristic_polynomial(rec)
    enc = principal_root(P, Q0_ENCLOSURE_WIDTH)
    p_coeffs = tuple(str(c.numerator) for c in P.descending())
    out = []
    for sample_id in range(cfg.samples_per_poly):
        beta = _random_beta(degree, cfg.beta_bound, rng)
        inp = ZeroingInput(P, beta)
        try:
            trace = run_zeroing(inp, cfg.budget, keep_steps=False, enclosure=enc)
        except BudgetExhausted as exc:
            trace = exc.partial
        sign = trace.sign_Q0_at_r
        q0 = 0.0 if sign == 0 else float(eval_interval(inp.Q0, enc.interval).midpoint)
        if trace.terminated:
            steps, nonpos = trace.steps_taken, trace.q1_nonpositive_at
        elif sign < 0:
            steps, nonpos = BUDGET_EXHAUSTED, NO_TERMINATION
        else:
            steps, nonpos = NO_TERMINATION, NO_TERMINATION
        out.append(TrialRecord(degree, poly_id, p_coeffs, q0, steps, trace.terminated, nonpos,
                               sample_id, beta, sign))
    return out


def runtime_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    """One record per (degree, poly_id, sample_id), in that order."""
    tasks = [(d, i) for d in cfg.degrees for i in range(cfg.polys_per_degree)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_poly, [cfg] * len(tasks), *zip(*tasks)))
    else:
        chunks = [_run_poly(cfg, d, i) for d, i in tasks]
    return [r for chunk in chunks for r in chunk]


def cross_check(cfg: ExperimentConfig, records: Sequence[TrialRecord], fraction: float = 0.01,
                extra_steps: int = 2000) -> list[TrialRecord]:
    """Re-derive a random subset of records independently; return mismatches.

    Each sampled record gets a fresh exact sign (new enclosure, gcd path) and
    a brute-force run that iterates without looking at the sign.  Runs that
    should not terminate are iterated ``extra_steps`` times.
    """
    rng = random.Random(f"zlrr-check:{cfg.seed}")
    picked = [r for r in records if rng.random() < fraction]
    bad = []
    for r in picked:
        P = Polynomial.from_descending([int(c) for c in r.p_coeffs])
        Q0 = Polynomial.from_descending(r.beta)
        sign = sign_at_principal_root(Q0, P, principal_root(P, Fraction(1, 4)))
        c = [-int(v) for v in r.p_coeffs[1:]]
        q = list(r.beta)
        limit = (r.steps if r.terminated else 0) + extra_steps
        t = 0
        while any(v > 0 for v in q) and t < limit:
            q1 = q[0]
            q = [q[i + 1] + c[i] * q1 for i in range(len(c) - 1)] + [c[-1] * q1]
            t += 1
        brute_done = not any(v > 0 for v in q)
        ok = (sign == r.exact_sign and brute_done == r.terminated == (sign < 0)
              and (not r.terminated or t == r.steps))
        if not ok:
            bad.append(r)
    log.info("cross-checked %d of %d records, %d mismatches", len(picked), len(records), len(bad))
    return bad


def spearman_by_degree(records: Iterable[TrialRecord]) -> dict[int, float]:
    """Rank correlation between |Q_0(r)| and steps over terminated trials."""
    from scipy.stats import spearmanr

    by_deg: dict[int, tuple[list, list]] = {}
    for r in records:
        if r.terminated:
            xs, ys = by_deg.setdefault(r.degree, ([], []))
            xs.append(abs(r.q0_at_r))
            ys.append(r.steps)
    return {d: float(spearmanr(xs, ys)[0]) for d, (xs, ys) in sorted(by_deg.items())}


# I/O -------------------------------------------------------------------------

def records_to_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def write_csv(records: Iterable[TrialRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(records_to_csv(records))


def read_csv(path) -> list[TrialRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise InvalidInput(f"{path}: expected header {','.join(CSV_HEADER)}")
        out = []
        for row in reader:
            deg, pid, pc, q0, steps, term, nonpos = row
            out.append(TrialRecord(int(deg), int(pid), tuple(pc.split(";")), float(q0),
                                   int(steps), term == "1", int(nonpos)))
        return out


def write_svg(records: Iterable[TrialRecord], path) -> None:
    """Log-log scatter of steps against |Q_0(r)|, one series per degree.

    Zero-step runs have no place on a log axis and are left out.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: dict[int, tuple[list, list]] = {}
    for r in records:
        if r.terminated and r.steps > 0 and r.q0_at_r != 0:
            xs, ys = series.setdefault(r.degree, ([], []))
            xs.append(abs(r.q0_at_r))
            ys.append(r.steps)
    with matplotlib.rc_context({"svg.hashsalt": "zlrr", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7, 5))
        for deg, (xs, ys) in sorted(series.items()):
            ax.scatter(xs, ys, s=4, alpha=0.5, label=f"degree {deg}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("|Q0(r)|")
        ax.set_ylabel("steps to termination")
        if series:
            ax.legend(markerscale=3)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


# slowdown --------------------------------------------------------------------

@dataclass(frozen=True)
class SlowdownRecord:
    coeffs: tuple
    r: float
    t0: int | None
    degree: int | None  # degree of the derived polynomial

    @property
    def exhausted(self) -> bool:
        return self.t0 is None


def shifted_family(s_values: Iterable[int]) -> list[Recurrence]:
    """``G_{n+1} = G_{n-s} + G_{n-s-1}``, characteristic polynomial x^{s+2} - x - 1."""
    return [Recurrence(tuple([0] * s + [1, 1])) for s in s_values]


def slowdown_experiment(family: Sequence[Recurrence], budget: int = DEFAULT_BUDGET) -> list[SlowdownRecord]:
    out = []
    for rec in family:
        P = characteristic_polynomial(rec)
        r = float(principal_root(P, Fraction(1, 10**12)).midpoint)
        try:
            res = derive_plrr(rec, 1, budget)
            out.append(SlowdownRecord(rec.coeffs, r, res.t0, res.degree))
        except BudgetExhausted:
            out.append(SlowdownRecord(rec.coeffs, r, None, None))
    return out


def repeated_root_probe(rec: Recurrence, beta: Sequence, t: int = 400, digits: int = 40) -> str:
    """Compare q(1,t)/r^t with the repeated-root formula that is only conjectured.

    Prints a report line and returns it; nothing is asserted.
    """
    from .poly import squarefree_decomposition
    from .roots import all_roots_numeric

    P = characteristic_polynomial(rec)
    roots = all_roots_numeric(P, digits)
    ctx = roots.ctx
    r1 = roots.principal
    Q0 = Polynomial.from_descending(beta)
    num = ctx.polyval([ctx.mpf(c.numerator) / c.denominator for c in Q0.descending()], r1)
    den = ctx.fprod((r1 - z.value) ** z.multiplicity for z in roots.roots[1:])
    q1 = iterate_terms(rec, _q1_init(rec, beta), t + 1).terms[t]
    ratio = ctx.mpf(q1) / r1.real ** t
    multiple = any(m > 1 for _, m in squarefree_decomposition(P))
    line = (f"P={P} repeated={multiple} conjectured a1={ctx.nstr((num / den).real, 12)} "
            f"q(1,{t})/r^{t}={ctx.nstr(ratio, 12)}")
    print(line)
    return line


def _q1_init(rec: Recurrence, beta: Sequence) -> list:
    from .zeroing import q1_initial_values

    return q1_initial_values(ZeroingInput(characteristic_polynomial(rec), tuple(beta)))
