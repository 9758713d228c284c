"""Command-line entry point: ``zlrr <subcommand> ...``.

Exit codes: 0 success, 1 invalid input, 2 mathematical refusal (for example a
non-terminating Zeroing run or ``--n`` not below the principal root),
3 iteration budget exhausted.  Sequence indices are 1-based: ``--init a1,...,aL``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from functools import singledispatch
from typing import Sequence

from .analysis import (
    BinetSquarefree,
    Divergence,
    DivergenceVerdict,
    binet_squarefree,
    predict_divergence,
    reconstruct_terms,
)
from .errors import BudgetExhausted, DegenerateRecurrence, InvalidInput, ZLRRError
from .lab import (
    ExperimentConfig,
    SlowdownRecord,
    TrialRecord,
    read_csv,
    records_to_csv,
    runtime_experiment,
    shifted_family,
    slowdown_experiment,
    spearman_by_degree,
    write_svg,
)
from .poly import Polynomial, format_poly, parse_poly, to_fraction
from .recurrence import Recurrence, build_recurrence, characteristic_polynomial
from .roots import DEFAULT_DIGITS
from .zeroing import (
    DEFAULT_BUDGET,
    DerivationRequest,
    DerivationResult,
    ZeroingInput,
    ZeroingTrace,
    derive_plrr,
    run_modified,
    run_zeroing,
)


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else str(c)


# reports ---------------------------------------------------------------------

@singledispatch
def render_report(result) -> str:
    raise TypeError(f"no report for {type(result).__name__}")


@render_report.register
def _(rec: Recurrence) -> str:
    return "\n".join([
        rec.describe(),
        f"relation: {rec.relation('G')}",
        f"P(x)={format_poly(characteristic_polynomial(rec))}",
    ])


@render_report.register
def _(exc: DegenerateRecurrence) -> str:
    return f"degenerate: gcd of support = {exc.support_gcd}"


@render_report.register
def _(res: DerivationResult) -> str:
    lines = [f"P(x)={format_poly(res.P)}",
             f"gamma=({', '.join(_fmt(g) for g in res.gamma)})",
             f"derived polynomial: {format_poly(res.p)}",
             f"quotient: {format_poly(res.quotient)}",
             f"t0={res.t0} steps={res.steps} degree={res.degree}"]
    if res.derived_recurrence is not None:
        lines.insert(3, f"derived PLRR: {res.derived_recurrence.relation('H')}")
    return "\n".join(lines)


def render_trace(trace: ZeroingTrace) -> str:
    """Tab-separated Q_t coefficients, x^{k-1} first, one row per step t >= 1."""
    k = trace.k
    lines = [f"# P(x)={format_poly(trace.P)}  Q0(x)={format_poly(trace.Q0)}"]
    for Q in (trace.steps or [])[1:]:
        lines.append("\t".join(_fmt(Q.coeff(i)) for i in range(k - 1, -1, -1)))
    if trace.terminated:
        lines.append(f"terminated t={trace.steps_taken}")
    else:
        lines.append(f"non-terminating sign={trace.sign_Q0_at_r}")
    return "\n".join(lines)


@render_report.register
def _(trace: ZeroingTrace) -> str:
    return render_trace(trace)


@render_report.register
def _(v: DivergenceVerdict) -> str:
    head = f"{v.sign.describe()}; Q(x)={format_poly(v.Q)}"
    ds = " ".join(f"d_{i}={_fmt(d)}" for i, d in enumerate(v.d, start=2))
    lines = [head] + ([ds] if ds else [])
    if v.residual is not None:
        lines.append(f"gcd(Q,P)={format_poly(v.residual)}")
    return "\n".join(lines)


@render_report.register
def _(b: BinetSquarefree) -> str:
    ctx = b.ctx
    digits = min(b.roots.precision, 20)
    lines = [f"P(x)={format_poly(b.P)}  (a_0..a_{{k-2}}=0, a_{{k-1}}=1)"]
    for root, c in zip(b.roots.roots, b.coeffs):
        z, cz = ctx.chop(root.value), ctx.chop(c)
        lines.append(f"root {ctx.nstr(z, digits)}\tcoefficient {ctx.nstr(cz, digits)}")
    return "\n".join(lines)


@render_report.register(list)
def _(records: list) -> str:
    if records and isinstance(records[0], SlowdownRecord):
        lines = ["coeffs\tr\tt0\tdegree"]
        for r in records:
            t0 = "budget" if r.exhausted else str(r.t0)
            lines.append(f"{','.join(map(str, r.coeffs))}\t{r.r:.12f}\t{t0}\t{r.degree}")
        return "\n".join(lines)
    if not records or isinstance(records[0], TrialRecord):
        by_deg: dict[int, list] = {}
        for r in records:
            by_deg.setdefault(r.degree, []).append(r)
        rho = spearman_by_degree(records)
        lines = [f"{len(records)} trials"]
        for d, rs in sorted(by_deg.items()):
            term = [r for r in rs if r.terminated]
            mx = max((r.steps for r in term), default=0)
            lines.append(f"degree {d}: {len(rs)} trials, {len(term)} terminated, max steps {mx}, "
                         f"spearman(|Q0(r)|, steps)={rho.get(d, float('nan')):.4f}")
        return "\n".join(lines)
    raise TypeError("unsupported list contents")


# argument helpers --------------------------------------------------------------

def _split(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.split(",")) if t]


def _rationals(text: str) -> list[Fraction]:
    return [to_fraction(t) for t in _split(text)]


def _load_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict) or "coefficients" not in data:
        raise InvalidInput(f"{path}: expected an object with a 'coefficients' field")
    return data


def _coeff_strings(args) -> tuple[list, dict]:
    if args.coeffs is not None and args.file is not None:
        raise InvalidInput("give either --coeffs or --file, not both")
    if args.coeffs is not None:
        return _split(args.coeffs), {}
    if args.file is not None:
        data = _load_file(args.file)
        return [str(c) for c in data["coefficients"]], data
    raise InvalidInput("one of --coeffs or --file is required")


def _recurrence(args) -> tuple[Recurrence, dict]:
    coeffs, data = _coeff_strings(args)
    return build_recurrence(coeffs), data


def _degrees(text: str) -> tuple[int, ...]:
    if "-" in text and "," not in text:
        lo, hi = text.split("-", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(t) for t in _split(text))


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--coeffs", help="recurrence coefficients c1,...,cL")
    p.add_argument("--file", help="JSON file {\"coefficients\": [...], \"initial\": [...]}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zlrr", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify a recurrence as PLRR / s-deep ZLRR")
    _add_source(p)

    p = sub.add_parser("convert", help="derive a PLRR with the modified Zeroing Algorithm")
    _add_source(p)
    p.add_argument("--n", type=int, default=1, help="use gamma = (1, -n) (default 1)")
    p.add_argument("--gamma", help="explicit prefix gamma1,...,gammam (overrides --n)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="step budget (default 1000000)")
    p.add_argument("--output", help="write the result as JSON to this path")

    p = sub.add_parser("zeroing", help="run the Zeroing Algorithm from Q0 = beta")
    _add_source(p)
    p.add_argument("--beta", required=True, help="beta1,...,betak (rationals)")
    p.add_argument("--trace", action="store_true", help="print the Q_t table")
    p.add_argument("--force", action="store_true", help="iterate up to the budget even if Q0(r) >= 0")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="step budget (default 1000000)")
    p.add_argument("--output", help="write the trace table to this path")

    p = sub.add_parser("predict", help="predict the direction of divergence from initial values")
    _add_source(p)
    p.add_argument("--init", help="initial values a1,...,aL (rationals)")

    p = sub.add_parser("binet", help="Binet coefficients 1/P'(r_i) for a squarefree P")
    _add_source(p)
    p.add_argument("--poly", help="polynomial such as x^2-x-1 instead of a recurrence")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="precision (default 30)")
    p.add_argument("--terms", type=int, default=0, help="also print a_0..a_{N-1}")

    p = sub.add_parser("lab", help="run-time experiments")
    p.add_argument("--experiment", choices=("runtime", "slowdown"), default="runtime")
    p.add_argument("--degrees", default="3-6")
    p.add_argument("--polys", type=int, default=10, help="random P per degree")
    p.add_argument("--samples", type=int, default=500, help="random Q0 per P")
    p.add_argument("--coeff-bound", type=int, default=9)
    p.add_argument("--beta-bound", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--s-max", type=int, default=8, help="slowdown family s = 1..S")
    p.add_argument("--csv", help="CSV output path")
    p.add_argument("--svg", help="SVG scatter output path (runtime only)")

    p = sub.add_parser("plot", help="scatter plot from a lab CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--svg", required=True)
    return parser


# commands ----------------------------------------------------------------------

def _cmd_classify(args, out) -> int:
    try:
        rec, _ = _recurrence(args)
    except DegenerateRecurrence as exc:
        print(render_report(exc), file=out)
        return exc.exit_code
    print(render_report(rec), file=out)
    return 0


def _cmd_convert(args, out) -> int:
    rec, _ = _recurrence(args)
    if args.gamma:
        res = run_modified(DerivationRequest(characteristic_polynomial(rec), tuple(_rationals(args.gamma))),
                           args.budget)
    else:
        res = derive_plrr(rec, args.n, args.budget)
    print(rec.describe(), file=out)
    print(render_report(res), file=out)
    if args.output:
        payload = {
            "characteristic": format_poly(res.P),
            "gamma": [_fmt(g) for g in res.gamma],
            "derived": format_poly(res.p),
            "derived_descending": [_fmt(c) for c in res.p.descending()],
            "quotient": format_poly(res.quotient),
            "t0": res.t0,
            "steps": res.steps,
            "recurrence": (None if res.derived_recurrence is None
                           else [str(c) for c in res.derived_recurrence.coeffs]),
        }
        with open(args.output, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def _cmd_zeroing(args, out) -> int:
    rec, _ = _recurrence(args)
    inp = ZeroingInput(characteristic_polynomial(rec), tuple(_rationals(args.beta)))
    try:
        trace = run_zeroing(inp, args.budget, force=args.force)
        code = 0 if trace.terminated else 2
    except BudgetExhausted as exc:
        trace, code = exc.partial, exc.exit_code
    text = render_trace(trace)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    if args.trace:
        print(text, file=out)
    elif trace.terminated:
        print(f"terminated t={trace.steps_taken}", file=out)
    if code == 2:
        print("Q0(r) >= 0: algorithm will not terminate", file=out)
    elif code == 3:
        print(f"budget of {args.budget} steps exhausted", file=out)
    return code


def _cmd_predict(args, out) -> int:
    rec, data = _recurrence(args)
    if args.init is not None:
        init = _rationals(args.init)
    elif "initial" in data:
        init = [to_fraction(str(a)) for a in data["initial"]]
    else:
        raise InvalidInput("initial values required (--init or 'initial' in --file)")
    print(render_report(predict_divergence(rec, init)), file=out)
    return 0


def _cmd_binet(args, out) -> int:
    if args.poly:
        if args.coeffs is not None or args.file is not None:
            raise InvalidInput("give either --poly or a recurrence, not both")
        P = parse_poly(args.poly)
    else:
        rec, _ = _recurrence(args)
        P = characteristic_polynomial(rec)
    b = binet_squarefree(P, args.digits)
    print(render_report(b), file=out)
    if args.terms > 0:
        vals = reconstruct_terms(b, args.terms)
        print(" ".join(b.ctx.nstr(b.ctx.chop(v, 1e-20), 15) for v in vals), file=out)
    return 0


def _cmd_lab(args, out) -> int:
    if args.experiment == "slowdown":
        recs = slowdown_experiment(shifted_family(range(1, args.s_max + 1)), args.budget)
        print(render_report(recs), file=out)
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write("coeffs,r,t0,degree\n")
                for r in recs:
                    fh.write(f"{';'.join(map(str, r.coeffs))},{r.r!r},"
                             f"{'' if r.t0 is None else r.t0},{'' if r.degree is None else r.degree}\n")
        return 0
    cfg = ExperimentConfig(_degrees(args.degrees), args.polys, args.samples, args.coeff_bound,
                           args.beta_bound, args.seed, args.budget)
    records = runtime_experiment(cfg, workers=args.workers)
    print(render_report(records), file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(records_to_csv(records))
    if args.svg:
        write_svg(records, args.svg)
    return 0


def _cmd_plot(args, out) -> int:
    records = read_csv(args.csv)
    write_svg(records, args.svg)
    print(f"wrote {args.svg} from {len(records)} records", file=out)
    return 0


COMMANDS = {
    "classify": _cmd_classify,
    "convert": _cmd_convert,
    "zeroing": _cmd_zeroing,
    "predict": _cmd_predict,
    "binet": _cmd_binet,
    "lab": _cmd_lab,
    "plot": _cmd_plot,
}


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except ZLRRError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
