"""Desk-scale run-time experiment: steps to termination against |Q0(r)|.

    python3 scripts/figure1.py --out results/
    python3 scripts/figure1.py --polys 50 --samples 5000 --workers 8   # full scale
"""
import argparse
import logging
import time
from pathlib import Path

from zlrr.lab import ExperimentConfig, cross_check, runtime_experiment, spearman_by_degree, \
    write_csv, write_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--polys", type=int, default=10)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = ExperimentConfig(tuple(args.degrees), args.polys, args.samples, seed=args.seed)
    start = time.perf_counter()
    records = runtime_experiment(cfg, workers=args.workers)
    elapsed = time.perf_counter() - start
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(records, args.out / "figure1.csv")
    write_svg(records, args.out / "figure1.svg")

    print(f"{len(records)} trials in {elapsed:.1f}s")
    for deg, rho in spearman_by_degree(records).items():
        done = [r for r in records if r.degree == deg and r.terminated]
        print(f"degree {deg}: {len(done)} terminated, max steps {max(r.steps for r in done)}, "
              f"spearman {rho:.3f}")
    bad = cross_check(cfg, records)
    print(f"cross-check mismatches: {len(bad)}")


if __name__ == "__main__":
    main()
