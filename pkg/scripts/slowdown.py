"""t0 for G_{n+1} = G_{n-s} + G_{n-s-1} (characteristic x^{s+2} - x - 1) as r -> 1."""
import argparse

from zlrr.lab import shifted_family, slowdown_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s-max", type=int, default=9)
    ap.add_argument("--budget", type=int, default=10**6)
    args = ap.parse_args()
    print("s\tr\tr-1\tt0\tderived degree")
    for s, rec in enumerate(slowdown_experiment(shifted_family(range(1, args.s_max + 1)), args.budget), 1):
        t0 = "budget" if rec.exhausted else rec.t0
        print(f"{s}\t{rec.r:.10f}\t{rec.r - 1:.3e}\t{t0}\t{rec.degree}")


if __name__ == "__main__":
    main()
