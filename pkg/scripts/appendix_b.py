"""Regenerate the 19 ZLRR -> PLRR conversions and compare with the stored golden data."""
import json
import time
from pathlib import Path

from zlrr.poly import Polynomial, format_poly
from zlrr.recurrence import recurrence_from_polynomial
from zlrr.zeroing import derive_plrr

DATA = Path(__file__).resolve().parent.parent / "tests" / "data" / "appendix_b.json"


def main():
    items = json.loads(DATA.read_text())
    start = time.perf_counter()
    for it in items:
        P = Polynomial.from_descending(it["characteristic"])
        res = derive_plrr(recurrence_from_polynomial(P))
        ok = res.p == Polynomial.from_descending(it["derived"])
        print(f"{it['item']:>2}  {format_poly(P):<18} degree {res.degree:>3}  t0 {res.t0:>3}  "
              f"{'match' if ok else 'MISMATCH'}")
    print(f"total {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
