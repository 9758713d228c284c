"""Numeric probe of the principal coefficient when P has repeated roots.

The closed form with multiplicities is only conjectured, so this prints the
conjectured value next to q(1,t)/r^t and asserts nothing.
"""
from zlrr.lab import repeated_root_probe
from zlrr.recurrence import Recurrence

CASES = [
    ((0, 3, 2), (1, 0, 0)),              # (x+1)^2 (x-2)
    ((0, 3, 2), (2, -1, -3)),
    ((0, 4, 4, 1), (1, 0, 0, 0)),        # (x+1)^2 (x^2-2x-1)
    ((0, 1, 4, 3, 2), (1, -1, 2, 0, -3)),  # (x^2+x+1)^2 (x-2)
    ((0, 0, 0, 5, 4), (0, 0, 0, 0, 1)),  # (x+1)^2 (x^3-2x^2+3x-4)
]

if __name__ == "__main__":
    for coeffs, beta in CASES:
        repeated_root_probe(Recurrence(coeffs), beta, t=400)
