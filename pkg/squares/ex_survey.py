"""Survey small fields with simulated workers."""

import logging
import random

from biquad import biquad
from biquad.survey import run_survey

logging.basicConfig(level=logging.INFO, format="%(message)s")


def main():
    """Survey fields with generators up to 5 using three workers."""
    result = run_survey(5, samples=4, seed=random.randint(0, 1000), num_workers=3)
    print()
    for row in result.rows:
        print(row)
    for r1, r2, reason in result.failures:
        print(f"({r1}, {r2}) failed: {reason}")


if __name__ == "__main__":
    biquad(main)
