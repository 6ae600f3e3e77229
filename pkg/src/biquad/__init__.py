"""Sums of integral squares in complex biquadratic fields."""

import random
import sys


def biquad(func):
    """Seed the default generator from the command line, then run."""
    if len(sys.argv) > 1:
        random.seed(int(sys.argv[1]))
    func()
