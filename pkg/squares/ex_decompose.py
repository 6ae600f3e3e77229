"""Decompose random integers of two fields."""

import random

from biquad import biquad
from biquad.biquadratic import classify_field
from biquad.codec import pretty
from biquad.sos import decompose_4, decompose_any

NUM_SAMPLES = 3
COORD_RANGE = 9


def random_integer(K):
    return K.from_integral([random.randint(-COORD_RANGE, COORD_RANGE) for _ in range(4)])


# mccole: main
def main():
    """Every integer of a class (i) field, and four times any integer elsewhere."""
    K = classify_field(-3, 5)
    print(f"{K} has class {K.class_tag.value}")
    for _ in range(NUM_SAMPLES):
        print(pretty(decompose_any(random_integer(K))))

    L = classify_field(-3, 2)
    print(f"{L} has class {L.class_tag.value}")
    for _ in range(NUM_SAMPLES):
        alpha = random_integer(L)
        print(pretty(decompose_4(alpha), f"4({alpha})"))


# mccole: /main


if __name__ == "__main__":
    biquad(main)
