"""How many squares do elements of 4O_K actually need?"""

from biquad import biquad
from biquad.biquadratic import classify_field
from biquad.sos import pythagoras_evidence


def main():
    """Sample multiples of four in a few fields."""
    for pair in ((-3, 5), (-1, -5), (5, -6)):
        K = classify_field(*pair)
        report = pythagoras_evidence(K, samples=40, target_height=4, pool_height=1)
        print(report)


if __name__ == "__main__":
    biquad(main)
