"""Fundamental units and the ring levels they predict."""

from biquad import biquad
from biquad.arith import pell_fundamental_unit
from biquad.quadratic import moser_s_ring


# mccole: units
def main():
    """Show the unit of Q(sqrt(D)) next to the level it implies for Q(sqrt(-D))."""
    for D in (2, 3, 5, 6, 13, 14, 21, 29, 94):
        unit = pell_fundamental_unit(D)
        print(f"D={D:>3}: {str(unit):>22}  norm {unit.norm:+d}  level {moser_s_ring(D)}")


# mccole: /units


if __name__ == "__main__":
    biquad(main)
