"""Classical ring levels against the bounded search."""

from biquad import biquad
from biquad.quadratic import moser_table


def main():
    """Compare classifier and oracle for small D."""
    rows = moser_table(30)
    for row in rows:
        print(row)
    excess = [row.D for row in rows if row.relation == "excess"]
    print(f"classifier too low for D in {excess}")


if __name__ == "__main__":
    biquad(main)
