"""Square roots of 1 + 2a modulo powers of two."""

from biquad import biquad
from biquad.arith import two_adic_square_lift


def main():
    """Show beta with (1 + 4*beta)^2 = 1 + 2a for a few a and k."""
    for a in (0, 4, 12, -8, 100):
        for k in (3, 8, 16):
            beta = two_adic_square_lift(a, k)
            check = pow(1 + 4 * beta, 2, 2**k) == (1 + 2 * a) % 2**k
            print(f"a={a:>4} k={k:>2}: beta={beta:<6} {'ok' if check else 'FAILED'}")


if __name__ == "__main__":
    biquad(main)
