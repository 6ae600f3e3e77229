"""Integer-level algorithms: squarefree tests, four squares, Pell units, 2-adic roots."""

from dataclasses import dataclass
from math import isqrt

from sympy import factorint, integer_nthroot
from sympy.ntheory.primetest import is_square
from sympy.solvers.diophantine.diophantine import diop_DN

from .errors import DomainError, PreconditionError, VerificationError


def ceil_sqrt(n: int) -> int:
    """Smallest integer whose square is at least n."""
    return 0 if n <= 0 else isqrt(n - 1) + 1


def squarefree_check(n: int) -> tuple[bool, int | None]:
    """Returns (True, None) or (False, p) with p the smallest prime whose square divides n."""
    if n == 0:
        raise PreconditionError("squarefree_check needs a nonzero integer")
    for p, e in sorted(factorint(abs(n)).items()):
        if e > 1:
            return False, int(p)
    return True, None


def check_radicand(r: int) -> int:
    """Raise DomainError unless r can generate a quadratic field."""
    if r in (0, 1):
        raise DomainError(f"radicand {r} is not allowed")
    ok, _ = squarefree_check(r)
    if not ok:
        raise DomainError(f"radicand {r} not squarefree")
    return r


# mccole: four
def four_square(k: int) -> list[int]:
    """Fewest positive integers (at most four) whose squares sum to k."""
    if k < 0:
        raise PreconditionError(f"four_square needs k >= 0, got {k}")
    if k == 0:
        return []
    terms = min_square_count(k)
    found = _descending(k, terms, isqrt(k))
    assert found is not None, f"no {terms}-square decomposition of {k}"
    return list(found)


def min_square_count(k: int) -> int:
    """Least number of squares summing to k > 0."""
    if is_square(k):
        return 1
    if any(is_square(k - a * a) for a in range(1, isqrt(k // 2) + 1)):
        return 2
    m = k
    while m % 4 == 0:
        m //= 4
    return 4 if m % 8 == 7 else 3


def _descending(k: int, terms: int, cap: int) -> tuple[int, ...] | None:
    """Lexicographically smallest non-increasing tuple of exactly `terms` values <= cap."""
    if terms == 0:
        return () if k == 0 else None
    if k < terms:
        return None
    low = max(1, ceil_sqrt(-(-k // terms)))
    for a in range(low, min(cap, isqrt(k)) + 1):
        rest = _descending(k - a * a, terms - 1, a)
        if rest is not None:
            return (a, *rest)
    return None


# mccole: /four


# mccole: pell
@dataclass(frozen=True)
class PellUnit:
    """Fundamental unit t + u*sqrt(D), or (t + u*sqrt(D))/2 when halved."""

    t: int
    u: int
    halved: bool
    D: int
    norm: int

    def __str__(self):
        root = f"√{self.D}" if self.u == 1 else f"{self.u}√{self.D}"
        if self.halved:
            return f"({self.t}+{root})/2"
        return f"{self.t}+{root}"

    @property
    def half_units(self) -> int:
        """Coefficient of sqrt(D)/2, used to compare unit sizes."""
        return self.u if self.halved else 2 * self.u


def pell_fundamental_unit(D: int) -> PellUnit:
    """Fundamental unit of the ring of integers of Q(sqrt(D))."""
    if D < 2:
        raise DomainError(f"pell_fundamental_unit needs D >= 2, got {D}")
    check_radicand(D)

    x, y = _least_integral_unit(D)
    norm = x * x - D * y * y
    if D % 8 == 5:
        root = _halved_cube_root(D, x, norm)
        if root is not None:
            return PellUnit(t=root[0], u=root[1], halved=True, D=D, norm=norm)
    return PellUnit(t=x, u=y, halved=False, D=D, norm=norm)


def _least_integral_unit(D: int) -> tuple[int, int]:
    """Least x + y*sqrt(D) > 1 with x^2 - D*y^2 = -1, or = +1 when -1 has no solution."""
    for norm in (-1, 1):
        solutions = diop_DN(D, norm)
        if solutions:
            x, y = min((abs(int(x)), abs(int(y))) for x, y in solutions)
            return x, y
    raise VerificationError(f"no solution of x^2 - {D}y^2 = 1")


def _halved_cube_root(D: int, x: int, norm: int) -> tuple[int, int] | None:
    """(t, u) with ((t + u*sqrt(D))/2)**3 == x + y*sqrt(D), if t and u are odd."""
    # The trace t of the cube root solves t^3 - 3*norm*t - 2x = 0.
    guess, _ = integer_nthroot(2 * x, 3)
    for t in range(max(1, guess - 1), guess + 3):
        if t**3 - 3 * norm * t - 2 * x != 0:
            continue
        u2, rem = divmod(t * t - 4 * norm, D)
        if rem == 0 and is_square(u2):
            u = isqrt(u2)
            if t % 2 == 1 and u % 2 == 1:
                return t, u
    return None


# mccole: /pell


def pell_unit_search(D: int, u_limit: int) -> PellUnit | None:
    """Ascending search for the least unit, measured in half-units, up to u_limit."""
    check_radicand(D)
    if D < 2:
        raise DomainError(f"pell_unit_search needs D >= 2, got {D}")
    halves = D % 4 == 1
    for u in range(1, u_limit + 1):
        if halves:
            for norm in (-1, 1):
                t2 = D * u * u + 4 * norm
                if is_square(t2):
                    t = isqrt(t2)
                    if t % 2 == 0 and u % 2 == 0:
                        return PellUnit(t=t // 2, u=u // 2, halved=False, D=D, norm=norm)
                    return PellUnit(t=t, u=u, halved=True, D=D, norm=norm)
        else:
            for norm in (-1, 1):
                t2 = D * u * u + norm
                if is_square(t2):
                    return PellUnit(t=isqrt(t2), u=u, halved=False, D=D, norm=norm)
    return None


# mccole: lift
def two_adic_square_lift(a: int, k: int) -> int:
    """Return beta with (1 + 4*beta)**2 == 1 + 2*a (mod 2**k)."""
    if a % 4 != 0:
        raise PreconditionError(f"two_adic_square_lift needs 4 | a, got {a}")
    if k < 3:
        raise PreconditionError(f"two_adic_square_lift needs k >= 3, got {k}")

    modulus = 1 << (k + 1)
    c = (1 + 2 * a) % modulus
    x = 1
    precision = 3
    # Newton step x -> x - (x^2 - c)/(2x); correct bits go from j to 2j - 2.
    while precision < k:
        error = (x * x - c) % modulus
        x = (x - (error // 2) * pow(x, -1, modulus)) % modulus
        precision = 2 * precision - 2
    if x % 4 == 3:
        x = (-x) % modulus
    beta = ((x - 1) // 4) % (1 << k)

    if pow(1 + 4 * beta, 2, 1 << k) != (1 + 2 * a) % (1 << k):
        raise VerificationError(f"no 2-adic square root of {1 + 2 * a} mod 2^{k}")
    return beta


# mccole: /lift
