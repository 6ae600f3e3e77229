"""Quadratic fields Q(sqrt(d)): arithmetic, Moser's classification, and search oracles."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import logging

from .arith import pell_fundamental_unit, squarefree_check
from .config import height_schedule
from .errors import DomainError, SearchExhausted, VerificationError
from .search import SquareTable, Vector

logger = logging.getLogger(__name__)


def format_combination(parts: list[tuple[Fraction, str]]) -> str:
    """Render sum(coefficient * label) with the constant term labelled ''."""
    pieces = []
    for coef, label in parts:
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if not label:
            body = str(mag)
        elif mag == 1:
            body = label
        elif mag.denominator == 1:
            body = f"{mag}{label}"
        else:
            body = f"({mag}){label}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(d) with rational a and b."""

    d: int
    a: Fraction = field(default=Fraction(0))
    b: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __str__(self):
        return format_combination([(self.a, ""), (self.b, f"√{self.d}")])

    def __add__(self, other):
        _same_field(self, other)
        return QuadElem(self.d, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        _same_field(self, other)
        return QuadElem(self.d, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QuadElem(self.d, -self.a, -self.b)

    def __mul__(self, other):
        return quad_mul(self, other)

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        """Is this element in the ring of integers of Q(sqrt(d))?"""
        if self.d % 4 == 1:
            two_a, two_b = 2 * self.a, 2 * self.b
            return (
                two_a.denominator == 1
                and two_b.denominator == 1
                and (self.a - self.b).denominator == 1
            )
        return self.a.denominator == 1 and self.b.denominator == 1

    def omega_coords(self) -> tuple[Fraction, Fraction]:
        """(x, y) with self = x + y*omega for the integral generator omega."""
        if self.d % 4 == 1:
            return self.a - self.b, 2 * self.b
        return self.a, self.b

    @staticmethod
    def from_omega(d: int, x, y) -> "QuadElem":
        """x + y*omega, where omega = (1 + sqrt(d))/2 if d = 1 mod 4, else sqrt(d)."""
        if d % 4 == 1:
            half = Fraction(y, 2)
            return QuadElem(d, x + half, half)
        return QuadElem(d, x, y)


def _same_field(x: QuadElem, y: QuadElem):
    if x.d != y.d:
        raise DomainError(f"mismatched radicands {x.d} and {y.d}")


def quad_mul(x: QuadElem, y: QuadElem) -> QuadElem:
    """Exact product of two elements of the same quadratic field."""
    _same_field(x, y)
    return QuadElem(x.d, x.a * y.a + x.d * x.b * y.b, x.a * y.b + x.b * y.a)


def sum_of_squares(terms: list[QuadElem], d: int) -> QuadElem:
    """Exact sum of the squares of terms."""
    total = QuadElem(d)
    for t in terms:
        total = total + t * t
    return total


def _check_imaginary_radicand(D: int):
    if D < 1:
        raise DomainError(f"D must be positive, got {D}")
    ok, p = squarefree_check(D)
    if not ok:
        raise DomainError(f"D={D} not squarefree (divisible by {p * p})")


def moser_s_field(D: int) -> int:
    """Level of the field Q(sqrt(-D))."""
    _check_imaginary_radicand(D)
    if D == 1:
        return 1
    if D % 8 == 7:
        return 4
    return 2


def moser_s_ring(D: int) -> int:
    """Level of the ring of integers of Q(sqrt(-D)) as the classical table states it."""
    _check_imaginary_radicand(D)
    if D == 1:
        return 1
    if D % 8 == 7:
        return 4
    return 2 if pell_fundamental_unit(D).norm == 1 else 3


# mccole: oracle
def _square_vector(d: int):
    """Square of x + y*omega, in omega coordinates."""
    if d % 4 == 1:
        c = (d - 1) // 4

        def square(v: Vector) -> Vector:
            x, y = v
            return (x * x + c * y * y, 2 * x * y + y * y)

    else:

        def square(v: Vector) -> Vector:
            x, y = v
            return (x * x + d * y * y, 2 * x * y)

    return square


@lru_cache(maxsize=2)
def quad_table(d: int, bound: int) -> SquareTable:
    """Pool of integral elements of Q(sqrt(d)) up to the given height."""
    return SquareTable(2, bound, _square_vector(d))


def _search(
    d: int, target: QuadElem, table: SquareTable, max_len: int, bound: int | None = None
):
    x, y = target.omega_coords()
    found = table.shortest((int(x), int(y)), max_len, bound)
    if found is None:
        return None
    terms = [QuadElem.from_omega(d, vx, vy) for vx, vy in found]
    if sum_of_squares(terms, d) != target or not all(t.is_integral() for t in terms):
        raise VerificationError(f"search returned a bad witness for {target}")
    return terms


def minus_one_search(D: int, height_bound: int, max_len: int = 4):
    """Shortest list of integral elements of Q(sqrt(-D)) whose squares sum to -1."""
    _check_imaginary_radicand(D)
    if not 1 <= max_len <= 4:
        raise DomainError(f"max_len must be between 1 and 4, got {max_len}")
    if height_bound < 1:
        raise DomainError(f"height_bound must be positive, got {height_bound}")
    return _search(-D, QuadElem(-D, -1), quad_table(-D, height_bound), max_len)


# mccole: /oracle


def niven_three_square(a: int, b: int, D: int, height_bound: int):
    """At most three integral squares in Q(sqrt(-D)) summing to a + 2b*sqrt(-D)."""
    _check_imaginary_radicand(D)
    if height_bound < 1:
        raise DomainError(f"height_bound must be positive, got {height_bound}")
    return _search(-D, QuadElem(-D, a, 2 * b), quad_table(-D, height_bound), 3)


@lru_cache(maxsize=256)
def shortest_minus_one(D: int, schedule: tuple[int, ...] | None = None, max_len: int = 4):
    """Escalate the search box until -1 appears, then keep looking for shorter."""
    _check_imaginary_radicand(D)
    if schedule is None:
        schedule = height_schedule()
    if not schedule or min(schedule) < 1:
        raise DomainError(f"bad height schedule {schedule}")
    table = quad_table(-D, max(schedule))
    target = QuadElem(-D, -1)
    best = None
    for h in sorted(schedule):
        limit = max_len if best is None else len(best) - 1
        if limit < 1:
            break
        found = _search(-D, target, table, limit, h)
        if found is not None:
            logger.debug("D=%d: length %d at height %d", D, len(found), h)
            best = found
    if best is None:
        raise SearchExhausted(
            f"no representation of -1 by at most {max_len} squares "
            f"in Q(sqrt(-{D})) up to height {max(schedule)}"
        )
    return tuple(best)


@dataclass
class MoserRow:
    """Classifier and oracle values for one imaginary quadratic field."""

    D: int
    s_field: int
    s_classifier: int
    s_oracle: int
    witness: tuple[QuadElem, ...]

    @property
    def relation(self) -> str:
        if self.s_oracle < self.s_classifier:
            return "improvement"
        if self.s_oracle > self.s_classifier:
            return "excess"
        return "agree"

    def __str__(self):
        squares = " + ".join(f"({t})²" for t in self.witness)
        return (
            f"D={self.D}: field {self.s_field}, classifier {self.s_classifier}, "
            f"oracle {self.s_oracle} [{self.relation}]: -1 = {squares}"
        )


def moser_table(d_max: int, schedule: tuple[int, ...] | None = None) -> list[MoserRow]:
    """Compare the classifier with the oracle for squarefree D <= d_max."""
    rows = []
    for D in range(1, d_max + 1):
        if not squarefree_check(D)[0]:
            continue
        witness = shortest_minus_one(D, schedule)
        row = MoserRow(
            D=D,
            s_field=moser_s_field(D),
            s_classifier=moser_s_ring(D),
            s_oracle=len(witness),
            witness=witness,
        )
        if row.relation != "agree":
            logger.warning("D=%d: classifier %d, oracle %d", D, row.s_classifier, row.s_oracle)
        rows.append(row)
    return rows
