"""Complex biquadratic fields: classification, integral bases, and element arithmetic."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd
import logging

from sympy import Matrix, Rational

from .arith import check_radicand
from .errors import DomainError, PreconditionError, VerificationError
from .quadratic import QuadElem, format_combination
from .search import SquareTable, Vector

logger = logging.getLogger(__name__)

Coords = tuple[Fraction, Fraction, Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# mccole: tags
class ClassTag(Enum):
    """Which integral-basis presentation a field uses."""

    A_I = "A(i)"  # both generators negative, residues (1, 1)
    A_II = "A(ii)"  # (1, 2)
    A_III = "A(iii)"  # (2, 3)
    A_IV = "A(iv)"  # (3, 3)
    B_I = "B(i)"  # first generator negative, second positive
    B_II = "B(ii)"
    B_III = "B(iii)"
    B_IV = "B(iv)"
    C_12 = "C(1,2)"  # {+1, -2, -2} mod 4, no row above applies


# Basis shape by residues (g1 mod 4, g2 mod 4) of the generators.
SHAPES = {
    (1, 1): "product",
    (1, 2): "half",
    (2, 3): "mixed",
    (3, 3): "odd",
}

ROWS = {
    ("A", (1, 1)): ClassTag.A_I,
    ("A", (1, 2)): ClassTag.A_II,
    ("A", (2, 3)): ClassTag.A_III,
    ("A", (3, 3)): ClassTag.A_IV,
    ("B", (1, 1)): ClassTag.B_I,
    ("B", (1, 2)): ClassTag.B_II,
    ("B", (2, 3)): ClassTag.B_III,
    ("B", (3, 3)): ClassTag.B_IV,
}
# mccole: /tags


# mccole: coords
def _add(x: Coords, y: Coords) -> Coords:
    return tuple(a + b for a, b in zip(x, y))


def _scale(x: Coords, k) -> Coords:
    return tuple(k * a for a in x)


def _mul(r1: int, r2: int, d: int, x: Coords, y: Coords) -> Coords:
    """Product over {1, w1, w2, w3} with w3 = w1*w2/d."""
    a0, a1, a2, a3 = x
    b0, b1, b2, b3 = y
    r3 = r1 * r2 // (d * d)
    return (
        a0 * b0 + r1 * a1 * b1 + r2 * a2 * b2 + r3 * a3 * b3,
        a0 * b1 + a1 * b0 + (r2 // d) * (a2 * b3 + a3 * b2),
        a0 * b2 + a2 * b0 + (r1 // d) * (a1 * b3 + a3 * b1),
        a0 * b3 + a3 * b0 + d * (a1 * b2 + a2 * b1),
    )


# mccole: /coords


def _unit(i: int) -> Coords:
    return tuple(ONE if j == i else ZERO for j in range(4))


def _matrix(columns: tuple[Coords, ...]) -> Matrix:
    n = len(columns)
    return Matrix(n, n, lambda i, j: _rational(columns[j][i]))


def _determinant(columns: tuple[Coords, ...]) -> Fraction:
    return _fraction(_matrix(columns).det())


def _invert(columns: tuple[Coords, ...]) -> tuple[tuple[Coords, ...], Fraction]:
    """Inverse (as rows) and determinant of the matrix with the given columns."""
    matrix = _matrix(columns)
    det = matrix.det()
    if det == 0:
        raise VerificationError("integral basis is singular")
    inverse = matrix.inv()
    rows = tuple(tuple(_fraction(v) for v in inverse.row(i)) for i in range(len(columns)))
    return rows, _fraction(det)


def _rational(c) -> Rational:
    c = Fraction(c)
    return Rational(c.numerator, c.denominator)


def _fraction(x: Rational) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _apply(rows: tuple[Coords, ...], x: Coords) -> Coords:
    return tuple(sum((a * b for a, b in zip(row, x)), ZERO) for row in rows)


def residue_basis(r1: int, r2: int, m: int, n: int) -> tuple[Coords, ...]:
    """Integral basis of Q(sqrt(r1), sqrt(r2)) picked by the residues of (m, n) mod 4.

    sqrt(l) means sqrt(m)*sqrt(n)/gcd(m, n). For m = n = 1 (mod 4) the last vector is
    (1 + sqrt(m) + sqrt(n) + sqrt(l))/4 when m/gcd(m, n) = 1 (mod 4), and
    (1 - sqrt(m) + sqrt(n) + sqrt(l))/4 otherwise.
    """
    one, sm, sn, sl = _radicand_vectors(r1, r2, m, n)
    shape = SHAPES[(m % 4, n % 4)]
    if shape == "product":
        sign = 1 if (m // gcd(abs(m), abs(n))) % 4 == 1 else -1
        fourth = _scale(_add(_add(one, _scale(sm, sign)), _add(sn, sl)), QUARTER)
        return (one, _scale(_add(one, sm), HALF), _scale(_add(one, sn), HALF), fourth)
    if shape == "half":
        return (one, _scale(_add(one, sm), HALF), sn, _scale(_add(sn, sl), HALF))
    if shape == "mixed":
        return (one, sm, sn, _scale(_add(sm, sl), HALF))
    return (one, sm, _scale(_add(sm, sn), HALF), _scale(_add(one, sl), HALF))


def shaped_basis(r1: int, r2: int, m: int, n: int) -> tuple[Coords, ...]:
    """The basis a class uses: products of half-integral elements when m = n = 1 (mod 4)."""
    if SHAPES[(m % 4, n % 4)] != "product":
        return residue_basis(r1, r2, m, n)
    one, sm, sn, sl = _radicand_vectors(r1, r2, m, n)
    d = gcd(abs(r1), abs(r2))
    first = _scale(_add(one, sm), HALF)
    third = _mul(r1, r2, d, first, _scale(_add(one, sl), HALF))
    return (one, first, _scale(_add(one, sn), HALF), third)


def _radicand_vectors(r1: int, r2: int, m: int, n: int) -> tuple[Coords, ...]:
    """1, sqrt(m), sqrt(n) and sqrt(m)*sqrt(n)/gcd(m, n) over {1, w1, w2, w3}."""
    d = gcd(abs(r1), abs(r2))
    r3 = r1 * r2 // (d * d)
    position = {r1: 1, r2: 2, r3: 3}
    sm, sn = _unit(position[m]), _unit(position[n])
    sl = _scale(_mul(r1, r2, d, sm, sn), Fraction(1, gcd(abs(m), abs(n))))
    return _unit(0), sm, sn, sl


@dataclass(frozen=True)
class BiquadField:
    """Q(sqrt(r1), sqrt(r2)) with a chosen integral basis."""

    r1: int
    r2: int
    class_tag: ClassTag
    basis: tuple[Coords, ...]
    r3: int = field(init=False)
    d: int = field(init=False)
    _inverse: tuple[Coords, ...] = field(init=False, repr=False, compare=False)
    covolume: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = gcd(abs(self.r1), abs(self.r2))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r3", self.r1 * self.r2 // (d * d))
        inverse, det = _invert(self.basis)
        object.__setattr__(self, "_inverse", inverse)
        object.__setattr__(self, "covolume", abs(det))

    def __str__(self):
        return f"Q(√{self.r1}, √{self.r2})"

    @property
    def radicands(self) -> tuple[int, int, int]:
        return (self.r1, self.r2, self.r3)

    @property
    def imaginary_subfields(self) -> list[int]:
        """D for each subfield Q(sqrt(-D)), smallest first."""
        return sorted(-r for r in self.radicands if r < 0)

    @property
    def is_class_i(self) -> bool:
        return self.class_tag in (ClassTag.A_I, ClassTag.B_I)

    def element(self, c0=0, c1=0, c2=0, c3=0) -> "BiquadElem":
        return BiquadElem(self, (c0, c1, c2, c3))

    def constant(self, k) -> "BiquadElem":
        return self.element(k)

    def omega(self, i: int) -> "BiquadElem":
        return BiquadElem(self, _unit(i))

    def basis_elements(self) -> list["BiquadElem"]:
        return [BiquadElem(self, b) for b in self.basis]

    def from_integral(self, x) -> "BiquadElem":
        """Element with the given integral-basis coordinates."""
        total = (ZERO,) * 4
        for xi, b in zip(x, self.basis):
            total = _add(total, _scale(b, Fraction(xi)))
        return BiquadElem(self, total)

    def integral_coords(self, coords: Coords) -> Coords:
        return _apply(self._inverse, coords)

    @cached_property
    def structure_constants(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Integral coordinates of B_i * B_j."""
        table = []
        for bi in self.basis:
            row = []
            for bj in self.basis:
                product = _mul(self.r1, self.r2, self.d, bi, bj)
                row.append(tuple(int(c) for c in self.integral_coords(product)))
            table.append(tuple(row))
        return tuple(table)

    def square_vector(self, v: Vector) -> Vector:
        """Square of an element given and returned in integral coordinates."""
        m = self.structure_constants
        out = [0, 0, 0, 0]
        for i in range(4):
            if not v[i]:
                continue
            for j in range(i, 4):
                if not v[j]:
                    continue
                k = v[i] * v[j] * (1 if i == j else 2)
                for c in range(4):
                    out[c] += k * m[i][j][c]
        return tuple(out)


@dataclass(frozen=True)
class BiquadElem:
    """c0 + c1*w1 + c2*w2 + c3*w3 with w3 = w1*w2/d."""

    field: BiquadField
    coords: Coords

    def __post_init__(self):
        if len(self.coords) != 4:
            raise DomainError(f"expected 4 coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __str__(self):
        labels = ["", f"√{self.field.r1}", f"√{self.field.r2}", f"√{self.field.r3}"]
        return format_combination(list(zip(self.coords, labels)))

    def __add__(self, other):
        _same_field(self, other)
        return BiquadElem(self.field, _add(self.coords, other.coords))

    def __sub__(self, other):
        _same_field(self, other)
        return BiquadElem(self.field, _add(self.coords, _scale(other.coords, -1)))

    def __neg__(self):
        return BiquadElem(self.field, _scale(self.coords, -1))

    def __mul__(self, other):
        return biq_mul(self, other)

    def scale(self, k) -> "BiquadElem":
        return BiquadElem(self.field, _scale(self.coords, Fraction(k)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return to_integral_coords(self)[1]

    def rational_value(self) -> Fraction | None:
        """The element as a rational number, if it is one."""
        c0, c1, c2, c3 = self.coords
        return c0 if c1 == c2 == c3 == 0 else None


def _same_field(x: BiquadElem, y: BiquadElem):
    if x.field != y.field:
        raise DomainError(f"elements of different fields {x.field} and {y.field}")


def biq_mul(x: BiquadElem, y: BiquadElem) -> BiquadElem:
    """Exact product of two elements of the same field."""
    _same_field(x, y)
    k = x.field
    return BiquadElem(k, _mul(k.r1, k.r2, k.d, x.coords, y.coords))


def trace_to_subfield(x: BiquadElem, which: int) -> QuadElem:
    """x plus its conjugate over Q(sqrt(r_which))."""
    if which not in (1, 2, 3):
        raise DomainError(f"subfield index must be 1, 2 or 3, got {which}")
    c = x.coords
    return QuadElem(x.field.radicands[which - 1], 2 * c[0], 2 * c[which])


def to_integral_coords(x: BiquadElem) -> tuple[Coords, bool]:
    """Coordinates over the integral basis, and whether they are all integers."""
    coords = x.field.integral_coords(x.coords)
    return coords, all(c.denominator == 1 for c in coords)


def require_integral(x: BiquadElem) -> tuple[int, ...]:
    coords, ok = to_integral_coords(x)
    if not ok:
        raise PreconditionError(f"{x} is not an algebraic integer of {x.field}")
    return tuple(int(c) for c in coords)


def embed_quad(q: QuadElem, K: BiquadField) -> BiquadElem:
    """Image of an element of a quadratic subfield of K."""
    if q.d not in K.radicands:
        raise DomainError(f"Q(√{q.d}) is not a subfield of {K}")
    i = K.radicands.index(q.d) + 1
    coords = [q.a, ZERO, ZERO, ZERO]
    coords[i] = q.b
    return BiquadElem(K, tuple(coords))


# mccole: classify
def _family(g1: int, g2: int) -> str | None:
    if g1 < 0 and g2 < 0:
        return "A"
    if g1 < 0 < g2:
        return "B"
    return None


def _candidate_pairs(r1: int, r2: int, r3: int) -> list[tuple[int, int]]:
    """All ordered generator pairs, smallest (|m|, |n|) first."""
    pairs = [p for a, b in combinations((r1, r2, r3), 2) for p in ((a, b), (b, a))]
    return sorted(pairs, key=lambda p: (abs(p[0]), abs(p[1]), p[0], p[1]))


@lru_cache(maxsize=1024)
def classify_field(r1: int, r2: int) -> BiquadField:
    """Build and verify the integral basis of Q(sqrt(r1), sqrt(r2))."""
    check_radicand(r1)
    check_radicand(r2)
    if r1 == r2:
        raise DomainError(f"radicands must be distinct, got {r1} twice")
    if r1 > 0 and r2 > 0:
        raise DomainError(f"totally real: both radicands {r1} and {r2} positive")
    d = gcd(abs(r1), abs(r2))
    r3 = r1 * r2 // (d * d)

    pairs = _candidate_pairs(r1, r2, r3)
    for g1, g2 in pairs:
        tag = ROWS.get((_family(g1, g2), (g1 % 4, g2 % 4)))
        if tag is not None:
            return _build(g1, g2, tag)
    for g1, g2 in pairs:
        if (g1 % 4, g2 % 4) == (1, 2):
            return _build(g1, g2, ClassTag.C_12)
    raise VerificationError(f"no integral basis presentation for Q(√{r1}, √{r2})")


def _build(g1: int, g2: int, tag: ClassTag) -> BiquadField:
    K = BiquadField(g1, g2, tag, shaped_basis(g1, g2, g1, g2))
    verify_basis(K)
    logger.debug("%s: class %s", K, tag.value)
    return K


# mccole: /classify


# mccole: verify
def verify_basis(K: BiquadField):
    """Check that K's basis spans a ring containing the w_i with integral traces."""
    for i in (1, 2, 3):
        if not to_integral_coords(K.omega(i))[1]:
            raise VerificationError(f"{K}: w{i} is not in the span of the basis")
    for i in range(4):
        for j in range(i, 4):
            product = _mul(K.r1, K.r2, K.d, K.basis[i], K.basis[j])
            if not all(c.denominator == 1 for c in K.integral_coords(product)):
                raise VerificationError(f"{K}: B{i + 1}*B{j + 1} leaves the lattice")
    for j, b in enumerate(K.basis_elements()):
        for which in (1, 2, 3):
            if not trace_to_subfield(b, which).is_integral():
                raise VerificationError(f"{K}: trace of B{j + 1} to subfield {which}")

    pairs = reference_pairs(K)
    if not pairs:
        raise VerificationError(f"{K}: no radicand pair has a residue basis")
    for m, n in pairs:
        reference = residue_basis(K.r1, K.r2, m, n)
        for b in reference:
            if not all(c.denominator == 1 for c in K.integral_coords(b)):
                raise VerificationError(f"{K}: basis misses an integer built from ({m}, {n})")
        if abs(_determinant(reference)) != K.covolume:
            raise VerificationError(f"{K}: index differs from the ({m}, {n}) basis")


def reference_pairs(K: BiquadField) -> list[tuple[int, int]]:
    """Every ordered radicand pair whose residues mod 4 select a basis."""
    return [p for p in _candidate_pairs(*K.radicands) if (p[0] % 4, p[1] % 4) in SHAPES]


# mccole: /verify


@lru_cache(maxsize=4)
def field_table(K: BiquadField, bound: int) -> SquareTable:
    """Pool of integral elements of K with integral coordinates up to bound."""
    return SquareTable(4, bound, K.square_vector)
