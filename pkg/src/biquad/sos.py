"""Sums of squares: representation algebra, constructive decompositions, and compression."""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
import logging
import random

from sympy.ntheory.primetest import is_square

from .arith import four_square
from .biquadratic import (
    BiquadElem,
    BiquadField,
    embed_quad,
    field_table,
    require_integral,
    to_integral_coords,
)
from .config import DEFAULT_POOL_HEIGHT, MAX_POOL_HEIGHT
from .errors import (
    DomainError,
    PreconditionError,
    SearchExhausted,
    VerificationError,
    WrongClassError,
)
from .quadratic import QuadElem, shortest_minus_one

logger = logging.getLogger(__name__)

MAX_DECOMPOSE_4 = 5


# mccole: rep
@dataclass(frozen=True)
class SosRep:
    """A target and a list of terms whose squares should sum to it."""

    target: BiquadElem
    terms: tuple[BiquadElem, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def field(self) -> BiquadField:
        return self.target.field

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return f"{self.target} = 0"
        return f"{self.target} = " + " + ".join(f"({t})²" for t in self.terms)

    # mccole: /rep


def sum_squares(terms, K: BiquadField) -> BiquadElem:
    total = K.constant(0)
    for t in terms:
        total = total + t * t
    return total


# mccole: verify
def sos_verify(rep: SosRep) -> bool:
    """Do the squares of the terms sum exactly to the target, with every term integral?"""
    K = rep.field
    if any(t.field != K for t in rep.terms):
        return False
    if not all(t.is_integral() for t in rep.terms):
        return False
    return sum_squares(rep.terms, K) == rep.target


def checked(rep: SosRep) -> SosRep:
    """Return rep unchanged, or raise with the residual."""
    if not sos_verify(rep):
        residual = rep.target - sum_squares(rep.terms, rep.field)
        raise VerificationError(f"sum of squares misses target by {residual}", residual)
    return rep


# mccole: /verify


def _concat(a: SosRep, b: SosRep) -> SosRep:
    return SosRep(a.target + b.target, a.terms + b.terms)


def _product(a: SosRep, b: SosRep) -> SosRep:
    if a.field != b.field:
        raise DomainError(f"representations over {a.field} and {b.field}")
    return SosRep(a.target * b.target, [x * y for x in a.terms for y in b.terms])


def sos_add(a: SosRep, b: SosRep) -> SosRep:
    """Representation of a.target + b.target."""
    if a.field != b.field:
        raise DomainError(f"representations over {a.field} and {b.field}")
    return checked(_concat(a, b))


def sos_mul(a: SosRep, b: SosRep) -> SosRep:
    """Representation of a.target * b.target by expanding the product of sums."""
    return checked(_product(a, b))


def _require_minus_one(m1: SosRep):
    if m1.target != m1.field.constant(-1) or not sos_verify(m1):
        raise PreconditionError(f"not a representation of -1: {m1}")


# mccole: identities
def int_rep(k: int, K: BiquadField, m1: SosRep) -> SosRep:
    """Representation of the rational integer k."""
    if k >= 0:
        return SosRep(K.constant(k), [K.constant(a) for a in four_square(k)])
    _require_minus_one(m1)
    return checked(_product(int_rep(-k, K, m1), m1))


def half_basis_rep(q: int, K: BiquadField, m1: SosRep) -> SosRep:
    """(1 + sqrt(q))/2 = ((1 + sqrt(q))/2)^2 - (q - 1)/4."""
    if q not in K.radicands:
        raise DomainError(f"Q(√{q}) is not a subfield of {K}")
    if q % 4 != 1:
        raise DomainError(f"radicand {q} is not 1 mod 4")
    half = embed_quad(QuadElem(q, Fraction(1, 2), Fraction(1, 2)), K)
    return checked(_concat(SosRep(half * half, [half]), int_rep(-(q - 1) // 4, K, m1)))


def two_sqrt_rep(i: int, K: BiquadField, m1: SosRep) -> SosRep:
    """2*w_i = (1 + w_i)^2 - (1 + r_i)."""
    if i not in (1, 2, 3):
        raise DomainError(f"radicand index must be 1, 2 or 3, got {i}")
    r = K.radicands[i - 1]
    root = K.constant(1) + K.omega(i)
    return checked(_concat(SosRep(root * root, [root]), int_rep(-(1 + r), K, m1)))


# mccole: /identities


@lru_cache(maxsize=128)
def minus_one_rep(K: BiquadField, bound_schedule: tuple[int, ...] | None = None) -> SosRep:
    """Shortest -1 found in the imaginary quadratic subfields of K."""
    if not K.imaginary_subfields:
        raise DomainError(f"{K} has no imaginary quadratic subfield")
    best = None
    for D in K.imaginary_subfields:
        limit = 4 if best is None else len(best[1]) - 1
        if limit < 1:
            break
        try:
            best = (D, shortest_minus_one(D, bound_schedule, limit))
        except SearchExhausted as exc:
            logger.debug("%s: %s", K, exc)
    if best is None:
        raise SearchExhausted(f"no representation of -1 found in any subfield of {K}")
    D, witness = best
    logger.debug("%s: -1 is a sum of %d squares from Q(√-%d)", K, len(witness), D)
    return checked(SosRep(K.constant(-1), [embed_quad(q, K) for q in witness]))


def pythagoras_bound(s: int) -> int:
    """Most squares compress can emit when -1 is a sum of s squares."""
    return s + 1 if s % 2 == 0 else s + 2


@dataclass(frozen=True)
class LazyRep:
    """A representation known only by its target, the sum of its terms, and its length."""

    target: BiquadElem
    total: BiquadElem
    length: int

    @staticmethod
    def of(rep: SosRep) -> "LazyRep":
        total = rep.field.constant(0)
        for t in rep.terms:
            total = total + t
        return LazyRep(rep.target, total, len(rep))

    def __add__(self, other: "LazyRep") -> "LazyRep":
        return LazyRep(
            self.target + other.target, self.total + other.total, self.length + other.length
        )

    def __mul__(self, other: "LazyRep") -> "LazyRep":
        # terms of the product are all x*y, so their sum factors
        return LazyRep(
            self.target * other.target, self.total * other.total, self.length * other.length
        )


# mccole: compress
def _gammas(s: BiquadElem, q: BiquadElem):
    # sum_{i <= j} t_i t_j = (S^2 + sum t_i^2) / 2
    p = (s * s + q).scale(Fraction(1, 2))
    one = s.field.constant(1)
    return s + p + one, s + p, s + one


def gamma_triple(terms, K: BiquadField):
    """(g1, g2, g3) with g1^2 - g2^2 - g3^2 equal to the sum of the squared terms."""
    s = K.constant(0)
    q = K.constant(0)
    for t in terms:
        s = s + t
        q = q + t * t
    return _gammas(s, q)


def _compress(target: BiquadElem, total: BiquadElem, m1: SosRep) -> SosRep:
    g1, g2, g3 = _gammas(total, target)
    if g1 * g1 - g2 * g2 - g3 * g3 != target:
        raise VerificationError(f"gamma identity fails for {target}")

    eps = m1.terms
    out = [g1]
    for i in range(0, len(eps) - 1, 2):
        e1, e2 = eps[i], eps[i + 1]
        out.append(e1 * g2 + e2 * g3)
        out.append(e1 * g3 - e2 * g2)
    if len(eps) % 2 == 1:
        out.append(eps[-1] * g2)
        out.append(eps[-1] * g3)
    result = checked(SosRep(target, [t for t in out if not t.is_zero()]))
    if len(result) > pythagoras_bound(len(eps)):
        raise VerificationError(f"compress produced {len(result)} squares")
    return result


def compress(target: BiquadElem, rep: SosRep, m1: SosRep) -> SosRep:
    """Rewrite a representation of target with at most s+1 or s+2 squares."""
    if rep.target != target or not sos_verify(rep):
        raise PreconditionError(f"representation does not verify for {target}")
    _require_minus_one(m1)
    return _compress(target, LazyRep.of(rep).total, m1)


def compress_lazy(target: BiquadElem, rep: LazyRep, m1: SosRep) -> SosRep:
    """compress for a representation whose terms were never expanded."""
    if rep.target != target:
        raise PreconditionError(f"representation of {rep.target} offered for {target}")
    _require_minus_one(m1)
    logger.debug("compressing %d squares for %s", rep.length, target)
    return _compress(target, rep.total, m1)


# mccole: /compress


def _shortcut(alpha: BiquadElem, m1: SosRep) -> SosRep | None:
    """Zero, perfect squares and -1 skip the pipelines."""
    value = alpha.rational_value()
    if value is None:
        return None
    K = alpha.field
    k = int(value)
    if k >= 0 and is_square(k):
        return SosRep(alpha, [K.constant(isqrt(k))] if k else [])
    if k == -1:
        return m1
    return None


# mccole: decompose
def decompose_any(alpha: BiquadElem) -> SosRep:
    """Any integer of a product-basis field as a sum of squares."""
    K = alpha.field
    if not K.is_class_i:
        raise WrongClassError(
            f"{K} has class {K.class_tag.value}; use decompose_4 for 4*alpha"
        )
    x = require_integral(alpha)
    m1 = minus_one_rep(K)
    short = _shortcut(alpha, m1)
    if short is not None:
        return checked(short)

    first = LazyRep.of(half_basis_rep(K.r1, K, m1))
    second = LazyRep.of(half_basis_rep(K.r2, K, m1))
    third = first * LazyRep.of(half_basis_rep(K.r3, K, m1))
    pre = LazyRep.of(int_rep(x[0], K, m1))
    for xi, basis_rep in zip(x[1:], (first, second, third)):
        pre = pre + LazyRep.of(int_rep(xi, K, m1)) * basis_rep
    if pre.target != alpha:
        raise VerificationError(f"basis expansion of {alpha} gave {pre.target}")
    return compress_lazy(alpha, pre, m1)


def decompose_4(alpha: BiquadElem) -> SosRep:
    """4*alpha as at most five squares, for any integer alpha of a complex biquadratic field."""
    K = alpha.field
    require_integral(alpha)
    four = alpha.scale(4)
    m1 = minus_one_rep(K)

    short = _shortcut(four, m1)
    if short is not None:
        result = checked(short)
    elif K.is_class_i:
        result = decompose_any(four)
    else:
        c = four.coords
        halves = [c[i] / 2 for i in (1, 2, 3)]
        if c[0].denominator != 1 or any(h.denominator != 1 for h in halves):
            raise VerificationError(f"{alpha} has coordinates finer than halves")
        pre = LazyRep.of(int_rep(int(c[0]), K, m1))
        for i, h in zip((1, 2, 3), halves):
            twice = LazyRep.of(two_sqrt_rep(i, K, m1))
            pre = pre + LazyRep.of(int_rep(int(h), K, m1)) * twice
        result = compress_lazy(four, pre, m1)

    if len(result) > MAX_DECOMPOSE_4:
        raise VerificationError(f"{len(result)} squares for 4*({alpha})")
    return result


# mccole: /decompose


@dataclass
class MinimalResult:
    """Shortest representation found inside a search box."""

    length: int
    witness: SosRep
    height_bound: int


def minimal_search(alpha: BiquadElem, max_len: int, height_bound: int) -> MinimalResult | None:
    """Shortest representation by elements with integral coordinates up to height_bound."""
    if not 0 <= max_len <= 4:
        raise DomainError(f"max_len must be between 0 and 4, got {max_len}")
    if height_bound < 1:
        raise DomainError(f"height_bound must be positive, got {height_bound}")
    K = alpha.field
    coords, ok = to_integral_coords(alpha)
    if not ok:
        return None
    target = tuple(int(c) for c in coords)
    found = field_table(K, height_bound).shortest(target, max_len)
    if found is None:
        return None
    rep = checked(SosRep(alpha, [K.from_integral(v) for v in found]))
    return MinimalResult(length=len(rep), witness=rep, height_bound=height_bound)


@dataclass
class EvidenceRow:
    """Minimal length found for one sampled element multiplier*beta."""

    beta: tuple[int, ...]
    searched: int | None
    constructive: int

    @property
    def minimal(self) -> int:
        if self.searched is None:
            return self.constructive
        return min(self.searched, self.constructive)


@dataclass
class EvidenceReport:
    """Bounded-search evidence about the number of squares needed in O_K or 4*O_K."""

    number_field: BiquadField
    pool_height: int
    target_height: int
    multiplier: int = 4
    rows: list[EvidenceRow] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"evidence at height bound {self.pool_height}"

    @property
    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(row.minimal for row in self.rows).items()))

    @property
    def largest(self) -> int:
        return max((row.minimal for row in self.rows), default=0)

    def __str__(self):
        ring = "O_K" if self.multiplier == 1 else f"{self.multiplier}O_K"
        counts = ", ".join(f"{n}: {c}" for n, c in self.histogram.items())
        return (
            f"{self.number_field}, {len(self.rows)} elements of {ring} "
            f"(target height {self.target_height}): minimal lengths {{{counts}}} "
            f"[{self.label}]"
        )


def pythagoras_evidence(
    K: BiquadField,
    samples: int = 200,
    target_height: int = 6,
    pool_height: int = DEFAULT_POOL_HEIGHT,
    seed: int = 0,
    multiplier: int = 4,
) -> EvidenceReport:
    """Sample multiplier*beta and record the fewest squares the search or the construction needs.

    Multiplier 1 needs a field with a product basis.
    """
    if multiplier not in (1, 4):
        raise DomainError(f"multiplier must be 1 or 4, got {multiplier}")
    if multiplier == 1 and not K.is_class_i:
        raise WrongClassError(f"{K} has class {K.class_tag.value}; sample 4*beta instead")
    if not 1 <= pool_height <= MAX_POOL_HEIGHT:
        raise DomainError(
            f"pool height must be between 1 and {MAX_POOL_HEIGHT}, got {pool_height}"
        )
    if samples < 0 or target_height < 0:
        raise DomainError(
            f"samples and target height must be non-negative, got {samples}, {target_height}"
        )
    rng = random.Random(seed)
    report = EvidenceReport(
        number_field=K, pool_height=pool_height, target_height=target_height, multiplier=multiplier
    )
    for _ in range(samples):
        beta_coords = tuple(rng.randint(-target_height, target_height) for _ in range(4))
        beta = K.from_integral(beta_coords)
        if multiplier == 1:
            target, constructive = beta, decompose_any(beta)
        else:
            target, constructive = beta.scale(4), decompose_4(beta)
        found = minimal_search(target, 3, pool_height)
        report.rows.append(
            EvidenceRow(
                beta=beta_coords,
                searched=None if found is None else found.length,
                constructive=len(constructive),
            )
        )
    logger.info("%s", report)
    return report
