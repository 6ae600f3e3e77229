"""Bounded enumeration of sums of squares over a finite pool of integral elements."""

from bisect import bisect_left
from collections import defaultdict
from itertools import product
import logging
from typing import Callable

from .errors import DomainError

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


def coordinate_order(c: int) -> int:
    """Position of c in the sequence 0, 1, -1, 2, -2, ..."""
    return 2 * c - 1 if c > 0 else -2 * c


def height(v: Vector) -> int:
    """Largest absolute coordinate."""
    return max((abs(c) for c in v), default=0)


def ordered_box(dim: int, bound: int) -> list[Vector]:
    """Non-zero vectors with height <= bound, by height and then coordinate order."""
    span = range(-bound, bound + 1)
    vectors = [v for v in product(span, repeat=dim) if any(v)]
    vectors.sort(key=lambda v: (height(v), tuple(coordinate_order(c) for c in v)))
    return vectors


def subtract(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


# mccole: table
class SquareTable:
    """Squares of an ordered pool, indexed for sums of one to four of them."""

    def __init__(self, dim: int, bound: int, square: Callable[[Vector], Vector]):
        self.dim = dim
        self.bound = bound
        self.elements = ordered_box(dim, bound)
        self.squares = [square(v) for v in self.elements]
        self.by_square: dict[Vector, list[int]] = defaultdict(list)
        for i, sq in enumerate(self.squares):
            self.by_square[sq].append(i)
        self._pairs: dict[Vector, list[tuple[int, int]]] | None = None

        # shell_sizes[h] = number of pool elements with height <= h
        self.shell_sizes = [0] * (bound + 1)
        for v in self.elements:
            self.shell_sizes[height(v)] += 1
        for h in range(1, bound + 1):
            self.shell_sizes[h] += self.shell_sizes[h - 1]

    # mccole: /table

    @property
    def pairs(self) -> dict[Vector, list[tuple[int, int]]]:
        """Index from a sum of two squares to its (i <= j) index pairs, built on demand."""
        if self._pairs is None:
            logger.debug(
                "building pair index for %d elements at height %d",
                len(self.elements),
                self.bound,
            )
            pairs = defaultdict(list)
            n = len(self.squares)
            for i in range(n):
                sq_i = self.squares[i]
                for j in range(i, n):
                    pairs[add(sq_i, self.squares[j])].append((i, j))
            self._pairs = pairs
        return self._pairs

    # mccole: find
    def find(self, target: Vector, length: int, limit: int | None = None):
        """Lexicographically first non-decreasing index tuple below limit, or None."""
        if limit is None:
            limit = len(self.elements)
        if length == 0:
            return () if not any(target) else None
        if length == 1:
            idxs = self.by_square.get(target)
            return (idxs[0],) if idxs and idxs[0] < limit else None
        if length == 2:
            for i in range(limit):
                j = self._first_single(subtract(target, self.squares[i]), i, limit)
                if j is not None:
                    return (i, j)
            return None
        if length == 3:
            for i in range(limit):
                pair = self._first_pair(subtract(target, self.squares[i]), i, limit)
                if pair is not None:
                    return (i, *pair)
            return None
        if length == 4:
            for i in range(limit):
                rest = subtract(target, self.squares[i])
                for j in range(i, limit):
                    pair = self._first_pair(subtract(rest, self.squares[j]), j, limit)
                    if pair is not None:
                        return (i, j, *pair)
            return None
        raise DomainError(f"lengths above 4 are not searched, got {length}")

    # mccole: /find

    def _first_single(self, value: Vector, start: int, limit: int) -> int | None:
        idxs = self.by_square.get(value)
        if not idxs:
            return None
        pos = bisect_left(idxs, start)
        if pos < len(idxs) and idxs[pos] < limit:
            return idxs[pos]
        return None

    def _first_pair(self, value: Vector, start: int, limit: int):
        candidates = self.pairs.get(value)
        if not candidates:
            return None
        for j, k in candidates[bisect_left(candidates, (start, start)) :]:
            if j >= limit:
                return None
            if k < limit:
                return (j, k)
        return None

    def shortest(self, target: Vector, max_len: int, bound: int | None = None):
        """Shortest representation, then smallest height, then first in pool order."""
        if bound is None:
            bound = self.bound
        for length in range(max_len + 1):
            for h in range(1, bound + 1):
                found = self.find(target, length, self.shell_sizes[h])
                if found is not None:
                    return [self.elements[i] for i in found]
        return None
