"""Integer vectors, componentwise partial orders, and boxes.

Everything downstream works with plain ``tuple[int, ...]`` values so that
vectors are hashable, comparable, and cheap to stick in sets. The three
orders that matter:

- ``leq``:    a <= b in every coordinate.
- ``lt_neq``: a <= b in every coordinate and a != b.
- ``lt_all``: a < b in every coordinate.

``lt_neq`` is the default strict order for truncation bounds and chain steps;
``lt_all`` is kept selectable because some boundary conventions differ on
which of the two is meant, and the difference is observable (see the
mode-sensitivity diagnostics in :mod:`gsemi.noether`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

Vec = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Raised when two vectors of different lengths meet an operation."""


class OrderMode(str, Enum):
    """Which strict partial order bounds 'strictly below' tests."""

    LT_NEQ = "lt-neq"
    LT_ALL = "lt-all"


def as_vec(xs: Iterable[int]) -> Vec:
    """Normalize any iterable of ints into a Vec, validating entries."""
    v = tuple(int(x) for x in xs)
    if not v:
        raise ValueError("vectors must have at least one coordinate")
    return v


def _pair(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")


def add(a: Vec, b: Vec) -> Vec:
    _pair(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vec, b: Vec) -> Vec:
    _pair(a, b)
    return tuple(x - y for x, y in zip(a, b))


def smul(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def zero(s: int) -> Vec:
    return (0,) * s


def ones(s: int) -> Vec:
    return (1,) * s


def unit(s: int, i: int) -> Vec:
    """The i-th standard basis vector of length s (0-indexed)."""
    if not 0 <= i < s:
        raise IndexError(f"unit index {i} out of range for dimension {s}")
    return tuple(1 if j == i else 0 for j in range(s))


def min_vec(a: Vec, b: Vec) -> Vec:
    """Componentwise minimum. The semigroup axioms close under this."""
    _pair(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def max_vec(a: Vec, b: Vec) -> Vec:
    _pair(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def weight(a: Vec) -> int:
    """Sum of coordinates; the grading all chain lengths are measured in."""
    return sum(a)


def leq(a: Vec, b: Vec) -> bool:
    _pair(a, b)
    return all(x <= y for x, y in zip(a, b))


def lt_neq(a: Vec, b: Vec) -> bool:
    """a <= b componentwise and a != b."""
    return leq(a, b) and a != b


def lt_all(a: Vec, b: Vec) -> bool:
    """a < b in every coordinate."""
    _pair(a, b)
    return all(x < y for x, y in zip(a, b))


def compare(a: Vec, b: Vec, mode: OrderMode) -> bool:
    """True when a is strictly below b in the given mode."""
    if mode is OrderMode.LT_ALL:
        return lt_all(a, b)
    return lt_neq(a, b)


def is_nonnegative(a: Vec) -> bool:
    return all(x >= 0 for x in a)


@dataclass(frozen=True)
class Box:
    """The discrete box [lo, hi] = {v : lo <= v <= hi componentwise}.

    Iteration is lexicographic, which keeps every enumeration in the package
    deterministic. Empty boxes (some lo_i > hi_i) iterate zero elements.
    """

    lo: Vec
    hi: Vec

    def __post_init__(self) -> None:
        _pair(self.lo, self.hi)

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, tuple) or len(v) != len(self.lo):
            return False
        return leq(self.lo, v) and leq(v, self.hi)

    def __iter__(self) -> Iterator[Vec]:
        ranges = [range(l, h + 1) for l, h in zip(self.lo, self.hi)]
        return iter(itertools.product(*ranges))

    def size(self) -> int:
        n = 1
        for l, h in zip(self.lo, self.hi):
            if h < l:
                return 0
            n *= h - l + 1
        return n


def box_to(hi: Vec) -> Box:
    """The box [0, hi]."""
    return Box(zero(len(hi)), hi)
