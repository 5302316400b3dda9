"""Exact data model shared by every solver in the package.

All weights, sums and ratio values are `fractions.Fraction` instances:
solver logic never touches floating point, so comparisons and tie-handling
are bit-exact.  Instance indices are 1-based everywhere in the public API;
0-based storage is an internal detail.

A two-set instance consists of n weight pairs (a_i, b_i), flattened into a
single weight list of length 2n where position i holds a_i and position
n+i holds b_i.  A solution is a pair of disjoint index sets drawing from
opposite sides of that list; the objective is the ratio of the larger set
sum to the smaller one.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, str, float, Fraction]

__all__ = [
    "Fraction",
    "RationalLike",
    "parse_rational",
    "RatioValue",
    "TwoSetInstance",
    "SolutionPair",
    "IntegerInstance",
    "OpCounter",
    "ratio",
    "max_ratio",
    "check_feasible_two_set",
    "check_feasible_semi_restricted",
]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse a value to an exact Fraction.

    Strings accept both "p/q" and decimal forms.  Floats are interpreted
    through their shortest decimal representation ("0.1" means 1/10, not
    the binary double closest to it), so user-facing decimals stay exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational value: {value!r}") from exc
    raise ValueError(f"not a rational value: {value!r}")


@functools.total_ordering
@dataclass(frozen=True)
class RatioValue:
    """Extended nonnegative ratio: 0, a positive rational, or +infinity.

    The three kinds are totally ordered (0 < every finite value < +inf),
    which lets solver loops compare candidate objectives without sentinel
    numbers.
    """

    _KIND_ZERO = 0
    _KIND_FINITE = 1
    _KIND_INFINITE = 2

    kind: int
    value: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind not in (0, 1, 2):
            raise ValueError(f"bad RatioValue kind: {self.kind}")
        if self.kind == self._KIND_FINITE:
            if self.value is None or self.value <= 0:
                raise ValueError("finite ratio must be a positive rational")
        elif self.value is not None:
            raise ValueError("zero/infinite ratio carries no value")

    @classmethod
    def zero(cls) -> "RatioValue":
        return cls(cls._KIND_ZERO)

    @classmethod
    def finite(cls, value: RationalLike) -> "RatioValue":
        return cls(cls._KIND_FINITE, parse_rational(value))

    @classmethod
    def infinite(cls) -> "RatioValue":
        return cls(cls._KIND_INFINITE)

    @property
    def is_zero(self) -> bool:
        return self.kind == self._KIND_ZERO

    @property
    def is_finite(self) -> bool:
        return self.kind == self._KIND_FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == self._KIND_INFINITE

    def as_fraction(self) -> Fraction:
        if self.kind == self._KIND_ZERO:
            return Fraction(0)
        if self.kind == self._KIND_FINITE:
            assert self.value is not None
            return self.value
        raise ValueError("infinite ratio has no fraction value")

    def __lt__(self, other: "RatioValue") -> bool:
        if not isinstance(other, RatioValue):
            return NotImplemented
        if self.kind != other.kind:
            return self.kind < other.kind
        if self.kind == self._KIND_FINITE:
            assert self.value is not None and other.value is not None
            return self.value < other.value
        return False

    def __str__(self) -> str:
        if self.kind == self._KIND_ZERO:
            return "0"
        if self.kind == self._KIND_INFINITE:
            return "inf"
        return str(self.value)


def _check_index(i: int, count: int) -> None:
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= count:
        raise ValueError(f"index {i!r} out of range 1..{count}")


def _set_sum(indices: Iterable[int], weights: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for i in indices:
        total += weights[i - 1]
    return total


def ratio(s1: Iterable[int], s2: Iterable[int], weights: Sequence[RationalLike]) -> RatioValue:
    """Ordered sum ratio of two index sets over a 1-indexed weight list.

    Returns 0 when the first set is empty and the second is not, the exact
    quotient of the two sums when the second set is nonempty, and +inf
    otherwise (this includes the case of two empty sets).
    """
    w = [parse_rational(v) for v in weights]
    a = frozenset(s1)
    b = frozenset(s2)
    for i in a | b:
        _check_index(i, len(w))
    if not a and b:
        return RatioValue.zero()
    if b:
        return RatioValue.finite(_set_sum(a, w) / _set_sum(b, w))
    return RatioValue.infinite()


def max_ratio(sets: Sequence[Iterable[int]], weights: Sequence[RationalLike]) -> RatioValue:
    """Largest ordered pairwise sum ratio among k >= 2 index sets."""
    if len(sets) < 2:
        raise ValueError("max_ratio needs at least two sets")
    frozen = [frozenset(s) for s in sets]
    best: RatioValue | None = None
    for i, si in enumerate(frozen):
        for j, sj in enumerate(frozen):
            if i == j:
                continue
            r = ratio(si, sj, weights)
            if best is None or best < r:
                best = r
    assert best is not None
    return best


@dataclass(frozen=True)
class TwoSetInstance:
    """n weight pairs flattened to 2n positive weights.

    Index i <= n is the first-side weight of pair i; index n+i is the
    second-side weight of the same pair.  A feasible solution may not use
    both elements of a pair.
    """

    n: int
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("instance needs at least one pair")
        if len(self.weights) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} weights, got {len(self.weights)}")
        for w in self.weights:
            if not isinstance(w, Fraction):
                raise ValueError("weights must be Fractions; use from_pairs/from_weights")
            if w <= 0:
                raise ValueError("all weights must be strictly positive")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> "TwoSetInstance":
        listed = [(parse_rational(a), parse_rational(b)) for a, b in pairs]
        if not listed:
            raise ValueError("instance needs at least one pair")
        firsts = tuple(a for a, _ in listed)
        seconds = tuple(b for _, b in listed)
        return cls(len(listed), firsts + seconds)

    @classmethod
    def from_weights(cls, weights: Sequence[RationalLike]) -> "TwoSetInstance":
        w = tuple(parse_rational(v) for v in weights)
        if len(w) % 2 != 0:
            raise ValueError("flattened weight list must have even length")
        return cls(len(w) // 2, w)

    def weight(self, i: int) -> Fraction:
        _check_index(i, 2 * self.n)
        return self.weights[i - 1]

    def pair(self, i: int) -> tuple[Fraction, Fraction]:
        _check_index(i, self.n)
        return self.weights[i - 1], self.weights[self.n + i - 1]

    def base(self, i: int) -> int:
        """Pair index (1..n) of a flattened index (1..2n)."""
        _check_index(i, 2 * self.n)
        return i if i <= self.n else i - self.n

    def mate(self, i: int) -> int:
        """The other element of i's pair."""
        _check_index(i, 2 * self.n)
        return i + self.n if i <= self.n else i - self.n

    def side(self, i: int) -> int:
        """1 for first-side indices, 2 for second-side indices."""
        _check_index(i, 2 * self.n)
        return 1 if i <= self.n else 2


@dataclass(frozen=True)
class SolutionPair:
    """Two disjoint index sets with their cached weight sums.

    Both sets empty means "no solution"; a solver never returns a pair
    with exactly one empty side.
    """

    s1: frozenset[int]
    s2: frozenset[int]
    sum1: Fraction = field(default_factory=lambda: Fraction(0))
    sum2: Fraction = field(default_factory=lambda: Fraction(0))

    def __post_init__(self) -> None:
        if self.s1 & self.s2:
            raise ValueError("solution sets must be disjoint")
        if bool(self.s1) != bool(self.s2):
            raise ValueError("solution sets must be both empty or both nonempty")

    @classmethod
    def empty(cls) -> "SolutionPair":
        return cls(frozenset(), frozenset())

    @classmethod
    def from_sets(
        cls,
        weights: Sequence[RationalLike],
        s1: Iterable[int],
        s2: Iterable[int],
    ) -> "SolutionPair":
        w = [parse_rational(v) for v in weights]
        a = frozenset(s1)
        b = frozenset(s2)
        for i in a | b:
            _check_index(i, len(w))
        return cls(a, b, _set_sum(a, w), _set_sum(b, w))

    @property
    def is_empty(self) -> bool:
        return not self.s1 and not self.s2

    def value(self) -> RatioValue:
        """Objective of this pair: larger sum over smaller sum."""
        if self.is_empty:
            return RatioValue.infinite()
        hi, lo = max(self.sum1, self.sum2), min(self.sum1, self.sum2)
        return RatioValue.finite(hi / lo)


def check_feasible_two_set(sol: SolutionPair, n: int) -> bool:
    """True iff the pair is a valid two-set solution for n pairs.

    Both sets nonempty, each confined to one side of the flattened list
    (either ordering), and no pair contributes to both sets.  Malformed
    input (out-of-range indices) yields False rather than an error.
    """
    if sol.is_empty:
        return False
    first = set(range(1, n + 1))
    second = set(range(n + 1, 2 * n + 1))
    s1, s2 = set(sol.s1), set(sol.s2)
    if not (s1 | s2) <= (first | second):
        return False
    if s1 & s2:
        return False
    if not ((s1 <= first and s2 <= second) or (s1 <= second and s2 <= first)):
        return False
    bases1 = {(i - 1) % n for i in s1}
    bases2 = {(j - 1) % n for j in s2}
    return not bases1 & bases2


def check_feasible_semi_restricted(sol: SolutionPair, inst: TwoSetInstance, m: int) -> bool:
    """True iff feasible for two-set and the smaller of the two set maxima
    equals the weight of element m.

    The comparison is by weight value, not index: any element whose weight
    equals inst.weight(m) can realise the condition.
    """
    _check_index(m, 2 * inst.n)
    if not check_feasible_two_set(sol, inst.n):
        return False
    max1 = max(inst.weight(i) for i in sol.s1)
    max2 = max(inst.weight(j) for j in sol.s2)
    return min(max1, max2) == inst.weight(m)


@dataclass(frozen=True)
class IntegerInstance:
    """Two-set instance with integer weights plus a designated pivot index.

    The exact solver requires this form; the FPTAS driver produces it by
    scaling and flooring arbitrary rational weights.
    """

    n: int
    weights: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("instance needs at least one pair")
        if len(self.weights) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} weights, got {len(self.weights)}")
        for w in self.weights:
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise ValueError("weights must be integers >= 1")
        if not 1 <= self.m <= 2 * self.n:
            raise ValueError(f"pivot {self.m} out of range 1..{2 * self.n}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], m: int) -> "IntegerInstance":
        listed = list(pairs)
        firsts = tuple(a for a, _ in listed)
        seconds = tuple(b for _, b in listed)
        return cls(len(listed), firsts + seconds, m)

    def pivot_weight(self) -> int:
        return self.weights[self.m - 1]


class OpCounter:
    """Mutable accumulator for instrumented cell-operation counts.

    Thread-safe: solvers may be invoked concurrently against one counter
    (the parallel pivot loop does), and counts must stay deterministic.
    """

    __slots__ = ("cells", "_lock")

    def __init__(self) -> None:
        self.cells = 0
        self._lock = threading.Lock()

    def add(self, amount: int) -> None:
        with self._lock:
            self.cells += amount
