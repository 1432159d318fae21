"""Class counts and class sizes for the first-letter families.

Here ``c`` is chosen so that hits have size c + 1. The *first-fixed* family
has one nontrivial part, the permutations of S_{c+1} beginning with 1; the
*first-last* family adds a second part, those ending with 1.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .partitions import make_first_fixed, make_first_last, neighbors
from .perm import as_permutation, standardize

FIRST_FIXED = "first_fixed"
FIRST_LAST = "first_last"
FAMILIES = (FIRST_FIXED, FIRST_LAST)


def _fact_or_one(n):
    # empty permutation: a single (empty) class
    return factorial(n - 1) if n >= 1 else 1


class RecurrenceContext:
    """Memoized evaluation of f and g for a fixed c. One context per c."""

    def __init__(self, c: int):
        if c < 1:
            raise ValueError("c must be positive")
        self.c = c
        self._g1: dict[tuple[int, int], int] = {}
        self._f1: dict[int, int] = {}
        self._g2: dict[tuple[int, int, int], int] = {}
        self._f2: dict[int, int] = {}

    def g1(self, k: int, n: int) -> int:
        """Classes in S_n holding a k-squished permutation (first-fixed family)."""
        key = (k, n)
        if key in self._g1:
            return self._g1[key]
        c = self.c
        if n < c + 1:
            val = _fact_or_one(n)
        elif n <= c * k + 1:
            val = 1
        else:
            val = self.g1(k + 1, n) + sum(
                self.g1(k, j - 1) * self.g1(1, n - j + 1) * comb(n - k - 1, n - j)
                for j in range(c * k + 2, n + 1))
        self._g1[key] = val
        return val

    def f1(self, n: int) -> int:
        """Number of classes of S_n under the first-fixed family."""
        if n in self._f1:
            return self._f1[n]
        if n < self.c + 1:
            val = factorial(n)
        else:
            val = sum(self.f1(j - 1) * self.g1(1, n - j + 1) * comb(n - 1, j - 1)
                      for j in range(1, n + 1))
        self._f1[n] = val
        return val

    def g2(self, j: int, k: int, n: int) -> int:
        """Classes in S_n holding a j,k-squished permutation for one fixed designation."""
        key = (j, k, n)
        if key in self._g2:
            return self._g2[key]
        c = self.c
        if n < c + 1:
            val = _fact_or_one(n)
        elif n <= c * k + c * j + 1:
            val = 1
        else:
            val = self.g2(j + 1, k, n) + self.g2(j, k + 1, n) + sum(
                self.g2(j, 1, x) * self.g2(1, k, n - x + 1) * comb(n - j - k - 1, x - j - 1)
                for x in range(c * j + 2, n - c * k))
        self._g2[key] = val
        return val

    def f2(self, n: int) -> int:
        """Number of classes of S_n under the first-last family."""
        if n in self._f2:
            return self._f2[n]
        if n < self.c + 1:
            val = factorial(n)
        else:
            val = sum(self.g2(0, 1, j) * self.g2(1, 0, n - j + 1) * comb(n - 1, j - 1)
                      for j in range(1, n + 1))
        self._f2[n] = val
        return val

    def f(self, family: str, n: int) -> int:
        if family == FIRST_FIXED:
            return self.f1(n)
        if family == FIRST_LAST:
            return self.f2(n)
        raise ValueError(f"unknown family {family!r}")

    def sequence(self, family: str, upto: int) -> list[int]:
        return [self.f(family, n) for n in range(1, upto + 1)]


_contexts: dict[int, RecurrenceContext] = {}


def context(c: int) -> RecurrenceContext:
    if c not in _contexts:
        _contexts[c] = RecurrenceContext(c)
    return _contexts[c]


def partition_for(family: str, c: int):
    if family == FIRST_FIXED:
        return make_first_fixed(c)
    if family == FIRST_LAST:
        return make_first_last(c)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------- squishing

def is_k_squished(p: Sequence[int], k: int, c: int) -> bool:
    """Every letter j <= k sits among the first c(j-1)+1 positions."""
    pos = {v: i + 1 for i, v in enumerate(p)}
    return all(pos[j] <= c * (j - 1) + 1 for j in range(1, min(k, len(p)) + 1))


def is_jk_squished(p: Sequence[int], lefts: Sequence[int], rights: Sequence[int], c: int) -> bool:
    """Letters lefts[i] within the first c*i+1 positions, rights[i] within the last c*i+1."""
    n = len(p)
    pos = {v: i + 1 for i, v in enumerate(p)}
    return (all(pos[v] <= c * i + 1 for i, v in enumerate(sorted(lefts)))
            and all(n - pos[v] + 1 <= c * i + 1 for i, v in enumerate(sorted(rights))))


def squished_count(n: int, c: int) -> int:
    """Number of n-squished permutations of S_n."""
    total = 1
    for t in range(1, n + 1):
        total *= min(c * (t - 1) + 1, n) - (t - 1)
    return total


# --------------------------------------------------------------- class size

@lru_cache(maxsize=None)
def closure_size(p: tuple[int, ...], family: str, c: int) -> int:
    """Size of the class of ``p`` by breadth-first search over transformations."""
    if len(p) < c + 1:
        return 1
    K = partition_for(family, c)
    seen = {p}
    frontier = [p]
    while frontier:
        nxt = []
        for x in frontier:
            for y in neighbors(K, x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def _size_first_fixed(p: tuple[int, ...], c: int) -> int:
    n = len(p)
    if n < c + 1:
        return 1
    pos = {v: i for i, v in enumerate(p)}
    for k in range(1, n + 1):
        if pos[k] > c * (k - 1):
            # k only ever opens a hit, so the two sides never interact
            cut = pos[k]
            return _size_first_fixed(standardize(p[:cut]), c) * _size_first_fixed(standardize(p[cut:]), c)
    return squished_count(n, c)


def _size_first_last(p: tuple[int, ...], c: int) -> int:
    n = len(p)
    if n < c + 1:
        return 1
    # Letter 1 never moves and only ends or opens a hit, so the word splits at it
    # into a piece ending in 1 and a piece starting with 1.
    j = p.index(1)
    left, right = p[:j + 1], p[j:]
    size = 1
    for piece in (left, right):
        if len(piece) > 1:
            size *= closure_size(standardize(piece), FIRST_LAST, c)
    return size


def class_size(p: Sequence[int], family: str, c: int) -> int:
    p = as_permutation(p)
    if family == FIRST_FIXED:
        return _size_first_fixed(p, c)
    if family == FIRST_LAST:
        return _size_first_last(p, c)
    raise ValueError(f"unknown family {family!r}")
