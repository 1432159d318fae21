"""Words and permutations in one-line notation.

Permutations are plain tuples of ints ``(p_1, ..., p_n)`` holding each of
``1..n`` exactly once. Words are tuples of distinct positive ints. Every
function here is pure and returns new tuples.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Sequence

from .errors import EmptyInputError, InvalidWordError

EVEN = "even"
ODD = "odd"


def as_word(letters: Iterable[int]) -> tuple[int, ...]:
    w = tuple(int(x) for x in letters)
    if any(x < 1 for x in w):
        raise InvalidWordError(f"letters must be positive integers: {w}")
    if len(set(w)) != len(w):
        raise InvalidWordError(f"word has repeated letters: {w}")
    return w


def as_permutation(letters: Iterable[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in letters)
    if not p:
        raise EmptyInputError("a permutation needs at least one letter")
    if sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidWordError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"1,3,5,4,2"`` or the compact form ``"13542"``."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return as_word(int(tok) for tok in text.split(","))
    if not text.isdigit():
        raise InvalidWordError(f"cannot parse word {text!r}")
    return as_word(int(ch) for ch in text)


def parse_permutation(text: str) -> tuple[int, ...]:
    return as_permutation(parse_word(text))


def format_word(w: Sequence[int], compact: bool = False) -> str:
    if compact and all(x <= 9 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def standardize(w: Sequence[int]) -> tuple[int, ...]:
    """Order permutation of a word with distinct letters: 425 -> 213."""
    if len(w) == 0:
        raise EmptyInputError("cannot standardize the empty word")
    if len(set(w)) != len(w):
        raise InvalidWordError(f"word has repeated letters: {tuple(w)}")
    order = sorted(range(len(w)), key=w.__getitem__)
    out = [0] * len(w)
    for value, pos in enumerate(order, start=1):
        out[pos] = value
    return tuple(out)


def inversions(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def parity(p: Sequence[int]) -> str:
    return ODD if inversions(p) % 2 else EVEN


def rot(x: Sequence[int]) -> tuple[int, ...]:
    """Post-compose with the n-cycle 23...n1: every letter v becomes v mod n + 1."""
    n = len(x)
    return tuple(v % n + 1 for v in x)


def left_harpoon(i: int, w: Sequence[int]) -> tuple[int, ...]:
    """Shift letters >= i up by one, then prepend i."""
    return (i,) + tuple(v + 1 if v >= i else v for v in w)


def right_harpoon(w: Sequence[int], i: int) -> tuple[int, ...]:
    """Shift letters >= i up by one, then append i."""
    return tuple(v + 1 if v >= i else v for v in w) + (i,)


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def lehmer_code(p: Sequence[int]) -> list[int]:
    n = len(p)
    return [sum(1 for j in range(i + 1, n) if p[j] < p[i]) for i in range(n)]


def rank(p: Sequence[int]) -> int:
    """Lexicographic (Lehmer-code) rank of ``p`` in S_n; the identity has rank 0."""
    n = len(p)
    r = 0
    for i, d in enumerate(lehmer_code(p)):
        r += d * factorial(n - 1 - i)
    return r


def unrank(idx: int, n: int) -> tuple[int, ...]:
    if n < 1:
        raise EmptyInputError("n must be positive")
    if not 0 <= idx < factorial(n):
        raise IndexError(f"rank {idx} out of range for S_{n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n - 1, -1, -1):
        d, idx = divmod(idx, factorial(i))
        out.append(pool.pop(d))
    return tuple(out)
