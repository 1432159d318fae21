"""Replacement partitions of S_k, hits, and one-step transformations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import factorial
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegeneratePartitionError, InvalidPartitionError
from .perm import as_permutation, format_word, parse_permutation, rank, standardize

MAX_PATTERN_SIZE = 9


class Hit(NamedTuple):
    position: int  # 1-based start of the window
    part_index: int


@dataclass(frozen=True)
class ReplacementPartition:
    """A partition of S_k given by its nontrivial parts.

    Singleton parts are implicit. Parts keep the order they were given in,
    and so do the members inside each part.
    """

    k: int
    parts: tuple[tuple[tuple[int, ...], ...], ...]
    _lookup: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidPartitionError("pattern size must be positive")
        lookup = {}
        for idx, part in enumerate(self.parts):
            if len(part) < 2:
                raise InvalidPartitionError(f"part {idx} has fewer than two members")
            for pat in part:
                if len(pat) != self.k:
                    raise InvalidPartitionError(f"pattern {pat} does not have size {self.k}")
                as_permutation(pat)
                if pat in lookup:
                    raise InvalidPartitionError(f"pattern {format_word(pat, True)} appears twice")
                lookup[pat] = idx
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[Sequence[int]]], k: int | None = None):
        parts = tuple(tuple(tuple(int(x) for x in pat) for pat in part) for part in parts)
        if k is None:
            sizes = {len(pat) for part in parts for pat in part}
            if len(sizes) != 1:
                raise InvalidPartitionError(f"cannot infer a single pattern size from {sorted(sizes)}")
            k = sizes.pop()
        return cls(k, parts)

    def __str__(self):
        if not self.parts:
            return "{}"
        return "".join("{" + ",".join(format_word(p, compact=True) for p in part) + "}" for part in self.parts)

    @property
    def is_degenerate(self) -> bool:
        return not self.parts

    def part_id(self, p: Sequence[int]) -> int | None:
        p = tuple(p)
        if len(p) != self.k:
            raise InvalidPartitionError(f"pattern {p} has size {len(p)}, partition is of S_{self.k}")
        return self._lookup.get(p)

    @cached_property
    def rank_table(self) -> np.ndarray:
        """Part index of every pattern of S_k by Lehmer rank, -1 for singletons."""
        if self.k > MAX_PATTERN_SIZE:
            raise InvalidPartitionError(f"pattern size {self.k} exceeds {MAX_PATTERN_SIZE}")
        table = np.full(factorial(self.k), -1, dtype=np.int32)
        for pat, idx in self._lookup.items():
            table[rank(pat)] = idx
        return table

    @cached_property
    def member_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(members, offsets): part i owns rows offsets[i]:offsets[i+1] of members."""
        rows = [pat for part in self.parts for pat in part]
        members = np.array(rows, dtype=np.int64).reshape(len(rows), self.k)
        offsets = np.zeros(len(self.parts) + 1, dtype=np.int64)
        np.cumsum([len(part) for part in self.parts], out=offsets[1:])
        return members, offsets


def make_custom(parts: Sequence[Sequence[Sequence[int]]]) -> ReplacementPartition:
    return ReplacementPartition.from_parts(parts)


def parse_partition(text: str) -> ReplacementPartition:
    """Parse the brace syntax ``"{123,321}{132,231}"``."""
    text = text.replace(" ", "")
    groups = re.findall(r"\{([^{}]*)\}", text)
    if not groups or "".join("{" + g + "}" for g in groups) != text:
        raise InvalidPartitionError(f"cannot parse partition {text!r}")
    parts = [[parse_permutation(tok) for tok in g.split(",") if tok] for g in groups]
    # A lone pattern in braces is an explicit singleton part; drop it.
    parts = [part for part in parts if len(part) > 1]
    if not parts:
        raise DegeneratePartitionError(f"partition {text!r} has no nontrivial part")
    return ReplacementPartition.from_parts(parts)


def cyclic_shifts(m: Sequence[int]) -> list[tuple[int, ...]]:
    m = tuple(m)
    return [m[a:] + m[:a] for a in range(len(m))]


def make_cyclic(m: Sequence[int]) -> ReplacementPartition:
    """One nontrivial part: ``m`` and all of its cyclic shifts."""
    m = as_permutation(m)
    if len(m) < 2:
        raise InvalidPartitionError("cyclic family needs a pattern of size at least 2")
    return ReplacementPartition(len(m), (tuple(cyclic_shifts(m)),))


def make_first_fixed(c: int) -> ReplacementPartition:
    """One part of S_{c+1}: every permutation beginning with 1."""
    if c < 1:
        raise InvalidPartitionError("c must be at least 1")
    part = tuple(x for x in permutations(range(1, c + 2)) if x[0] == 1)
    return ReplacementPartition(c + 1, (part,) if len(part) > 1 else ())


def make_first_last(c: int) -> ReplacementPartition:
    """Two parts of S_{c+1}: permutations beginning with 1, and those ending with 1."""
    if c < 2:
        raise DegeneratePartitionError("first/last family needs c >= 2")
    everything = list(permutations(range(1, c + 2)))
    first = tuple(x for x in everything if x[0] == 1)
    last = tuple(x for x in everything if x[-1] == 1)
    return ReplacementPartition(c + 1, (first, last))


def hits(K: ReplacementPartition, w: Sequence[int]) -> list[Hit]:
    k = K.k
    found = []
    for i in range(len(w) - k + 1):
        idx = K.part_id(standardize(w[i:i + k]))
        if idx is not None:
            found.append(Hit(i + 1, idx))
    return found


def avoids(K: ReplacementPartition, w: Sequence[int]) -> bool:
    return not hits(K, w)


def neighbors(K: ReplacementPartition, p: Sequence[int]) -> set[tuple[int, ...]]:
    """Every permutation reachable from ``p`` by a single K-transformation."""
    p = tuple(p)
    k = K.k
    out = set()
    for pos, idx in hits(K, p):
        start = pos - 1
        window = p[start:start + k]
        letters = sorted(window)
        for pat in K.parts[idx]:
            new = tuple(letters[v - 1] for v in pat)
            if new != window:
                out.add(p[:start] + new + p[start + k:])
    return out
