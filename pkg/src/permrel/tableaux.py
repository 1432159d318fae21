"""Two-row standard Young tableaux, lattice paths, and the parity involution.

A lattice path in an m x m grid starts at the top-left corner and ends at
the bottom-right corner, using steps ``R`` (right) and ``D`` (down), and
never dips below the main diagonal: every prefix has at least as many R's
as D's. Grid columns are numbered 1..m left to right and rows 1..m top to
bottom. The area above a path counts the cells between it and the top edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .perm import as_permutation, inversions, standardize

RIGHT, DOWN = "R", "D"


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan index must be nonnegative")
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class Tableau:
    """A standard Young tableau of shape 2 x m."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        m = len(self.top)
        if len(self.bottom) != m:
            raise ValueError("rows must have equal length")
        if sorted(self.top + self.bottom) != list(range(1, 2 * m + 1)):
            raise ValueError(f"entries must be 1..{2 * m}")
        for row in (self.top, self.bottom):
            if any(x >= y for x, y in zip(row, row[1:])):
                raise ValueError("rows must increase")
        if any(t >= b for t, b in zip(self.top, self.bottom)):
            raise ValueError("columns must increase")

    @property
    def m(self) -> int:
        return len(self.top)

    def to_json(self) -> dict:
        return {"top": list(self.top), "bottom": list(self.bottom)}


def enumerate_tableaux(m: int) -> list[Tableau]:
    """All 2 x m standard Young tableaux, in lexicographic order of the top row."""
    out = []

    def grow(top, bottom, nxt):
        if nxt > 2 * m:
            out.append(Tableau(tuple(top), tuple(bottom)))
            return
        if len(top) < m:
            top.append(nxt)
            grow(top, bottom, nxt + 1)
            top.pop()
        if len(bottom) < len(top):
            bottom.append(nxt)
            grow(top, bottom, nxt + 1)
            bottom.pop()

    grow([], [], 1)
    return out


def reading_word(t: Tableau) -> tuple[int, ...]:
    """Latin reading word: the top row followed by the bottom row."""
    return t.top + t.bottom


def crossing_pairs(t: Tableau) -> int:
    """Pairs i < j with i in the bottom row and j in the top row."""
    return sum(1 for i in t.bottom for j in t.top if i < j)


def tableau_to_path(t: Tableau) -> str:
    where = {v: RIGHT for v in t.top}
    where.update({v: DOWN for v in t.bottom})
    return "".join(where[e] for e in range(1, 2 * t.m + 1))


def path_to_tableau(path: str) -> Tableau:
    check_path(path)
    top = tuple(e for e, s in enumerate(path, start=1) if s == RIGHT)
    bottom = tuple(e for e, s in enumerate(path, start=1) if s == DOWN)
    return Tableau(top, bottom)


def check_path(path: str) -> None:
    height = 0
    for s in path:
        if s == RIGHT:
            height += 1
        elif s == DOWN:
            height -= 1
        else:
            raise ValueError(f"bad step {s!r}")
        if height < 0:
            raise ValueError(f"path {path} dips below the diagonal")
    if height != 0:
        raise ValueError(f"path {path} does not end at the corner")


def enumerate_paths(m: int) -> Iterator[str]:
    for t in enumerate_tableaux(m):
        yield tableau_to_path(t)


def area_above(path: str) -> int:
    """Sum over right steps of the number of down steps before them."""
    downs = 0
    area = 0
    for s in path:
        if s == DOWN:
            downs += 1
        else:
            area += downs
    return area


def cells_above(path: str) -> set[tuple[int, int]]:
    """(column, row) of every cell above the path, found cell by cell."""
    m = len(path) // 2
    # lowest y reached along each column's top edge
    depth = {}
    x = y = 0
    for s in path:
        if s == RIGHT:
            x += 1
            depth[x] = y
        else:
            y += 1
    return {(col, row) for col in range(1, m + 1) for row in range(1, m + 1) if row <= depth[col]}


def _is_x_cell(col: int, row: int) -> bool:
    return col % 2 == 0 and row % 2 == 1


def _first_x_corner(path: str) -> int | None:
    """Index t where steps t, t+1 wrap two sides of a marked cell, scanning in path order."""
    x = y = 0
    for t in range(len(path) - 1):
        a, b = path[t], path[t + 1]
        if a == RIGHT:
            x += 1
            # top and right sides of the cell (x, y + 1)
            if b == DOWN and _is_x_cell(x, y + 1):
                return t
        else:
            y += 1
            # left and bottom sides of the cell (x + 1, y)
            if b == RIGHT and _is_x_cell(x + 1, y):
                return t
    return None


def x_involution(path: str) -> str:
    """Flip the path around the first marked cell it wraps; paths wrapping none are fixed.

    Marked cells sit in even columns and odd rows.
    """
    t = _first_x_corner(path)
    if t is None:
        return path
    return path[:t] + path[t + 1] + path[t] + path[t + 2:]


def legs(path: str) -> list[int]:
    out = []
    for i, s in enumerate(path):
        if i and s == path[i - 1]:
            out[-1] += 1
        else:
            out.append(1)
    return out


def parity_gap(m: int) -> int:
    """(#paths with even area) - (#paths with odd area) in the m x m grid, m odd."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"parity gap is only defined here for odd m, got {m}")
    gap = 0
    for path in enumerate_paths(m):
        gap += -1 if area_above(path) % 2 else 1
    return gap


def shrink_fixed_path(path: str) -> str:
    """Drop the first and last steps of a fixed path and halve every leg."""
    inner = path[1:-1]
    out = []
    for i in range(0, len(inner), 2):
        if inner[i] != inner[i + 1]:
            raise ValueError(f"{path} is not a fixed point of the involution")
        out.append(inner[i])
    return "".join(out)


def hugger_to_tableau(p: Sequence[int], c: int) -> Tableau:
    """Tableau of a hit-hugger ending in n (n odd, c > n/2).

    Top row: relative order of letters 2..n-c; bottom row: letters c+1..n-1.
    """
    from .counting import HIT_HUGGER, matches

    p = as_permutation(p)
    n = len(p)
    if n % 2 == 0:
        raise ValueError(f"n={n} must be odd")
    if 2 * c <= n:
        raise ValueError(f"need c > n/2, got n={n}, c={c}")
    if p[-1] != n:
        raise ValueError(f"hit-hugger must end in {n}")
    if c % 2 == 0 or not matches(p, c, HIT_HUGGER):
        raise ValueError(f"{p} is not a hit-hugger for c={c}")
    top = p[1:n - c]
    bottom = p[c:n - 1]
    st = standardize(top + bottom)
    m = n - c - 1
    return Tableau(st[:m], st[m:])


def tableau_parity(t: Tableau) -> int:
    return inversions(reading_word(t)) % 2
