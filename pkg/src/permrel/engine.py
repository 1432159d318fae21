"""Exact K-equivalence classes of S_n.

States are permutations indexed by Lehmer rank. A single sweep in rank
order walks S_n with ``next_permutation``, classifies every length-k window
through the partition's rank table, and unions each permutation with the
rewrites of its hit windows. Classes are then labelled in rank order, so
class ``i`` is the one whose minimum-rank member is the i-th smallest
representative.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numba as nb
import numpy as np

from .errors import InvalidWordError, ResourceLimitError
from .partitions import ReplacementPartition, make_cyclic
from .perm import EVEN, ODD, as_permutation, format_word, rank, unrank

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 11
MIXED = "mixed"
_HAS_EVEN, _HAS_ODD = 1, 2
_PARITY_NAMES = {_HAS_EVEN: EVEN, _HAS_ODD: ODD, _HAS_EVEN | _HAS_ODD: MIXED}


# ---------------------------------------------------------------- kernels

@nb.njit(cache=True, nogil=True)
def _next_perm(a):
    """Advance ``a`` to its lexicographic successor; return the parity flip (0/1)."""
    n = a.shape[0]
    i = n - 2
    while i >= 0 and a[i] > a[i + 1]:
        i -= 1
    if i < 0:
        return -1
    j = n - 1
    while a[j] < a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    lo, hi = i + 1, n - 1
    while lo < hi:
        a[lo], a[hi] = a[hi], a[lo]
        lo += 1
        hi -= 1
    return (1 + (n - i - 1) // 2) & 1


@nb.njit(cache=True, nogil=True)
def _rank_of(a, fact):
    n = a.shape[0]
    r = 0
    for i in range(n):
        d = 0
        for j in range(i + 1, n):
            if a[j] < a[i]:
                d += 1
        r += d * fact[n - 1 - i]
    return r


@nb.njit(cache=True, nogil=True)
def _unrank_into(idx, a, fact):
    n = a.shape[0]
    pool = np.arange(1, n + 1)
    size = n
    for i in range(n):
        f = fact[n - 1 - i]
        d = idx // f
        idx -= d * f
        a[i] = pool[d]
        for t in range(d, size - 1):
            pool[t] = pool[t + 1]
        size -= 1


@nb.njit(cache=True, nogil=True)
def _window_rank(a, start, k, fact):
    r = 0
    for t in range(k):
        v = a[start + t]
        d = 0
        for u in range(t + 1, k):
            if a[start + u] < v:
                d += 1
        r += d * fact[k - 1 - t]
    return r


@nb.njit(cache=True, nogil=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@nb.njit(cache=True, nogil=True)
def _union(parent, size, x, y):
    rx = _find(parent, x)
    ry = _find(parent, y)
    if rx == ry:
        return
    if size[rx] < size[ry]:
        rx, ry = ry, rx
    parent[ry] = rx
    size[rx] += size[ry]


@nb.njit(cache=True, nogil=True)
def _emit_neighbors(a, r, k, table, members, offsets, fact, b, s, out_src, out_dst, m):
    """Write edges (r, r2), r2 > r, for every hit window of ``a``.

    Returns the new edge count, or -1 - m if ``a`` avoids the partition.
    """
    n = a.shape[0]
    any_hit = False
    for i in range(n - k + 1):
        pid = table[_window_rank(a, i, k, fact)]
        if pid < 0:
            continue
        any_hit = True
        for t in range(k):
            s[t] = a[i + t]
        s.sort()
        for t in range(n):
            b[t] = a[t]
        for mi in range(offsets[pid], offsets[pid + 1]):
            for t in range(k):
                b[i + t] = s[members[mi, t] - 1]
            r2 = _rank_of(b, fact)
            if r2 > r:
                out_src[m] = r
                out_dst[m] = r2
                m += 1
    if not any_hit:
        return -1 - m
    return m


@nb.njit(cache=True, nogil=True)
def _sweep_union(n, k, table, members, offsets, fact, parent, size):
    """Reference single-threaded pass: union every edge in place. Returns the avoider count."""
    a = np.arange(1, n + 1)
    b = np.empty(n, dtype=np.int64)
    s = np.empty(max(k, 1), dtype=np.int64)
    cap = max(1, (n - k + 1) * members.shape[0])
    src = np.empty(cap, dtype=np.int64)
    dst = np.empty(cap, dtype=np.int64)
    total = fact[n]
    avoiders = 0
    for r in range(total):
        m = _emit_neighbors(a, r, k, table, members, offsets, fact, b, s, src, dst, 0)
        if m < 0:
            avoiders += 1
            m = -1 - m
        for e in range(m):
            _union(parent, size, src[e], dst[e])
        _next_perm(a)
    return avoiders


@nb.njit(cache=True, nogil=True)
def _sweep_edges(r0, r1, n, k, table, members, offsets, fact, out_src, out_dst):
    """Collect edges for ranks in [r0, r1) until the buffer might overflow.

    Returns (next rank to process, edges written, avoiders seen).
    """
    a = np.empty(n, dtype=np.int64)
    _unrank_into(r0, a, fact)
    b = np.empty(n, dtype=np.int64)
    s = np.empty(max(k, 1), dtype=np.int64)
    per_perm = max(1, (n - k + 1) * members.shape[0])
    cap = out_src.shape[0]
    m = 0
    avoiders = 0
    r = r0
    while r < r1 and m + per_perm <= cap:
        m = _emit_neighbors(a, r, k, table, members, offsets, fact, b, s, out_src, out_dst, m)
        if m < 0:
            avoiders += 1
            m = -1 - m
        _next_perm(a)
        r += 1
    return r, m, avoiders


@nb.njit(cache=True, nogil=True)
def _apply_unions(parent, size, src, dst):
    for e in range(src.shape[0]):
        _union(parent, size, src[e], dst[e])


@nb.njit(cache=True, nogil=True)
def _label(n, fact, parent, root_label):
    """Turn ``parent`` into per-rank class labels ordered by minimum member rank.

    ``root_label`` is scratch space of the same length. Returns per-class
    (representative rank, size, parity flags).
    """
    total = fact[n]
    count = 0
    for r in range(total):
        root = _find(parent, r)
        parent[r] = root
        if root == r:
            count += 1
        root_label[r] = -1
    reps = np.empty(count, dtype=parent.dtype)
    sizes = np.zeros(count, dtype=parent.dtype)
    flags = np.zeros(count, dtype=np.uint8)
    a = np.arange(1, n + 1)
    odd = 0
    nxt = 0
    for r in range(total):
        root = parent[r]
        lab = root_label[root]
        if lab < 0:
            lab = nxt
            root_label[root] = lab
            reps[lab] = r
            nxt += 1
        parent[r] = lab
        sizes[lab] += 1
        flags[lab] |= 2 if odd else 1
        if r + 1 < total:
            odd ^= _next_perm(a)
    return reps, sizes, flags


# ----------------------------------------------------------------- report

@dataclass
class ClassReport:
    """Partition of S_n into K-equivalence classes.

    ``labels[r]`` is the class index of the permutation of rank ``r``;
    classes are numbered by increasing representative rank.
    """

    n: int
    partition: ReplacementPartition
    avoiders: int
    reps: np.ndarray
    sizes: np.ndarray
    flags: np.ndarray
    labels: np.ndarray

    @property
    def class_count(self) -> int:
        return len(self.reps)

    def representative(self, cls: int) -> tuple[int, ...]:
        return unrank(int(self.reps[cls]), self.n)

    def size(self, cls: int) -> int:
        return int(self.sizes[cls])

    def parity_tag(self, cls: int) -> str:
        return _PARITY_NAMES[int(self.flags[cls])]

    def class_of(self, p: Sequence[int]) -> int:
        p = as_permutation(p)
        if len(p) != self.n:
            raise InvalidWordError(f"{format_word(p)} is not in S_{self.n}")
        return int(self.labels[rank(p)])

    def nontrivial(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.sizes > 1)]

    def members(self, cls: int) -> list[tuple[int, ...]]:
        return [unrank(int(r), self.n) for r in np.flatnonzero(self.labels == cls)]

    def to_json(self, members: bool = False, nontrivial_only: bool = False) -> dict:
        if nontrivial_only:
            chosen = self.nontrivial()
        else:
            chosen = range(self.class_count)
        classes = []
        for i in chosen:
            entry = {
                "rep": format_word(self.representative(i)),
                "size": self.size(i),
                "parity": self.parity_tag(i),
            }
            if members:
                entry["members"] = [format_word(p) for p in self.members(i)]
            classes.append(entry)
        return {
            "n": self.n,
            "partition": str(self.partition),
            "class_count": self.class_count,
            "avoiders": self.avoiders,
            "classes": classes,
        }


def class_of(report: ClassReport, p: Sequence[int]) -> int:
    return report.class_of(p)


# ------------------------------------------------------------- enumeration

def _index_dtype(total):
    return np.int32 if total < 2**31 else np.int64


def estimate_memory(n: int) -> int:
    """Rough peak bytes for enumerating S_n (parent, size, labels, class arrays)."""
    total = factorial(n)
    width = np.dtype(_index_dtype(total)).itemsize
    return total * (4 * width + 1)


def _fact_table(n):
    return np.array([factorial(i) for i in range(n + 1)], dtype=np.int64)


def enumerate_classes(n: int, K: ReplacementPartition, max_n: int | None = None,
                      threads: int = 1, chunk: int = 1 << 16) -> ClassReport:
    """Partition S_n into K-equivalence classes.

    ``threads=1`` is the reference mode. With more threads, rank chunks are
    swept concurrently and their edges merged on the calling thread; the
    resulting report is identical.
    """
    if max_n is None:
        max_n = DEFAULT_MAX_N
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise ResourceLimitError(
            f"n={n} exceeds the enumeration limit max_n={max_n} "
            f"(~{estimate_memory(n) / 2**20:.0f} MiB needed)")
    log.info("enumerating S_%d under %s, estimated memory %.1f MiB",
             n, K, estimate_memory(n) / 2**20)

    total = factorial(n)
    dtype = _index_dtype(total)
    fact = _fact_table(max(n, K.k))
    table = K.rank_table
    members, offsets = K.member_arrays
    parent = np.arange(total, dtype=dtype)
    size = np.ones(total, dtype=dtype)

    if threads <= 1:
        avoiders = int(_sweep_union(n, K.k, table, members, offsets, fact, parent, size))
    else:
        avoiders = _parallel_union(n, K, table, members, offsets, fact, parent, size, threads, chunk)

    reps, sizes, flags = _label(n, fact, parent, size)
    del size
    return ClassReport(n, K, avoiders, reps, sizes, flags, parent)


def _sweep_chunk(r0, r1, n, k, table, members, offsets, fact):
    per_perm = max(1, (n - k + 1) * members.shape[0])
    cap = max(per_perm, 4 * (r1 - r0))
    srcs, dsts = [], []
    avoiders = 0
    r = r0
    while r < r1:
        src = np.empty(cap, dtype=np.int64)
        dst = np.empty(cap, dtype=np.int64)
        r, m, av = _sweep_edges(r, r1, n, k, table, members, offsets, fact, src, dst)
        avoiders += av
        srcs.append(src[:m])
        dsts.append(dst[:m])
    return np.concatenate(srcs), np.concatenate(dsts), avoiders


def _parallel_union(n, K, table, members, offsets, fact, parent, size, threads, chunk):
    total = factorial(n)
    bounds = [(r0, min(r0 + chunk, total)) for r0 in range(0, total, chunk)]
    avoiders = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = []
        it = iter(bounds)
        # Keep a bounded number of chunks in flight so edge buffers stay small.
        for r0, r1 in it:
            pending.append(pool.submit(_sweep_chunk, r0, r1, n, K.k, table, members, offsets, fact))
            if len(pending) >= 2 * threads:
                break
        while pending:
            src, dst, av = pending.pop(0).result()
            avoiders += av
            _apply_unions(parent, size, src, dst)
            nxt = next(it, None)
            if nxt is not None:
                pending.append(pool.submit(_sweep_chunk, *nxt, n, K.k, table, members, offsets, fact))
    return avoiders


def default_threads() -> int:
    return max(1, os.cpu_count() or 1)


# ------------------------------------------------------------ reachability

@dataclass(frozen=True)
class PQTargets:
    p: tuple[int, ...]
    q: tuple[int, ...]


def pq_targets(m: Sequence[int], n: int) -> PQTargets:
    """p = 1 (m_1+1) ... (m_c+1) (c+2) ... n, and q = p with letters 1 and 2 swapped."""
    m = as_permutation(m)
    c = len(m)
    if n <= c:
        raise ValueError(f"need n > c, got n={n}, c={c}")
    p = (1,) + tuple(v + 1 for v in m) + tuple(range(c + 2, n + 1))
    swap = {1: 2, 2: 1}
    q = tuple(swap.get(v, v) for v in p)
    return PQTargets(p, q)


@dataclass
class Reachability:
    m: tuple[int, ...]
    n: int
    targets: PQTargets
    non_avoiders: int
    unreachable: list[tuple[int, ...]]
    p_equiv_q: bool
    nontrivial_classes: int

    @property
    def all_reachable(self) -> bool:
        return not self.unreachable

    def to_json(self) -> dict:
        return {
            "m": format_word(self.m),
            "n": self.n,
            "p": format_word(self.targets.p),
            "q": format_word(self.targets.q),
            "non_avoiders": self.non_avoiders,
            "all_reachable": self.all_reachable,
            "p_equiv_q": self.p_equiv_q,
            "nontrivial_classes": self.nontrivial_classes,
            "unreachable_sample": [format_word(x) for x in self.unreachable[:10]],
        }


def verify_reachability(m: Sequence[int], n: int, report: ClassReport | None = None,
                        **kwargs) -> Reachability:
    """Check that every non-avoider of the cyclic family of ``m`` is equivalent to p or q."""
    m = as_permutation(m)
    targets = pq_targets(m, n)
    if report is None:
        report = enumerate_classes(n, make_cyclic(m), **kwargs)
    cp, cq = report.class_of(targets.p), report.class_of(targets.q)
    ok = {cp, cq}
    nontrivial = report.nontrivial()
    unreachable = []
    for cls in nontrivial:
        if cls not in ok:
            unreachable.extend(report.members(cls)[:10])
    non_avoiders = factorial(n) - report.avoiders
    return Reachability(m, n, targets, non_avoiders, unreachable, cp == cq, len(nontrivial))
