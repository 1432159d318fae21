"""Named verification suites run by ``permrel verify``.

Each suite yields :class:`Check` records; a failing check carries a
counterexample in ``detail``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Callable, Iterator

from . import counting, engine, perm, tableaux
from .partitions import make_cyclic
from .recurrences import FAMILIES, class_size, context, partition_for


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"[{status}] {self.suite}: {self.name}{tail}"


SUITES: dict[str, Callable[..., Iterator[Check]]] = {}


def suite(name):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


@suite("rank")
def rank_roundtrip(max_n=8, **_):
    for n in range(1, min(max_n, 8) + 1):
        bad = next((i for i in range(factorial(n)) if perm.rank(perm.unrank(i, n)) != i), None)
        yield Check("rank", f"unrank/rank round trip on S_{n}", bad is None,
                    "" if bad is None else f"rank {bad}")


@suite("rot-parity")
def rot_parity(max_n=8, **_):
    for n in range(2, min(max_n, 8) + 1):
        bad = None
        for p in permutations(range(1, n + 1)):
            x = p
            for _ in range(n):
                x = perm.rot(x)
            same = perm.parity(perm.rot(p)) == perm.parity(p)
            if x != p or same != (n % 2 == 1):
                bad = p
                break
        yield Check("rot-parity", f"rot has order n and keeps parity iff n odd (n={n})",
                    bad is None, "" if bad is None else perm.format_word(bad))


@suite("harpoon")
def harpoon(max_n=8, **_):
    for m in [(1, 2, 3), (1, 2, 3, 4), (1, 2, 3, 4, 5), (1, 3, 5, 4, 2), (1, 4, 5, 2, 3, 6)]:
        c = len(m)
        if c + 1 > max_n:
            continue
        rep = engine.enumerate_classes(c + 1, make_cyclic(m))
        bad = [j for j in range(1, c + 1)
               if rep.class_of(perm.left_harpoon(j, m)) != rep.class_of(perm.right_harpoon(m, j + 1))
               or rep.class_of(perm.right_harpoon(m, j)) != rep.class_of(perm.left_harpoon(j + 1, m))]
        yield Check("harpoon", f"j->m ~ m<-(j+1) and m<-j ~ (j+1)->m for m={perm.format_word(m, True)}",
                    not bad, f"j={bad}" if bad else "")


@suite("reachability")
def reachability(max_n=9, c=None, **_):
    cs = [c] if c else [3, 4, 5]
    for cc in cs:
        m = perm.identity(cc)
        for n in range(cc + 1, max_n + 1):
            r = engine.verify_reachability(m, n)
            rep_detail = f"{r.nontrivial_classes} nontrivial classes"
            yield Check("reachability", f"all non-avoiders reachable (c={cc}, n={n})", r.all_reachable,
                        "all non-avoiders reachable" if r.all_reachable
                        else "unreachable: " + perm.format_word(r.unreachable[0]))
            expected = 2 if cc % 2 else 1
            yield Check("reachability", f"nontrivial class count (c={cc}, n={n})",
                        r.nontrivial_classes == expected, rep_detail)
    if not c and max_n >= 7:
        r = engine.verify_reachability((1, 4, 5, 2, 3, 6), 7)
        yield Check("reachability", "m=145236, n=7 has two nontrivial classes",
                    r.all_reachable and r.nontrivial_classes == 2, f"{r.nontrivial_classes} nontrivial classes")


@suite("even-n-rot")
def even_n_rot(max_n=8, **_):
    for n in range(4, max_n + 1, 2):
        for c in (3, 5):
            if c >= n:
                continue
            cen = counting.count_filtered(counting.CountQuery(n, c, counting.NON_AVOIDER))
            yield Check("even-n-rot", f"even = odd non-avoiders (n={n}, c={c})",
                        cen.even == cen.odd, f"{cen.even} vs {cen.odd}")


ODD_GAP_CASES = [(7, 5), (9, 5), (9, 7), (11, 7)]


@suite("odd-gap")
def odd_gap(max_n=9, **_):
    for n, c in ODD_GAP_CASES:
        if n > max_n:
            continue
        rep = engine.enumerate_classes(n, make_cyclic(perm.identity(c)))
        nt = rep.nontrivial()
        tags = {rep.parity_tag(i): rep.size(i) for i in nt}
        want = n * tableaux.catalan((n - c - 2) // 2)
        ok = len(nt) == 2 and set(tags) == {perm.EVEN, perm.ODD} and tags[perm.ODD] - tags[perm.EVEN] == want
        yield Check("odd-gap", f"odd class - even class = n*C = {want} (n={n}, c={c})", ok, str(tags))


@suite("bijection")
def bijection(max_n=11, **_):
    for n, c in ODD_GAP_CASES:
        if n > max_n:
            continue
        m = n - c - 1
        huggers = counting.list_matching(counting.CountQuery(n, c, counting.HIT_HUGGER, ends_with=n))
        images = [tableaux.hugger_to_tableau(p, c) for p in huggers]
        onto = sorted(images, key=lambda t: t.top) == tableaux.enumerate_tableaux(m)
        par_ok = all(perm.inversions(p) % 2 == tableaux.tableau_parity(t) for p, t in zip(huggers, images))
        yield Check("bijection", f"huggers ending in n <-> 2x{m} tableaux (n={n}, c={c})",
                    onto and len(set(images)) == len(images), f"{len(huggers)} huggers")
        yield Check("bijection", f"hugger/tableau parity agree (n={n}, c={c})", par_ok)
    for m in range(1, 7):
        ts = tableaux.enumerate_tableaux(m)
        ok = all(tableaux.area_above(tableaux.tableau_to_path(t)) % 2 == tableaux.tableau_parity(t) for t in ts)
        yield Check("bijection", f"area parity = reading-word parity (m={m})", ok)
        paths = [tableaux.tableau_to_path(t) for t in ts]
        invol = all(tableaux.x_involution(tableaux.x_involution(p)) == p for p in paths)
        toggles = all(tableaux.area_above(tableaux.x_involution(p)) % 2 != tableaux.area_above(p) % 2
                      for p in paths if tableaux.x_involution(p) != p)
        yield Check("bijection", f"x_involution is a parity-toggling involution (m={m})", invol and toggles)
        if m % 2:
            fixed = sum(tableaux.x_involution(p) == p for p in paths)
            want = tableaux.catalan((m - 1) // 2)
            gap = tableaux.parity_gap(m)
            yield Check("bijection", f"fixed points = parity gap = C_{(m - 1) // 2} (m={m})",
                        fixed == gap == want, f"fixed={fixed} gap={gap}")


@suite("identities")
def identities(max_n=9, **_):
    for n, c in [(5, 3), (7, 3), (7, 5), (9, 5), (9, 7)]:
        if n > min(max_n, 10):
            continue
        for name, rec in counting.set_identities_check(n, c).items():
            yield Check("identities", f"{name} (n={n}, c={c})", rec["holds"],
                        f"lhs={rec['lhs']} rhs={rec['rhs']}")


@suite("recurrences")
def recurrences(max_n=8, **_):
    for c in (2, 3):
        ctx = context(c)
        for family in FAMILIES:
            K = partition_for(family, c)
            bad = []
            for n in range(1, max_n + 1):
                got = engine.enumerate_classes(n, K).class_count
                if ctx.f(family, n) != got:
                    bad.append((n, ctx.f(family, n), got))
            yield Check("recurrences", f"f matches engine class count ({family}, c={c}, n<={max_n})",
                        not bad, f"(n, f, engine)={bad[0]}" if bad else "")


@suite("class-size")
def class_sizes(max_n=7, **_):
    for c in (2, 3):
        for family in FAMILIES:
            K = partition_for(family, c)
            bad = None
            for n in range(1, min(max_n, 7) + 1):
                rep = engine.enumerate_classes(n, K)
                for p in permutations(range(1, n + 1)):
                    if class_size(p, family, c) != rep.size(rep.class_of(p)):
                        bad = p
                        break
                if bad:
                    break
            yield Check("class-size", f"class_size matches engine ({family}, c={c})", bad is None,
                        perm.format_word(bad) if bad else "")


def run(names, **kwargs) -> list[Check]:
    if not names or "all" in names:
        names = list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    out = []
    for name in names:
        out.extend(SUITES[name](**kwargs))
    return out
