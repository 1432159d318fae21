from itertools import permutations

import pytest

from permrel.counting import HIT_HUGGER, CountQuery, iter_matching, list_matching
from permrel.perm import inversions, parity
from permrel.tableaux import (Tableau, area_above, catalan, cells_above, check_path, crossing_pairs,
                              enumerate_paths, enumerate_tableaux, hugger_to_tableau, legs, parity_gap,
                              path_to_tableau, reading_word, shrink_fixed_path, tableau_parity, tableau_to_path,
                              x_involution)


def brute_tableaux(m):
    """Oracle: filter every arrangement of 1..2m into two rows."""
    out = []
    for p in permutations(range(1, 2 * m + 1)):
        top, bottom = p[:m], p[m:]
        if list(top) == sorted(top) and list(bottom) == sorted(bottom) and all(a < b for a, b in zip(top, bottom)):
            out.append(Tableau(top, bottom))
    return out


def brute_paths(m):
    out = []
    for bits in range(2 ** (2 * m)):
        path = "".join("R" if bits >> (2 * m - 1 - i) & 1 else "D" for i in range(2 * m))
        try:
            check_path(path)
        except ValueError:
            continue
        out.append(path)
    return sorted(out)


def test_catalan():
    assert catalan(0) == 1
    assert catalan(3) == 5
    assert catalan(10) == 16796
    from math import comb
    assert all(catalan(n) == comb(2 * n, n) - comb(2 * n, n + 1) for n in range(30))


@pytest.mark.parametrize("m", range(0, 5))
def test_tableaux_enumeration(m):
    ts = enumerate_tableaux(m)
    assert sorted(ts, key=lambda t: t.top) == sorted(brute_tableaux(m), key=lambda t: t.top)
    assert len(ts) == catalan(m)


def test_tableaux_small():
    assert enumerate_tableaux(1) == [Tableau((1,), (2,))]
    assert enumerate_tableaux(2) == [Tableau((1, 2), (3, 4)), Tableau((1, 3), (2, 4))]
    with pytest.raises(ValueError):
        Tableau((2,), (1,))


def test_reading_words_and_paths():
    t1, t2 = Tableau((1, 2), (3, 4)), Tableau((1, 3), (2, 4))
    assert reading_word(t1) == (1, 2, 3, 4) and parity(reading_word(t1)) == "even"
    assert reading_word(t2) == (1, 3, 2, 4) and parity(reading_word(t2)) == "odd"
    assert tableau_to_path(t1) == "RRDD"
    assert tableau_to_path(t2) == "RDRD"


@pytest.mark.parametrize("m", range(1, 6))
def test_inversions_equal_crossing_pairs(m):
    for t in enumerate_tableaux(m):
        assert inversions(reading_word(t)) == crossing_pairs(t)


@pytest.mark.parametrize("m", range(1, 7))
def test_path_tableau_round_trip(m):
    paths = sorted(enumerate_paths(m))
    assert paths == brute_paths(m)
    for t in enumerate_tableaux(m):
        assert path_to_tableau(tableau_to_path(t)) == t


def test_area_examples():
    assert area_above("RRRDDD") == 0
    assert area_above("RDRDRD") == 3
    assert area_above("RRDRDD") == 1


@pytest.mark.parametrize("m", range(1, 6))
def test_area_formula_and_parity(m):
    for t in enumerate_tableaux(m):
        path = tableau_to_path(t)
        assert area_above(path) == len(cells_above(path))
        assert area_above(path) % 2 == tableau_parity(t)


@pytest.mark.parametrize("m", range(1, 7))
def test_x_involution(m):
    paths = list(enumerate_paths(m))
    fixed = []
    for p in paths:
        q = x_involution(p)
        check_path(q)
        assert x_involution(q) == p
        if q == p:
            fixed.append(p)
            assert area_above(p) % 2 == 0
            inner = legs(p)[1:-1]
            assert all(x % 2 == 0 for x in inner)
        else:
            assert area_above(q) % 2 != area_above(p) % 2
    if m % 2:
        assert len(fixed) == catalan((m - 1) // 2)
        # shrinking fixed paths lands bijectively on the smaller grid's paths
        assert sorted(shrink_fixed_path(p) for p in fixed) == sorted(enumerate_paths((m - 1) // 2))
    else:
        assert fixed == []


def test_x_involution_m3():
    paths = list(enumerate_paths(3))
    assert sorted(area_above(p) for p in paths) == [0, 1, 2, 2, 3]
    assert [p for p in paths if x_involution(p) == p] == ["RRRDDD"]


@pytest.mark.parametrize("m, gap", [(1, 1), (3, 1), (5, 2), (7, 5)])
def test_parity_gap(m, gap):
    assert parity_gap(m) == gap == catalan((m - 1) // 2)


def test_parity_gap_even_m_rejected():
    with pytest.raises(ValueError):
        parity_gap(4)


def test_hugger_to_tableau_example():
    assert hugger_to_tableau((4, 5, 1, 2, 3, 6, 7), 5) == Tableau((1,), (2,))


def test_hugger_to_tableau_errors():
    with pytest.raises(ValueError):
        hugger_to_tableau((1, 2, 3, 4, 5, 6, 7), 5)
    with pytest.raises(ValueError):
        hugger_to_tableau((4, 5, 1, 2, 3, 7, 6), 5)
    with pytest.raises(ValueError):
        hugger_to_tableau((4, 5, 1, 2, 3, 6, 7), 3)


@pytest.mark.parametrize("n, c", [(7, 5), (9, 5), (9, 7), (11, 7)])
def test_hugger_bijection(n, c):
    q = CountQuery(n, c, HIT_HUGGER, ends_with=n)
    huggers = list_matching(q)
    if n <= 9:
        assert huggers == list(iter_matching(q))
    images = [hugger_to_tableau(p, c) for p in huggers]
    assert len(set(images)) == len(images)
    assert set(images) == set(enumerate_tableaux(n - c - 1))
    for p, t in zip(huggers, images):
        assert inversions(p) % 2 == tableau_parity(t)
