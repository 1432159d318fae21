from itertools import combinations, permutations
from math import factorial

import pytest

from permrel.engine import enumerate_classes
from permrel.recurrences import (FAMILIES, FIRST_FIXED, FIRST_LAST, RecurrenceContext, class_size,
                                 closure_size, is_jk_squished, is_k_squished, partition_for, squished_count)


def test_g1_values():
    ctx = RecurrenceContext(2)
    assert ctx.g1(1, 2) == 1
    assert ctx.g1(1, 3) == 1
    assert ctx.g1(1, 4) == 2 == ctx.g1(2, 4) + 1


def test_f1_values():
    assert RecurrenceContext(2).f1(2) == 2
    assert RecurrenceContext(2).f1(3) == 5
    assert RecurrenceContext(2).f1(4) == 16
    assert RecurrenceContext(3).f1(4) == 19
    assert RecurrenceContext(2).f1(0) == 1


def test_g2_values():
    ctx = RecurrenceContext(2)
    assert ctx.g2(1, 1, 4) == 1
    assert ctx.g2(0, 1, 4) == 2
    for c in range(2, 6):
        assert RecurrenceContext(c).g2(0, 1, 1) == 1


def test_f2_values():
    ctx = RecurrenceContext(2)
    assert [ctx.f2(n) for n in (2, 3, 4)] == [2, 4, 10]


@pytest.mark.parametrize("c", [2, 3])
@pytest.mark.parametrize("family", FAMILIES)
def test_f_matches_engine(c, family):
    ctx = RecurrenceContext(c)
    K = partition_for(family, c)
    for n in range(1, 9):
        assert ctx.f(family, n) == enumerate_classes(n, K).class_count


@pytest.mark.parametrize("n", range(1, 9))
def test_g1_counts_classes_with_squished_members(n):
    ctx = RecurrenceContext(2)
    rep = enumerate_classes(n, partition_for(FIRST_FIXED, 2))
    for k in range(1, 5):
        classes = {rep.class_of(p) for p in permutations(range(1, n + 1)) if is_k_squished(p, k, 2)}
        assert len(classes) == ctx.g1(k, n)


@pytest.mark.parametrize("n", range(1, 8))
def test_g2_counts_classes_for_each_designation(n):
    ctx = RecurrenceContext(2)
    rep = enumerate_classes(n, partition_for(FIRST_LAST, 2))
    for j, k in [(0, 1), (1, 0), (1, 1), (0, 2), (2, 1)]:
        if j + k > n:
            continue
        for lefts in combinations(range(1, j + k + 1), j):
            rights = [v for v in range(1, j + k + 1) if v not in lefts]
            classes = {rep.class_of(p) for p in permutations(range(1, n + 1))
                       if is_jk_squished(p, lefts, rights, 2)}
            assert len(classes) == ctx.g2(j, k, n)


def test_small_n_factorial_cases():
    for c in (2, 3, 4):
        ctx = RecurrenceContext(c)
        for n in range(1, c + 1):
            assert ctx.f1(n) == ctx.f2(n) == factorial(n)
            assert ctx.g1(1, n) == ctx.g2(0, 1, n) == factorial(n - 1)


def test_monotonicity():
    ctx = RecurrenceContext(2)
    for n in range(1, 13):
        assert ctx.g1(1, n) <= ctx.f1(n)
        for k in range(1, n):
            assert ctx.g1(k + 1, n) <= ctx.g1(k, n)


def test_squished_count():
    assert squished_count(3, 2) == 2
    assert squished_count(5, 2) == 12
    for n in range(1, 7):
        brute = sum(1 for p in permutations(range(1, n + 1)) if is_k_squished(p, n, 2))
        assert squished_count(n, 2) == brute
        for c in range(n - 1, n + 2):
            if c >= 1:
                assert squished_count(n, c) == factorial(n - 1)


def test_identity_class_is_the_squished_set():
    rep = enumerate_classes(5, partition_for(FIRST_FIXED, 2))
    assert rep.size(rep.class_of((1, 2, 3, 4, 5))) == 12 == class_size((1, 2, 3, 4, 5), FIRST_FIXED, 2)


def test_class_size_examples():
    assert class_size((4, 3, 2, 1), FIRST_FIXED, 2) == 1
    assert class_size((5, 4, 3, 2, 1), FIRST_FIXED, 2) == 1
    assert closure_size((1, 2, 3, 4), FIRST_LAST, 2) == enumerate_classes(4, partition_for(FIRST_LAST, 2)).sizes[0]


@pytest.mark.parametrize("c", [2, 3])
@pytest.mark.parametrize("family", FAMILIES)
def test_class_size_matches_engine(c, family):
    K = partition_for(family, c)
    for n in range(1, 8):
        rep = enumerate_classes(n, K)
        sizes = rep.sizes[rep.labels]
        for idx, p in enumerate(permutations(range(1, n + 1))):
            assert class_size(p, family, c) == sizes[idx]
