import json
import random
from itertools import permutations
from math import factorial

import pytest

from permrel.engine import MIXED, class_of, enumerate_classes, pq_targets, verify_reachability
from permrel.errors import InvalidWordError, ResourceLimitError
from permrel.partitions import (ReplacementPartition, hits, make_cyclic, make_first_fixed, make_first_last,
                                neighbors, parse_partition)
from permrel.perm import EVEN, ODD, identity, left_harpoon, parity, right_harpoon


def closure_classes(n, K):
    """Oracle: connected components of the transformation graph by plain search."""
    seen = {}
    classes = []
    for p in permutations(range(1, n + 1)):
        if p in seen:
            continue
        comp = [p]
        seen[p] = len(classes)
        stack = [p]
        while stack:
            x = stack.pop()
            for y in neighbors(K, x):
                if y not in seen:
                    seen[y] = len(classes)
                    comp.append(y)
                    stack.append(y)
        classes.append(sorted(comp))
    return classes


def report_classes(rep):
    return [rep.members(i) for i in range(rep.class_count)]


ORACLE_CASES = [
    (3, make_first_fixed(2)),
    (5, parse_partition("{123,321}{132,231}")),
    (6, make_cyclic((1, 2, 3))),
    (6, make_cyclic((1, 3, 2, 4))),
    (6, make_first_last(2)),
    (7, make_cyclic((1, 2, 3, 4, 5))),
    (5, parse_partition("{1234,4321,2143}")),
]


@pytest.mark.parametrize("n, K", ORACLE_CASES, ids=lambda v: str(v))
def test_engine_matches_closure_oracle(n, K):
    rep = enumerate_classes(n, K)
    # classes come out ordered by their smallest member, which is also the oracle's order
    assert report_classes(rep) == closure_classes(n, K)
    for i in range(rep.class_count):
        pars = {parity(p) for p in rep.members(i)}
        assert rep.parity_tag(i) == (pars.pop() if len(pars) == 1 else MIXED)


def test_first_fixed_s3():
    rep = enumerate_classes(3, make_first_fixed(2))
    assert rep.class_count == 5
    assert sorted(rep.sizes.tolist(), reverse=True) == [2, 1, 1, 1, 1]


def test_single_class_for_even_identity():
    rep = enumerate_classes(5, make_cyclic((1, 2, 3, 4)))
    assert len(rep.nontrivial()) == 1


def test_odd_identity_n7_c5():
    rep = enumerate_classes(7, make_cyclic(identity(5)))
    nt = rep.nontrivial()
    assert len(nt) == 2
    sizes = {rep.parity_tag(i): rep.size(i) for i in nt}
    assert sizes[ODD] - sizes[EVEN] == 7


def test_class_of():
    K = parse_partition("{123,321}{132,231}")
    rep = enumerate_classes(5, K)
    assert class_of(rep, (1, 5, 3, 2, 4)) == class_of(rep, (1, 2, 4, 5, 3)) == class_of(rep, (1, 2, 3, 5, 4))
    assert rep.representative(class_of(rep, identity(5))) == identity(5)
    with pytest.raises(InvalidWordError):
        rep.class_of((1, 2, 3))
    cyc = enumerate_classes(5, make_cyclic((1, 2, 3)))
    for p in [(1, 3, 2, 5, 4), (5, 4, 3, 2, 1)]:
        assert not hits(cyc.partition, p)
        assert cyc.size(cyc.class_of(p)) == 1


ALL_SMALL = [make_cyclic((1, 2, 3)), make_cyclic((2, 1, 3)), make_cyclic((1, 3, 2, 4)), make_first_fixed(2),
             make_first_fixed(3), make_first_last(2), parse_partition("{123,321}{132,231}"),
             parse_partition("{1234,2143}")]


@pytest.mark.parametrize("K", ALL_SMALL, ids=str)
@pytest.mark.parametrize("n", range(1, 9))
def test_partition_and_trivial_avoider_correspondence(K, n):
    rep = enumerate_classes(n, K)
    assert int(rep.sizes.sum()) == factorial(n)
    assert len(set(rep.labels.tolist())) == rep.class_count
    trivial = int((rep.sizes == 1).sum())
    assert trivial == rep.avoiders
    if n <= 6:
        avoiders = [p for p in permutations(range(1, n + 1)) if not hits(K, p)]
        assert len(avoiders) == rep.avoiders
        assert all(rep.size(rep.class_of(p)) == 1 for p in avoiders)


def test_degenerate_partition_gives_singletons():
    rep = enumerate_classes(4, make_first_fixed(1))
    assert rep.class_count == 24 == rep.avoiders


def test_pattern_longer_than_n():
    rep = enumerate_classes(3, make_cyclic(identity(5)))
    assert rep.class_count == 6


def test_resource_guard():
    with pytest.raises(ResourceLimitError, match="max_n=11"):
        enumerate_classes(12, make_cyclic((1, 2, 3)))
    with pytest.raises(ResourceLimitError, match="max_n=5"):
        enumerate_classes(6, make_cyclic((1, 2, 3)), max_n=5)


def test_pq_targets():
    t = pq_targets((1, 3, 5, 4, 2), 7)
    assert t.p == (1, 2, 4, 6, 5, 3, 7) and t.q == (2, 1, 4, 6, 5, 3, 7)
    assert pq_targets((1, 2, 3), 4).p == (1, 2, 3, 4)
    assert pq_targets((1, 2, 3), 4).q == (2, 1, 3, 4)
    assert pq_targets((1, 2), 3) == pq_targets((1, 2), 3)
    assert pq_targets((1, 2), 3).q == (2, 1, 3)
    with pytest.raises(ValueError):
        pq_targets((1, 2, 3), 3)
    # with n = c + 1 the targets are 1 -> m and 2 -> m
    m = (1, 3, 5, 4, 2)
    t = pq_targets(m, 6)
    assert t.p == left_harpoon(1, m) and t.q == left_harpoon(2, m)


@pytest.mark.parametrize("n", range(5, 9))
def test_reachability_even_identity(n):
    r = verify_reachability(identity(4), n)
    assert r.all_reachable and r.p_equiv_q and r.nontrivial_classes == 1


def test_reachability_145236():
    r = verify_reachability((1, 4, 5, 2, 3, 6), 7)
    assert r.all_reachable and not r.p_equiv_q and r.nontrivial_classes == 2


def test_reachability_123_n4():
    rep = enumerate_classes(4, make_cyclic((1, 2, 3)))
    assert sorted(rep.size(i) for i in rep.nontrivial()) == [8, 8]
    r = verify_reachability((1, 2, 3), 4, report=rep)
    assert r.all_reachable and r.nontrivial_classes == 2


@pytest.mark.parametrize("m", [(1, 2, 3), (1, 3, 2), (1, 2, 3, 4), (2, 4, 1, 3), (1, 3, 5, 4, 2)])
def test_harpoon_swap(m):
    c = len(m)
    rep = enumerate_classes(c + 1, make_cyclic(m))
    for j in range(1, c + 1):
        assert rep.class_of(left_harpoon(j, m)) == rep.class_of(right_harpoon(m, j + 1))
        assert rep.class_of(right_harpoon(m, j)) == rep.class_of(left_harpoon(j + 1, m))


@pytest.mark.parametrize("m", [(1, 2, 3), (2, 1, 3, 4), (1, 3, 5, 4, 2)])
def test_harpoon_compatibility(m):
    c = len(m)
    K = make_cyclic(m)
    small = enumerate_classes(c + 1, K)
    big = enumerate_classes(c + 2, K)
    rng = random.Random(0)
    for cls in small.nontrivial():
        members = small.members(cls)
        for _ in range(10):
            w, v = rng.choice(members), rng.choice(members)
            i = rng.randint(1, c + 2)
            assert big.class_of(left_harpoon(i, w)) == big.class_of(left_harpoon(i, v))
            assert big.class_of(right_harpoon(w, i)) == big.class_of(right_harpoon(v, i))


@pytest.mark.parametrize("c, n", [(c, n) for c in (3, 5) for n in range(c + 1, 10)])
def test_odd_cyclic_classes_are_parity_pure(c, n):
    rep = enumerate_classes(n, make_cyclic(identity(c)))
    assert all(rep.parity_tag(i) != MIXED for i in range(rep.class_count))
    assert len(rep.nontrivial()) == 2


@pytest.mark.parametrize("m", [(1, 2, 3, 4), (2, 1, 4, 3), (1, 3, 2, 4), (1, 4, 5, 2, 3, 6)])
def test_even_c_has_one_or_two_nontrivial_classes(m):
    rep = enumerate_classes(len(m) + 2, make_cyclic(m))
    assert len(rep.nontrivial()) in (1, 2)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_even_n_equal_parity_of_non_avoiders(n):
    for c in (3, 5):
        if c >= n:
            continue
        rep = enumerate_classes(n, make_cyclic(identity(c)))
        tags = {rep.parity_tag(i): rep.size(i) for i in rep.nontrivial()}
        assert tags[EVEN] == tags[ODD]


@pytest.mark.parametrize("K", [make_cyclic((1, 2, 3)), make_first_last(3), parse_partition("{123,321}{132,231}")],
                         ids=str)
def test_threaded_mode_matches_reference(K):
    ref = enumerate_classes(7, K)
    for threads, chunk in [(2, 97), (4, 1000)]:
        par = enumerate_classes(7, K, threads=threads, chunk=chunk)
        assert json.dumps(par.to_json()) == json.dumps(ref.to_json())
        assert (par.labels == ref.labels).all()
        assert par.avoiders == ref.avoiders


def test_determinism_and_json_shape():
    K = make_first_last(2)
    a = enumerate_classes(6, K).to_json(members=True)
    b = enumerate_classes(6, K).to_json(members=True)
    assert a == b
    assert set(a) == {"n", "partition", "class_count", "avoiders", "classes"}
    assert set(a["classes"][0]) == {"rep", "size", "parity", "members"}
    assert sum(c["size"] for c in a["classes"]) == 720


def test_report_partition_attribute():
    rep = enumerate_classes(4, make_cyclic((1, 2, 3)))
    assert isinstance(rep.partition, ReplacementPartition)
    assert rep.to_json()["partition"] == "{123,231,312}"
