from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from vdw.complex import (
    BOTTOM,
    ApFacet,
    FaceSet,
    d_set,
    decompose,
    enumerate_faces,
    euler_characteristic,
    facets,
    fiber_key,
    gcdtr,
    is_face,
    q_leq,
    step_set,
)
from vdw.errors import DomainError
from vdw.gamma import gamma


def brute_facets(n, k):
    return [set(range(x, x + k * d + 1, d)) for d in range(1, n) for x in range(1, n + 1)
            if x + k * d <= n]


def brute_faces(n, k):
    fac = brute_facets(n, k)
    return {c for r in range(n + 1) for c in combinations(range(1, n + 1), r)
            if r <= 1 or any(set(c) <= f for f in fac)}


def test_facet_147_in_vdw_7_2():
    assert ApFacet(1, 3, 2) in facets(7, 2)
    assert ApFacet(1, 3, 2).vertices == (1, 4, 7)


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_no_facets_when_n_equals_k(k):
    assert facets(k, k) == []


def test_facet_count_25_5():
    assert len(facets(25, 5)) == 50


def test_facet_count_formula():
    for n in range(1, 41):
        for k in range(1, 9):
            expected = sum(n - k * d for d in range(1, (n - 1) // k + 1))
            assert len(facets(n, k)) == expected


def test_complete_graph():
    fs = enumerate_faces(5, 1)
    assert len(fs) == 16
    assert fs.counts() == {-1: 1, 0: 5, 1: 10}


@pytest.mark.parametrize("n, k", [(7, 2), (7, 3), (10, 2), (9, 4), (11, 3), (8, 1)])
def test_enumeration_matches_brute_force(n, k):
    fs = enumerate_faces(n, k)
    assert set(fs) == brute_faces(n, k)
    for dim, bucket in fs.faces_by_dim.items():
        assert list(bucket) == sorted(bucket)
        assert all(len(f) == dim + 1 for f in bucket)


def test_vdw_10_2_face_count():
    # frozen from the brute-force subset check above
    fs = enumerate_faces(10, 2)
    assert fs.counts() == {-1: 1, 0: 10, 1: 36, 2: 20}
    assert len(fs) == 67
    assert sum(len(v) for v in decompose(10, 2).values()) + 1 == 67


def test_non_monotone_in_k():
    assert is_face((1, 4, 7), 7, 2)
    assert not is_face((1, 4, 7), 7, 3)
    assert (1, 4, 7) not in enumerate_faces(7, 3)
    assert (1, 4, 7) in enumerate_faces(7, 2)


def test_is_face_edge_cases():
    assert is_face((), 7, 3)
    assert is_face((4,), 7, 3)
    with pytest.raises(DomainError):
        is_face((0, 3), 7, 3)
    with pytest.raises(DomainError):
        is_face((3, 9), 7, 3)


@pytest.mark.parametrize("n, k", [(9, 2), (10, 3), (12, 4), (8, 1), (6, 6)])
def test_is_face_agrees_with_enumeration(n, k):
    fs = enumerate_faces(n, k)
    for r in range(min(n, k + 3) + 1):
        for c in combinations(range(1, n + 1), r):
            assert is_face(c, n, k) == (c in fs)


def test_downward_closure():
    for n, k in [(15, 3), (12, 5), (20, 2)]:
        fs = enumerate_faces(n, k)
        for f in fs:
            for i in range(len(f)):
                assert f[:i] + f[i + 1:] in fs


def test_gcdtr():
    assert gcdtr((1, 4, 7)) == 3
    assert gcdtr((5,)) == 0
    with pytest.raises(DomainError):
        gcdtr(())


@given(st.sets(st.integers(1, 200), min_size=1, max_size=8), st.integers(0, 100))
def test_gcdtr_translation_invariant(s, t):
    assert gcdtr(v + t for v in s) == gcdtr(s)


def test_gcdtr_is_largest_containing_progression_step():
    for s in combinations(range(1, 13), 3):
        x, y = s[0], s[-1]
        best = max(d for d in range(1, y - x + 1)
                   if (y - x) % d == 0 and set(s) <= set(range(x, y + 1, d)))
        assert gcdtr(s) == best


def test_d_set_example():
    assert d_set(7, 3, 1, 7) == {2, 6}
    rhs = {d for d in range(1, 7) if 6 % d == 0 and 6 // d <= 3}
    assert rhs == {2, 3, 6}


def test_step_set_example():
    # brute force over the facets of vdW(7, 3)
    brute = {f.step for f in facets(7, 3) if {1, 7} <= set(f.vertices)}
    assert step_set(7, 3, 1, 7) == brute == {2}
    assert 1 in step_set(10, 2, 1, 2)


def test_step_set_rejects_non_edges():
    with pytest.raises(DomainError):
        step_set(7, 3, 1, 6)


def test_step_set_brute_force_and_bounded_by_a():
    for n in range(2, 22):
        for k in range(1, 6):
            fac = facets(n, k)
            a = (n - 1) // k
            for x in range(1, n + 1):
                for y in range(x + 1, n + 1):
                    brute = {f.step for f in fac if {x, y} <= set(f.vertices)}
                    if not brute:
                        continue
                    assert step_set(n, k, x, y) == brute
                    assert max(brute) <= a


def test_d_set_adjacent():
    assert d_set(10, 3, 4, 5) == {1}


def test_inclusion_one():
    for n in range(2, 31):
        for k in range(1, 7):
            for x in range(1, n):
                for y in range(x + 1, n + 1):
                    rhs = {d for d in range(1, y - x + 1) if (y - x) % d == 0 and (y - x) // d <= k}
                    assert d_set(n, k, x, y) <= rhs


def test_fiber_key_examples():
    assert fiber_key((3,)) is BOTTOM
    assert fiber_key((4, 5)) is BOTTOM
    assert fiber_key((1, 4, 7), 7, 2) == (1, 7, 3)
    with pytest.raises(DomainError):
        fiber_key(())
    with pytest.raises(DomainError):
        fiber_key((1, 4, 7), 7, 3)


def affine(family, d, x):
    return {tuple(d * v + x for v in f) for f in family}


@pytest.mark.parametrize("n, k", [(7, 2), (7, 3), (12, 3), (14, 4), (10, 1), (13, 6)])
def test_decompose_fibers_are_affine_gammas(n, k):
    fs = enumerate_faces(n, k)
    fibers = decompose(n, k, fs)
    seen = set()
    for q, members in fibers.items():
        assert not seen & set(members)
        seen |= set(members)
        if q is BOTTOM:
            assert set(members) == {(i,) for i in range(1, n + 1)} | {
                (i, i + 1) for i in range(1, n) if (i, i + 1) in fs}
            continue
        x, y, d = q
        assert y - x >= 2 and d in d_set(n, k, x, y)
        assert set(members) == affine(gamma((y - x) // d).members, d, x)
    assert seen | {()} == set(fs)
    # every (x, y, d) with d in D(n, k, x, y) shows up
    keys = {(x, y, d) for x in range(1, n + 1) for y in range(x + 2, n + 1)
            for d in d_set(n, k, x, y)}
    assert keys == set(fibers) - {BOTTOM}


def test_fiber_of_full_step():
    fibers = decompose(9, 2)
    assert fibers[(1, 7, 6)] == [(1, 7)]


def test_fiber_1_7_2():
    # 2 is not in D(7, 2, 1, 7) because {1, 3, 5, 7} needs k >= 3
    assert (1, 7, 2) not in decompose(7, 2)
    assert decompose(7, 2)[(1, 7, 3)] == [(1, 4, 7)]
    brute = {f for f in enumerate_faces(7, 3) if f and f[0] == 1 and f[-1] == 7 and gcdtr(f) == 2}
    assert set(decompose(7, 3)[(1, 7, 2)]) == brute == affine(gamma(3).members, 2, 1)


@pytest.mark.parametrize("n, k", [(12, 3), (15, 2), (11, 5)])
def test_fiber_key_order_preserving(n, k):
    fs = enumerate_faces(n, k)
    for g in fs.nonempty():
        for i in range(len(g)):
            f = g[:i] + g[i + 1:]
            if f:
                assert q_leq(fiber_key(f), fiber_key(g))


def test_euler_characteristics():
    k5 = enumerate_faces(5, 1)
    assert euler_characteristic(k5) == -5
    assert euler_characteristic(k5, reduced=True) == -6
    assert euler_characteristic(FaceSet.from_facets([(1,)])) == 1
    assert euler_characteristic(enumerate_faces(15, 3), reduced=True) == 9


def test_from_facets_generic():
    fs = FaceSet.from_facets([(1, 2, 3)])
    assert len(fs) == 8
    assert fs.maximal_faces == ((1, 2, 3),)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 18), st.integers(1, 5))
def test_small_complexes_partition(n, k):
    fs = enumerate_faces(n, k)
    fibers = decompose(n, k, fs)
    assert sum(map(len, fibers.values())) + 1 == len(fs)
