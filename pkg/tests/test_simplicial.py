"""Core simplicial machinery: normal forms, standard objects, products,
joins, subcomplexes, map enumeration, and horn filling."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcatk import simplicial as sx
from qcatk.cats import nerve, cyclic_group_category, chain_poset
from qcatk.simplicial import SimplexKey
from qcatk.zoo import random_poset


# ---------------------------------------------------------------------------
# normal form arithmetic


@given(st.lists(st.integers(0, 5), max_size=6))
@settings(max_examples=100)
def test_degeneracy_words_stay_strictly_decreasing(word):
    k = SimplexKey((2, 0))
    for i in word:
        k = sx.key_degeneracy(k, min(i, k.dim))
    assert all(k.degens[i] > k.degens[i + 1] for i in range(len(k.degens) - 1))
    assert k.dim == 2 + len(k.degens)


@given(st.integers(1, 4), st.integers(0, 4))
@settings(max_examples=60)
def test_face_of_degeneracy_recovers_simplex(n, i):
    """d_i s_i = id and d_{i+1} s_i = id on every simplex of Delta[n]."""
    D = sx.delta(n)
    for k in D.simplices(min(n, 2)):
        j = min(i, k.dim)
        s = D.degeneracy(k, j)
        assert D.face(s, j) == k
        assert D.face(s, j + 1) == k


def test_simplicial_identities_hold_on_standard_objects():
    for X in [sx.delta(3), sx.boundary(3), sx.horn(3, 1), sx.spine(4)]:
        X.check()


# ---------------------------------------------------------------------------
# standard objects


def test_standard_object_generator_counts():
    assert sx.delta(2).n_gens == [3, 3, 1]
    assert sx.boundary(2).n_gens == [3, 3]
    assert sx.horn(2, 1).n_gens == [3, 2]
    assert sx.spine(3).n_gens == [4, 3]
    assert sx.point().n_gens == [1]
    assert sx.empty_sset().is_empty()


def test_simplex_counts_with_degeneracies():
    D1 = sx.delta(1)
    # Delta[1]_n has n+2 simplices
    for n in range(4):
        assert len(D1.simplices(n)) == n + 2


# ---------------------------------------------------------------------------
# products and joins


def test_product_of_intervals_is_a_square():
    P = sx.product(sx.delta(1), sx.delta(1), 2).sset
    assert P.n_gens == [4, 5, 2]
    P.check()


def test_join_of_simplices_is_a_simplex():
    for m in range(3):
        for n in range(3):
            J = sx.join(sx.delta(m), sx.delta(n), m + n + 1).sset
            assert sx.iso_check(J, sx.delta(m + n + 1), m + n + 1) is not None


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_join_of_poset_nerves_is_associative(seed):
    rng = random.Random(seed)
    parts = [nerve(random_poset(rng, rng.randint(1, 2)), 2) for _ in range(3)]
    d = 3
    left = sx.join(sx.join(parts[0], parts[1], d).sset, parts[2], d).sset
    right = sx.join(parts[0], sx.join(parts[1], parts[2], d).sset, d).sset
    assert sx.iso_check(left, right, d) is not None


def test_join_with_empty_set_is_identity():
    D = sx.delta(2)
    J = sx.join(D, sx.empty_sset(), 2).sset
    assert sx.iso_check(J, D, 2) is not None


# ---------------------------------------------------------------------------
# subcomplexes


def test_boundary_is_a_subcomplex_of_the_simplex():
    D = sx.delta(2)
    top = SimplexKey(D.gen_of_label((0, 1, 2)))
    S, incl = sx.subcomplex(D, lambda k: k != top, 2)
    assert S.n_gens == sx.boundary(2).n_gens
    incl.check()


def test_one_full_subcomplex_on_a_single_edge():
    N = nerve(chain_poset(2), 2)
    keep_edge = SimplexKey(N.gen_of_label(((0, 1),)))
    S, incl = sx.one_full_subcomplex(
        N, lambda e: e.is_degenerate or e == keep_edge, 2
    )
    assert len(S.gens(1)) == 1
    incl.check()


# ---------------------------------------------------------------------------
# map enumeration


def test_maps_from_simplex_to_nerve_count_composable_strings():
    N = nerve(cyclic_group_category(3), 2)
    # maps Delta[1] -> N(Z/3): one per group element
    assert len(sx.enumerate_maps(sx.delta(1), N, budget=10**6)) == 3
    # maps spine(2) -> N(Z/3): independent choices
    assert len(sx.enumerate_maps(sx.spine(2), N, budget=10**6)) == 9


def test_functor_and_generic_enumeration_agree():
    N = nerve(cyclic_group_category(2), 2)
    for K in [sx.delta(1), sx.spine(2), sx.boundary(2)]:
        fast = sx.enumerate_maps(K, N, budget=10**6, use_category=True)
        slow = sx.enumerate_maps(K, N, budget=10**6, use_category=False)
        assert {tuple(sorted(f.assign.items())) for f in fast} == {
            tuple(sorted(f.assign.items())) for f in slow
        }


def test_enumeration_budget_is_enforced():
    N = nerve(cyclic_group_category(3), 2)
    with pytest.raises(sx.BudgetExceeded):
        sx.enumerate_maps(sx.spine(2), N, budget=2, use_category=False)


def test_fixed_generators_filter_the_enumeration():
    N = nerve(cyclic_group_category(3), 2)
    S = sx.spine(2)
    e01 = S.gen_of_label((0, 1))
    want = SimplexKey(N.gen_of_label((1,)))
    maps = sx.enumerate_maps(S, N, fixed={e01: want}, budget=10**6)
    assert len(maps) == 3
    assert all(f(SimplexKey(e01)) == want for f in maps)


# ---------------------------------------------------------------------------
# horn filling


def test_inner_horns_of_a_nerve_fill():
    N = nerve(cyclic_group_category(2), 2)
    for h in sx.horn_maps(N, 2, 1, budget=10**6):
        assert sx.inner_horn_filler(N, h) is not None


def test_outer_horns_of_a_group_nerve_fill():
    N = nerve(cyclic_group_category(2), 2)
    for k in (0, 2):
        for h in sx.horn_maps(N, 2, k, budget=10**6):
            assert sx.inner_horn_filler(N, h) is not None


def test_missing_outer_horn_filler_is_detected():
    # in Delta[1]: the index-0 horn asking for a retraction of the edge
    # (long edge constant at 0, short edge 0 -> 1) has no filler
    D = sx.delta(1)
    H = sx.horn(2, 0)
    v0 = SimplexKey(D.gen_of_label((0,)))
    v1 = SimplexKey(D.gen_of_label((1,)))
    e = SimplexKey(D.gen_of_label((0, 1)))
    h = sx.SimplicialMap(H, D, {
        H.gen_of_label((0,)): v0, H.gen_of_label((1,)): v1,
        H.gen_of_label((2,)): v0,
        H.gen_of_label((0, 1)): e,
        H.gen_of_label((0, 2)): sx.key_degeneracy(v0, 0),
    })
    h.check()
    assert sx.inner_horn_filler(D, h) is None


# ---------------------------------------------------------------------------
# isomorphism testing


def test_iso_check_distinguishes_horn_from_boundary():
    assert sx.iso_check(sx.horn(2, 1), sx.boundary(2), 2) is None


def test_iso_check_matches_differently_built_models():
    phi = sx.iso_check(nerve(chain_poset(1), 1), sx.delta(1), 1)
    assert phi is not None
    # the two outer horns of Delta[2] are NOT isomorphic: face order matters
    assert sx.iso_check(sx.horn(2, 0), sx.horn(2, 2), 2) is None


# ---------------------------------------------------------------------------
# subdivision


def test_subdivision_of_a_simplex_is_its_face_poset_nerve():
    Sd = sx.subdivision(sx.delta(1))
    # three vertices (two endpoints and the edge) and two edges
    assert Sd.n_gens[0] == 3
    assert Sd.n_gens[1] == 2
