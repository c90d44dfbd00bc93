"""Finite categories, functors, nerves, and the fundamental category."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcatk import quasicat as qc
from qcatk import simplicial as sx
from qcatk.cats import (
    FinFunctor,
    chain_poset,
    cyclic_group_category,
    functor_from_nerve_map,
    groupoid_core,
    nerve,
    nerve_functor_map,
    pointed_sets_category,
    poset_category,
    pushout_in_category,
    slice_category,
)
from qcatk.simplicial import SimplexKey
from qcatk.zoo import idempotent_monoid_category, random_category, random_poset


# ---------------------------------------------------------------------------
# category laws


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_randomly_generated_categories_satisfy_the_laws(seed):
    rng = random.Random(seed)
    C = random_category(rng, 4)
    C.check()


def test_catalogue_categories_satisfy_the_laws():
    for C in [chain_poset(3), cyclic_group_category(4),
              idempotent_monoid_category(), pointed_sets_category(3)]:
        C.check()


def test_pointed_sets_category_counts():
    C = pointed_sets_category(3)
    # skeletal pointed sets of sizes 1..3: based maps m -> n are n^(m-1)
    assert len(C.objects) == 3
    assert len(C.morphisms) == sum(
        n ** (m - 1) for m in (1, 2, 3) for n in (1, 2, 3)
    )


def test_join_and_product_of_categories():
    A, B = chain_poset(1), chain_poset(1)
    J = A.join(B)
    assert len(J.objects) == 4
    assert len(J.morphisms) == 3 + 3 + 4  # both parts plus one cross map per pair
    P = A.product(B)
    assert len(P.objects) == 4
    assert len(P.morphisms) == 9
    J.check()
    P.check()


# ---------------------------------------------------------------------------
# pushouts


def test_pushout_in_a_poset_is_the_maximum():
    C = poset_category(range(4), lambda a, b: a == b or a == 0 or b == 3)
    f = (0, 1)
    g = (0, 2)
    po = pushout_in_category(C, f, g)
    assert po is not None
    d, i, j = po
    assert d == 3


def test_pushout_absent_in_a_discrete_span():
    C = poset_category(range(3), lambda a, b: a == b or a == 0)
    # 1 <- 0 -> 2 has no cocone at all beyond... actually no object above 1,2
    assert pushout_in_category(C, (0, 1), (0, 2)) is None


# ---------------------------------------------------------------------------
# nerves


def test_nerve_generator_counts_of_a_group():
    N = nerve(cyclic_group_category(3), 3)
    # nondegenerate strings of non-identity elements: 2^n at level n
    assert N.n_gens == [1, 2, 4, 8]
    N.check()


def test_nerve_of_a_chain_poset():
    N = nerve(chain_poset(2), 2)
    assert N.n_gens == [3, 3, 1]
    assert sx.iso_check(N, sx.delta(2), 2) is not None


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_fundamental_category_of_a_nerve_recovers_the_category(seed):
    rng = random.Random(seed)
    C = random_category(rng, 4)
    assert qc.ho_equals_category(nerve(C, 2), C)


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_nerve_commutes_with_joins_of_posets(seed):
    rng = random.Random(seed)
    P = random_poset(rng, rng.randint(1, 3))
    Q = random_poset(rng, rng.randint(1, 3))
    d = len(P.objects) + len(Q.objects) - 1
    NJ = nerve(P.join(Q), d)
    JN = sx.join(nerve(P, d), nerve(Q, d), d).sset
    assert sx.iso_check(NJ, JN, d) is not None


# ---------------------------------------------------------------------------
# functors and nerve maps


def test_nerve_functor_map_round_trips_to_the_functor():
    C = cyclic_group_category(2)
    D = cyclic_group_category(4)
    F = FinFunctor(C, D, {"*": "*"}, {0: 0, 1: 2})
    F.check()
    G = nerve_functor_map(F, nerve(C, 2), nerve(D, 2))
    G.check()
    F2 = functor_from_nerve_map(G)
    assert F2.obj_map == F.obj_map
    assert F2.mor_map == F.mor_map


def test_slice_category_of_a_poset_is_the_downset():
    C = chain_poset(3)
    S = slice_category(C, 2)
    assert len(S.objects) == 3  # arrows 0->2, 1->2, 2->2
    S.check()


def test_groupoid_core_keeps_only_invertibles():
    C = idempotent_monoid_category()
    G = groupoid_core(C)
    assert len(G.morphisms) == 1  # only the unit survives
