"""Quasicategory recognition, homotopy classes of edges, homotopy categories,
equivalence edges, and mapping spaces."""

import pytest

from qcatk import quasicat as qc
from qcatk import simplicial as sx
from qcatk.cats import chain_poset, cyclic_group_category, nerve, nerve_functor_map, FinFunctor
from qcatk.simplicial import SimplexKey
from qcatk.zoo import idempotent_monoid_category, indiscrete_category


def test_nerves_are_quasicategories():
    for C in [chain_poset(2), cyclic_group_category(3), idempotent_monoid_category()]:
        rep = qc.is_quasicategory(nerve(C, 2), 2)
        assert rep["ok"]


def test_horn_is_not_a_quasicategory():
    rep = qc.is_quasicategory(sx.horn(2, 1), 2)
    assert not rep["ok"]
    assert rep["failures"]


def test_homotopy_classes_in_an_indiscrete_nerve_collapse():
    N = nerve(indiscrete_category(range(2)), 2)
    cls = qc.homotopy_classes(N)
    # all four edges between the same endpoints in the same class as the
    # identity when endpoints agree; parallel edges are homotopic
    e1 = SimplexKey(N.gen_of_label(((0, 1),)))
    for g in N.gens(1):
        e = SimplexKey(g)
        same_ends = (N.vertex(e, 0), N.vertex(e, 1)) == (
            N.vertex(e1, 0), N.vertex(e1, 1))
        assert (cls[e] == cls[e1]) == same_ends


def test_homotopy_classes_in_a_group_nerve_stay_distinct():
    N = nerve(cyclic_group_category(3), 2)
    cls = qc.homotopy_classes(N)
    edges = {cls[k] for k in N.simplices(1)}
    assert len(edges) == 3


def test_homotopy_category_of_a_nerve_is_the_category():
    C = cyclic_group_category(3)
    assert qc.ho_equals_category(nerve(C, 2), C)


def test_fundamental_category_presentation_shape():
    N = nerve(chain_poset(2), 2)
    pres = qc.tau1_presentation(N)
    assert len(pres["objects"]) == 3
    assert len(pres["generators"]) == 3
    assert len(pres["relations"]) == 1


def test_equivalence_edges_of_a_monoid_nerve():
    N = nerve(idempotent_monoid_category(), 2)
    ho = qc.ho_category(N)
    e = SimplexKey(N.gen_of_label(("e",)))
    assert not qc.is_equivalence_edge(N, e, ho)
    ident = N.degeneracy(SimplexKey(N.gen_of_label("*")), 0)
    assert qc.is_equivalence_edge(N, ident, ho)


def test_maximal_kan_subcomplex_of_a_poset_nerve_is_discrete():
    N = nerve(chain_poset(2), 2)
    K, _ = qc.maximal_kan(N, 2)
    assert len(K.gens(0)) == 3
    assert len(K.gens(1)) == 0


def test_maximal_kan_subcomplex_of_a_group_nerve_is_everything():
    N = nerve(cyclic_group_category(2), 2)
    K, _ = qc.maximal_kan(N, 2)
    assert K.n_gens == N.n_gens


def test_mapping_space_vertices_are_edges():
    N = nerve(cyclic_group_category(3), 3)
    v = SimplexKey(N.gen_of_label("*"))
    M = qc.mapping_space(N, v, v, 1)
    assert len(M.gens(0)) == 3


def test_internal_hom_vertices_count_maps():
    N = nerve(cyclic_group_category(3), 3)
    H = qc.internal_hom(sx.delta(1), N, 1)
    assert len(H.gens(0)) == 3


def test_homotopy_functor_equivalence_verdicts():
    # an isomorphism of nerves is an equivalence
    C = cyclic_group_category(2)
    N = nerve(C, 2)
    ident = sx.SimplicialMap(N, N, {g: SimplexKey(g) for g in N.all_gens()})
    rep = qc.tau1_map_equivalence(ident)
    assert rep["equivalence"]
    # collapsing an indiscrete groupoid to the point is an equivalence
    I2 = indiscrete_category(range(2))
    P = chain_poset(0)
    F = FinFunctor(I2, P, {o: 0 for o in I2.objects},
                   {m: P.ids[0] for m in I2.morphisms})
    F.check()
    rep = qc.tau1_map_equivalence(nerve_functor_map(F, nerve(I2, 2), nerve(P, 2)))
    assert rep["equivalence"] and rep["essentially_surjective"]
    # an endpoint inclusion into the interval is not
    inc = sx.delta_inclusion(sx.delta(0), sx.delta(1), lambda _: 0)
    rep = qc.tau1_map_equivalence(inc)
    assert not rep["equivalence"]
    assert not rep["essentially_surjective"]
