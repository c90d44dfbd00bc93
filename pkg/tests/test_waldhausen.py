"""Cofibration structures on finite quasicategories: axiom validation,
factorization, marking closure properties, and exact maps."""

import pytest

from qcatk import quasicat as qc
from qcatk import simplicial as sx
from qcatk.cats import nerve, poset_category
from qcatk.simplicial import SimplexKey
from qcatk.waldhausen import (
    ExactFunctorData,
    WaldhausenData,
    admits_factorization,
    cof_ho_equivalence,
    cof_subquasicategory,
    homotopy_cocartesian_check,
    maximal_marking_waldhausen,
    nerve_waldhausen,
    pointed_sets_waldhausen,
    reflects_cofibrations,
    validate_exact,
    validate_waldhausen,
)
from qcatk.zoo import pointed_sets_with_duplicate


def test_pointed_sets_instance_satisfies_the_axioms():
    W = pointed_sets_waldhausen(3, 2)
    rep = validate_waldhausen(W)
    assert rep["ok"]
    assert rep["violations"] == []
    assert rep["checks"]["quasicategory"]
    assert rep["checks"]["pushouts_checked"] > 0


def test_unmarked_equivalence_is_a_violation():
    # drop the marking from the nontrivial automorphism of the 3-element set
    W = pointed_sets_waldhausen(3, 2)
    swap = next(
        e for e in W.cof
        if W.underlying.labels[e.gen][0] == (3, 3, (2, 1))
    )
    W_bad = WaldhausenData(W.underlying, W.zero, W.cof - {swap}, W.universe)
    rep = validate_waldhausen(W_bad)
    kinds = {v[0] for v in rep["violations"]}
    assert "equivalence-not-marked" in kinds


def test_marking_is_closed_under_edge_homotopy():
    for W in [pointed_sets_waldhausen(3, 2), pointed_sets_with_duplicate(2, 2)[0]]:
        cls = qc.homotopy_classes(W.underlying)
        marked_classes = {cls[e] for e in W.edges() if W.is_cof(e)}
        for e in W.edges():
            if cls[e] in marked_classes:
                assert W.is_cof(e)


def test_factorization_agrees_under_both_definitions():
    # the definitional test (every edge factors as cofibration then
    # equivalence) is cross-checked against all-edges-marked inside
    # admits_factorization; disagreement raises
    W_all = maximal_marking_waldhausen(
        poset_category([0], lambda a, b: True), 0, 2)
    assert admits_factorization(W_all)
    W_partial = pointed_sets_waldhausen(3, 2)
    assert not admits_factorization(W_partial)
    Wd, _ = pointed_sets_with_duplicate(2, 2)
    assert not admits_factorization(Wd)


def test_six_for_two_for_equivalences_in_homotopy_categories():
    # whenever g.f and h.g are invertible in the homotopy category, all of
    # f, g, h (and hence all six composites) are invertible
    from qcatk.cats import cyclic_group_category

    instances = [
        nerve(cyclic_group_category(3), 2),
        pointed_sets_waldhausen(3, 2).underlying,
        pointed_sets_with_duplicate(2, 2)[0].underlying,
    ]
    triples = 0
    for X in instances:
        ho = qc.ho_category(X).cat
        for f in ho.morphisms:
            for g in ho.morphisms:
                if ho.src[g] != ho.tgt[f]:
                    continue
                for h in ho.morphisms:
                    if ho.src[h] != ho.tgt[g]:
                        continue
                    gf = ho.compose_mor(g, f)
                    hg = ho.compose_mor(h, g)
                    if ho.is_iso(gf) and ho.is_iso(hg):
                        triples += 1
                        assert ho.is_iso(f) and ho.is_iso(g) and ho.is_iso(h)
                        assert ho.is_iso(ho.compose_mor(h, gf))
    assert triples > 0


def test_cofibration_subquasicategory_is_one_full():
    W = pointed_sets_waldhausen(3, 2)
    co, incl = cof_subquasicategory(W, 2)
    assert len(co.gens(1)) == len(W.cof)
    incl.check()


def test_pushout_square_is_homotopy_cocartesian():
    C = poset_category(range(4), lambda a, b: a == b or a == 0 or b == 3)
    W = maximal_marking_waldhausen(C, 0, 2)
    N = W.underlying
    P = sx.product(sx.delta(1), sx.delta(1), 2).sset
    d1 = sx.delta(1)
    corner = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}

    def key_for(verts):
        labels = [corner[v] for v in verts]
        for k in N.simplices(len(verts) - 1):
            if [N.labels[w.gen] for w in N.vertices(k)] == labels:
                return k
        raise AssertionError(verts)

    assign = {}
    for g in P.all_gens():
        ka, kb = P.labels[g]
        verts = [
            (d1.labels[x.gen][0], d1.labels[y.gen][0])
            for x, y in zip(d1.vertices(ka), d1.vertices(kb))
        ]
        assign[g] = key_for(verts)
    square = sx.SimplicialMap(P, N, assign)
    square.check()
    assert homotopy_cocartesian_check(W, square)


def test_exact_map_validation_and_reflection():
    Wd, G = pointed_sets_with_duplicate(3, 2)
    rep = validate_exact(G)
    assert rep["ok"]
    assert reflects_cofibrations(G)["reflects"]
    assert cof_ho_equivalence(G)["equivalence"]


def test_non_reflecting_map_is_detected():
    W = pointed_sets_waldhausen(2, 2)
    C = W.underlying.category
    W_all = nerve_waldhausen(C, 1, list(C.morphisms), 2,
                             universe={"bounded": True, "note": "all marked"})
    N = W.underlying
    ident = sx.SimplicialMap(N, W_all.underlying,
                             {g: SimplexKey(g) for g in N.all_gens()})
    G = ExactFunctorData(ident, W, W_all)
    rep = reflects_cofibrations(G)
    assert not rep["reflects"]
    assert rep["witness"] is not None
