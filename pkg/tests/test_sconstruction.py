"""Grid constructions (staircase, restricted, and cofibration-sequence
levels), comparison functors, and simplicial structure maps."""

import pytest

from qcatk import simplicial as sx
from qcatk.sconstruction import (
    ar_nerve,
    ar_poset,
    f_n,
    forgetful_maps,
    functor_equivalence_report,
    restricted_grid,
    s_bar_n,
    s_n,
    s_simplicial_maps,
)
from qcatk.waldhausen import pointed_sets_waldhausen

W2 = pointed_sets_waldhausen(2, 2)
W3 = pointed_sets_waldhausen(3, 2)


def test_arrow_poset_shape():
    P = ar_poset(2)
    assert len(P.objects) == 6  # pairs i <= j in [2]
    N = ar_nerve(2)
    assert len(N.gens(0)) == 6


def test_restricted_grid_counts_match_the_staircase_region():
    K, incl = restricted_grid(2)
    assert K.n_gens == [6, 9, 4]
    # independent oracle: (n+1)(n+2)/2 vertices; the region is a disk, so
    # its Euler characteristic is 1
    n = 2
    assert K.n_gens[0] == (n + 1) * (n + 2) // 2
    assert K.n_gens[0] - K.n_gens[1] + K.n_gens[2] == 1
    incl.check()


def test_level_object_counts_small_instance():
    assert len(s_n(W2, 1).cat.objects) == 2
    assert len(s_n(W2, 2).cat.objects) == 3
    assert len(s_bar_n(W2, 2).cat.objects) == 3
    assert len(f_n(W2, 0).cat.objects) == 2
    assert len(f_n(W2, 1).cat.objects) == 3


def test_level_object_counts_bound_three_instance():
    assert len(s_n(W3, 1).cat.objects) == 3
    assert len(s_n(W3, 2).cat.objects) == 9
    assert len(s_bar_n(W3, 2).cat.objects) == 9
    assert len(f_n(W3, 0).cat.objects) == 3
    assert len(f_n(W3, 1).cat.objects) == 8


def test_level_zero_and_one_are_degenerate_cases():
    # level 0: only the zero diagram; level 1: objects are the marked maps
    # out of zero, i.e. the objects themselves
    lv0 = s_n(W3, 0)
    assert len(lv0.cat.objects) == 1
    lv1 = s_n(W3, 1)
    assert len(lv1.cat.objects) == len(W3.underlying.simplices(0))


@pytest.mark.parametrize("n", [1, 2])
def test_comparison_functors_are_equivalences(n):
    out = forgetful_maps(W3, n)
    for name in ("full_to_restricted", "restricted_to_sequences"):
        rep = out[name]["report"]
        assert rep["equivalence"], (n, name, rep)
        assert rep["reflects_cofibrations"], (n, name, rep)
        out[name]["map"].check()


def test_comparison_detects_a_corrupted_marking():
    # moving one marked morphism out of the sequence-level marking flips the
    # reflection verdict for a functor into that level
    out = forgetful_maps(W3, 2)
    F = out["restricted_to_sequences"]["functor"]
    from qcatk.sconstruction import _marking_of, _reflects_marking

    src_marked = _marking_of(out["levels"]["restricted"])
    tgt_marked = _marking_of(out["levels"]["sequences"])
    assert _reflects_marking(F, src_marked, tgt_marked)["reflects_cofibrations"]
    moved = set(tgt_marked) | {
        F.mor_map[m] for m in F.source.morphisms
        if m not in src_marked and m not in F.source.id_set
    }
    corrupted = _reflects_marking(F, src_marked, moved)
    assert not corrupted["reflects_cofibrations"]
    assert corrupted["witness"] is not None


def test_structure_maps_compose_functorially():
    lv0 = s_n(W2, 0)
    lv1 = s_n(W2, 1)
    lv2 = s_n(W2, 2)
    d0 = s_simplicial_maps(W2, (1, 2), lv2, lv1)["functor"]  # face 0
    d1 = s_simplicial_maps(W2, (0, 2), lv2, lv1)["functor"]  # face 1
    d2 = s_simplicial_maps(W2, (0, 1), lv2, lv1)["functor"]  # face 2
    to0_a = s_simplicial_maps(W2, (2,), lv2, lv0)["functor"]
    # simplicial identity at the level of functors: restricting along
    # [0] -> [2], value 2, equals either two-step route through level 1
    step_a = s_simplicial_maps(W2, (1,), lv1, lv0)["functor"]
    comp = {a: step_a.obj_map[d0.obj_map[a]] for a in d0.source.objects}
    assert comp == to0_a.obj_map
    # degeneracy then either adjacent face is the identity
    s0 = s_simplicial_maps(W2, (0, 0, 1), lv1, lv2)["functor"]
    assert all(d0.obj_map[s0.obj_map[a]] == a for a in s0.source.objects)
    assert all(d1.obj_map[s0.obj_map[a]] == a for a in s0.source.objects)
    assert d2 is not None


def test_dropped_top_rows_are_reported():
    # with only two pointed sets, some marked composites lack quotient data
    rep2 = s_n(W2, 2).report
    assert "dropped_rows" in rep2
    assert rep2["enumerated"] >= len(s_n(W2, 2).cat.objects)


def test_equivalence_report_shape_is_honest():
    out = forgetful_maps(W2, 1)
    rep = functor_equivalence_report(out["full_to_restricted"]["functor"])
    assert set(rep) == {"essentially_surjective", "full", "faithful", "equivalence"}
    assert rep["equivalence"] == (
        rep["essentially_surjective"] and rep["full"] and rep["faithful"]
    )
