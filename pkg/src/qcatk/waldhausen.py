"""Waldhausen structures on finite quasicategories: a distinguished zero
object plus a 1-full class of marked edges (cofibrations) containing the
equivalences, with pushouts along marked edges.

No finite instance honestly has all pushouts, so nerve-backed data carries a
bounded-universe descriptor and pushout failures are reported as "local"
(universe too small) rather than "fatal" when the universe is bounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import joinslice as js
from . import quasicat as qc
from . import simplicial as sx
from .cats import FinCategory, nerve, pushout_in_category
from .simplicial import SimplexKey, SimplicialMap, SimplicialSet


@dataclass
class WaldhausenData:
    underlying: SimplicialSet
    zero: SimplexKey  # vertex
    cof: frozenset  # marked nondegenerate edge keys
    universe: Optional[dict] = None  # e.g. {"bounded": True, "note": ...}

    def is_cof(self, e: SimplexKey) -> bool:
        return e.is_degenerate or e in self.cof

    def edges(self):
        return self.underlying.simplices(1)

    @property
    def bounded(self) -> bool:
        return bool(self.universe and self.universe.get("bounded"))


def is_pushout_cocone(C: FinCategory, f, g, d, i, j) -> bool:
    """Universal-property check that (d, i: tgt f -> d, j: tgt g -> d) is a
    pushout of the span along f and g."""
    if C.compose_mor(i, f) != C.compose_mor(j, g):
        return False
    b, c = C.tgt[f], C.tgt[g]
    for d2 in C.objects:
        for i2 in C.hom(b, d2):
            for j2 in C.hom(c, d2):
                if C.compose_mor(i2, f) != C.compose_mor(j2, g):
                    continue
                mediators = [
                    h
                    for h in C.hom(d, d2)
                    if C.compose_mor(h, i) == i2 and C.compose_mor(h, j) == j2
                ]
                if len(mediators) != 1:
                    return False
    return True


def _edge_morphism(X: SimplicialSet, e: SimplexKey):
    """Underlying category morphism of an edge in a nerve."""
    C = X.category
    if e.is_degenerate:
        return C.ids[X.labels[e.gen]]
    return X.labels[e.gen][0]


def validate_waldhausen(W: WaldhausenData, d: int = 2, budget: int = 10**6,
                        pushout_via_slices: bool = False) -> dict:
    """Validate the three axioms to the stated bound.

    For nerve-backed data, pushouts are checked with the 1-categorical
    universal-property oracle by default; set ``pushout_via_slices`` to check
    them as initial cocones in the slice instead (much slower).
    """
    X = W.underlying
    report = {"dim": d, "violations": [], "local_failures": [], "checks": {}}

    qrep = qc.is_quasicategory(X, min(d, 2), budget=budget)
    report["checks"]["quasicategory"] = qrep["ok"]
    if not qrep["ok"]:
        report["violations"].append(("not-quasicategory", qrep["failures"][:3]))

    ho = qc.ho_category(X)

    # (i) marked edges are closed under homotopy and contain all equivalences
    marked_classes = {ho.cls(e) for e in W.edges() if W.is_cof(e)}
    for e in W.edges():
        if ho.cls(e) in marked_classes and not W.is_cof(e):
            report["violations"].append(("homotopy-closure", e))
    for e in W.edges():
        if ho.cat.is_iso(ho.cls(e)) and not W.is_cof(e):
            report["violations"].append(("equivalence-not-marked", e))

    # (ii) zero object: unique maps to and from every object, and every
    # edge out of zero is marked
    for v in X.simplices(0):
        if len(ho.cat.hom(W.zero, v)) != 1:
            report["violations"].append(("zero-not-initial", v))
        if len(ho.cat.hom(v, W.zero)) != 1:
            report["violations"].append(("zero-not-terminal", v))
    for e in W.edges():
        if X.vertex(e, 0) == W.zero and not W.is_cof(e):
            report["violations"].append(("zero-edge-not-marked", e))

    # (iii) pushouts of marked edges along arbitrary edges
    pushouts_checked = 0
    if X.category is not None and not pushout_via_slices:
        C = X.category
        marked_mors = {_edge_morphism(X, e) for e in W.edges() if W.is_cof(e)}
        for f in C.morphisms:
            if f not in marked_mors:
                continue
            for g in C.morphisms:
                if C.src[g] != C.src[f]:
                    continue
                pushouts_checked += 1
                po = pushout_in_category(C, f, g)
                if po is None:
                    kind = "local" if W.bounded else "fatal"
                    entry = ("pushout-missing", f, g)
                    (report["local_failures"] if kind == "local" else report["violations"]).append(entry)
                else:
                    _, i, j = po
                    if j not in marked_mors:
                        report["violations"].append(("pushout-not-marked", f, g, j))
    else:
        H = sx.horn(2, 0)
        v0, v1, v2 = (H.gen_of_label((k,)) for k in range(3))
        e01, e02 = H.gen_of_label((0, 1)), H.gen_of_label((0, 2))
        for f in W.edges():
            if not W.is_cof(f) or f.is_degenerate:
                continue
            for g in W.edges():
                if X.vertex(g, 0) != X.vertex(f, 0):
                    continue
                pushouts_checked += 1
                span = SimplicialMap(H, X, {
                    v0: X.vertex(f, 0), v1: X.vertex(f, 1), v2: X.vertex(g, 1),
                    e01: f, e02: g,
                })
                ccs = js.colimiting_cocones(span, 1, budget=budget, use_category=False)
                if not ccs:
                    kind = "local" if W.bounded else "fatal"
                    entry = ("pushout-missing", f, g)
                    (report["local_failures"] if kind == "local" else report["violations"]).append(entry)
                else:
                    c = ccs[0]["cocone"]
                    J = c.extension.source
                    opp = c.extension(J.key_of(1, ("j", SimplexKey(v2), SimplexKey((0, 0)))))
                    if not W.is_cof(opp):
                        report["violations"].append(("pushout-not-marked", f, g, opp))
    report["checks"]["pushouts_checked"] = pushouts_checked
    report["ok"] = not report["violations"]
    return report


# -- cofibration subquasicategory ----------------------------------------------


def cof_category(W: WaldhausenData) -> Optional[FinCategory]:
    """For nerve-backed data: the subcategory on marked morphisms, provided
    the marking is closed under composition (else None)."""
    X = W.underlying
    if X.category is None:
        return None
    C = X.category
    marked = {_edge_morphism(X, e) for e in W.edges() if W.is_cof(e)} | C.id_set
    for f in marked:
        for g in marked:
            if C.src[g] == C.tgt[f] and C.compose_mor(g, f) not in marked:
                return None
    morphisms = [m for m in C.morphisms if m in marked]
    return FinCategory(
        C.objects, morphisms,
        {m: C.src[m] for m in morphisms}, {m: C.tgt[m] for m in morphisms},
        dict(C.ids),
        {(g, f): h for (g, f), h in C.comp.items() if g in marked and f in marked},
    )


def cof_subquasicategory(W: WaldhausenData, d: int = 2):
    """1-full subcomplex on marked edges, with inclusion.  Nerve-backed data
    gets the subcategory attached for fast enumeration."""
    sub = cof_category(W)
    return sx.one_full_subcomplex(W.underlying, W.is_cof, d,
                                  category=sub)


def cof_homotopy_category(W: WaldhausenData) -> qc.HoCategory:
    co, _ = cof_subquasicategory(W, 2)
    return qc.ho_category(co)


def admits_factorization(W: WaldhausenData) -> bool:
    """Every edge marked.  Cross-checked against the definitional form:
    each edge f must bound a 2-simplex (equivalence, f, cofibration)."""
    X = W.underlying
    all_marked = all(W.is_cof(e) for e in W.edges())
    ho = qc.ho_category(X)
    definitional = True
    for f in W.edges():
        found = False
        for t in X.simplices(2):
            if X.face(t, 1) != f:
                continue
            if W.is_cof(X.face(t, 2)) and ho.cat.is_iso(ho.cls(X.face(t, 0))):
                found = True
                break
        if not found:
            definitional = False
            break
    if all_marked != definitional:
        raise AssertionError(
            "factorization tests disagree: all-marked=%s definitional=%s"
            % (all_marked, definitional)
        )
    return all_marked


# -- exact functors --------------------------------------------------------------


@dataclass
class ExactFunctorData:
    themap: SimplicialMap
    source: WaldhausenData
    target: WaldhausenData


def reflects_cofibrations(G: ExactFunctorData) -> dict:
    for e in G.source.edges():
        if not G.source.is_cof(e) and G.target.is_cof(G.themap(e)):
            return {"reflects": False, "witness": e}
    return {"reflects": True, "witness": None}


def validate_exact(G: ExactFunctorData, d: int = 2) -> dict:
    report = {"violations": []}
    f = G.themap
    if f(G.source.zero) != G.target.zero:
        report["violations"].append(("zero-not-preserved", f(G.source.zero)))
    for e in G.source.edges():
        if G.source.is_cof(e) and not G.target.is_cof(f(e)):
            report["violations"].append(("cofibration-not-preserved", e))
    # pushout squares along cofibrations (nerve-backed oracle)
    XS, XT = G.source.underlying, G.target.underlying
    if XS.category is not None and XT.category is not None:
        CS, CT = XS.category, XT.category

        def obj_image(o):
            k = f(SimplexKey(XS.gen_of_label(o)))
            return XT.labels[k.gen]

        def mor_image(m):
            if m in CS.id_set:
                obj = next(o for o, i in CS.ids.items() if i == m)
                return CT.ids[obj_image(obj)]
            return _edge_morphism(XT, f(SimplexKey(XS.gen_of_label((m,)))))

        marked = {_edge_morphism(XS, e) for e in G.source.edges() if G.source.is_cof(e)}
        for m1 in CS.morphisms:
            if m1 not in marked:
                continue
            for m2 in CS.morphisms:
                if CS.src[m2] != CS.src[m1]:
                    continue
                po = pushout_in_category(CS, m1, m2)
                if po is None:
                    continue
                dd, i, j = po
                ok = is_pushout_cocone(
                    CT, mor_image(m1), mor_image(m2),
                    obj_image(dd), mor_image(i), mor_image(j),
                )
                if not ok:
                    report["violations"].append(("pushout-not-preserved", m1, m2))
    report["ok"] = not report["violations"]
    return report


def cof_ho_equivalence(G: ExactFunctorData, d: int = 2) -> dict:
    """Is tau_1(co G) an equivalence of cofibration homotopy categories?"""
    co_s, incl_s = cof_subquasicategory(G.source, 2)
    co_t, incl_t = cof_subquasicategory(G.target, 2)
    ho_s = qc.ho_category(co_s)
    ho_t = qc.ho_category(co_t)

    # transport a key of co_s through G into co_t
    t_index = {incl_t(SimplexKey(g)): SimplexKey(g) for g in co_t.all_gens()}

    def push(k: SimplexKey) -> SimplexKey:
        img = G.themap(incl_s(k))
        base = t_index.get(SimplexKey(img.gen))
        if base is None:
            raise ValueError(f"image {img} leaves the cofibration subcomplex")
        return sx.apply_degeneracy_word(base, img.degens)

    images = {push(v) for v in ho_s.cat.objects}
    ess_surj = True
    for w in ho_t.cat.objects:
        if w in images:
            continue
        if not any(ho_t.cat.is_iso(m) for v in images for m in ho_t.cat.hom(v, w)):
            ess_surj = False
    full = True
    faithful = True
    for a in ho_s.cat.objects:
        for b in ho_s.cat.objects:
            fibers = {}
            for m in ho_s.cat.hom(a, b):
                fibers.setdefault(ho_t.cls(push(m)), []).append(m)
            if set(fibers) != set(ho_t.cat.hom(push(a), push(b))):
                full = False
            if any(len(v) > 1 for v in fibers.values()):
                faithful = False
    verdict = ess_surj and full and faithful
    return {
        "equivalence": verdict,
        "essentially_surjective": ess_surj,
        "full": full,
        "faithful": faithful,
    }


# -- homotopy cocartesian squares -------------------------------------------------


def _simplex_with_vertices(S: SimplicialSet, verts) -> SimplexKey:
    n = len(verts) - 1
    for k in S.simplices(n):
        if list(S.vertices(k)) == list(verts):
            return k
    raise ValueError("no simplex with the requested vertex sequence")


def square_as_cocone(square: SimplicialMap):
    """Reinterpret a map Delta[1] x Delta[1] -> X as a cocone over its span:
    returns (span base map, extension over span * Delta[0])."""
    S = square.source  # materialized product of delta(1) with delta(1)
    H = sx.horn(2, 0)
    J = sx.join(H, sx.delta(0), 2)
    corner = {0: (0, 0), 1: (0, 1), 2: (1, 0), "tip": (1, 1)}
    d1 = sx.delta(1)

    def svert(pair):
        ka = SimplexKey(d1.gen_of_label((pair[0],)))
        kb = SimplexKey(d1.gen_of_label((pair[1],)))
        return S.key_of(0, (ka, kb))

    vmap = {}
    for g in J.sset.all_gens():
        lbl = J.sset.labels[g]
        if lbl[0] == "a":
            hverts = [H.labels[v.gen][0] for v in H.vertices(lbl[1])]
            want = [svert(corner[h]) for h in hverts]
        elif lbl[0] == "b":
            want = [svert(corner["tip"])]
        else:
            _, u, v = lbl
            hverts = [H.labels[w.gen][0] for w in H.vertices(u)]
            want = [svert(corner[h]) for h in hverts] + [
                svert(corner["tip"])
            ] * (v.dim + 1)
        vmap[g] = _simplex_with_vertices(S, want)
    m = SimplicialMap(J.sset, S, vmap)
    ext = square.compose(m)
    base = ext.compose(J.left)
    return base, ext


def homotopy_cocartesian_check(W: WaldhausenData, square: SimplicialMap,
                               d: int = 1, budget: int = 10**6) -> bool:
    """True iff one leg of the square is marked and the square is a
    colimiting cocone over its span.

    The cocone is certified by slice initiality when the ambient object is
    deep enough; bounded nerves fall back to the 1-categorical
    universal-property oracle.
    """
    base, ext = square_as_cocone(square)
    H = base.source
    X = W.underlying
    leg1 = base(SimplexKey(H.gen_of_label((0, 1))))
    leg2 = base(SimplexKey(H.gen_of_label((0, 2))))
    if not (W.is_cof(leg1) or W.is_cof(leg2)):
        return False
    need = 1 + (d + 1) + 1  # join dim for the slice enumeration
    if X.effective_bound() < need:
        if X.category is None:
            raise sx.BoundExceeded("square check needs dimension %d" % need)
        C = X.category
        f_m, g_m = _edge_morphism(X, leg1), _edge_morphism(X, leg2)
        J = ext.source
        tipkey = ext(J.key_of(0, ("b", SimplexKey((0, 0)))))
        i_m = _edge_morphism(X, ext(J.key_of(1, ("j", SimplexKey(H.gen_of_label((1,))), SimplexKey((0, 0))))))
        j_m = _edge_morphism(X, ext(J.key_of(1, ("j", SimplexKey(H.gen_of_label((2,))), SimplexKey((0, 0))))))
        return is_pushout_cocone(C, f_m, g_m, X.labels[tipkey.gen], i_m, j_m)
    sl = js.slice_under(base, d + 1, budget=budget, use_category=False)
    fam = sl.family
    target_tuple = tuple(ext.assign[h] for h in fam.gen_order(0))
    vkey = None
    for g in sl.gens(0):
        if sl.labels[g] == target_tuple:
            vkey = SimplexKey(g)
            break
    if vkey is None:
        return False
    rep = js.is_initial(sl, vkey, d, budget=budget, use_category=False)
    return rep["verdict"].startswith("confirmed")


# -- instances ---------------------------------------------------------------------


def nerve_waldhausen(C: FinCategory, zero_obj, marked_morphisms, d: int,
                     universe=None) -> WaldhausenData:
    N = nerve(C, d)
    marked = frozenset(
        SimplexKey(N.gen_of_label((m,)))
        for m in marked_morphisms
        if m not in C.id_set
    )
    return WaldhausenData(
        N, SimplexKey(N.gen_of_label(zero_obj)), marked,
        universe=universe or {"bounded": True, "note": f"nerve of {len(C.objects)}-object category"},
    )


def pointed_sets_waldhausen(max_size: int = 3, d: int = 2) -> WaldhausenData:
    """Skeletal pointed sets of size <= max_size; cofibrations are the
    injective basepoint-preserving maps."""
    from .cats import pointed_sets_category

    C = pointed_sets_category(max_size)
    injective = [
        m for m in C.morphisms
        if 0 not in m[2] and len(set(m[2])) == len(m[2])
    ]
    return nerve_waldhausen(
        C, 1, injective, d,
        universe={"bounded": True, "note": f"pointed sets of size <= {max_size}"},
    )


def maximal_marking_waldhausen(C: FinCategory, zero_obj, d: int) -> WaldhausenData:
    return nerve_waldhausen(C, zero_obj, [m for m in C.morphisms], d)
