"""Homotopy of edges, homotopy categories, equivalences, mapping spaces,
bounded internal homs, and the comparison functor from homotopy classes of
natural transformations to ladder diagrams.

The homotopy relation on parallel edges is the equivalence closure of left
homotopy: f ~ g when some 2-simplex has boundary (degenerate-at-b, g, f).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import simplicial as sx
from .cats import FinCategory
from .simplicial import (
    BudgetExceeded,
    SimplexKey,
    SimplicialMap,
    SimplicialSet,
    apply_degeneracy_word,
)


class NotQuasicategory(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def is_quasicategory(X: SimplicialSet, d: int, budget: int = 10**6) -> dict:
    """Check that every inner horn of dimension <= d fills.  Returns a report
    with the failing horns, if any."""
    X.require_bound(d, "quasicategory check")
    failures = []
    checked = 0
    for n in range(2, d + 1):
        for k in range(1, n):
            for h in sx.horn_maps(X, n, k, budget=budget, use_category=False):
                checked += 1
                if sx.inner_horn_filler(X, h) is None:
                    failures.append((n, k, h))
    return {"ok": not failures, "dim": d, "horns_checked": checked, "failures": failures}


# -- homotopy of edges -------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def homotopy_classes(X: SimplicialSet) -> dict[SimplexKey, SimplexKey]:
    """Map each edge to the minimal representative of its homotopy class."""
    X.require_bound(2, "edge homotopy")
    uf = _UnionFind()
    for e in X.simplices(1):
        uf.find(e)
    for t in X.simplices(2):
        if X.face(t, 0).is_degenerate:
            uf.union(X.face(t, 1), X.face(t, 2))
    out = {}
    for e in X.simplices(1):
        out[e] = uf.find(e)
    # canonical minimal representative per class
    reps: dict[SimplexKey, SimplexKey] = {}
    for e in sorted(out):
        reps.setdefault(out[e], min(e, reps.get(out[e], e)))
    return {e: reps[r] for e, r in out.items()}


def homotopic_edges(X: SimplicialSet, f: SimplexKey, g: SimplexKey) -> bool:
    for j in range(2):
        if X.vertex(f, j) != X.vertex(g, j):
            raise ValueError("edges are not parallel")
    cls = homotopy_classes(X)
    return cls[f] == cls[g]


# -- homotopy category -------------------------------------------------------


@dataclass
class HoCategory:
    cat: FinCategory
    class_of: dict[SimplexKey, SimplexKey]  # edge key -> class representative

    def cls(self, edge: SimplexKey) -> SimplexKey:
        return self.class_of[edge]


def ho_category(X: SimplicialSet) -> HoCategory:
    """Homotopy category of a quasicategory: objects are vertices, morphisms
    homotopy classes of edges, composition by 2-simplex search.

    Raises NotQuasicategory if some composable pair has no composing
    2-simplex, and ValueError if composites land in more than one class.
    """
    X.require_bound(2, "homotopy category")
    cls = homotopy_classes(X)
    objects = X.simplices(0)
    morphisms = sorted(set(cls.values()))
    src = {m: X.vertex(m, 0) for m in morphisms}
    tgt = {m: X.vertex(m, 1) for m in morphisms}
    ids = {}
    for v in objects:
        ids[v] = cls[X.degeneracy(v, 0)]

    found: dict[tuple, set] = {}
    for t in X.simplices(2):
        a, b = cls[X.face(t, 2)], cls[X.face(t, 0)]
        found.setdefault((b, a), set()).add(cls[X.face(t, 1)])

    comp = {}
    for f in morphisms:
        for g in morphisms:
            if src[g] != tgt[f]:
                continue
            got = found.get((g, f), set())
            if not got:
                raise NotQuasicategory(
                    f"no composite found for {f} then {g}", witness=(f, g)
                )
            if len(got) > 1:
                raise ValueError(f"composition ill-defined on classes {f}, {g}: {sorted(got)}")
            comp[(g, f)] = next(iter(got))
    for f in morphisms:
        if comp[(ids[tgt[f]], f)] != f or comp[(f, ids[src[f]])] != f:
            raise ValueError(f"identity law fails in homotopy category at {f}")
    cat = FinCategory(objects, morphisms, src, tgt, ids, comp)
    cat.check()
    return HoCategory(cat, cls)


def tau1_presentation(X: SimplicialSet) -> dict:
    """Fundamental category as a presentation only: free on nondegenerate
    edges modulo one relation (d_1 = d_0 after d_2) per 2-simplex."""
    X.require_bound(min(2, X.effective_bound()), "fundamental category")
    gens = [SimplexKey(g) for g in X.gens(1)]
    rels = []
    top = int(min(2, X.effective_bound(), X.top_dim if X.top_dim >= 0 else 0))
    if top >= 2:
        for g in X.gens(2):
            t = SimplexKey(g)
            rels.append((X.face(t, 1), (X.face(t, 0), X.face(t, 2))))
    return {
        "objects": X.simplices(0),
        "generators": gens,
        "relations": rels,
    }


def ho_equals_category(X: SimplicialSet, C: FinCategory) -> bool:
    """For a nerve X = N(C): the homotopy category is isomorphic to C via
    the labelling of vertices and edges."""
    ho = ho_category(X)
    obj_map = {v: X.labels[v.gen] for v in ho.cat.objects}
    if sorted(map(repr, obj_map.values())) != sorted(map(repr, C.objects)):
        return False

    def mor_of(rep: SimplexKey):
        if rep.is_degenerate:
            return C.ids[X.labels[rep.gen]]
        return X.labels[rep.gen][0]

    mors = {m: mor_of(m) for m in ho.cat.morphisms}
    if sorted(map(repr, mors.values())) != sorted(map(repr, C.morphisms)):
        return False
    for (g, f), h in ho.cat.comp.items():
        if C.compose_mor(mors[g], mors[f]) != mors[h]:
            return False
    return True


# -- equivalences and the maximal Kan subcomplex ------------------------------


def is_equivalence_edge(X: SimplicialSet, f: SimplexKey, ho: HoCategory = None) -> bool:
    if ho is None:
        ho = ho_category(X)
    return ho.cat.is_iso(ho.cls(f))


def maximal_kan(X: SimplicialSet, d: int):
    """The 1-full subcomplex on the equivalence edges, with its inclusion."""
    ho = ho_category(X)
    good = {e for e in X.simplices(1) if ho.cat.is_iso(ho.cls(e))}
    return sx.one_full_subcomplex(X, lambda e: e in good, d)


# -- internal hom -------------------------------------------------------------


def _delta_monotone_map(m: int, n: int, phi) -> SimplicialMap:
    return sx.delta_inclusion(sx.delta(m), sx.delta(n), phi)


class HomFamily(sx.Family):
    """(X^A)_n = maps A x Delta[n] -> X, stored as assignment tuples over the
    generators of the materialized product in canonical order."""

    def __init__(self, A: SimplicialSet, X: SimplicialSet, budget: int = 10**6,
                 use_category: bool = True):
        self.A, self.X = A, X
        self.budget = budget
        self.use_category = use_category
        self._prod: dict[int, sx.Span2] = {}
        self._delta: dict[int, SimplicialSet] = {}

    def prod(self, n: int) -> sx.MaterializedSSet:
        if n not in self._prod:
            if self.A.is_empty():
                P = sx.MaterializedSSet(sx.ProductFamily(self.A, sx.delta(n)), 0)
                self._prod[n] = sx.Span2(P, None, None)
            else:
                d = self.A.top_dim + n
                self.A.require_bound(d, "internal hom")
                self._prod[n] = sx.product(self.A, sx.delta(n), d)
        return self._prod[n].sset

    def gen_order(self, n: int):
        P = self.prod(n)
        return [g for m in range(P.top_dim + 1) for g in P.gens(m)]

    def fixed_for(self, n: int):
        return None

    def elements(self, n):
        P = self.prod(n)
        maps = sx.enumerate_maps(
            P, self.X, fixed=self.fixed_for(n), budget=self.budget,
            use_category=self.use_category,
        )
        order = self.gen_order(n)
        return [tuple(mp.assign[g] for g in order) for mp in maps]

    def as_map(self, n, x) -> SimplicialMap:
        return SimplicialMap(self.prod(n), self.X, dict(zip(self.gen_order(n), x)))

    def _precompose(self, n_from, n_to, phi, x):
        Pf, Pt = self.prod(n_from), self.prod(n_to)
        f = self.as_map(n_to, x)
        dmap = _delta_monotone_map(n_from, n_to, phi)
        out = []
        for g in self.gen_order(n_from):
            ka, kb = Pf.labels[g]
            target_elem = (ka, dmap(kb))
            k = Pt.key_of(g[0], target_elem)
            out.append(f(k))
        return tuple(out)

    def face(self, n, x, i):
        return self._precompose(n - 1, n, lambda v: v if v < i else v + 1, x)

    def degeneracy(self, n, x, i):
        return self._precompose(n + 1, n, lambda v: v if v <= i else v - 1, x)


def internal_hom(A: SimplicialSet, X: SimplicialSet, d: int, budget: int = 10**6,
                 use_category: bool = True) -> sx.MaterializedSSet:
    return sx.MaterializedSSet(HomFamily(A, X, budget, use_category), d)


class MappingSpaceFamily(HomFamily):
    """X(a, b): maps Delta[1] x Delta[n] -> X constant at a and b on the two
    ends, i.e. the fiber of X^{Delta[1]} -> X x X over (a, b)."""

    def __init__(self, X, a: SimplexKey, b: SimplexKey, budget=10**6, use_category=True):
        super().__init__(sx.delta(1), X, budget, use_category)
        self.a, self.b = a, b

    def fixed_for(self, n: int):
        P = self.prod(n)
        v0 = self.A.gen_of_label((0,))
        v1 = self.A.gen_of_label((1,))
        fixed = {}
        for g in P.all_gens():
            ka, _ = P.labels[g]
            if ka.gen == v0:
                end = self.a
            elif ka.gen == v1:
                end = self.b
            else:
                continue
            fixed[g] = apply_degeneracy_word(end, range(g[0] - 1, -1, -1))
        return fixed


def mapping_space(X: SimplicialSet, a: SimplexKey, b: SimplexKey, d: int,
                  budget: int = 10**6, use_category: bool = True) -> sx.MaterializedSSet:
    return sx.MaterializedSSet(MappingSpaceFamily(X, a, b, budget, use_category), d)


# -- natural transformations --------------------------------------------------


@dataclass
class NatTrans:
    """A map A x Delta[1] -> X presented on the materialized product."""

    prod: sx.MaterializedSSet  # product of A and Delta[1]
    A: SimplicialSet
    themap: SimplicialMap

    def component(self, v: SimplexKey) -> SimplexKey:
        """Edge alpha_v of X at a vertex v of A."""
        # the vertical edge over v is the pair (s_0-degenerate v, edge of Delta[1])
        dv = self.A.degeneracy(v, 0)
        e01 = SimplexKey(sx.delta(1).gen_of_label((0, 1)))
        k = self.prod.key_of(1, (dv, e01))
        return self.themap(k)

    def restrict_end(self, end: int) -> SimplicialMap:
        """Restriction to A x {end}, as a map A -> X."""
        dvert = SimplexKey(sx.delta(1).gen_of_label((end,)))
        assign = {}
        for g in self.A.all_gens():
            kb = apply_degeneracy_word(dvert, range(g[0] - 1, -1, -1))
            assign[g] = self.themap(self.prod.key_of(g[0], (SimplexKey(g), kb)))
        return SimplicialMap(self.A, self.themap.target, assign)


def tau1_map_equivalence(f: SimplicialMap) -> dict:
    """Is the induced functor of homotopy categories an equivalence?

    Essential surjectivity, fullness, and faithfulness by table search on
    the homotopy categories of source and target.
    """
    ho_s = ho_category(f.source)
    ho_t = ho_category(f.target)
    images = {f(v) for v in ho_s.cat.objects}
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
                fibers.setdefault(ho_t.cls(f(m)), []).append(m)
            if set(fibers) != set(ho_t.cat.hom(f(a), f(b))):
                full = False
            if any(len(v) > 1 for v in fibers.values()):
                faithful = False
    return {
        "equivalence": ess_surj and full and faithful,
        "essentially_surjective": ess_surj,
        "full": full,
        "faithful": faithful,
    }


def natural_equivalence_check(alpha: NatTrans, ho: HoCategory = None) -> bool:
    """True iff every component edge is an equivalence in the target."""
    X = alpha.themap.target
    if ho is None:
        ho = ho_category(X)
    return all(
        ho.cat.is_iso(ho.cls(alpha.component(SimplexKey(v))))
        for v in alpha.A.gens(0)
    )


# -- the ladder category nX and fullness witnesses ----------------------------


def nX_category(X: SimplicialSet, n: int, ho: HoCategory = None) -> FinCategory:
    """Category of length-n composable sequences of edges of X, with
    morphisms the ladders of homotopy classes whose squares commute in the
    homotopy category."""
    if ho is None:
        ho = ho_category(X)
    H = ho.cat
    edges = sorted(set(ho.class_of.values()))
    objects = []

    def extend(seq):
        if len(seq) == n:
            objects.append(tuple(seq))
            return
        last_tgt = H.tgt[seq[-1]] if seq else None
        for e in edges:
            if seq and H.src[e] != last_tgt:
                continue
            extend(seq + [e])

    if n == 0:
        objects.extend((v,) for v in H.objects)
    else:
        extend([])

    def verts_of(obj):
        if n == 0:
            return [obj[0]]
        return [H.src[obj[0]]] + [H.tgt[e] for e in obj]

    morphisms = []
    src, tgt = {}, {}
    for A in objects:
        for B in objects:
            va, vb = verts_of(A), verts_of(B)
            pools = [H.hom(va[i], vb[i]) for i in range(n + 1)]
            for gs in itertools.product(*pools):
                ok = True
                for i in range(1, n + 1):
                    if H.compose_mor(gs[i], A[i - 1]) != H.compose_mor(B[i - 1], gs[i - 1]):
                        ok = False
                        break
                if ok:
                    m = (A, B, gs)
                    morphisms.append(m)
                    src[m], tgt[m] = A, B
    ids = {A: (A, A, tuple(H.ids[v] for v in verts_of(A))) for A in objects}
    comp = {}
    for f in morphisms:
        for g in morphisms:
            if g[0] != f[1]:
                continue
            comp[(g, f)] = (
                f[0],
                g[1],
                tuple(H.compose_mor(gi, fi) for gi, fi in zip(g[2], f[2])),
            )
    return FinCategory(objects, morphisms, src, tgt, ids, comp)


def spine_diagram_map(X: SimplicialSet, edges: tuple[SimplexKey, ...]) -> SimplicialMap:
    """The map I[n] -> X given by a composable sequence of edges."""
    n = len(edges)
    I = sx.spine(n)
    assign = {}
    for i in range(n + 1):
        if i < n:
            assign[I.gen_of_label((i,))] = X.vertex(edges[i], 0)
        else:
            assign[I.gen_of_label((i,))] = X.vertex(edges[-1], 1)
    for i in range(1, n + 1):
        assign[I.gen_of_label((i - 1, i))] = edges[i - 1]
    return SimplicialMap(I, X, assign)


def phi_fullness_witness(X: SimplicialSet, n: int, morphism, budget: int = 10**6):
    """Build alpha : I[n] x Delta[1] -> X realizing a ladder morphism of
    nX_category whose components are the given classes.

    ``morphism`` is (A, B, gs) with A, B composable edge tuples and gs the
    vertical edges (representatives).  Returns a NatTrans or None.
    """
    A, B, gs = morphism
    I = sx.spine(n)
    span = sx.product(I, sx.delta(1), 2)
    P = span.sset
    d1 = sx.delta(1)
    e01 = SimplexKey(d1.gen_of_label((0, 1)))
    v0 = SimplexKey(d1.gen_of_label((0,)))
    v1 = SimplexKey(d1.gen_of_label((1,)))

    def vert(i):
        return SimplexKey(I.gen_of_label((i,)))

    def edge(i):
        return SimplexKey(I.gen_of_label((i - 1, i)))

    def verts_of(obj):
        if n == 0:
            return [obj[0]]
        return [X.vertex(obj[0], 0)] + [X.vertex(e, 1) for e in obj]

    va, vb = verts_of(A), verts_of(B)
    fixed = {}
    for i in range(n + 1):
        fixed[P.key_of(0, (vert(i), v0)).gen] = va[i]
        fixed[P.key_of(0, (vert(i), v1)).gen] = vb[i]
        fixed[P.key_of(1, (I.degeneracy(vert(i), 0), e01)).gen] = gs[i]
    for i in range(1, n + 1):
        fixed[P.key_of(1, (edge(i), d1.degeneracy(v0, 0))).gen] = A[i - 1]
        fixed[P.key_of(1, (edge(i), d1.degeneracy(v1, 0))).gen] = B[i - 1]
    maps = sx.enumerate_maps(P, X, fixed=fixed, budget=budget, use_category=False)
    if not maps:
        return None
    return NatTrans(P, I, maps[0])
