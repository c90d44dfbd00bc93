"""Finite, dimension-bounded simplicial sets.

A simplicial set is stored by its nondegenerate generators per dimension
together with face tables whose entries are simplices in Eilenberg-Zilber
normal form: a generator plus a strictly decreasing degeneracy word.
Degenerate simplices are never stored; they are keys computed on demand.

Every object carries an explicit dimension bound (``bound``); ``bound = None``
means the object is complete (no unknown generators in any dimension).
Operations that would need simplices above the bound raise ``BoundExceeded``
rather than silently truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, NamedTuple, Optional

Gen = tuple[int, int]  # (dimension, index within that dimension)


class BoundExceeded(Exception):
    """An operation needed simplices above the stored dimension bound."""


class BudgetExceeded(Exception):
    """An enumeration exceeded its configured budget."""

    def __init__(self, message, attempted=None):
        super().__init__(message)
        self.attempted = attempted


class SimplexKey(NamedTuple):
    """A simplex in degeneracy normal form: s_{w0} s_{w1} ... applied to a
    nondegenerate generator, with w0 > w1 > ... (outermost first)."""

    gen: Gen
    degens: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.gen[0] + len(self.degens)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degens)


def key_degeneracy(key: SimplexKey, i: int) -> SimplexKey:
    """Apply s_i to a normal-form key, renormalizing the degeneracy word.

    Uses s_i s_j = s_{j+1} s_i for i <= j, so indices >= i shift up by one.
    """
    if not 0 <= i <= key.dim:
        raise ValueError(f"degeneracy index {i} out of range for dim {key.dim}")
    word = [w + 1 for w in key.degens if w >= i] + [i] + [w for w in key.degens if w < i]
    return SimplexKey(key.gen, tuple(word))


def apply_degeneracy_word(key: SimplexKey, word: Iterable[int]) -> SimplexKey:
    """Apply a composite s_{w0} .. s_{wk} (w0 outermost) to a key."""
    for i in reversed(tuple(word)):
        key = key_degeneracy(key, i)
    return key


@dataclass
class SimplicialMap:
    """A simplicial map given by its values on nondegenerate generators."""

    source: "SimplicialSet"
    target: "SimplicialSet"
    assign: dict[Gen, SimplexKey]

    def __call__(self, key: SimplexKey) -> SimplexKey:
        return apply_degeneracy_word(self.assign[key.gen], key.degens)

    def check(self) -> None:
        """Verify the assignment commutes with all face maps on generators."""
        for g in self.assign:
            n = g[0]
            if self(SimplexKey(g)).dim != n:
                raise ValueError(f"map does not preserve dimension at {g}")
            if n == 0:
                continue
            for i in range(n + 1):
                lhs = self(self.source.face(SimplexKey(g), i))
                rhs = self.target.face(self(SimplexKey(g)), i)
                if lhs != rhs:
                    raise ValueError(f"map fails d_{i} at generator {g}: {lhs} != {rhs}")

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        assign = {g: self(k) for g, k in other.assign.items()}
        return SimplicialMap(other.source, self.target, assign)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialMap)
            and self.source is other.source
            and self.target is other.target
            and self.assign == other.assign
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), tuple(sorted(self.assign.items()))))

    @staticmethod
    def identity(X: "SimplicialSet") -> "SimplicialMap":
        assign = {g: SimplexKey(g) for n in range(X.top_dim + 1) for g in X.gens(n)}
        return SimplicialMap(X, X, assign)


class SimplicialSet:
    """Nondegenerate generators per dimension with face tables in normal form.

    Parameters
    ----------
    faces : dict mapping each generator (dim, idx) with dim >= 1 to its
        tuple of dim+1 face keys.  Generators of dimension 0 appear via
        ``n_gens`` only.
    n_gens : list of generator counts per dimension.
    labels : optional payloads attached to generators (vertex tuples for
        standard simplices, morphism strings for nerves, ...).
    bound : maximum dimension up to which the generator list is faithful;
        ``None`` means complete in all dimensions.
    """

    def __init__(self, n_gens, faces, labels=None, bound=None, category=None):
        self.n_gens = list(n_gens)
        while self.n_gens and self.n_gens[-1] == 0:
            self.n_gens.pop()
        self.faces = dict(faces)
        self.labels = dict(labels or {})
        self.bound = bound
        self.category = category  # set for nerves; enables fast map search
        self._gen_of_label = {v: g for g, v in self.labels.items()}
        self._simplices_cache: dict[int, list[SimplexKey]] = {}

    # -- basic structure -------------------------------------------------

    @property
    def top_dim(self) -> int:
        return len(self.n_gens) - 1 if self.n_gens else -1

    def effective_bound(self) -> float:
        return float("inf") if self.bound is None else self.bound

    def require_bound(self, d: int, what: str = "operation") -> None:
        if d > self.effective_bound():
            raise BoundExceeded(f"{what} needs dimension {d} but bound is {self.bound}")

    def gens(self, n: int) -> list[Gen]:
        if n < 0 or n >= len(self.n_gens):
            return []
        return [(n, i) for i in range(self.n_gens[n])]

    def all_gens(self) -> list[Gen]:
        return [g for n in range(self.top_dim + 1) for g in self.gens(n)]

    def is_empty(self) -> bool:
        return not self.n_gens

    def gen_of_label(self, label) -> Gen:
        return self._gen_of_label[label]

    def label(self, gen: Gen):
        return self.labels.get(gen)

    # -- face and degeneracy operators on keys ---------------------------

    def face(self, key: SimplexKey, i: int) -> SimplexKey:
        """d_i in normal form, via d_i s_j identities and the face tables."""
        n = key.dim
        if n == 0:
            raise ValueError("0-simplices have no faces")
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for dim {n}")
        out: list[int] = []
        word = key.degens
        for pos, j in enumerate(word):
            if i < j:
                out.append(j - 1)
            elif i in (j, j + 1):
                return SimplexKey(key.gen, tuple(out) + word[pos + 1 :])
            else:
                out.append(j)
                i -= 1
        base = self.faces[key.gen][i]
        return apply_degeneracy_word(base, out)

    def degeneracy(self, key: SimplexKey, i: int) -> SimplexKey:
        return key_degeneracy(key, i)

    def simplices(self, n: int) -> list[SimplexKey]:
        """All n-simplices (degenerate included) in canonical order."""
        if n < 0:
            return []
        self.require_bound(n, "simplex enumeration")
        if n not in self._simplices_cache:
            out = []
            for m in range(min(n, self.top_dim) + 1):
                for g in self.gens(m):
                    for word in itertools.combinations(range(n - 1, -1, -1), n - m):
                        out.append(SimplexKey(g, word))
            out.sort()
            self._simplices_cache[n] = out
        return self._simplices_cache[n]

    def boundary_tuple(self, key: SimplexKey) -> tuple[SimplexKey, ...]:
        return tuple(self.face(key, i) for i in range(key.dim + 1))

    def subsimplex(self, key: SimplexKey, indices) -> SimplexKey:
        """The face of ``key`` spanned by the given sorted vertex indices."""
        indices = sorted(indices)
        k = key
        for idx in sorted(set(range(key.dim + 1)) - set(indices), reverse=True):
            k = self.face(k, idx)
        return k

    def vertex(self, key: SimplexKey, j: int) -> SimplexKey:
        return self.subsimplex(key, [j])

    def vertices(self, key: SimplexKey) -> tuple[SimplexKey, ...]:
        return tuple(self.vertex(key, j) for j in range(key.dim + 1))

    def edges_of(self, key: SimplexKey) -> list[SimplexKey]:
        """All edges (i,j), i < j, of a simplex, degenerate ones included."""
        n = key.dim
        return [self.subsimplex(key, (i, j)) for i in range(n + 1) for j in range(i + 1, n + 1)]

    def spine_of(self, key: SimplexKey) -> list[SimplexKey]:
        return [self.subsimplex(key, (i - 1, i)) for i in range(1, key.dim + 1)]

    # -- validation -------------------------------------------------------

    def check(self) -> None:
        """Verify simplicial identities d_i d_j = d_{j-1} d_i on generators."""
        for n in range(1, self.top_dim + 1):
            for g in self.gens(n):
                row = self.faces[g]
                if len(row) != n + 1:
                    raise ValueError(f"generator {g} has {len(row)} faces, wanted {n + 1}")
                for f in row:
                    if f.dim != n - 1:
                        raise ValueError(f"face of {g} has wrong dimension")
                    if f.gen not in (self.faces if f.gen[0] else {}) and f.gen[0] > 0:
                        raise ValueError(f"face of {g} refers to unknown generator {f.gen}")
                    if f.gen[1] >= self.n_gens[f.gen[0]]:
                        raise ValueError(f"face of {g} refers to unknown generator {f.gen}")
                if n >= 2:
                    k = SimplexKey(g)
                    for j in range(n + 1):
                        for i in range(j):
                            lhs = self.face(self.face(k, j), i)
                            rhs = self.face(self.face(k, i), j - 1)
                            if lhs != rhs:
                                raise ValueError(f"d_{i} d_{j} fails at generator {g}")


# -- normalize: formal words of face/degeneracy operators -----------------


def normalize(X: SimplicialSet, key: SimplexKey, word) -> SimplexKey:
    """Apply a formal word of operators to a key, outermost first.

    ``word`` is a sequence of ("d", i) / ("s", i) pairs, e.g.
    [("d", 1), ("s", 1), ("s", 0)] for d_1 s_1 s_0.
    """
    for op, i in reversed(list(word)):
        if op == "s":
            key = X.degeneracy(key, i)
        elif op == "d":
            key = X.face(key, i)
        else:
            raise ValueError(f"unknown operator {op!r}")
    return key


# -- generic materialization of functionally presented families -----------


class Family:
    """A simplicial set presented functionally up to a dimension bound.

    Subclasses provide ``elements(n)`` (all n-simplices as hashable values),
    ``face(n, x, i)`` and ``degeneracy(n, x, i)``.
    """

    category = None

    def elements(self, n: int):
        raise NotImplementedError

    def face(self, n: int, x, i: int):
        raise NotImplementedError

    def degeneracy(self, n: int, x, i: int):
        raise NotImplementedError


class MaterializedSSet(SimplicialSet):
    """A simplicial set materialized from a :class:`Family`.

    Keeps the family and the element<->key translation, so that maps into
    or out of the materialization can be built from raw elements.
    """

    def __init__(self, family: Family, d: int, complete=False, category=None):
        self.family = family
        gens_per_dim: list[list[Any]] = []
        self._elem_gen: dict[tuple[int, Any], Gen] = {}
        key_memo: dict[tuple[int, Any], SimplexKey] = {}

        def key_of(n: int, x) -> SimplexKey:
            item = (n, x)
            if item in key_memo:
                return key_memo[item]
            if item in self._elem_gen:
                k = SimplexKey(self._elem_gen[item])
            else:
                for i in range(n - 1, -1, -1):
                    fx = family.face(n, x, i)
                    if family.degeneracy(n - 1, fx, i) == x:
                        k = key_degeneracy(key_of(n - 1, fx), i)
                        break
                else:
                    raise AssertionError(f"element {x!r} at dim {n} is neither stored nor degenerate")
            key_memo[item] = k
            return k

        faces: dict[Gen, tuple[SimplexKey, ...]] = {}
        labels: dict[Gen, Any] = {}
        for n in range(d + 1):
            layer = []
            for x in sorted(family.elements(n), key=repr):
                degenerate = False
                if n > 0:
                    for i in range(n):
                        fx = family.face(n, x, i)
                        if family.degeneracy(n - 1, fx, i) == x:
                            degenerate = True
                            break
                if degenerate:
                    continue
                g = (n, len(layer))
                layer.append(x)
                self._elem_gen[(n, x)] = g
                labels[g] = x
                if n > 0:
                    faces[g] = tuple(key_of(n - 1, family.face(n, x, i)) for i in range(n + 1))
            gens_per_dim.append(len(layer))
        super().__init__(
            gens_per_dim,
            faces,
            labels=labels,
            bound=None if complete else d,
            category=category if category is not None else family.category,
        )
        self._key_memo = key_memo
        self._key_of_fn = key_of

    def key_of(self, n: int, elem) -> SimplexKey:
        """Normal-form key of a raw family element."""
        return self._key_of_fn(n, elem)

    def elem_of(self, key: SimplexKey):
        """Raw family element underlying a key (degenerate keys included)."""
        x = self.labels[key.gen]
        n = key.gen[0]
        for i in reversed(key.degens):
            x = self.family.degeneracy(n, x, i)
            n += 1
        return x


# -- standard objects ------------------------------------------------------


def _subset_complex(subsets, category=None) -> SimplicialSet:
    """Simplicial set whose nondegenerate simplices are the given vertex
    subsets of some [n] (each a sorted tuple), closed under taking faces."""
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in subsets:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    top = max(by_dim) if by_dim else -1
    n_gens, faces, labels = [], {}, {}
    index: dict[tuple[int, ...], Gen] = {}
    for n in range(top + 1):
        layer = sorted(set(by_dim.get(n, [])))
        n_gens.append(len(layer))
        for i, s in enumerate(layer):
            index[s] = (n, i)
            labels[(n, i)] = s
    for s, g in index.items():
        n = g[0]
        if n == 0:
            continue
        row = []
        for i in range(n + 1):
            t = s[:i] + s[i + 1 :]
            if t not in index:
                raise ValueError(f"subset complex not closed under faces: {t} missing")
            row.append(SimplexKey(index[t]))
        faces[g] = tuple(row)
    return SimplicialSet(n_gens, faces, labels=labels, bound=None, category=category)


def delta(n: int) -> SimplicialSet:
    """The standard n-simplex."""
    subs = [c for k in range(n + 1) for c in itertools.combinations(range(n + 1), k + 1)]
    return _subset_complex(subs)


def boundary(n: int) -> SimplicialSet:
    if n == 0:
        return empty_sset()
    subs = [
        c
        for k in range(n)
        for c in itertools.combinations(range(n + 1), k + 1)
    ]
    return _subset_complex(subs)


def horn(n: int, k: int) -> SimplicialSet:
    if not 0 <= k <= n:
        raise ValueError("horn index out of range")
    full = tuple(range(n + 1))
    omit_k = tuple(v for v in full if v != k)
    subs = [
        c
        for m in range(n)
        for c in itertools.combinations(range(n + 1), m + 1)
        if c != omit_k
    ]
    return _subset_complex(subs)


def spine(n: int) -> SimplicialSet:
    subs = [(i,) for i in range(n + 1)] + [(i - 1, i) for i in range(1, n + 1)]
    return _subset_complex(subs)


def point() -> SimplicialSet:
    return delta(0)


def empty_sset() -> SimplicialSet:
    return SimplicialSet([], {}, bound=None)


def standard_object(kind: str, n: int, k: Optional[int] = None) -> SimplicialSet:
    if kind == "simplex":
        return delta(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "horn":
        if k is None:
            raise ValueError("horn needs an index k")
        return horn(n, k)
    if kind == "spine":
        return spine(n)
    raise ValueError(f"unknown standard object {kind!r}")


def delta_inclusion(source: SimplicialSet, target: SimplicialSet, vertex_map) -> SimplicialMap:
    """Map between subset complexes induced by a function on vertex labels."""
    assign = {}
    for g in source.all_gens():
        s = source.labels[g]
        t = tuple(vertex_map(v) for v in s)
        # t may repeat entries; normalize to a degenerate key over the image.
        distinct = tuple(sorted(set(t)))
        base = SimplexKey(target.gen_of_label(distinct))
        # positions where consecutive images coincide are degeneracy indices
        word = sorted((i for i in range(len(t) - 1) if t[i] == t[i + 1]), reverse=True)
        assign[g] = SimplexKey(base.gen, tuple(word))
    return SimplicialMap(source, target, assign)


# -- products, pullbacks, joins -------------------------------------------


class ProductFamily(Family):
    def __init__(self, X: SimplicialSet, Y: SimplicialSet):
        self.X, self.Y = X, Y
        if X.category is not None and Y.category is not None:
            self.category = X.category.product(Y.category)

    def elements(self, n):
        return [(a, b) for a in self.X.simplices(n) for b in self.Y.simplices(n)]

    def face(self, n, x, i):
        return (self.X.face(x[0], i), self.Y.face(x[1], i))

    def degeneracy(self, n, x, i):
        return (self.X.degeneracy(x[0], i), self.Y.degeneracy(x[1], i))


class PullbackFamily(ProductFamily):
    def __init__(self, f: SimplicialMap, g: SimplicialMap):
        if f.target is not g.target:
            raise ValueError("pullback legs must share a target")
        super().__init__(f.source, g.source)
        self.category = None
        self.f, self.g = f, g

    def elements(self, n):
        return [x for x in super().elements(n) if self.f(x[0]) == self.g(x[1])]


@dataclass
class Span2:
    """A simplicial set with two structure maps (projections/inclusions)."""

    sset: MaterializedSSet
    left: SimplicialMap
    right: SimplicialMap


def product(X: SimplicialSet, Y: SimplicialSet, d: int) -> Span2:
    for Z in (X, Y):
        Z.require_bound(d, "product")
    P = MaterializedSSet(ProductFamily(X, Y), d, complete=(X.bound is None and Y.bound is None))
    p1 = SimplicialMap(P, X, {g: P.labels[g][0] for g in P.all_gens()})
    p2 = SimplicialMap(P, Y, {g: P.labels[g][1] for g in P.all_gens()})
    return Span2(P, p1, p2)


def pullback(f: SimplicialMap, g: SimplicialMap, d: int) -> Span2:
    f.source.require_bound(d, "pullback")
    g.source.require_bound(d, "pullback")
    P = MaterializedSSet(PullbackFamily(f, g), d)
    p1 = SimplicialMap(P, f.source, {h: P.labels[h][0] for h in P.all_gens()})
    p2 = SimplicialMap(P, g.source, {h: P.labels[h][1] for h in P.all_gens()})
    return Span2(P, p1, p2)


class JoinFamily(Family):
    """(A * B)_n = A_n + B_n + sum over i+1+j=n of A_i x B_j."""

    def __init__(self, A: SimplicialSet, B: SimplicialSet):
        self.A, self.B = A, B
        if A.category is not None and B.category is not None:
            self.category = A.category.join(B.category)

    def elements(self, n):
        out = [("a", k) for k in self.A.simplices(n)]
        out += [("b", k) for k in self.B.simplices(n)]
        for i in range(n):
            j = n - 1 - i
            out += [("j", a, b) for a in self.A.simplices(i) for b in self.B.simplices(j)]
        return out

    def face(self, n, x, i):
        if x[0] == "a":
            return ("a", self.A.face(x[1], i))
        if x[0] == "b":
            return ("b", self.B.face(x[1], i))
        _, a, b = x
        da = a.dim
        if i <= da:
            if da == 0:
                return ("b", b)
            return ("j", self.A.face(a, i), b)
        if b.dim == 0:
            return ("a", a)
        return ("j", a, self.B.face(b, i - da - 1))

    def degeneracy(self, n, x, i):
        if x[0] == "a":
            return ("a", self.A.degeneracy(x[1], i))
        if x[0] == "b":
            return ("b", self.B.degeneracy(x[1], i))
        _, a, b = x
        if i <= a.dim:
            return ("j", self.A.degeneracy(a, i), b)
        return ("j", a, self.B.degeneracy(b, i - a.dim - 1))


def join(A: SimplicialSet, B: SimplicialSet, d: int) -> Span2:
    J = MaterializedSSet(JoinFamily(A, B), d, complete=(A.bound is None and B.bound is None))
    inclA = SimplicialMap(
        A, J, {g: J.key_of(g[0], ("a", SimplexKey(g))) for g in A.all_gens() if g[0] <= d}
    )
    inclB = SimplicialMap(
        B, J, {g: J.key_of(g[0], ("b", SimplexKey(g))) for g in B.all_gens() if g[0] <= d}
    )
    return Span2(J, inclA, inclB)


# -- subcomplexes ----------------------------------------------------------


class SubFamily(Family):
    """Subcomplex of a simplicial set on a face-closed set of keys."""

    def __init__(self, X: SimplicialSet, keep: Callable[[SimplexKey], bool], d: int, category=None):
        self.X, self.keep, self.d = X, keep, d
        self.category = category

    def elements(self, n):
        return [k for k in self.X.simplices(n) if self.keep(k)]

    def face(self, n, x, i):
        return self.X.face(x, i)

    def degeneracy(self, n, x, i):
        return self.X.degeneracy(x, i)


def subcomplex(X: SimplicialSet, keep, d: int, category=None) -> tuple[MaterializedSSet, SimplicialMap]:
    """Materialize the subcomplex of keys satisfying ``keep`` (which must be
    face-closed) together with its inclusion."""
    S = MaterializedSSet(SubFamily(X, keep, d, category=category), d)
    incl = SimplicialMap(S, X, {g: S.labels[g] for g in S.all_gens()})
    return S, incl


def full_subcomplex(X: SimplicialSet, vertices_keep, d: int, category=None):
    """0-full subcomplex on a set of vertex keys."""
    vs = set(vertices_keep)

    def keep(k):
        return all(v in vs for v in X.vertices(k))

    return subcomplex(X, keep, d, category=category)


def one_full_subcomplex(X: SimplicialSet, edge_keep, d: int, category=None):
    """1-full subcomplex on the edges satisfying ``edge_keep``."""

    def keep(k):
        if k.dim == 0:
            return True
        return all(edge_keep(e) for e in X.edges_of(k))

    return subcomplex(X, keep, d, category=category)


# -- map enumeration -------------------------------------------------------


def _nerve_string_key(X: SimplicialSet, morphisms) -> SimplexKey:
    """Key in a nerve for the simplex given by a tuple of spine morphisms
    (identities allowed)."""
    C = X.category
    word = tuple(sorted((i for i, m in enumerate(morphisms) if m in C.id_set), reverse=True))
    core = tuple(m for m in morphisms if m not in C.id_set)
    if not core:
        obj = C.src[morphisms[0]] if morphisms else None
        raise ValueError("vertex strings need an object; use _nerve_vertex_key")
    gen = X.gen_of_label(core)
    return SimplexKey(gen, word)


def _enumerate_functor_maps(K, X, fixed, budget):
    """Maps K -> X for X the nerve of a finite category.

    A nerve is 2-coskeletal and its simplices are determined by their spines,
    so a map is exactly an assignment of objects to vertices and morphisms to
    edges satisfying the composition relation on every 2-simplex.
    """
    C = X.category
    K.require_bound(min(2, K.top_dim), "map enumeration")
    verts = K.gens(0)
    edge_gens = K.gens(1)
    fixed = fixed or {}

    obj_of_vertex_key = {}
    for g in X.gens(0):
        obj_of_vertex_key[SimplexKey(g)] = X.labels[g]

    def key_for_vertex(obj):
        return SimplexKey(X.gen_of_label(obj))

    def edge_value_to_morphism(key):
        if key.is_degenerate:
            return C.ids[obj_of_vertex_key[SimplexKey(key.gen)]]
        return X.labels[key.gen][0]

    # seeds from the fixed generator assignments
    vassign: dict[Gen, Any] = {}
    eassign: dict[Gen, Any] = {}
    for g, val in fixed.items():
        if g[0] == 0:
            vassign[g] = obj_of_vertex_key[val]
        elif g[0] == 1:
            eassign[g] = edge_value_to_morphism(val)
    # fixed higher generators constrain their edges
    for g, val in fixed.items():
        if g[0] >= 2:
            gk = SimplexKey(g)
            for i in range(g[0] + 1):
                for j in range(i + 1, g[0] + 1):
                    e = K.subsimplex(gk, (i, j))
                    sub = X.subsimplex(val, (i, j))
                    if e.is_degenerate:
                        continue
                    m = edge_value_to_morphism(sub)
                    if eassign.setdefault(e.gen, m) != m:
                        return []
            for j in range(g[0] + 1):
                v = K.vertex(gk, j)
                o = obj_of_vertex_key[SimplexKey(X.vertex(val, j).gen)]
                if vassign.setdefault(v.gen, o) != o:
                    return []

    # 2-simplex relations, phrased on edge generators; each triangle is
    # checked as soon as its last nondegenerate edge gets assigned
    triangles = []
    for g in K.gens(2):
        gk = SimplexKey(g)
        e01, e12, e02 = (K.subsimplex(gk, p) for p in ((0, 1), (1, 2), (0, 2)))
        triangles.append((e01, e12, e02))
    edge_pos = {e: i for i, e in enumerate(edge_gens)}
    tri_ready: dict[int, list] = {}
    tri_at_start = []
    for tri in triangles:
        positions = [edge_pos[e.gen] for e in tri if not e.is_degenerate]
        if positions:
            tri_ready.setdefault(max(positions), []).append(tri)
        else:
            tri_at_start.append(tri)

    counter = [0]

    def edge_candidates(egen, vo):
        gk = SimplexKey(egen)
        a = vo[K.vertex(gk, 0).gen]
        b = vo[K.vertex(gk, 1).gen]
        return C.hom(a, b)

    results = []

    def mor_of(e, ea, vo):
        if e.is_degenerate:
            return C.ids[vo[K.vertex(e, 0).gen]]
        return ea[e.gen]

    def assemble(vo, ea):
        assign = {}
        for n in range(K.top_dim + 1):
            for g in K.gens(n):
                gk = SimplexKey(g)
                if n == 0:
                    assign[g] = key_for_vertex(vo[g])
                else:
                    ms = tuple(mor_of(e, ea, vo) for e in K.spine_of(gk))
                    if all(m in C.id_set for m in ms):
                        base = key_for_vertex(vo[K.vertex(gk, 0).gen])
                        assign[g] = apply_degeneracy_word(base, range(n - 1, -1, -1))
                    else:
                        assign[g] = _nerve_string_key(X, ms)
        return SimplicialMap(K, X, assign)

    def tri_ok(tri, vo, ea):
        e01, e12, e02 = tri
        return C.compose_mor(mor_of(e12, ea, vo), mor_of(e01, ea, vo)) == mor_of(e02, ea, vo)

    def search_edges(idx, vo, ea):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded("map enumeration budget exceeded", counter[0])
        if idx == len(edge_gens):
            results.append(assemble(vo, ea))
            return
        egen = edge_gens[idx]
        if egen in eassign:
            cands = [eassign[egen]]
        else:
            cands = edge_candidates(egen, vo)
        for m in cands:
            gk = SimplexKey(egen)
            if C.src[m] != vo[K.vertex(gk, 0).gen] or C.tgt[m] != vo[K.vertex(gk, 1).gen]:
                continue
            ea[egen] = m
            if all(tri_ok(t, vo, ea) for t in tri_ready.get(idx, ())):
                search_edges(idx + 1, vo, ea)
            del ea[egen]

    def search_vertices(idx, vo):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded("map enumeration budget exceeded", counter[0])
        if idx == len(verts):
            if all(tri_ok(t, vo, {}) for t in tri_at_start):
                search_edges(0, dict(vo), {})
            return
        v = verts[idx]
        cands = [vassign[v]] if v in vassign else list(C.objects)
        for o in cands:
            vo[v] = o
            search_vertices(idx + 1, vo)
            del vo[v]

    search_vertices(0, {})
    return results


def enumerate_maps(
    K: SimplicialSet,
    X: SimplicialSet,
    fixed: Optional[dict[Gen, SimplexKey]] = None,
    budget: int = 10**6,
    use_category: bool = True,
) -> list[SimplicialMap]:
    """All simplicial maps K -> X, deterministically ordered.

    ``fixed`` prescribes values on some generators of K.  When X is a nerve
    and ``use_category`` is true, maps are found by functor search on the
    1-skeleton; otherwise by backtracking over generators in dimension order.
    """
    if use_category and X.category is not None:
        results = _enumerate_functor_maps(K, X, fixed, budget)
        results.sort(key=lambda m: sorted(m.assign.items()))
        return results

    gens_in_order = K.all_gens()
    X.require_bound(K.top_dim, "map enumeration")
    fixed = fixed or {}
    # candidate index: faces tuple -> keys, per dimension
    cand_index: dict[int, dict[tuple, list[SimplexKey]]] = {}
    for n in range(1, K.top_dim + 1):
        idx: dict[tuple, list[SimplexKey]] = {}
        for k in X.simplices(n):
            idx.setdefault(X.boundary_tuple(k), []).append(k)
        cand_index[n] = idx

    counter = [0]
    results: list[SimplicialMap] = []
    assign: dict[Gen, SimplexKey] = {}

    def image(key: SimplexKey) -> SimplexKey:
        return apply_degeneracy_word(assign[key.gen], key.degens)

    def rec(pos):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded("map enumeration budget exceeded", counter[0])
        if pos == len(gens_in_order):
            results.append(SimplicialMap(K, X, dict(assign)))
            return
        g = gens_in_order[pos]
        n = g[0]
        if n == 0:
            cands = X.simplices(0)
        else:
            wanted = tuple(image(K.face(SimplexKey(g), i)) for i in range(n + 1))
            cands = cand_index[n].get(wanted, [])
        if g in fixed:
            cands = [c for c in cands if c == fixed[g]]
        for c in cands:
            assign[g] = c
            rec(pos + 1)
            del assign[g]

    rec(0)
    return results


# -- horn fillers ----------------------------------------------------------


def inner_horn_filler(X: SimplicialSet, h: SimplicialMap) -> Optional[SimplexKey]:
    """First filler (in canonical order) of a horn map h : Lambda^k[n] -> X,
    or None.  Works for outer horns too."""
    H = h.source
    n = max(len(H.labels[g]) for g in H.all_gens())  # largest vertex subset size
    full = tuple(range(n + 1))
    missing = [k for k in range(n + 1) if tuple(v for v in full if v != k) not in H._gen_of_label]
    if len(missing) != 1:
        raise ValueError("source is not a horn")
    k = missing[0]
    X.require_bound(n, "horn filling")
    wanted = {}
    for i in range(n + 1):
        if i == k:
            continue
        face_lbl = tuple(v for v in full if v != i)
        wanted[i] = h(SimplexKey(H.gen_of_label(face_lbl)))
    for cand in X.simplices(n):
        if all(X.face(cand, i) == wanted[i] for i in wanted):
            return cand
    return None


def horn_maps(X: SimplicialSet, n: int, k: int, budget: int = 10**6, use_category: bool = True):
    """All horn maps Lambda^k[n] -> X."""
    return enumerate_maps(horn(n, k), X, budget=budget, use_category=use_category)


# -- isomorphism search ----------------------------------------------------


def iso_check(X: SimplicialSet, Y: SimplicialSet, d: int, budget: int = 10**6):
    """A face-compatible dimension-wise bijection of generators up to d,
    or None.  Raises BudgetExceeded if the search is cut off."""
    dx = min(d, X.top_dim)
    dy = min(d, Y.top_dim)
    if dx != dy:
        return None
    for n in range(dx + 1):
        if len(X.gens(n)) != len(Y.gens(n)):
            return None
    gens_in_order = [g for n in range(dx + 1) for g in X.gens(n)]
    counter = [0]
    assign: dict[Gen, Gen] = {}
    used: set[Gen] = set()

    def image(key: SimplexKey) -> SimplexKey:
        return SimplexKey(assign[key.gen], key.degens)

    def rec(pos):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded("isomorphism search budget exceeded", counter[0])
        if pos == len(gens_in_order):
            return dict(assign)
        g = gens_in_order[pos]
        n = g[0]
        for h in Y.gens(n):
            if h in used:
                continue
            if n > 0:
                ok = True
                for i in range(n + 1):
                    f = X.face(SimplexKey(g), i)
                    if f.gen not in assign or image(f) != Y.face(SimplexKey(h), i):
                        ok = False
                        break
                if not ok:
                    continue
            assign[g] = h
            used.add(h)
            out = rec(pos + 1)
            if out is not None:
                return out
            del assign[g]
            used.discard(h)
        return None

    return rec(0)


# -- barycentric subdivision and Ex ---------------------------------------


def is_regular(X: SimplicialSet) -> bool:
    """True when every nondegenerate generator has nondegenerate, pairwise
    distinct faces (so the face-poset nerve models the subdivision)."""
    for n in range(1, X.top_dim + 1):
        for g in X.gens(n):
            row = X.faces[g]
            if any(f.is_degenerate for f in row):
                return False
            if len(set(row)) != len(row):
                return False
    return True


def face_poset(X: SimplicialSet):
    """Nondegenerate generators ordered by iterated-face containment.
    Returns (elements, leq) with leq a set of ordered pairs."""
    elements = X.all_gens()
    below: dict[Gen, set[Gen]] = {}

    def closure(g: Gen) -> set[Gen]:
        if g in below:
            return below[g]
        out = {g}
        if g[0] > 0:
            for f in X.faces[g]:
                if not f.is_degenerate:
                    out |= closure(f.gen)
        below[g] = out
        return out

    leq = {(a, b) for b in elements for a in closure(b)}
    return elements, leq


def subdivision(X: SimplicialSet):
    """Barycentric subdivision as the nerve of the face poset (regular X
    only)."""
    from . import cats

    if not is_regular(X):
        raise ValueError("subdivision implemented only for regular simplicial sets")
    elements, leq = face_poset(X)
    P = cats.poset_category(elements, lambda a, b: (a, b) in leq)
    longest = max((g[0] for g in elements), default=0) + 1
    return cats.nerve(P, longest)


class ExFamily(Family):
    """Ex(X)_n = maps Sd(Delta[n]) -> X, by exhaustive enumeration."""

    def __init__(self, X: SimplicialSet, budget: int):
        self.X = X
        self.budget = budget
        self._sd: dict[int, SimplicialSet] = {}

    def sd_delta(self, n):
        if n not in self._sd:
            self._sd[n] = subdivision(delta(n))
        return self._sd[n]

    def _chain_map(self, n_from, n_to, vertex_fn):
        """Nerve map Sd Delta[n_from] -> Sd Delta[n_to] induced by a monotone
        map on [n], acting on chains of vertex subsets."""
        S, T = self.sd_delta(n_from), self.sd_delta(n_to)
        assign = {}
        for g in S.all_gens():
            # labels of a poset nerve: dim 0 -> element; dim k -> tuple of morphisms
            if g[0] == 0:
                elems = [S.labels[g]]
            else:
                ms = S.labels[g]
                elems = [ms[0][0]] + [m[1] for m in ms]
            imgs = []
            for el in elems:
                subset = self._poset_elem_subset(n_from, el)
                imgs.append(tuple(sorted({vertex_fn(v) for v in subset})))
            assign[g] = self._chain_key(T, imgs, n_to)
        return SimplicialMap(S, T, assign)

    @staticmethod
    def _poset_elem_subset(n, elem):
        # face-poset elements of delta(n) are generators of delta(n); their
        # labels are the vertex subsets, and gen index order matches label
        # order by construction of _subset_complex
        d = delta(n)
        return d.labels[elem]

    @staticmethod
    def _chain_key(T, subsets, n_to):
        d = delta(n_to)
        elems = [d.gen_of_label(s) for s in subsets]
        C = T.category
        word = sorted((i for i in range(len(elems) - 1) if elems[i] == elems[i + 1]), reverse=True)
        core = [elems[0]] + [b for a, b in zip(elems, elems[1:]) if a != b]
        if len(core) == 1:
            base = SimplexKey(T.gen_of_label(core[0]))
        else:
            ms = tuple((a, b) for a, b in zip(core, core[1:]))
            base = SimplexKey(T.gen_of_label(ms))
        return apply_degeneracy_word(base, word)

    def elements(self, n):
        maps = enumerate_maps(self.sd_delta(n), self.X, budget=self.budget)
        order = [g for m in range(self.sd_delta(n).top_dim + 1) for g in self.sd_delta(n).gens(m)]
        return [tuple(mp.assign[g] for g in order) for mp in maps]

    def _as_map(self, n, x):
        S = self.sd_delta(n)
        order = [g for m in range(S.top_dim + 1) for g in S.gens(m)]
        return SimplicialMap(S, self.X, dict(zip(order, x)))

    def _precompose(self, n_from, n_to, vertex_fn, x):
        f = self._as_map(n_to, x)
        g = f.compose(self._chain_map(n_from, n_to, vertex_fn))
        S = self.sd_delta(n_from)
        order = [h for m in range(S.top_dim + 1) for h in S.gens(m)]
        return tuple(g.assign[h] for h in order)

    def face(self, n, x, i):
        return self._precompose(n - 1, n, lambda v: v if v < i else v + 1, x)

    def degeneracy(self, n, x, i):
        return self._precompose(n + 1, n, lambda v: v if v <= i else v - 1, x)


def ex(X: SimplicialSet, d: int, budget: int = 10**6) -> MaterializedSSet:
    """The finite Ex iterate: Ex(X) materialized up to dimension d."""
    return MaterializedSSet(ExFamily(X, budget), d)
