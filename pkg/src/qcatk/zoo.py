"""Seeded generators of small categories, posets, and Waldhausen instances
for property tests, plus the object-duplication construction used by the
approximation tests."""

from __future__ import annotations

import random

from .cats import (
    FinCategory,
    FinFunctor,
    cyclic_group_category,
    monoid_category,
    poset_category,
)
from .waldhausen import WaldhausenData, nerve_waldhausen


def indiscrete_category(objects) -> FinCategory:
    """Exactly one morphism between any ordered pair; every morphism is
    invertible."""
    return poset_category(objects, lambda a, b: True)


def idempotent_monoid_category() -> FinCategory:
    """The two-element monoid {1, e} with e*e = e."""
    return monoid_category(
        ["1", "e"], lambda a, b: "e" if "e" in (a, b) else "1", "1"
    )


def disjoint_union(C: FinCategory, D: FinCategory) -> FinCategory:
    objects = [("l", o) for o in C.objects] + [("r", o) for o in D.objects]
    morphisms = [("l", m) for m in C.morphisms] + [("r", m) for m in D.morphisms]
    src, tgt = {}, {}
    for tag, m in morphisms:
        side = C if tag == "l" else D
        src[(tag, m)] = (tag, side.src[m])
        tgt[(tag, m)] = (tag, side.tgt[m])
    ids = {("l", o): ("l", C.ids[o]) for o in C.objects}
    ids.update({("r", o): ("r", D.ids[o]) for o in D.objects})
    comp = {}
    for (tg, g) in morphisms:
        for (tf, f) in morphisms:
            if tg != tf or src[(tg, g)] != tgt[(tf, f)]:
                continue
            side = C if tg == "l" else D
            comp[((tg, g), (tf, f))] = (tg, side.compose_mor(g, f))
    return FinCategory(objects, morphisms, src, tgt, ids, comp)


def random_poset(rng: random.Random, size: int) -> FinCategory:
    """Random partial order on 0..size-1 compatible with the integer order,
    from the transitive closure of random covering pairs."""
    leq = {(i, i) for i in range(size)}
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < 0.5:
                leq.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for (c, d) in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return poset_category(range(size), lambda a, b: (a, b) in leq)


def random_groupoid(rng: random.Random) -> FinCategory:
    pieces = []
    budget = rng.randint(1, 3)
    for _ in range(budget):
        kind = rng.choice(["cyclic", "indiscrete", "point"])
        if kind == "cyclic":
            pieces.append(cyclic_group_category(rng.choice([2, 3])))
        elif kind == "indiscrete":
            pieces.append(indiscrete_category(range(rng.randint(1, 2))))
        else:
            pieces.append(poset_category([0], lambda a, b: True))
    out = pieces[0]
    for p in pieces[1:]:
        out = disjoint_union(out, p)
    return out


def random_category(rng: random.Random, max_objects: int = 4) -> FinCategory:
    """A small category drawn from a catalogue: posets, monoids, groupoids,
    and joins/products of smaller ones."""
    kind = rng.choice(["poset", "monoid", "groupoid", "join", "product"])
    if kind == "poset":
        return random_poset(rng, rng.randint(1, max_objects))
    if kind == "monoid":
        return rng.choice(
            [cyclic_group_category(2), cyclic_group_category(3), idempotent_monoid_category()]
        )
    if kind == "groupoid":
        return random_groupoid(rng)
    a = random_poset(rng, rng.randint(1, max_objects // 2))
    b = random_poset(rng, rng.randint(1, max_objects // 2))
    return a.join(b) if kind == "join" else a.product(b)


# -- object duplication ---------------------------------------------------------


def duplicate_object(C: FinCategory, obj, new_obj):
    """Category with an extra object isomorphic to ``obj``; new morphisms
    are tagged ("dup", underlying, source-flag, target-flag).  Returns the
    category and the inclusion functor of C."""
    objects = C.objects + [new_obj]

    def wrap(f, sf, tf):
        return ("dup", f, sf, tf) if (sf or tf) else f

    morphisms = list(C.morphisms)
    for f in C.morphisms:
        for sf in (False, True):
            for tf in (False, True):
                if not (sf or tf):
                    continue
                if sf and C.src[f] != obj:
                    continue
                if tf and C.tgt[f] != obj:
                    continue
                morphisms.append(("dup", f, sf, tf))

    def parts(m):
        if isinstance(m, tuple) and len(m) == 4 and m[0] == "dup":
            return m[1], m[2], m[3]
        return m, False, False

    src, tgt = {}, {}
    for m in morphisms:
        f, sf, tf = parts(m)
        src[m] = new_obj if sf else C.src[f]
        tgt[m] = new_obj if tf else C.tgt[f]
    ids = {o: C.ids[o] for o in C.objects}
    ids[new_obj] = ("dup", C.ids[obj], True, True)
    comp = {}
    for g in morphisms:
        for f in morphisms:
            if src[g] != tgt[f]:
                continue
            uf, sf, _ = parts(f)
            ug, _, tg = parts(g)
            comp[(g, f)] = wrap(C.compose_mor(ug, uf), sf, tg)
    D = FinCategory(objects, morphisms, src, tgt, ids, comp)
    incl = FinFunctor(C, D, {o: o for o in C.objects}, {m: m for m in C.morphisms})
    return D, incl


def underlying_morphism(m):
    """Strip the duplication tag, if any."""
    if isinstance(m, tuple) and len(m) == 4 and m[0] == "dup":
        return m[1]
    return m


def pointed_sets_with_duplicate(max_size: int = 3, d: int = 2):
    """The pointed-sets instance with an extra isomorphic copy of the
    two-element object.  Returns (Waldhausen data, inclusion of the plain
    instance as an exact map of nerves)."""
    from .cats import nerve, nerve_functor_map, pointed_sets_category
    from .waldhausen import ExactFunctorData, pointed_sets_waldhausen

    W = pointed_sets_waldhausen(max_size, d)
    C = W.underlying.category
    D, incl = duplicate_object(C, 2, "dup2")

    def injective(m):
        u = underlying_morphism(m)
        return 0 not in u[2] and len(set(u[2])) == len(u[2])

    marked = [m for m in D.morphisms if injective(m)]
    W2 = nerve_waldhausen(
        D, 1, marked, d,
        universe={"bounded": True, "note": f"pointed sets <= {max_size} plus duplicate"},
    )
    themap = nerve_functor_map(incl, W.underlying, W2.underlying)
    return W2, ExactFunctorData(themap, W, W2)
