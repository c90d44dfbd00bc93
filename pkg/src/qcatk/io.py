"""JSON serialization for simplicial sets, categories, Waldhausen data,
and simplicial maps.

Formats (all UTF-8 JSON with sorted keys):

* simplicial set: ``{"bound": n-or-null, "generators": [[names per dim]],
  "faces": {name: [key, ...]}}`` with an optional ``"category"`` block for
  nerves.  A simplex key is ``[generator-name, [degeneracy indices]]``.
* category: ``{"objects": [...], "homs": {src: {tgt: [names]}},
  "compose": {g: {f: h}}, "ids": {obj: name}}`` (composition ``g after f``).
* Waldhausen data: ``{"sset": ..., "zero": key, "cofibrations": [keys],
  "universe": {...}}``.
* map: ``{"source": sset, "target": sset, "assign": {name: key}}``; an
  exact map uses Waldhausen data for source and target instead.

Parsing validates the schema and reports violations with a JSON pointer.
``serialize(parse(x))`` is the canonical form of ``x``: generator ordering
is sorted per dimension and all keys are emitted deterministically.
"""

from __future__ import annotations

import json

from .cats import FinCategory
from .simplicial import SimplexKey, SimplicialMap, SimplicialSet
from .waldhausen import ExactFunctorData, WaldhausenData


class SchemaError(ValueError):
    """A schema violation, carrying a JSON pointer to the offending spot."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.message = message
        self.pointer = pointer or "/"


def _expect(cond, message, pointer):
    if not cond:
        raise SchemaError(message, pointer)


# ---------------------------------------------------------------------------
# naming


def _nerve_names(X: SimplicialSet):
    """For a nerve: vertex names are object names, higher names join the
    morphism string with '|'.  Returns None if that naming is ambiguous."""
    names = {}
    for g in X.all_gens():
        label = X.labels.get(g)
        if label is None:
            return None
        if g[0] == 0:
            names[g] = _name_of(label)
        else:
            if not isinstance(label, tuple):
                return None
            names[g] = "|".join(_name_of(m) for m in label)
    if len(set(names.values())) != len(names):
        return None
    return names


def _gen_names(X: SimplicialSet) -> dict:
    """Stable generator names: nerve-derived names for nerves, string labels
    when present and unique, otherwise "dim.index"."""
    if X.category is not None:
        names = _nerve_names(X)
        if names is not None:
            return names
    gens = X.all_gens()
    labels = [X.labels.get(g) for g in gens]
    if all(isinstance(l, str) for l in labels) and len(set(labels)) == len(labels):
        return dict(zip(gens, labels))
    return {g: f"{g[0]}.{g[1]}" for g in gens}


def _name_of(x) -> str:
    return x if isinstance(x, str) else repr(x)


# ---------------------------------------------------------------------------
# simplicial sets


def serialize_sset(X: SimplicialSet) -> dict:
    names = _gen_names(X)

    def key_json(k: SimplexKey):
        return [names[k.gen], list(k.degens)]

    out = {
        "bound": X.bound,
        "generators": [sorted(names[g] for g in X.gens(n))
                       for n in range(X.top_dim + 1)],
        "faces": {
            names[g]: [key_json(k) for k in X.faces[g]]
            for g in X.all_gens() if g[0] >= 1
        },
    }
    if X.category is not None and _nerve_names(X) is not None:
        out["category"] = serialize_category(X.category)
    return out


def _parse_key(obj, gen_of_name, expect_dim, pointer) -> SimplexKey:
    _expect(isinstance(obj, list) and len(obj) == 2, "key must be [name, [degens]]",
            pointer)
    name, degens = obj
    _expect(name in gen_of_name, f"unknown generator {name!r}", pointer + "/0")
    _expect(isinstance(degens, list) and all(isinstance(i, int) and i >= 0 for i in degens),
            "degeneracies must be nonnegative integers", pointer + "/1")
    _expect(all(degens[i] > degens[i + 1] for i in range(len(degens) - 1)),
            "degeneracy word must be strictly decreasing", pointer + "/1")
    g = gen_of_name[name]
    if expect_dim is not None:
        _expect(g[0] + len(degens) == expect_dim,
                f"key has dimension {g[0] + len(degens)}, expected {expect_dim}",
                pointer)
    return SimplexKey(g, tuple(degens))


def parse_sset(obj, pointer: str = "") -> SimplicialSet:
    _expect(isinstance(obj, dict), "simplicial set must be an object", pointer)
    _expect("generators" in obj, "missing 'generators'", pointer)
    _expect("faces" in obj, "missing 'faces'", pointer)
    gens_lists = obj["generators"]
    _expect(isinstance(gens_lists, list), "'generators' must be a list of lists",
            pointer + "/generators")
    gen_of_name: dict[str, tuple] = {}
    labels = {}
    n_gens = []
    for n, layer in enumerate(gens_lists):
        p = f"{pointer}/generators/{n}"
        _expect(isinstance(layer, list) and all(isinstance(s, str) for s in layer),
                "each dimension must list generator names", p)
        ordered = sorted(layer)
        _expect(len(set(ordered)) == len(ordered), "duplicate generator name", p)
        for i, name in enumerate(ordered):
            _expect(name not in gen_of_name, f"generator {name!r} repeated across dimensions", p)
            gen_of_name[name] = (n, i)
            labels[(n, i)] = name
        n_gens.append(len(ordered))
    faces_obj = obj["faces"]
    _expect(isinstance(faces_obj, dict), "'faces' must be an object", pointer + "/faces")
    faces = {}
    for name, g in gen_of_name.items():
        n = g[0]
        if n == 0:
            _expect(name not in faces_obj or faces_obj[name] == [],
                    "vertices take no faces", f"{pointer}/faces/{name}")
            continue
        p = f"{pointer}/faces/{name}"
        _expect(name in faces_obj, f"missing faces of {name!r}", pointer + "/faces")
        lst = faces_obj[name]
        _expect(isinstance(lst, list) and len(lst) == n + 1,
                f"generator of dimension {n} needs {n + 1} faces", p)
        faces[g] = tuple(
            _parse_key(k, gen_of_name, n - 1, f"{p}/{i}") for i, k in enumerate(lst)
        )
    for name in faces_obj:
        _expect(name in gen_of_name, f"faces given for unknown generator {name!r}",
                f"{pointer}/faces/{name}")
    bound = obj.get("bound")
    _expect(bound is None or isinstance(bound, int), "'bound' must be null or int",
            pointer + "/bound")
    category = None
    if "category" in obj:
        category = parse_category(obj["category"], pointer + "/category")
        labels = _nerve_labels_from_names(labels, category, pointer)
    X = SimplicialSet(n_gens, faces, labels=labels, bound=bound, category=category)
    try:
        X.check()
    except Exception as exc:  # simplicial identity failures
        raise SchemaError(f"simplicial identities fail: {exc}", pointer) from exc
    if category is not None:
        _validate_nerve_structure(X, category, pointer)
    return X


def _nerve_labels_from_names(labels, C: FinCategory, pointer: str) -> dict:
    """Recover nerve labels (objects for vertices, morphism strings above)
    from the generator names of a serialized nerve."""
    out = {}
    for g, name in labels.items():
        if g[0] == 0:
            _expect(name in C.objects,
                    f"vertex {name!r} is not an object of the category",
                    f"{pointer}/generators/0")
            out[g] = name
        else:
            ms = tuple(name.split("|"))
            _expect(len(ms) == g[0] and all(m in C.src for m in ms),
                    f"generator {name!r} is not a morphism string of length {g[0]}",
                    f"{pointer}/generators/{g[0]}")
            _expect(all(m not in C.id_set for m in ms),
                    f"nondegenerate string {name!r} contains an identity",
                    f"{pointer}/generators/{g[0]}")
            out[g] = ms
    return out


def _validate_nerve_structure(X: SimplicialSet, C: FinCategory, pointer: str):
    """The generator/face tables must agree with the nerve of the category."""
    from .cats import nerve

    N = nerve(C, X.top_dim if X.bound is None else X.bound)
    _expect(N.n_gens == X.n_gens,
            "generator counts differ from the nerve of the category", pointer)

    def transfer(k: SimplexKey) -> SimplexKey:
        try:
            g = N.gen_of_label(X.labels[k.gen])
        except KeyError:
            raise SchemaError(
                f"generator {X.labels[k.gen]!r} is not a simplex of the nerve",
                pointer)
        return SimplexKey(g, k.degens)

    for g in X.all_gens():
        if g[0] == 0:
            continue
        got = tuple(transfer(k) for k in X.faces[g])
        if got != N.faces[transfer(SimplexKey(g)).gen]:
            raise SchemaError(
                f"faces of {X.labels[g]!r} disagree with the nerve of the category",
                f"{pointer}/faces")


# ---------------------------------------------------------------------------
# categories


def serialize_category(C: FinCategory) -> dict:
    oname = {o: _name_of(o) for o in C.objects}
    mname = {m: _name_of(m) for m in C.morphisms}
    homs: dict = {}
    for m in C.morphisms:
        homs.setdefault(oname[C.src[m]], {}).setdefault(
            oname[C.tgt[m]], []
        ).append(mname[m])
    for d in homs.values():
        for k in d:
            d[k] = sorted(d[k])
    compose: dict = {}
    for (g, f), h in C.comp.items():
        compose.setdefault(mname[g], {})[mname[f]] = mname[h]
    return {
        "objects": sorted(oname.values()),
        "homs": homs,
        "compose": compose,
        "ids": {oname[o]: mname[C.ids[o]] for o in C.objects},
    }


def parse_category(obj, pointer: str = "") -> FinCategory:
    _expect(isinstance(obj, dict), "category must be an object", pointer)
    for field in ("objects", "homs", "compose", "ids"):
        _expect(field in obj, f"missing '{field}'", pointer)
    objects = obj["objects"]
    _expect(isinstance(objects, list) and all(isinstance(o, str) for o in objects)
            and len(set(objects)) == len(objects),
            "'objects' must be distinct strings", pointer + "/objects")
    src, tgt = {}, {}
    morphisms = []
    _expect(isinstance(obj["homs"], dict), "'homs' must be an object", pointer + "/homs")
    for a, row in obj["homs"].items():
        _expect(a in objects, f"unknown source object {a!r}", f"{pointer}/homs/{a}")
        _expect(isinstance(row, dict), "hom row must be an object", f"{pointer}/homs/{a}")
        for b, ms in row.items():
            p = f"{pointer}/homs/{a}/{b}"
            _expect(b in objects, f"unknown target object {b!r}", p)
            _expect(isinstance(ms, list) and all(isinstance(m, str) for m in ms),
                    "hom set must list morphism names", p)
            for m in ms:
                _expect(m not in src, f"morphism {m!r} repeated", p)
                src[m], tgt[m] = a, b
                morphisms.append(m)
    ids = obj["ids"]
    _expect(isinstance(ids, dict) and set(ids) == set(objects),
            "'ids' must name one identity per object", pointer + "/ids")
    for o, m in ids.items():
        _expect(m in src and src[m] == o and tgt[m] == o,
                f"identity of {o!r} must be an endomorphism of it", f"{pointer}/ids/{o}")
    comp = {}
    _expect(isinstance(obj["compose"], dict), "'compose' must be an object",
            pointer + "/compose")
    for g, row in obj["compose"].items():
        _expect(g in src, f"unknown morphism {g!r}", f"{pointer}/compose/{g}")
        for f, h in row.items():
            p = f"{pointer}/compose/{g}/{f}"
            _expect(f in src and h in src, "unknown morphism in composite", p)
            _expect(src[g] == tgt[f], "composite of non-composable pair", p)
            comp[(g, f)] = h
    C = FinCategory(list(objects), morphisms, src, tgt,
                    {o: ids[o] for o in objects}, comp)
    try:
        C.check()
    except Exception as exc:
        raise SchemaError(f"category laws fail: {exc}", pointer) from exc
    return C


# ---------------------------------------------------------------------------
# Waldhausen data and maps


def serialize_waldhausen(W: WaldhausenData) -> dict:
    names = _gen_names(W.underlying)

    def key_json(k: SimplexKey):
        return [names[k.gen], list(k.degens)]

    return {
        "sset": serialize_sset(W.underlying),
        "zero": key_json(W.zero),
        "cofibrations": sorted((key_json(k) for k in W.cof)),
        "universe": W.universe,
    }


def parse_waldhausen(obj, pointer: str = "") -> WaldhausenData:
    _expect(isinstance(obj, dict), "Waldhausen data must be an object", pointer)
    for field in ("sset", "zero", "cofibrations"):
        _expect(field in obj, f"missing '{field}'", pointer)
    X = parse_sset(obj["sset"], pointer + "/sset")
    gen_of_name = {name: g for g, name in _gen_names(X).items()}
    zero = _parse_key(obj["zero"], gen_of_name, 0, pointer + "/zero")
    cofs = []
    _expect(isinstance(obj["cofibrations"], list), "'cofibrations' must be a list",
            pointer + "/cofibrations")
    for i, k in enumerate(obj["cofibrations"]):
        p = f"{pointer}/cofibrations/{i}"
        e = _parse_key(k, gen_of_name, 1, p)
        _expect(not e.is_degenerate, "marked edges are stored nondegenerate", p)
        cofs.append(e)
    universe = obj.get("universe")
    _expect(universe is None or isinstance(universe, dict),
            "'universe' must be null or an object", pointer + "/universe")
    return WaldhausenData(X, zero, frozenset(cofs), universe)


def serialize_map(f: SimplicialMap) -> dict:
    snames = _gen_names(f.source)
    tnames = _gen_names(f.target)
    return {
        "source": serialize_sset(f.source),
        "target": serialize_sset(f.target),
        "assign": {
            snames[g]: [tnames[k.gen], list(k.degens)]
            for g, k in f.assign.items()
        },
    }


def _parse_assign(obj, source: SimplicialSet, target: SimplicialSet, pointer: str):
    _expect(isinstance(obj, dict), "'assign' must be an object", pointer)
    s_names = _gen_names(source)
    s_of_name = {name: g for g, name in s_names.items()}
    t_of_name = {name: g for g, name in _gen_names(target).items()}
    assign = {}
    for name, k in obj.items():
        p = f"{pointer}/{name}"
        _expect(name in s_of_name, f"unknown source generator {name!r}", p)
        g = s_of_name[name]
        assign[g] = _parse_key(k, t_of_name, g[0], p)
    missing = [s_names[g] for g in source.all_gens() if g not in assign]
    _expect(not missing, f"assignment missing generators {missing[:3]!r}", pointer)
    return assign


def parse_map(obj, pointer: str = "") -> SimplicialMap:
    _expect(isinstance(obj, dict), "map must be an object", pointer)
    for field in ("source", "target", "assign"):
        _expect(field in obj, f"missing '{field}'", pointer)
    source = parse_sset(obj["source"], pointer + "/source")
    target = parse_sset(obj["target"], pointer + "/target")
    f = SimplicialMap(source, target,
                      _parse_assign(obj["assign"], source, target, pointer + "/assign"))
    try:
        f.check()
    except Exception as exc:
        raise SchemaError(f"not a simplicial map: {exc}", pointer) from exc
    return f


def serialize_exact(G: ExactFunctorData) -> dict:
    snames = _gen_names(G.themap.source)
    tnames = _gen_names(G.themap.target)
    return {
        "source": serialize_waldhausen(G.source),
        "target": serialize_waldhausen(G.target),
        "assign": {
            snames[g]: [tnames[k.gen], list(k.degens)]
            for g, k in G.themap.assign.items()
        },
    }


def parse_exact(obj, pointer: str = "") -> ExactFunctorData:
    _expect(isinstance(obj, dict), "exact map must be an object", pointer)
    for field in ("source", "target", "assign"):
        _expect(field in obj, f"missing '{field}'", pointer)
    Ws = parse_waldhausen(obj["source"], pointer + "/source")
    Wt = parse_waldhausen(obj["target"], pointer + "/target")
    assign = _parse_assign(obj["assign"], Ws.underlying, Wt.underlying,
                           pointer + "/assign")
    f = SimplicialMap(Ws.underlying, Wt.underlying, assign)
    try:
        f.check()
    except Exception as exc:
        raise SchemaError(f"not a simplicial map: {exc}", pointer) from exc
    return ExactFunctorData(f, Ws, Wt)


# ---------------------------------------------------------------------------
# kind detection and canonical forms


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("input must be a JSON object")
    if "sset" in obj:
        return "waldhausen"
    if "assign" in obj:
        return "exact" if isinstance(obj.get("source"), dict) and "sset" in obj["source"] else "map"
    if "faces" in obj or "generators" in obj:
        return "sset"
    if "homs" in obj:
        return "category"
    raise SchemaError("unrecognized input kind")


_PARSERS = {
    "sset": parse_sset,
    "category": parse_category,
    "waldhausen": parse_waldhausen,
    "map": parse_map,
    "exact": parse_exact,
}
_SERIALIZERS = {
    "sset": serialize_sset,
    "category": serialize_category,
    "waldhausen": serialize_waldhausen,
    "map": serialize_map,
    "exact": serialize_exact,
}


def parse_any(obj):
    kind = detect_kind(obj)
    return kind, _PARSERS[kind](obj)


def canonical(obj) -> dict:
    """Canonical form: parse then re-serialize."""
    kind, value = parse_any(obj)
    return _SERIALIZERS[kind](value)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_path(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
