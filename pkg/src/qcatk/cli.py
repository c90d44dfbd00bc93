"""Command-line front end: input validation, constructions, and verification
reports.  All input and output is JSON (UTF-8, sorted keys).

Exit codes: 0 = pass, 1 = finding (including schema violations), 2 = an
enumeration budget or dimension bound was exceeded.  Every report embeds the
dimension bound and budgets it was computed with."""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import io
from . import joinslice as js
from . import ktheory as kt
from . import lifting as lf
from . import quasicat as qc
from . import simplicial as sx
from .cats import FinCategory, nerve
from .homology import AbelianGroupPresentation, weak_contractibility_report
from .simplicial import BoundExceeded, BudgetExceeded, SimplexKey
from .waldhausen import validate_waldhausen

EXIT_PASS = 0
EXIT_FINDING = 1
EXIT_BUDGET = 2


# ---------------------------------------------------------------------------
# report JSON-ification


def _jsonable(x):
    """Best-effort conversion of report payloads to plain JSON values."""
    if isinstance(x, AbelianGroupPresentation):
        return {"free_rank": x.free_rank, "torsion": list(x.torsion),
                "invariant_factors": invariant_factors(x)}
    if isinstance(x, SimplexKey):
        return repr(x)
    if isinstance(x, sx.SimplicialMap):
        return {"source_gens": x.source.n_gens, "target_gens": x.target.n_gens,
                "assign": {repr(g): repr(k) for g, k in sorted(x.assign.items())}}
    if isinstance(x, sx.SimplicialSet):
        return {"gens": x.n_gens, "bound": x.bound}
    if isinstance(x, FinCategory):
        return io.serialize_category(x)
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return _jsonable(dataclasses.asdict(x))
    if isinstance(x, dict):
        return {k if isinstance(k, str) else repr(k): _jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(repr(v) for v in x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


def invariant_factors(g: AbelianGroupPresentation) -> list[int]:
    """Torsion invariant factors followed by one 0 per free rank; the
    trivial group gives []."""
    return list(g.torsion) + [0] * g.free_rank


def _emit(report, args, ok: bool) -> int:
    report = _jsonable(report)
    report.setdefault("dim", args.dim)
    report.setdefault("budget", args.budget)
    report.setdefault("seed", args.seed)
    report["command"] = args.command
    text = io.dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if ok else EXIT_FINDING


# ---------------------------------------------------------------------------
# input helpers


def _load(path, want=None):
    obj = io.load_path(path)
    kind, value = io.parse_any(obj)
    if want is not None and kind != want:
        raise io.SchemaError(f"expected a {want} file, found {kind}")
    return kind, value


def _vertex_by_name(X: sx.SimplicialSet, name: str) -> SimplexKey:
    names = io._gen_names(X)
    for g in X.gens(0):
        if names[g] == name:
            return SimplexKey(g)
    raise io.SchemaError(f"no vertex named {name!r}", "/vertex")


def _require_ho_dim(args):
    if args.dim < 2:
        raise io.SchemaError(
            "homotopy-category and K0 commands need --dim at least 2", "/dim")


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    kind, value = _load(args.input)
    report = {"kind": kind, "valid": True}
    if kind == "waldhausen":
        rep = validate_waldhausen(value, args.dim, budget=args.budget)
        report["axioms"] = rep
        report["valid"] = not rep["violations"]
    elif kind == "exact":
        from .waldhausen import validate_exact

        rep = validate_exact(value, args.dim)
        report["exact"] = rep
        report["valid"] = rep["ok"]
    return _emit(report, args, report["valid"])


def cmd_nerve(args):
    _, C = _load(args.input, "category")
    N = nerve(C, args.dim)
    return _emit({"sset": io.serialize_sset(N)}, args, True)


def cmd_tau1(args):
    _require_ho_dim(args)
    _, X = _load(args.input, "sset")
    pres = qc.tau1_presentation(X)
    return _emit({"presentation": pres}, args, True)


def cmd_ho(args):
    _require_ho_dim(args)
    _, X = _load(args.input, "sset")
    ho = qc.ho_category(X)
    return _emit({"category": io.serialize_category(ho.cat)}, args, True)


def cmd_join(args):
    _, A = _load(args.inputs[0], "sset")
    _, B = _load(args.inputs[1], "sset")
    span = sx.join(A, B, args.dim)
    report = {"sset": io.serialize_sset(span.sset)}
    ok = True
    if args.check_assoc:
        if len(args.inputs) != 3:
            raise io.SchemaError("--check-assoc needs three input files")
        _, C = _load(args.inputs[2], "sset")
        left = sx.join(span.sset, C, args.dim).sset
        right = sx.join(A, sx.join(B, C, args.dim).sset, args.dim).sset
        iso = sx.iso_check(left, right, args.dim, budget=args.budget)
        ok = iso is not None
        report = {"associative": ok,
                  "left_gens": left.n_gens, "right_gens": right.n_gens}
    return _emit(report, args, ok)


def cmd_slice(args):
    _, f = _load(args.input, "map")
    S = js.slice_over(f, args.dim, budget=args.budget)
    return _emit({"sset": io.serialize_sset(S)}, args, True)


def cmd_overcat(args):
    _, X = _load(args.input, "sset")
    y = _vertex_by_name(X, args.vertex)
    O, _ = js.over_quasicategory(X, y, args.dim)
    return _emit({"sset": io.serialize_sset(O)}, args, True)


def cmd_comma(args):
    _, G = _load(args.input, "map")
    y = _vertex_by_name(G.target, args.vertex)
    K, _, _ = js.comma(G, y, args.dim)
    return _emit({"sset": io.serialize_sset(K)}, args, True)


def cmd_contractible(args):
    _, X = _load(args.input, "sset")
    rep = weak_contractibility_report(X, args.dim)
    return _emit(rep, args, rep["verdict"] != "refuted")


def cmd_waldhausen_check(args):
    _, W = _load(args.input, "waldhausen")
    rep = validate_waldhausen(W, args.dim, budget=args.budget)
    return _emit(rep, args, not rep["violations"])


def cmd_sconstruct(args):
    from .sconstruction import s_n

    _, W = _load(args.input, "waldhausen")
    level = s_n(W, args.n, args.dim, budget=args.budget)
    report = {
        "n": args.n,
        "objects": len(level.cat.objects),
        "morphisms": len(level.cat.morphisms),
        "cofibrations": len(level.wdata.cof),
        "sset": io.serialize_sset(level.sset),
        "level_report": level.report,
    }
    return _emit(report, args, True)


def cmd_k0(args):
    _require_ho_dim(args)
    _, W = _load(args.input, "waldhausen")
    rep = kt.k0_agreement(W, args.dim, budget=args.budget)
    report = {
        "invariant_factors": invariant_factors(rep["diagonal"]),
        "group": str(rep["diagonal"]),
        "routes_agree": rep["agree"],
        "diagonal": rep["diagonal"],
        "oracle": rep["oracle"],
    }
    return _emit(report, args, rep["agree"])


def cmd_approx(args):
    _require_ho_dim(args)
    _, G = _load(args.input, "exact")
    rep = kt.approximation_verify(G, args.dim, budget=args.budget)
    ok = rep["applicable"] and rep["conclusion"]["pass"]
    return _emit(rep, args, ok)


def cmd_lift(args):
    nbar = tuple(args.nbar)
    kind, value = _load(args.input)
    if args.shape == "strong-replacement":
        target = value.underlying if kind == "waldhausen" else value
        rep = lf.rlp_check(target, nbar, kind="strong-replacement",
                           budget=args.budget)
    else:
        if kind == "exact":
            value = value.themap
        elif kind != "map":
            raise io.SchemaError("prism lifting needs a map file")
        rep = lf.rlp_check(value, nbar, kind="prism", budget=args.budget)
    return _emit(rep, args, rep["verdict"] == "pass")


def cmd_iterate(args):
    _require_ho_dim(args)
    _, G = _load(args.input, "exact")
    rep = lf.higher_iterate_verify(G, tuple(args.n), args.dim,
                                   budget=args.budget)
    ok = rep["consistent_with_statement"] and rep["consistent_with_cof_statement"]
    return _emit(rep, args, ok)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qcatk",
        description="Finite simplicial sets, quasicategories, and K-theory "
                    "verification reports.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, help, inputs=1):
        p = sub.add_parser(name, help=help)
        if inputs == 1:
            p.add_argument("input", help="JSON input file")
        elif inputs > 1:
            p.add_argument("inputs", nargs="+", help="JSON input files")
        p.add_argument("--dim", type=int, default=2,
                       help="verification dimension bound (default 2)")
        p.add_argument("--budget", type=int, default=10**6,
                       help="enumeration budget (default 1e6)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized searches (default 0)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "schema- and axiom-check an input file")
    add("nerve", cmd_nerve, "nerve of a category, truncated at --dim")
    add("tau1", cmd_tau1, "fundamental-category presentation of a simplicial set")
    add("ho", cmd_ho, "homotopy category of a quasicategory")
    p = add("join", cmd_join, "join of simplicial sets", inputs=2)
    p.add_argument("--check-assoc", action="store_true", dest="check_assoc",
                   help="check associativity on three inputs instead")
    add("slice", cmd_slice, "slice over a diagram (right adjoint to join)")
    p = add("overcat", cmd_overcat, "overquasicategory at a vertex")
    p.add_argument("--vertex", required=True, help="target vertex name")
    p = add("comma", cmd_comma, "comma of a map at a target vertex")
    p.add_argument("--vertex", required=True, help="target vertex name")
    add("contractible", cmd_contractible, "weak contractibility report")
    add("waldhausen-check", cmd_waldhausen_check,
        "verify the cofibration-structure axioms")
    p = add("sconstruct", cmd_sconstruct, "one level of the S-construction")
    p.add_argument("--n", type=int, required=True, help="level index")
    add("k0", cmd_k0, "K0 invariant factors, by two independent routes")
    add("approx", cmd_approx, "approximation-statement desk check on an exact map")
    p = add("lift", cmd_lift, "right-lifting-property check")
    p.add_argument("--shape", choices=["prism", "strong-replacement"],
                   default="prism")
    p.add_argument("--nbar", type=int, nargs="*", default=[],
                   help="spine-product shape indices (default: point)")
    p = add("iterate", cmd_iterate, "iterated-level equivalence verification")
    p.add_argument("--n", type=int, nargs="+", required=True,
                   help="iteration indices (at most two)")
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget <= 0:
        print(io.dumps({"error": "budget must be positive"}), file=sys.stderr)
        return EXIT_FINDING
    try:
        return args.func(args)
    except io.SchemaError as exc:
        print(io.dumps({"error": str(exc), "pointer": exc.pointer}),
              file=sys.stderr)
        return EXIT_FINDING
    except (BudgetExceeded, BoundExceeded) as exc:
        print(io.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(io.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_FINDING


if __name__ == "__main__":
    sys.exit(main())
