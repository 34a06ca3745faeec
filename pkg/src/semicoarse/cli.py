"""Command-line interface: ``semicoarse <command> ...``.

Exit codes: 0 success, 2 input error, 3 precondition error, 4 budget
exhausted.
"""
from __future__ import annotations

import argparse
import hashlib
import sys

from . import __version__
from .core import (
    coarse_completion_steps,
    components,
    disjoint_union,
    product,
    quotient,
    subspace,
)
from .errors import BudgetExhausted, InputError, PreconditionError
from .formats import (
    dumps,
    homotopy_from_dict,
    homotopy_to_dict,
    loads_json,
    map_from_dict,
    parse_vertex,
    read_path,
    read_space,
    read_text,
    save_space,
    space_to_dict,
    write_text,
)
from .homology import homology
from .homotopy import (
    CubeMap,
    clamp,
    homotopic_search,
    homotopy_witness,
    lift_path,
    pi1_cyclic,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3, 4


def _digest(path) -> str:
    if str(path) == "-":
        return "stdin"
    return hashlib.sha256(read_text(path).encode()).hexdigest()


def _report(command: str, argv, inputs: dict, results: dict, warnings=()) -> dict:
    return {
        "command": command,
        "argv": list(argv),
        "inputs": {k: _digest(v) for k, v in sorted(inputs.items())},
        "results": results,
        "warnings": list(warnings),
        "version": __version__,
    }


def _witness_json(w):
    if isinstance(w, tuple):
        return [_witness_json(x) for x in w]
    if isinstance(w, (frozenset, set)):
        return sorted(_witness_json(x) for x in w)
    return w


# -- commands -----------------------------------------------------------------------

def cmd_build(args):
    X = read_space(args.input, args.format, args.scale, args.strict)
    if args.subspace is not None:
        X = subspace(X, [parse_vertex(t) for t in args.subspace.replace(",", " ").split()])
    if args.quotient is not None:
        doc = loads_json(read_text(args.quotient), "quotient map")
        pairs = doc.get("map", doc) if isinstance(doc, dict) else doc
        if not isinstance(pairs, list):
            raise InputError("quotient map must be a list of [u, g(u)] pairs")
        table = {p[0]: p[1] for p in pairs}
        X = quotient(X, table)
    for other in args.product or ():
        X = product(X, read_space(other, args.format, args.scale, args.strict))
    if args.union:
        X = disjoint_union([X] + [read_space(p, args.format, args.scale, args.strict) for p in args.union])
    write_text(args.output, save_space(X))
    return EXIT_OK


def cmd_homology(args):
    if args.max_dim < 0:
        raise InputError("--max-dim must be nonnegative")
    X = read_space(args.space, args.format, args.scale, args.strict)
    groups = homology(X, args.max_dim)
    results = {
        "max_dim": args.max_dim,
        "betti": [h.betti for h in groups],
        "torsion": [list(h.torsion) for h in groups],
        "groups": [str(h) for h in groups],
        "components": len(components(X)),
    }
    warnings = [f"dimension {h.dim} is at the cap: rank of the next boundary is unavailable, "
                f"betti is an upper bound" for h in groups if not h.exact]
    write_text(args.output, dumps(_report("homology", args.argv, {"space": args.space}, results, warnings)))
    return EXIT_OK


def cmd_pi1(args):
    if args.n < 1 or args.m < 1:
        raise InputError("--n and --m must be at least 1")
    group = pi1_cyclic(args.n, args.m)
    results = {"n": args.n, "m": args.m, "reduced_n": -(-args.n // args.m), "group": group}
    write_text(args.output, dumps(_report("pi1", args.argv, {}, results)))
    return EXIT_OK


def cmd_winding(args):
    X = read_space(args.space)
    f = CubeMap.path(X, read_path(args.path))
    if not f.is_bornologous():
        raise PreconditionError("path is not bornologous in the given space")
    cert = lift_path(f, args.m, unsafe=args.unsafe)
    results = {
        "n": cert.modulus,
        "m": args.m,
        "winding": cert.winding,
        "displacement": cert.displacement,
        "lift": list(cert.lift),
    }
    write_text(args.output, dumps(_report("winding", args.argv,
                                          {"space": args.space, "path": args.path}, results)))
    return EXIT_OK


def cmd_check(args):
    if args.map:
        f = map_from_dict(loads_json(read_text(args.map), "map"))
        bad = None
        for u, v in f.source.sorted_roof():
            if (f(u), f(v)) not in f.target.roof:
                bad = (u, v)
                break
        results = {"kind": "map", "bornologous": bad is None}
        if bad is not None:
            results["witness"] = {"pair": list(bad), "image": [f(bad[0]), f(bad[1])]}
        inputs = {"map": args.map}
    else:
        h = homotopy_from_dict(loads_json(read_text(args.homotopy), "homotopy"))
        w = homotopy_witness(h)
        results = {"kind": "homotopy", "valid": w is None, "slices": len(h.slices)}
        if w is not None:
            results["witness"] = {"slice": w[0], "obstruction": _witness_json(w[1])}
        inputs = {"homotopy": args.homotopy}
    write_text(args.output, dumps(_report("check", args.argv, inputs, results)))
    return EXIT_OK


def cmd_coarsen(args):
    X = read_space(args.space, args.format, args.scale, args.strict)
    Y, steps = coarse_completion_steps(X)
    if args.space_output:
        write_text(args.space_output, save_space(Y))
    results = {"iterations": steps, "space": space_to_dict(Y),
               "roof_size": len(Y.roof), "components": len(components(Y))}
    write_text(args.output, dumps(_report("coarsen", args.argv, {"space": args.space}, results)))
    return EXIT_OK


def cmd_search(args):
    X = read_space(args.space)
    f = CubeMap.path(X, read_path(args.f))
    g = CubeMap.path(X, read_path(args.g))
    if f.cube != g.cube:
        m = max(f.cube.m, g.cube.m)
        f, g = clamp(f, m), clamp(g, m)
    res = homotopic_search(f, g, args.fixed if args.fixed != "none" else None,
                           args.node_budget, revalidate=not args.no_revalidate)
    results = {"status": res.status, "explored": res.explored, "sides": list(res.sides)}
    if res.homotopy is not None:
        results["certificate"] = homotopy_to_dict(res.homotopy)
    write_text(args.output, dumps(_report("search", args.argv,
                                          {"space": args.space, "f": args.f, "g": args.g}, results)))
    if res.status == "exhausted":
        raise BudgetExhausted(f"node budget {args.node_budget} exhausted")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------------

def _space_input_flags(p):
    p.add_argument("--format", choices=["auto", "json", "edges", "points"], default="auto",
                   help="input format (default: from extension/content)")
    p.add_argument("--scale", help="distance threshold r for point-cloud input")
    p.add_argument("--strict", action="store_true", help="use d < r instead of d <= r")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semicoarse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a space and write canonical JSON")
    p.add_argument("input", help="edge list, point CSV or JSON space ('-' for stdin)")
    _space_input_flags(p)
    p.add_argument("--subspace", help="comma/space separated vertex list")
    p.add_argument("--quotient", help="JSON list of [u, g(u)] pairs")
    p.add_argument("--product", action="append", help="multiply by another space (repeatable)")
    p.add_argument("--union", nargs="+", help="disjoint union with further spaces")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", help="clique-complex homology with integer coefficients")
    p.add_argument("space")
    _space_input_flags(p)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("pi1", help="fundamental group of the cyclic space C_n^m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("winding", help="winding number of a based loop in C_n^m")
    p.add_argument("space")
    p.add_argument("path")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--unsafe", action="store_true", help="allow n = 3")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_winding)

    p = sub.add_parser("check", help="verify a bornologous map or a homotopy certificate")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--map")
    g.add_argument("--homotopy")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("coarsen", help="coarse completion of a space")
    p.add_argument("space")
    _space_input_flags(p)
    p.add_argument("--space-output", help="also write the completed space as canonical JSON")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_coarsen)

    p = sub.add_parser("search", help="breadth-first search for a homotopy between two paths")
    p.add_argument("space")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--fixed", choices=["boundary", "none"], default="boundary")
    p.add_argument("--node-budget", type=int, default=200_000)
    p.add_argument("--no-revalidate", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.argv = argv
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
