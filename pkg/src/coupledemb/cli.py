"""Command-line frontend with JSON input/output and reproducible seeds.

Exit codes: 0 success, 1 usage error, 2 input validation error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as _bounds
from . import maps as _maps
from . import search as _search
from .bilinear import BilinearError, catalog_min_dim
from .hopf import ActionSignature, biskew_blocked, shares_binary_one, zero_guaranteed
from .kneser import KneserError, chromatic_number, kneser_graph
from .maps import MapsError, joint_obstruction, map_from_json, simplex_pair_obstruction
from .search import SearchError, find_equivariant_zero, minimize_defect
from .simplicial import SimplicialComplex, SimplicialError

_INPUT_ERRORS = (
    SimplicialError,
    KneserError,
    BilinearError,
    MapsError,
    SearchError,
    _bounds.BoundsError,
    json.JSONDecodeError,
    KeyError,
    TypeError,
    ValueError,
)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def space_from_json(data: dict) -> _bounds.SpaceDescriptor:
    kind = data.get("kind")
    if kind == "named":
        return _bounds.named_space(data["id"])
    if kind == "sphere":
        return _bounds.sphere_space(int(data["m"]))
    if kind == "complex":
        K = SimplicialComplex.from_json(data)
        e = data.get("e")
        return _bounds.complex_space(K, e=int(e) if e is not None else None,
                                     label=data.get("name"))
    if kind == "manifold":
        return _bounds.manifold_space(int(data["p"]), int(data["e"]),
                                      label=data.get("name"))
    raise _bounds.BoundsError(f"unknown space kind {kind!r}")


def _cmd_bounds(args) -> dict:
    X = space_from_json(_load_json(args.x))
    Y = space_from_json(_load_json(args.y))
    cert = _bounds.certificate(X, Y)
    out = cert.to_json()
    if not _bounds.replay(out):
        raise AssertionError("certificate trace failed to replay")
    return out


def _cmd_kneser_chi(args) -> dict:
    K = SimplicialComplex.from_json(_load_json(args.complex))
    G = kneser_graph(K, minimal_only=not args.all_nonfaces)
    chi, coloring = chromatic_number(G)
    return {
        "n_vertices": len(G.vertices),
        "n_edges": len(G.edges),
        "chi": chi,
        "colors": list(coloring.colors),
        "vertices": [list(v) for v in G.vertex_sets()],
    }


def _cmd_hopf(args) -> dict:
    out = {
        "m": args.m,
        "n": args.n,
        "shares": shares_binary_one(args.m, args.n),
        "biskew_blocked": biskew_blocked(args.m, args.n),
    }
    if args.sig is not None:
        i, j, k = args.sig
        out["signature"] = [i, j, k]
        out["zero_guaranteed"] = zero_guaranteed(
            args.m, args.n, ActionSignature(i, j, k)
        )
    return out


def _cmd_bilinear_catalog(args) -> dict:
    entry = catalog_min_dim(args.a, args.b)
    return {"a": args.a, "b": args.b, "d": entry.d, "trace": list(entry.trace)}


def _cmd_search_parallelogram(args) -> dict:
    f = map_from_json(_load_json(args.map))
    result = minimize_defect(
        f,
        min_sep=args.min_sep,
        tol=args.tol,
        starts=args.starts,
        iters=args.iters,
        seed=args.seed,
        z2=args.z2,
    )
    config = {
        "min_sep": args.min_sep, "tol": args.tol, "starts": args.starts,
        "iters": args.iters, "z2": args.z2, "threads": args.threads,
    }
    out = _search.witness_to_json(result, config)
    out["config"] = config
    return out


def _build_zero_map(spec: dict):
    kind = spec.get("kind")
    f = map_from_json(spec["f"])
    if kind == "simplex-pair":
        return simplex_pair_obstruction(f, int(spec["m"]), int(spec["n"]))
    if kind == "joint":
        K1 = _complex_from_any(spec["k1"])
        K2 = _complex_from_any(spec["k2"])
        _, col1 = chromatic_number(kneser_graph(K1))
        _, col2 = chromatic_number(kneser_graph(K2))
        return joint_obstruction(K1, K2, col1, col2, f)
    raise MapsError(f"unknown zero-search kind {kind!r}")


def _complex_from_any(data) -> SimplicialComplex:
    if isinstance(data, dict) and "named" in data:
        desc = _bounds.named_space(data["named"])
        if desc.K is None:
            raise _bounds.BoundsError(f"space {data['named']!r} has no triangulation")
        return desc.K
    return SimplicialComplex.from_json(data)


def _cmd_zero_search(args) -> dict:
    g = _build_zero_map(_load_json(args.spec))
    result = find_equivariant_zero(
        g, tol=args.tol, starts=args.starts, iters=args.iters, seed=args.seed
    )
    out = _search.zero_to_json(result)
    out["config"] = {
        "tol": args.tol, "starts": args.starts, "iters": args.iters,
        "seed": args.seed, "threads": args.threads,
    }
    return out


def _cmd_reproduce_table(args) -> dict:
    rows = _bounds.reproduce_table()
    return {"rows": rows, "all_tight": all(
        r["lower"] == r["upper"] == r["expected"] for r in rows
    )}


def _cmd_catalog(args) -> dict:
    return {
        "spaces": list(_bounds.NAMED_SPACE_IDS),
        "embeddings": ["sphere(m)", "rp2_r4"],
        "map_kinds": ["random_trig", "composed_bilinear", "additive", "tabulated"],
        "bilinear_families": [
            "real_poly", "complex_poly", "quat_poly", "oct_poly",
            "scalar(C|H|O, k)", "restrict", "swap",
        ],
    }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors exit 1 (argparse default is 2, reserved for bad input)
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coupledemb",
                     description="coupled-embeddability certificates and searches")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON result to this path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap (results are worker-count independent)")

    p = sub.add_parser("bounds", help="bound certificate for a pair of spaces")
    p.add_argument("x")
    p.add_argument("y")
    common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("kneser-chi", help="chromatic number of the nonface Kneser graph")
    p.add_argument("complex")
    p.add_argument("--all-nonfaces", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_kneser_chi)

    p = sub.add_parser("hopf", help="binary-digit obstruction predicates")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--sig", type=int, nargs=3, metavar=("I", "J", "K"))
    common(p)
    p.set_defaults(func=_cmd_hopf)

    p = sub.add_parser("bilinear-catalog", help="minimal catalog dimension for (a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    common(p)
    p.set_defaults(func=_cmd_bilinear_catalog)

    p = sub.add_parser("search-parallelogram", help="minimize the defect of a map")
    p.add_argument("map")
    p.add_argument("--z2", action="store_true")
    p.add_argument("--min-sep", type=float, default=_search.DEFAULT_MIN_SEP)
    p.add_argument("--tol", type=float, default=_search.DEFAULT_TOL)
    p.add_argument("--starts", type=int, default=_search.DEFAULT_STARTS)
    p.add_argument("--iters", type=int, default=_search.DEFAULT_ITERS)
    common(p)
    p.set_defaults(func=_cmd_search_parallelogram)

    p = sub.add_parser("zero-search", help="find a zero of an obstruction map")
    p.add_argument("spec")
    p.add_argument("--tol", type=float, default=_search.DEFAULT_TOL)
    p.add_argument("--starts", type=int, default=_search.DEFAULT_STARTS)
    p.add_argument("--iters", type=int, default=_search.DEFAULT_ITERS)
    common(p)
    p.set_defaults(func=_cmd_zero_search)

    p = sub.add_parser("reproduce-table", help="closed-form bound table")
    common(p)
    p.set_defaults(func=_cmd_reproduce_table)

    p = sub.add_parser("catalog", help="list named spaces, maps, and embeddings")
    common(p)
    p.set_defaults(func=_cmd_catalog)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        payload = args.func(args)
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "seed", None) is not None and "seed" not in payload:
        payload["seed"] = args.seed
    text = json.dumps(payload, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
