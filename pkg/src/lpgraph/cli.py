"""Command-line pipelines: generate, analyze, diagnose, graphon.

Exit codes: 0 success, 1 internal error, 2 usage or input error. Each
pipeline computes everything before writing, so a failed run leaves no
partial outputs.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path


from . import io
from .diagnostics import correlogram, lpinfor_test
from .field import evaluate_grid, empirical_field, integrate_squared, reconstruct_field, select_components
from .generators import GeneratorSpec, expected_graph, generate
from .graph import GraphError, joint_pmf, marginals, order_by_degree, parse_adjacency_csv, parse_edge_list
from .graphon import block_means, estimate_graphon, evaluate_graphon_grid
from .transform import graph_bases, lp_coefficients, lpinfor


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_generator_args(p, required=False):
    p.add_argument("--kind", choices=["er", "bipartite", "sbm"], required=required,
                   help="generate the input graph instead of reading one")
    p.add_argument("--n", type=int, help="node count (er)")
    p.add_argument("--p", type=float, help="edge probability (er, bipartite)")
    p.add_argument("--sizes", type=_ints, help="block sizes, e.g. 40,60 (bipartite, sbm)")
    p.add_argument("--prob-matrix", type=_floats, help="row-major block probabilities (sbm)")
    p.add_argument("--expected", action="store_true",
                   help="use the expected (edge-probability) graph instead of a sample")


def _add_common(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--edges", type=Path, help="edge-list file")
    src.add_argument("--adjacency", type=Path, help="adjacency CSV file")
    _add_generator_args(p)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--order-by-degree", action="store_true",
                   help="re-index nodes by ascending total weight before analysis")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--resolution", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", type=Path, required=True)


def _spec_from_args(args) -> GeneratorSpec:
    kind = args.kind
    if kind == "er":
        if args.n is None or args.p is None:
            raise InputError("--kind er needs --n and --p")
        return GeneratorSpec("er", n=args.n, p=args.p, directed=args.directed, seed=args.seed)
    if kind == "bipartite":
        if args.sizes is None or len(args.sizes) != 2 or args.p is None:
            raise InputError("--kind bipartite needs --sizes N1,N2 and --p")
        return GeneratorSpec("bipartite", p=args.p, sizes=tuple(args.sizes), seed=args.seed)
    if args.sizes is None or args.prob_matrix is None:
        raise InputError("--kind sbm needs --sizes and --prob-matrix")
    b = len(args.sizes)
    if len(args.prob_matrix) != b * b:
        raise InputError(f"--prob-matrix needs {b * b} entries for {b} blocks")
    P = tuple(tuple(args.prob_matrix[i * b:(i + 1) * b]) for i in range(b))
    return GeneratorSpec("sbm", sizes=tuple(args.sizes), prob_matrix=P, directed=args.directed, seed=args.seed)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def load_graph(args):
    """Graph plus its generator spec (None for file input)."""
    spec = None
    if args.edges is not None:
        g = parse_edge_list(_read(args.edges), args.directed)
    elif args.adjacency is not None:
        g = parse_adjacency_csv(_read(args.adjacency), args.directed)
    elif args.kind is not None:
        spec = _spec_from_args(args)
        g = expected_graph(spec) if args.expected else generate(spec)
    else:
        raise InputError("one of --edges, --adjacency or --kind is required")
    if args.order_by_degree:
        g = order_by_degree(g)
        spec = None
    if args.resolution < 2:
        raise InputError("--resolution must be at least 2")
    return g, spec


def cmd_generate(args) -> dict[str, str]:
    spec = _spec_from_args(args)
    g = expected_graph(spec) if args.expected else generate(spec)
    comment = f"lpgraph {spec.kind} n={g.n} directed={str(g.directed).lower()} seed={spec.seed}"
    if args.expected:
        comment += " expected"
    return {args.out.name: io.edge_list_text(g, comment)}


def cmd_analyze(args) -> dict[str, str]:
    g, _ = load_graph(args)
    bx, by = graph_bases(g, args.max_degree, full_rank=args.full_rank)
    lp = lp_coefficients(joint_pmf(g), bx, by)
    sel = None if args.no_selection else select_components(lp)
    field = reconstruct_field(lp, sel)
    grid = evaluate_grid(field, args.resolution, clip_nonnegative=args.clip)
    mx, my = marginals(g)
    emp = empirical_field(joint_pmf(g), mx, my)
    summary = {
        "graph": g.metadata(),
        "m_x": bx.m,
        "m_y": by.m,
        "lpinfor_full": lpinfor(lp),
        "lpinfor_selected": lpinfor(lp, sel.chosen) if sel is not None else lpinfor(lp),
        "empirical_integral_squared_minus_one": integrate_squared(emp) - 1.0,
        "k_star": sel.k_star if sel is not None else None,
    }
    basis = {"directed": g.directed, "x": bx.to_dict(), "y": by.to_dict()}
    files = {
        "basis.json": io.dumps(basis),
        "coefficients.csv": io.csv_text(["j", "k", "lp"], lp.rows()),
        "field_grid.csv": io.csv_text(["u", "v", "value"], grid.rows()),
        "summary.json": io.dumps(summary),
    }
    if sel is not None:
        files["selection.json"] = io.dumps(sel.to_dict())
    return files


def cmd_diagnose(args) -> dict[str, str]:
    g, _ = load_graph(args)
    if args.grid is not None:
        J, K = args.grid
        if J < 1 or K < 1:
            raise InputError("--grid entries must be positive")
        bx, by = graph_bases(g, max(J, K))
        lp = lp_coefficients(joint_pmf(g), bx, by).restrict(J, K)
    else:
        bx, by = graph_bases(g, args.max_degree)
        lp = lp_coefficients(joint_pmf(g), bx, by)
    cg = correlogram(lp)
    if args.test == "selected":
        result = lpinfor_test(lp, select_components(lp))
    else:
        result = lpinfor_test(lp)
    files = {
        "correlogram.csv": io.csv_text(
            ["j", "k", "lp", "standardized", "outside_band"],
            ((e.j, e.k, e.lp, e.standardized, e.outside_band) for e in cg.entries),
        ),
        "test.json": io.dumps(result.to_dict()),
    }
    if args.null_band:
        files["band.json"] = io.dumps({
            "band_halfwidth": cg.band_halfwidth,
            "total_weight": cg.total_weight,
            "entries": len(cg.entries),
            "fraction_outside": cg.fraction_outside,
        })
    return files


def cmd_graphon(args) -> dict[str, str]:
    g, spec = load_graph(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        w = estimate_graphon(g, args.marginals, args.selection, args.raw_density, args.max_degree)
    grid = evaluate_graphon_grid(w, args.resolution)
    meta = w.metadata()
    meta["resolution"] = args.resolution
    sizes = args.block_sizes
    if sizes is None and spec is not None and spec.kind in ("bipartite", "sbm"):
        sizes = list(spec.sizes)
    if sizes is not None:
        if sum(sizes) != g.n:
            raise InputError(f"--block-sizes sum to {sum(sizes)}, graph has {g.n} nodes")
        meta["block_sizes"] = list(sizes)
        meta["zero_diagonal"] = args.zero_diagonal
        meta["block_means"] = block_means(w, sizes, args.zero_diagonal).tolist()
    return {
        "graphon_grid.csv": io.csv_text(["u", "v", "value"], grid.rows()),
        "graphon.json": io.dumps(meta),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded random graph as an edge list")
    _add_generator_args(p, required=True)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="basis, LP coefficients, selection and field grid")
    _add_common(p)
    p.add_argument("--full-rank", action="store_true", help="use all |support|-1 basis functions")
    p.add_argument("--no-selection", action="store_true", help="reconstruct from every coefficient")
    p.add_argument("--clip", action="store_true", help="clip negative field values in the grid")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("diagnose", help="LP correlogram and LPINFOR chi-square test")
    _add_common(p)
    p.add_argument("--null-band", action="store_true", help="also write band.json")
    p.add_argument("--test", choices=["full", "selected"], default="full")
    p.add_argument("--grid", type=int, nargs=2, metavar=("J", "K"))
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("graphon", help="smooth graphon estimate on a grid")
    _add_common(p)
    p.add_argument("--marginals", choices=["empirical", "smoothed"], default="smoothed")
    p.add_argument("--selection", choices=["full", "selected"], default="selected")
    p.add_argument("--raw-density", action="store_true", help="omit the factor N")
    p.add_argument("--zero-diagonal", action="store_true", help="exclude self-pairs from block means")
    p.add_argument("--block-sizes", type=_ints, help="contiguous block sizes for block means")
    p.set_defaults(func=cmd_graphon)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        files = args.func(args)
        if args.command == "generate":
            out = args.out
            if out.parent and not out.parent.exists():
                raise InputError(f"output directory {out.parent} does not exist")
            io.atomic_write(out, files[out.name])
        else:
            io.write_bundle(args.out_dir, files)
    except (InputError, GraphError, ValueError) as exc:
        print(f"lpgraph {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"lpgraph {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
