"""Command-line front end: parse -> check/subdivide -> build -> analyze ->
witness, with reproducible JSON reports.

Every command prints one JSON report to stdout (payload fields are
deterministic; only ``elapsed_ms`` varies between runs) and exits with
0 on success, 1 on a domain failure (failed check, impossible witness,
token on the cut set, enumeration cap), or 2 on usage/file/parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .complexes import (
    CellCapExceededError,
    DEFAULT_CELL_CAP,
    build_complex,
    component_count,
    edgepath_chain,
    euler_characteristic,
    f_vector,
    maximal_cell_vector,
)
from .graphs import (
    Graph,
    GraphFormatError,
    check_sufficient,
    girth_with_witness,
    graph_hash,
    graph_text,
    parse_graph,
    essential_path_decomposition,
    sufficiently_subdivide,
)
from .homology import cycle_homology_class, homology
from .retraction import (
    InvalidPathError,
    NoCombinatoricsError,
    NotSufficientlySubdividedError,
    OnDeltaSphereError,
    WitnessConstructionError,
    case1_dance_loop,
    case2_witness_loop,
    combinatorics,
    configuration_from_json,
    decompose,
    edgepath_to_json,
    rotation_loop,
    standard_vertex_of,
)

_PI1_SURROGATE_NOTE = (
    "homology-level verdict: a nonbounding cycle certifies a nontrivial loop, "
    "but fundamental-group claims are covered by surrogate checks only"
)


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; normalize --help to 0
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        payload, failed = args.handler(args)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        CellCapExceededError,
        OnDeltaSphereError,
        NoCombinatoricsError,
        NotSufficientlySubdividedError,
        WitnessConstructionError,
        InvalidPathError,
        ValueError,
    ) as exc:
        payload, failed = {"error": str(exc)}, True
    report = {
        "command": args.command,
        "version": __version__,
        "input": _input_echo(args),
        "payload": payload,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "json_out", None):
        Path(args.json_out).write_text(text + "\n", encoding="utf-8")
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphbraid",
        description="discretized configuration spaces of graphs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, n_required: bool = True) -> None:
        p.add_argument("-g", "--graph", required=True, help="graph file")
        if n_required:
            p.add_argument("-n", type=int, required=True, help="number of tokens")
        p.add_argument("--json", dest="json_out", help="also write the report here")

    p = sub.add_parser("check", help="test the subdivision conditions")
    common(p)
    p.add_argument(
        "--criterion", choices=("improved", "original"), default="improved"
    )
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("subdivide", help="subdivide until the improved check passes")
    common(p)
    p.add_argument("--out", help="write the subdivided graph file here")
    p.set_defaults(handler=_cmd_subdivide)

    p = sub.add_parser("build", help="build the configuration complex")
    common(p)
    _complex_flags(p)
    p.add_argument("--cells", action="store_true", help="include cell tuples")
    p.add_argument(
        "--boundaries", action="store_true", help="include boundary triplets"
    )
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    common(p)
    _complex_flags(p)
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("witness", help="construct a witness loop")
    common(p)
    _complex_flags(p)
    p.add_argument(
        "--kind", choices=("case1", "case2", "rotation"), required=True
    )
    p.add_argument(
        "--path",
        help="essential path selector 'u,v' (endpoint vertex ids) for case1/case2",
    )
    p.add_argument(
        "--cycle",
        help="comma-separated edge ids of the rotation cycle (default: a shortest cycle)",
    )
    p.add_argument(
        "--aux", help="four auxiliary edge ids 'e1,e2,f1,f2' for case2"
    )
    p.add_argument(
        "--mode", choices=("unit", "full"), default="full", help="rotation mode"
    )
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("phi", help="standard vertex of a configuration")
    common(p, n_required=False)
    p.add_argument("--config", required=True, help="configuration JSON file")
    p.add_argument("--delta", default="1/4", help="cut distance (rational)")
    p.set_defaults(handler=_cmd_phi)
    return parser


def _complex_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--labeling", choices=("ordered", "unordered"), default="unordered"
    )
    p.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)


def _input_echo(args: argparse.Namespace) -> dict:
    echo: dict = {"graph": args.graph}
    for key in ("n", "criterion", "labeling", "kind", "mode", "config", "delta"):
        if hasattr(args, key) and getattr(args, key) is not None:
            echo[key] = getattr(args, key)
    return echo


def _load_graph(path: str) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# command handlers: return (payload, failed)


def _cmd_check(args) -> tuple[dict, bool]:
    G = _load_graph(args.graph)
    report = check_sufficient(G, args.n, args.criterion)
    g, g_witness = report.girth
    payload = {
        "graph_hash": graph_hash(G),
        "criterion": report.criterion,
        "n": report.n,
        "passes": report.passes,
        "vertex_count": report.vertex_count,
        "too_few_vertices": report.too_few_vertices,
        "shortest_essential_path": (
            None
            if report.shortest_path is None
            else {"length": report.shortest_path[0], "edges": list(report.shortest_path[1])}
        ),
        "girth": {
            "length": None if g == float("inf") else int(g),
            "edges": None if g_witness is None else list(g_witness),
        },
        "violations": [
            {
                "condition": v.condition,
                "required": v.required,
                "length": v.length,
                "edges": list(v.edges),
            }
            for v in report.violations
        ],
    }
    return payload, not report.passes


def _cmd_subdivide(args) -> tuple[dict, bool]:
    G = _load_graph(args.graph)
    H = sufficiently_subdivide(G, args.n)
    text = graph_text(H)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    payload = {
        "graph_hash": graph_hash(G),
        "result_hash": graph_hash(H),
        "unchanged": H is G,
        "vertices": H.num_vertices,
        "edges": H.num_edges,
        "graph_text": text,
    }
    return payload, False


def _cmd_build(args) -> tuple[dict, bool]:
    G = _load_graph(args.graph)
    K = build_complex(G, args.n, args.labeling, cell_cap=args.cell_cap)
    fv = f_vector(K)
    mcv = maximal_cell_vector(K)
    payload = {
        "graph_hash": graph_hash(G),
        "n": args.n,
        "labeling": args.labeling,
        "f_vector": list(fv),
        "maximal_cell_vector": list(mcv[1:]),
        "maximal_0_cells": mcv[0] if mcv else 0,
        "euler": euler_characteristic(K),
        "components": component_count(K),
    }
    if args.cells:
        payload["cells"] = [
            [[list(entry) for entry in cell] for cell in K.cells(k)]
            for k in range(K.dimension + 1)
        ]
    if args.boundaries:
        payload["boundaries"] = [
            [list(t) for t in K.boundary(k).triplets()]
            for k in range(1, K.dimension + 1)
        ]
    return payload, False


def _cmd_homology(args) -> tuple[dict, bool]:
    G = _load_graph(args.graph)
    K = build_complex(G, args.n, args.labeling, cell_cap=args.cell_cap)
    summary = homology(K)
    payload = {
        "graph_hash": graph_hash(G),
        "n": args.n,
        "labeling": args.labeling,
        "f_vector": list(f_vector(K)),
        "euler": euler_characteristic(K),
        "betti": list(summary.betti),
        "torsion": [list(t) for t in summary.torsion],
    }
    return payload, False


def _cmd_witness(args) -> tuple[dict, bool]:
    G = _load_graph(args.graph)
    n = args.n
    if args.kind == "rotation":
        cycle = _parse_ids(args.cycle) if args.cycle else _default_cycle(G)
        loop = rotation_loop(G, cycle, n, mode=args.mode)
        host = G
        extra = {"cycle": list(cycle), "mode": args.mode}
    elif args.kind == "case2":
        path = _select_path(G, args.path)
        aux = tuple(_parse_ids(args.aux)) if args.aux else None
        loop = case2_witness_loop(G, path, n, aux=aux)
        host = G
        extra = {"path_edges": list(path.edges)}
    else:
        path = _select_path(G, args.path)
        witness = case1_dance_loop(G, path, n)
        loop = witness.loop
        host = witness.graph
        extra = {
            "path_edges": list(path.edges),
            "subdivided_graph": graph_text(host),
        }
    loop.validate(host)
    K = build_complex(host, n, args.labeling, cell_cap=args.cell_cap)
    chain = edgepath_chain(K, loop)
    verdict = cycle_homology_class(K, chain)
    payload = {
        "graph_hash": graph_hash(G),
        "kind": args.kind,
        "n": n,
        **extra,
        "path": edgepath_to_json(loop, host),
        "moves": len(loop.moves),
        "valid": True,
        "homology": {
            "labeling": args.labeling,
            "is_cycle": verdict.is_cycle,
            "is_boundary": verdict.is_boundary,
            "note": _PI1_SURROGATE_NOTE,
        },
    }
    return payload, False


def _cmd_phi(args) -> tuple[dict, bool]:
    G = _load_graph(args.graph)
    config = configuration_from_json(
        json.loads(Path(args.config).read_text(encoding="utf-8"))
    )
    dec = decompose(G, Fraction(args.delta))
    comb = combinatorics(config, dec)
    phi = standard_vertex_of(comb, dec, len(config))
    comps = []
    for comp in dec.components:
        kind = "vertex" if hasattr(comp, "vertex") else "arc"
        entry = {"component": comp.index, "kind": kind, "tokens": list(comb.lists[comp.index])}
        if kind == "vertex":
            entry["at"] = comp.vertex
        else:
            entry["tail"] = comp.tail
            entry["head"] = comp.head
            entry["q"] = comp.q
            entry["overcrowding"] = len(comb.lists[comp.index]) - comp.q
        comps.append(entry)
    payload = {
        "graph_hash": graph_hash(G),
        "delta": args.delta,
        "combinatorics": comps,
        "standard_vertex": list(phi),
    }
    return payload, False


def _parse_ids(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _default_cycle(G: Graph) -> tuple[int, ...]:
    g, witness = girth_with_witness(G)
    if witness is None:
        raise WitnessConstructionError("the graph is a forest: no cycle to rotate on")
    return witness


def _select_path(G: Graph, selector: str | None):
    paths = essential_path_decomposition(G)
    if selector is None:
        raise ValueError("--path 'u,v' is required for this witness kind")
    u, v = _parse_ids(selector)
    wanted = {u, v}
    for p in paths:
        if set(p.endpoints) == wanted:
            return p
    raise ValueError(f"no essential path with endpoints {u} and {v}")


if __name__ == "__main__":
    entry()
