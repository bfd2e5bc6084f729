"""Command-line front end.

Exit codes: 0 all checks passed, 1 certificate or theorem violation, 2 input
error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

from . import bounds as bnd
from . import complexes as cx
from .errors import (
    GraphFormatError,
    GraphValidationError,
    ParameterError,
    ResourceError,
    VerificationError,
)
from .graph_core import (
    SAMPLE_SEED,
    Graph,
    cn_laws_report,
    generate,
    parse_edge_list,
    parse_graph6,
    read_graph6_lines,
    to_graph6,
)
from .homology import betti_gf2
from .simplicial import format_face

log = logging.getLogger("boxcomplex")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

COMPLEXES = {
    "N": lambda g: cx.neighborhood_complex(g),
    "L": lambda g: cx.lovasz_complex(g).complex,
    "B": lambda g: cx.box_complex(g).complex,
    "ssd": lambda g: cx.ssd_box(g).complex,
    "dL": lambda g: cx.doubled_lovasz(g).complex,
    "hdL": lambda g: cx.halved_doubled_lovasz(g).complex,
}


def load_graphs(args) -> list[Graph]:
    if args.family:
        return [generate(f) for f in args.family]
    if args.g6:
        return [parse_graph6(s) for s in args.g6]
    if args.file:
        return read_graph6_lines(Path(args.file).read_text().splitlines())
    if args.edges:
        path = Path(args.edges)
        return [parse_edge_list(path.read_text(), path.stem)]
    raise ParameterError("no input graph given (use --family, --g6, --file or --edges)")


def _name(graph: Graph) -> str:
    g6 = to_graph6(graph)
    return f"{graph.name} ({g6})" if graph.name and graph.name != g6 else g6


# build ----------------------------------------------------------------------

def build_graph(graph: Graph, names: list[str], fmt: str, betti: bool) -> str:
    out = []
    for name in names:
        k = COMPLEXES[name](graph)
        b = betti_gf2(k) if betti else None
        if fmt == "jsonl":
            record = {
                "graph6": to_graph6(graph),
                "complex": name,
                "vertices": len(k.vertices),
                "facets": [format_face(f).split() for f in k.facets],
                "dimension": k.dimension,
                "f_vector": list(k.f_vector),
                "euler": k.euler_characteristic,
            }
            if b is not None:
                record["betti"] = list(b.betti)
            out.append(json.dumps(record))
        else:
            out.append(f"# {name}({_name(graph)}): {len(k.vertices)} vertices, {len(k.facets)} facets, "
                       f"dim {k.dimension}, f = {k.f_vector}, euler {k.euler_characteristic}"
                       + (f", {b}" if b is not None else ""))
            out.append(k.to_text().rstrip("\n"))
    return "\n".join(line for line in out if line) + "\n"


# verify -----------------------------------------------------------------------

def verify_one(graph: Graph, fmt: str, seed: int, homology: bool) -> tuple[str, bool]:
    laws = cn_laws_report(graph, seed=seed)
    report = cx.verify_graph(graph, homology=homology)
    checks = [(f"CN laws (a)-(d), {laws.mode}", laws.passed, None, "")]
    checks += [(name, c.ok, c.witness, c.detail) for name, c in report.checks]
    passed = all(ok for _, ok, _, _ in checks)
    steps = []
    try:
        steps = [str(s) for s in cx.collapse_sequence(graph)]
    except VerificationError:
        pass
    if fmt == "jsonl":
        record = {
            "graph6": to_graph6(graph),
            "passed": passed,
            "checks": [
                {"name": n, "ok": ok, "witness": None if w is None else str(w), "detail": d}
                for n, ok, w, d in checks
            ],
            "collapse": steps,
            "notes": report.notes,
        }
        return json.dumps(record) + "\n", passed
    lines = [f"== {_name(graph)}: {'PASS' if passed else 'FAIL'}"]
    for n, ok, w, d in checks:
        tail = f"  [{d}]" if d and ok else (f"  {d}" + (f" witness={w}" if w is not None else "") if not ok else "")
        lines.append(f"  {'PASS' if ok else 'FAIL'}  {n}{tail}")
    lines.append(f"  collapse sequence ({len(steps)} steps):")
    lines += [f"    {s}" for s in steps]
    lines += [f"  note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n", passed


# bounds -----------------------------------------------------------------------

def bounds_one(graph: Graph, fmt: str, chi_budget: int) -> tuple[str, bool]:
    record = bnd.analyse_graph(graph, chi_budget)
    ok = not record.violations
    if fmt == "jsonl":
        return json.dumps(record.to_dict()) + "\n", ok
    lo, hi = record.interval
    chi = "skipped" if record.chi is None else record.chi
    lines = [
        f"== {_name(graph)}",
        f"  chi: {chi}",
        f"  index interval: [{lo}, {hi}] (dimension bound); [{lo}, {record.klm_upper}] (K_lm theorem bound)",
        f"  chromatic lower bound: certified {record.chromatic_lower_bound}, "
        f"heuristic {record.chromatic_heuristic} (homology proxy, not a certificate)",
        "  K_lm: " + ", ".join(f"({l},{m}) {v}" for l, m, v in record.klm),
    ]
    lines += [f"  VIOLATION: {v}" for v in record.violations]
    return "\n".join(lines) + "\n", ok


# demo -------------------------------------------------------------------------

def demo_c5() -> tuple[str, bool]:
    """Walk through the five-cycle example, checking every claimed identity."""
    g = generate("cycle:5")
    out: list[str] = []
    ok = True

    def stage(title: str, k, claim: str, holds: bool) -> None:
        nonlocal ok
        ok &= holds
        out.append(f"{title:<12} f = {k.f_vector!s:<22} {claim}: {'yes' if holds else 'NO'}")

    n, lov, box = cx.neighborhood_complex(g), cx.lovasz_complex(g).complex, cx.box_complex(g).complex
    ssd, dl, hdl = cx.ssd_box(g).complex, cx.doubled_lovasz(g).complex, cx.halved_doubled_lovasz(g).complex
    is_cycle = lambda k, length: k.f_vector == (length, length) and all(  # noqa: E731
        sum(v in f for f in k.facets) == 2 for v in k.vertices
    ) and betti_gf2(k).betti == (1, 1)
    stage("N(C5)", n, "is a 5-cycle", is_cycle(n, 5))
    stage("L(C5)", lov, "is a 10-cycle", is_cycle(lov, 10))
    stage("B(C5)", box, "shores are copies of N(C5)",
          all(len(side) == 5 for side in cx.shores(cx.box_complex(g))))
    stage("ssd(B(C5))", ssd, "equals dL(C5) face by face", set(ssd.all_faces()) == set(dl.all_faces()))
    scn2 = cx.scn2_map(g)
    stage("sCN2", ssd, "is the identity", all(v == w for v, w in scn2.assignment.items()))
    j = cx.jump_map(g)
    collapsed = [(v, w) for v, w in j.assignment.items() if v != w]
    out.append(f"{'j':<12} collapses {len(collapsed)} edges of type (A, CN(A)):")
    out += [f"{'':<14}{v} -> {w}" for v, w in sorted(collapsed, key=lambda p: str(p[0]))]
    stage("hdL(C5)", hdl, "is a 10-cycle", is_cycle(hdl, 10))
    try:
        cx.lovasz_to_hdl_iso(g)
        iso = True
    except VerificationError:
        iso = False
    stage("f", hdl, "L(C5) -> hdL(C5) is a Z2-isomorphism", iso)
    steps = cx.collapse_sequence(g)
    out.append(f"{'collapses':<12} {len(steps)} steps from dL(C5) to hdL(C5):")
    out += [f"{'':<14}{s}" for s in steps]
    stage("homology", hdl, "Betti numbers constant along the collapses", bool(cx.collapse_homology(g)))
    out.append("all identities hold" if ok else "SOME IDENTITY FAILED")
    return "\n".join(out) + "\n", ok


# driver -----------------------------------------------------------------------

def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--family", action="append", help="family string, e.g. cycle:5, kneser:5,2 (repeatable)")
    src.add_argument("--g6", action="append", help="graph6 string (repeatable)")
    src.add_argument("--file", help="file with one graph6 string per line")
    src.add_argument("--edges", help="edge-list file, one 'u v' pair per line")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-closed-sets", type=int, default=20_000,
                   help="give up (exit 3) on graphs with more closed sets than this")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxcomplex", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--format", choices=("text", "jsonl"), default="text")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $BOXCOMPLEX_WORKERS or 1)")
    parser.add_argument("--seed", type=int, default=SAMPLE_SEED, help="seed for sampled CN-law checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="export complexes in facet-list format")
    _add_input(p)
    _add_budget(p)
    p.add_argument("--complex", action="append", choices=sorted(COMPLEXES), help="complex to export (repeatable)")
    p.add_argument("--betti", action="store_true", help="also report GF(2) Betti numbers")

    p = sub.add_parser("verify", help="run the certificate suite")
    _add_input(p)
    _add_budget(p)
    p.add_argument("--no-homology", action="store_true", help="skip the Betti-number certificates")

    p = sub.add_parser("bounds", help="index interval, chromatic bounds, K_lm verdicts")
    _add_input(p)
    _add_budget(p)
    p.add_argument("--chi-budget", type=int, default=2_000_000, help="search-node budget for the chromatic number")

    sub.add_parser("demo-c5", help="reproduce the five-cycle walkthrough")
    return parser


def _run_all(job, graphs: list[Graph], workers: int) -> list[tuple[str, bool]]:
    if workers > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, graphs))
    return [job(g) for g in graphs]


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    workers = args.workers if args.workers is not None else bnd.default_workers()
    if workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.command == "demo-c5":
            text, ok = demo_c5()
            sink.write(text)
            return EXIT_OK if ok else EXIT_VIOLATION

        graphs = load_graphs(args)
        log.info("loaded %d graph(s)", len(graphs))
        for g in graphs:
            log.debug("%s: %d closed sets", _name(g), cx.check_closed_set_budget(g, args.max_closed_sets))
        if args.command == "build":
            names = args.complex or list(COMPLEXES)
            for g in graphs:
                sink.write(build_graph(g, names, args.format, args.betti))
            return EXIT_OK
        if args.command == "verify":
            job = partial(verify_one, fmt=args.format, seed=args.seed, homology=not args.no_homology)
        else:
            job = partial(bounds_one, fmt=args.format, chi_budget=args.chi_budget)
        results = _run_all(job, graphs, workers)
        for text, _ in results:
            sink.write(text)
        failed = sum(not ok for _, ok in results)
        if args.format == "text" and len(results) > 1:
            sink.write(f"{len(results) - failed}/{len(results)} graphs passed\n")
        return EXIT_OK if not failed else EXIT_VIOLATION
    except (GraphFormatError, GraphValidationError, ParameterError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    finally:
        if sink is not sys.stdout:
            sink.close()


if __name__ == "__main__":
    sys.exit(main())
