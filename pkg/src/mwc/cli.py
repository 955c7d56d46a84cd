"""Command-line front end.

Subcommands:

* ``mwc generate SPEC [--out FILE]`` writes a graph in edge-list format.
* ``mwc analyze`` computes expansion constants, spectra, or sweep cuts
  for a graph loaded from a file or built from a family spec.
* ``mwc partition`` runs the recursive division procedure and emits the
  blocks plus the full trace.
* ``mwc verify SUITE`` runs a verification suite over a corpus and exits
  nonzero iff any gating check fails.

Graphs come either from ``--input FILE`` (edge-list format: header line
"n m", then one "u v" line per edge with 0 <= u < v < n) or from
``--family SPEC`` where SPEC uses the family grammar, e.g.::

    complete(4)   cycle(6)   path(5)   edgeless(3)   petersen
    k4  c6  p5  e3                 (short names)
    rr(n=20,d=3,seed=1)            (random regular, pairing model)
    union(k3*2)                    (disjoint union, * repeats)
    apex(c8)                       (cone over a graph)
    chain(k3*8)  chain(k3,k4,seed=5)  (blocks joined by bridges)

Rationals are printed as exact "p/q" strings alongside a convenience
decimal.  The ``MWC_THREADS`` environment variable caps the number of
worker threads used by ``verify``; the report stream is byte-identical
for any thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import CapExceededError, GraphInputError, MWCError, UnsplittableError
from .expansion import (
    DEFAULT_PARTITION_CAP,
    DEFAULT_SUBSET_CAP,
    expansion_exact,
    kway_expansion_exact,
)
from .families import parse_family
from .graphs import Graph, connected_components
from .partition import CutMode, max_block_ratio, nested_boundary_check, recursive_partition, sweep_cut
from .rational import format_ratio, is_infinite, ratio_decimal
from .spectral import spectrum
from .verify import (
    SUITE_NAMES,
    VerifyCache,
    _theorem2_hypothesis,
    corpus_from_spec,
    failed_gating,
    run_suite,
)


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="edge-list file to load")
    group.add_argument("--family", help="family spec to generate")


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--cap-subset",
        type=int,
        default=DEFAULT_SUBSET_CAP,
        help="max n for exact subset enumeration (default %(default)s)",
    )
    parser.add_argument(
        "--cap-partition",
        type=int,
        default=DEFAULT_PARTITION_CAP,
        help="max n for exact partition enumeration (default %(default)s)",
    )


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("json", "csv", "text"),
        default="json",
        help="output format (default %(default)s)",
    )
    parser.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwc",
        description="Exact and spectral multi-way expansion constants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a family graph as an edge list")
    p_gen.add_argument("spec", help="family spec, e.g. 'chain(k3*8)'")
    p_gen.add_argument("--out", help="output file (default: stdout)")

    p_an = sub.add_parser("analyze", help="expansion constants and spectra")
    _add_graph_source(p_an)
    p_an.add_argument("--h", action="store_true", help="exact expansion constant")
    p_an.add_argument("--hk", type=int, metavar="K", help="exact k-way constant")
    p_an.add_argument("--spectrum", action="store_true", help="Laplacian eigenvalues")
    p_an.add_argument("--sweep", action="store_true", help="Fiedler sweep cut")
    _add_caps(p_an)
    _add_output(p_an)

    p_part = sub.add_parser("partition", help="recursive minimum-cut division")
    _add_graph_source(p_part)
    p_part.add_argument("--k", type=int, required=True, help="number of pieces")
    p_part.add_argument(
        "--mode",
        choices=("exact", "sweep"),
        default="exact",
        help="cut oracle (default %(default)s)",
    )
    _add_caps(p_part)
    _add_output(p_part)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=SUITE_NAMES, help="suite name")
    p_ver.add_argument(
        "--corpus",
        help="semicolon-separated family specs (default: the stock corpus)",
    )
    p_ver.add_argument("--C", type=float, default=1.0, help="constant for corollary4")
    p_ver.add_argument(
        "--seed", type=int, help="use seeded random-regular blocks in the remark suite"
    )
    _add_caps(p_ver)
    _add_output(p_ver)

    return parser


def _load_graph(args: argparse.Namespace) -> tuple[str, Graph]:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            return args.input, Graph.from_edge_list_text(fh.read())
    return args.family, parse_family(args.family)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ratio_fields(prefix: str, value) -> dict:
    return {prefix: format_ratio(value), prefix + "_decimal": ratio_decimal(value)}


def _cmd_generate(args: argparse.Namespace) -> int:
    g = parse_family(args.spec)
    text = g.to_edge_list_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        summary_to = sys.stdout
    else:
        sys.stdout.write(text)
        summary_to = sys.stderr
    comps = len(connected_components(g))
    print(f"n={g.n} m={g.m} components={comps}", file=summary_to)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    name, g = _load_graph(args)
    wanted_any = args.h or args.hk is not None or args.spectrum or args.sweep
    report: dict = {"graph": name, "n": g.n, "m": g.m}
    if args.h or not wanted_any:
        witness = expansion_exact(g, subset_cap=args.cap_subset)
        report.update(_ratio_fields("h", witness.ratio))
        report["h_witness"] = list(witness.subset) if witness.subset else None
        report["h_boundary"] = witness.boundary
    if args.hk is not None:
        witness = kway_expansion_exact(
            g,
            args.hk,
            partition_cap=args.cap_partition,
            subset_cap=args.cap_subset,
        )
        report.update(_ratio_fields(f"h_{args.hk}", witness.value))
        report[f"h_{args.hk}_witness"] = [list(b) for b in witness.blocks]
        report[f"h_{args.hk}_block_ratios"] = [format_ratio(r) for r in witness.ratios]
    if args.spectrum:
        spec = spectrum(g)
        report["spectrum"] = [float(v) for v in spec.values]
        report["residual"] = spec.residual
    if args.sweep:
        witness = sweep_cut(g)
        report["sweep"] = {
            **_ratio_fields("ratio", witness.ratio),
            "subset": list(witness.subset or ()),
            "boundary": witness.boundary,
        }
    _emit(_format_mapping(report, args.format), args.out)
    return 0


def _format_mapping(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        lines = ["key,value"]
        for key, value in report.items():
            lines.append(f"{key},{json.dumps(value)}")
        return "\n".join(lines) + "\n"
    lines = [f"{key}: {value}" for key, value in report.items()]
    return "\n".join(lines) + "\n"


def _cmd_partition(args: argparse.Namespace) -> int:
    name, g = _load_graph(args)
    mode = CutMode(args.mode)
    blocks, trace = recursive_partition(g, args.k, mode, subset_cap=args.cap_subset)
    report: dict = {
        "graph": name,
        "k": args.k,
        "mode": mode.value,
        "blocks": [list(b) for b in blocks],
        "trace": {
            "nodes": {
                addr: {
                    "vertices": list(node.vertices),
                    **_ratio_fields("score", node.score),
                }
                for addr, node in sorted(trace.nodes.items())
            },
            "divisions": [
                {
                    "step": d.step,
                    "address": d.address,
                    "cut_subset": list(d.witness.subset or ()),
                    "cut_boundary": d.witness.boundary,
                    **_ratio_fields("cut_ratio", d.witness.ratio),
                    **_ratio_fields("piece_h", d.piece_score),
                }
                for d in trace.divisions
            ],
            "leaves": list(trace.leaf_addresses),
        },
    }
    if mode == CutMode.EXACT:
        cache = VerifyCache(
            subset_cap=args.cap_subset, partition_cap=args.cap_partition
        )
        try:
            h_k = cache.kway(g, args.k).value
            h_k1 = (
                cache.kway(g, args.k + 1).value if args.k + 1 <= g.n else None
            )
        except CapExceededError as exc:
            report["hypothesis"] = {"status": "cap-exceeded", "detail": str(exc)}
        else:
            hyp: dict = {**_ratio_fields("h_k", h_k)}
            if h_k1 is None:
                hyp["status"] = "undefined (k+1 > n)"
            else:
                hyp.update(_ratio_fields("h_k1", h_k1))
                holds = _theorem2_hypothesis(h_k, h_k1, args.k)
                hyp["holds"] = holds
                if holds:
                    min_block_h = min(cache.block_h(g, b) for b in blocks)
                    max_ratio = max_block_ratio(g, blocks)
                    threshold = h_k1 / 3 ** (args.k + 1)
                    entries = nested_boundary_check(g, trace)
                    report["conclusions"] = {
                        **_ratio_fields("min_block_h", min_block_h),
                        **_ratio_fields("threshold", threshold),
                        "lower_ok": bool(threshold <= min_block_h),
                        **_ratio_fields("max_block_ratio", max_ratio),
                        **_ratio_fields("upper_bound", 3**args.k * h_k),
                        "upper_ok": bool(
                            max_ratio <= Fraction(3**args.k) * h_k
                            if not is_infinite(h_k)
                            else True
                        ),
                        "claim_instances": len(entries),
                        "claim_ok": all(e.ok for e in entries),
                    }
            report["hypothesis"] = hyp
    _emit(_format_mapping(report, args.format), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    corpus = corpus_from_spec(args.corpus) if args.corpus else None
    threads = int(os.environ.get("MWC_THREADS", "1"))
    if threads < 1:
        raise GraphInputError(f"MWC_THREADS must be >= 1, got {threads}")
    reports = run_suite(
        args.suite,
        corpus,
        C=args.C,
        threads=threads,
        subset_cap=args.cap_subset,
        partition_cap=args.cap_partition,
    )
    dicts = [r.to_json_dict() for r in reports]
    if args.format == "json":
        text = "".join(json.dumps(d, sort_keys=True) + "\n" for d in dicts)
    elif args.format == "csv":
        lines = ["check,graph,verdict,kind,gating"]
        lines += [
            f"{d['check']},{d['graph']},{d['verdict']},{d['kind']},{d['gating']}"
            for d in dicts
        ]
        text = "\n".join(lines) + "\n"
    else:
        lines = [
            f"{d['verdict'].upper():15s} {d['check']:15s} {d['graph']} {json.dumps(d['params'])}"
            for d in dicts
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    failures = failed_gating(reports)
    summary = (
        f"{len(reports)} checks: "
        f"{sum(r.verdict == 'pass' for r in reports)} pass, "
        f"{sum(r.verdict == 'fail' for r in reports)} fail, "
        f"{sum(r.verdict == 'not-applicable' for r in reports)} not applicable; "
        f"{len(failures)} gating failures"
    )
    print(summary, file=sys.stderr)
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "partition":
            return _cmd_partition(args)
        if args.command == "verify":
            return _cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except CapExceededError as exc:
        _print_error(
            {
                "type": "cap-exceeded",
                "cap": exc.cap_name,
                "limit": exc.limit,
                "required": exc.required,
            }
        )
        return 2
    except UnsplittableError as exc:
        _print_error({"type": "unsplittable", "message": str(exc)})
        return 2
    except (GraphInputError, MWCError, OSError) as exc:
        _print_error({"type": type(exc).__name__, "message": str(exc)})
        return 2
    return 0


def _print_error(payload: dict) -> None:
    print(json.dumps({"error": payload}), file=sys.stderr)


def run() -> None:
    sys.exit(main())
