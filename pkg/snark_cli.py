#!/usr/bin/env python3
"""
snarklab command line.

  build <recipe> [-o FILE] [--graph6]      construct a multipole from a recipe
  verify <graph> --props snark,cc,...      check properties of a graph6 / .mpole input
  repro --claim <id|all> [--extended]      rerun the registered computational claims
  oracle {colour,cc,critical} <graph>      run an exhaustive validation oracle
  claims                                   list registered claims
  recipes                                  list recipe names

Exit codes: 0 all checks passed, 1 a check failed, 2 error or timeout.
"""

import argparse
import logging
import os
import sys
import time
from typing import List, Optional, Sequence, Tuple

import config
from claims import CLAIMS, EXCLUSION_NOTE, claim_ids, run_claim
from colouring_engine import colouring_oracle
from criticality import analyse, criticality_oracle
from graph_io import canonical_hash, load_graph, save_mpole, write_graph6, write_mpole
from models.errors import SearchTimeoutError, SnarkLabError
from models.reports import ClaimResult, PropertyReport, ReportRecord
from recipes import evaluate_recipe, list_recipes, read_recipe_source
from structure_metrics import cyclic_connectivity_oracle
from utils.data_utils import ReportWriter, utc_timestamp
from utils.timing import search_deadline

logger = logging.getLogger("snarklab")

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

BOOLEAN_PROPS = {
    "snark": "is_snark",
    "critical": "is_critical",
    "bicritical": "is_bicritical",
    "strictly-critical": "is_strictly_critical",
}


def setup_logging(level: str, log_file: str = config.LOG_FILE) -> None:
    directory = os.path.dirname(log_file)
    if directory:
        os.makedirs(directory, exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(),
        ],
    )


def _record(args, **fields) -> None:
    ReportWriter(config.get_settings().report_path).append(
        ReportRecord(tool_version=config.TOOL_VERSION, started_at=args.started_at,
                     wall_seconds=round(time.perf_counter() - args.clock, 3), **fields)
    )


def _parse_props(text: str) -> List[str]:
    props = [p.strip() for p in text.split(",") if p.strip()]
    unknown = [p for p in props if p not in config.KNOWN_PROPERTIES]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown properties {unknown}; choose from {', '.join(config.KNOWN_PROPERTIES)}"
        )
    return props


def _parse_pairs(text: str) -> List[Tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        u, sep, v = chunk.strip().partition("-")
        if not sep or not u.isdigit() or not v.isdigit():
            raise argparse.ArgumentTypeError(f"'{chunk}' is not a vertex pair like 3-17")
        pairs.append((int(u), int(v)))
    return pairs


# --- commands ---------------------------------------------------------------------

def cmd_build(args) -> int:
    m = evaluate_recipe(read_recipe_source(args.recipe))
    digest = canonical_hash(m)
    if args.graph6:
        text = write_graph6(m) + "\n"
    else:
        text = write_mpole(m, recipe=m.name)
    if args.output:
        if args.graph6:
            with open(args.output, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            save_mpole(m, args.output, recipe=m.name)
        print(f"✅ Built {m!r} -> {args.output}")
    else:
        sys.stdout.write(text)
    _record(args, kind="build", source=m.name or args.recipe, canonical_hash=digest)
    return EXIT_PASS


def _report_passes(report: PropertyReport, props: Sequence[str], args) -> bool:
    ok = all(getattr(report, BOOLEAN_PROPS[p]) is True for p in props if p in BOOLEAN_PROPS)
    if args.min_girth is not None and report.girth is not None:
        ok = ok and report.girth >= args.min_girth
    if args.min_cc is not None and report.cyclic_connectivity is not None:
        ok = ok and report.cyclic_connectivity >= args.min_cc
    return ok


def _print_report(report: PropertyReport, props: Sequence[str]) -> None:
    print(f"📊 order {report.order}")
    for p in props:
        if p in BOOLEAN_PROPS:
            value = getattr(report, BOOLEAN_PROPS[p])
            print(f"   {'✅' if value else '❌'} {p}: {value}")
        elif p == "girth":
            print(f"   📏 girth: {report.girth}")
        elif p == "cc":
            print(f"   🔗 cyclic connectivity: {report.cyclic_connectivity}")
    if report.criticality is not None:
        print(f"   🧩 criticality: {report.criticality.value}")
    for pair in report.removable_vertex_pairs[:10]:
        kind = "adjacent" if pair.adjacent else "non-adjacent"
        print(f"   ➖ removable {kind} pair ({pair.u}, {pair.v})")


def cmd_verify(args) -> int:
    doc = load_graph(args.source)
    g = doc.multipole
    print(f"🚀 Verifying {g!r}")
    report = analyse(g, args.props, hints=args.hints or (), jobs=args.jobs, full=args.full)
    _print_report(report, args.props)
    passed = _report_passes(report, args.props, args)
    _record(args, kind="verify", source=args.source, canonical_hash=canonical_hash(g), report=report)
    print("✅ All requested checks passed" if passed else "❌ Some requested checks failed")
    return EXIT_PASS if passed else EXIT_FAIL


def _print_claim(result: ClaimResult) -> None:
    print(f"\n📋 {result.claim_id}: {result.title}")
    for c in result.checks:
        mark = "✅" if c.passed else "❌"
        anchor = f" ({c.anchor})" if c.anchor else ""
        print(f"   {mark} [{c.provenance}] {c.name}{anchor}: expected {c.expected}, "
              f"observed {c.observed} [{c.seconds:.2f}s]")
    for note in result.notes:
        print(f"   ⚠️ {note}")


def cmd_repro(args) -> int:
    wanted = claim_ids(args.extended) if args.claim == "all" else [args.claim]
    failed = []
    for cid in wanted:
        result = run_claim(cid, extended=args.extended, jobs=args.jobs)
        _print_claim(result)
        _record(args, kind="claim", source=cid, canonical_hash="", claim=result)
        if not result.passed:
            failed.append(cid)
    print(f"\n⚠️ {EXCLUSION_NOTE}")
    print(f"📊 {len(wanted) - len(failed)}/{len(wanted)} claims passed")
    if failed:
        print(f"❌ Failed: {', '.join(failed)}")
        return EXIT_FAIL
    return EXIT_PASS


def cmd_oracle(args) -> int:
    g = load_graph(args.source).multipole
    print(f"🔍 {args.oracle} oracle on {g!r}")
    if args.oracle == "colour":
        phi = colouring_oracle(g)
        print(f"   colourable: {phi is not None}")
        if phi is not None:
            print(f"   colouring: {dict(sorted(phi.edge_colours.items()))}")
    elif args.oracle == "cc":
        cc = cyclic_connectivity_oracle(g)
        print(f"   cyclic connectivity: {cc.label}")
        if cc.cut is not None:
            print(f"   witness cut edges: {list(cc.cut.edges)}")
    else:
        verdict = criticality_oracle(g)
        print(f"   criticality: {verdict.criticality.value}")
        print(f"   removable pairs: {[(p.u, p.v) for p in verdict.removable_pairs]}")
    _record(args, kind="oracle", source=args.source, canonical_hash=canonical_hash(g))
    return EXIT_PASS


def cmd_claims(args) -> int:
    for cid, entry in CLAIMS.items():
        flag = " [extended]" if entry.extended else ""
        print(f"{cid:<22} {entry.title}{flag}")
    return EXIT_PASS


def cmd_recipes(args) -> int:
    for line in list_recipes():
        print(line)
    return EXIT_PASS


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="snarklab", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--jobs", type=int, default=None, help="worker processes (default: SNARKLAB_JOBS or 1)")
    ap.add_argument("--timeout", type=float, default=None, help="seconds allowed per search or claim check")
    ap.add_argument("--backend", choices=["dfs", "sat", "auto"], default=None, help="colouring search backend")
    ap.add_argument("--report", default=None, help="JSON-lines report stream to append to")
    ap.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING ...")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a multipole from a recipe")
    p.add_argument("recipe", help="recipe file, recipe text such as '(h6-ttt (tj 5) (tj 5) (tj 5))' or a bare name")
    p.add_argument("-o", "--output", default=None, help="write to FILE instead of stdout")
    p.add_argument("--graph6", action="store_true", help="emit graph6 (closed simple graphs only)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check properties of a graph")
    p.add_argument("source", help=".mpole file, graph6 file or inline graph6 string")
    p.add_argument("--props", type=_parse_props, default=["snark"],
                   help=f"comma list from {','.join(config.KNOWN_PROPERTIES)}")
    p.add_argument("--hints", type=_parse_pairs, default=None, help="vertex pairs tried first, e.g. 0-1,0-2")
    p.add_argument("--full", action="store_true", help="list every removable non-adjacent pair")
    p.add_argument("--min-girth", type=int, default=None)
    p.add_argument("--min-cc", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("repro", help="rerun registered claims")
    p.add_argument("--claim", required=True, help="claim id or 'all'")
    p.add_argument("--extended", action="store_true", help="allow the claims that take hours")
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("oracle", help="run an exhaustive validation oracle")
    p.add_argument("oracle", choices=["colour", "cc", "critical"])
    p.add_argument("source")
    p.set_defaults(func=cmd_oracle)

    sub.add_parser("claims", help="list registered claims").set_defaults(func=cmd_claims)
    sub.add_parser("recipes", help="list recipe names").set_defaults(func=cmd_recipes)
    return ap


def _apply_overrides(args) -> config.Settings:
    settings = config.Settings.from_env()
    updates = {
        "jobs": args.jobs, "timeout": args.timeout, "backend": args.backend,
        "report_path": args.report, "log_level": args.log_level,
    }
    settings = config.Settings(**{**settings.model_dump(), **{k: v for k, v in updates.items() if v is not None}})
    config.set_settings(settings)
    args.jobs = settings.jobs
    return settings


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _apply_overrides(args)
    except ValueError as exc:
        print(f"❌ Error: invalid settings: {exc}")
        return EXIT_ERROR
    setup_logging(settings.log_level)
    args.started_at = utc_timestamp()
    args.clock = time.perf_counter()
    # repro bounds each claim check on its own
    timeout = None if args.command == "repro" else settings.timeout
    try:
        with search_deadline(timeout):
            return args.func(args)
    except SearchTimeoutError as exc:
        print(f"⏰ Timeout: {exc}")
        return EXIT_ERROR
    except (SnarkLabError, OSError) as exc:
        print(f"❌ Error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
