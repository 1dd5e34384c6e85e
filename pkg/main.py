#!/usr/bin/env python3
"""
kstate: fiberedness of Kauffman state surfaces
==============================================

Command-line front end. Reads a knot or link diagram as a PD code, smooths
it by a Kauffman state and reports:

- validation of the diagram (orientation, signs, faces)
- the alternating / homogeneous classification of a state
- a certified FIBERED / NOT_FIBERED verdict for its state surface
- a census over all states of a diagram
- the homology matrix of a checkerboard state surface, and the
  dominant-determinant checks behind it
- the Alexander polynomial and the monic test for alternating knots
- agreement checks over the bundled corpus

Exit codes: 0 ok, 1 usage error, 2 invalid input, 3 internal check failed.
Verdicts are payload, never status.
"""

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))

import pandas as pd

from config import Config
from log_setup import configure_logging
from errors import InvalidInput, InvariantViolation
from diagram import orientation, parse_pd
from state import make_state, seifert_state, smooth, surface_invariants
from stategraph import build_graph, reduce
from classify import classify
from decide import FIBERED, census, check_all_states, decide_fiber, replay_certificate
from homology import (
    block_matrices,
    check_dominant_det,
    dominance_sweep,
    homology_matrix,
    sharp_family,
)
from alexander import alexander_polynomial, murasugi_verdict
from data_loader import CorpusLoader
from report_generator import FORMATS, ReportGenerator

log = logging.getLogger("kstate.cli")


class UsageError(Exception):
    """Bad command line; exit code 1."""


class _Parser(argparse.ArgumentParser):
    """Parser that raises UsageError instead of exiting."""

    def error(self, message):
        """Report a bad command line as UsageError."""
        raise UsageError(f"{self.prog}: {message}")


# -- input helpers ---------------------------------------------------------

def _read_diagram(args):
    """Diagram from --pd or --file."""
    if args.pd and args.file:
        raise UsageError("give either --pd or --file, not both")
    if args.pd:
        text = args.pd
    elif args.file:
        try:
            text = Path(args.file).read_text()
        except OSError as e:
            raise InvalidInput(f"cannot read {args.file}: {e.strerror}") from None
    else:
        raise UsageError("one of --pd or --file is required")
    return parse_pd(text, allow_split=args.allow_split)


def _read_state(args, diagram):
    """State from the state options; the Seifert state by default."""
    chosen = [x for x in (args.state, args.seifert, args.all_a, args.all_b) if x]
    if len(chosen) > 1:
        raise UsageError("give at most one of --state, --seifert, --all-a, --all-b")
    n = diagram.crossing_count
    if args.state:
        return make_state(diagram, args.state)
    if args.all_a:
        return make_state(diagram, "A" * n)
    if args.all_b:
        return make_state(diagram, "B" * n)
    return seifert_state(diagram)


def _format(args, allowed, default="text"):
    """Chosen output format, checked against what the command supports."""
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"{args.command} does not support --format {fmt}")
    return fmt


# -- commands --------------------------------------------------------------

def cmd_validate(args, report):
    """Counts, signs, orientation and faces of a diagram."""
    fmt = _format(args, ("text", "json"))
    diagram = _read_diagram(args)
    data = {"pd": diagram.to_pd(), **diagram.summary()}
    if fmt == "json":
        data["orientation"] = orientation(diagram)
        data["faces"] = [list(f.boundary) for f in diagram.faces]
        return report.json(data)
    return report.text("DIAGRAM", data)


def cmd_classify(args, report):
    """Classes of a state, its witnesses and surface invariants."""
    fmt = _format(args, ("text", "json", "dot"))
    diagram = _read_diagram(args)
    state = _read_state(args, diagram)
    smoothed = smooth(diagram, state)
    if fmt == "dot":
        return report.graph_dot(_dot_graph(args, build_graph(smoothed)))

    classification = classify(smoothed, strict=args.strict_consecutive)
    invariants = surface_invariants(smoothed)
    data = {
        "state": str(state),
        "circles": smoothed.circle_count,
        "regions": len(smoothed.regions),
        "outer_region": smoothed.outer_region,
        "state_class": sorted(classification.state_class),
        **classification.to_dict(),
        "surface": {
            "euler_characteristic": invariants.euler_characteristic,
            "boundary_components": invariants.boundary_components,
            "orientable": invariants.orientable,
            "genus": invariants.genus,
        },
    }
    if fmt == "json":
        data["smoothed_map"] = smoothed.to_dict()
        return report.json(data)
    return report.text("STATE CLASSIFICATION", data)


def _dot_graph(args, graph):
    """The state graph, or its reduction under --reduced."""
    return reduce(graph) if args.reduced else graph


def cmd_decide(args, report):
    """Certified verdict for a state, replayed before it is printed."""
    fmt = _format(args, ("text", "json", "dot"))
    diagram = _read_diagram(args)
    state = _read_state(args, diagram)
    result = decide_fiber(diagram, state)
    replay_certificate(diagram, state, result)

    graph = build_graph(smooth(diagram, state))
    if fmt == "dot":
        return report.graph_dot(_dot_graph(args, graph), highlight=result.certificate.edges)
    reduced = reduce(graph)
    data = {
        **result.to_dict(),
        "reduced_edges": list(reduced.edge_ids),
        "collapsed": {str(k): list(v) for k, v in reduced.collapsed.items()},
    }
    if fmt == "json":
        return report.json(data)
    return report.text("FIBEREDNESS VERDICT", data)


def cmd_census(args, report):
    """Verdicts for every state."""
    fmt = _format(args, ("csv", "text", "json"), default="csv")
    diagram = _read_diagram(args)
    result = census(diagram, bound=args.bound, workers=args.workers)
    if fmt == "csv":
        return report.census_csv(result)
    if fmt == "json":
        return report.json({
            "rows": result.table.to_dict(orient="records"),
            "summary": result.summary,
        })
    return report.text("STATE CENSUS", {"pd": diagram.to_pd(), "summary": result.summary}) + (
        result.table.to_string(index=False) + "\n"
    )


def _matrix_entry(matrix):
    """Matrix data with its dominance check."""
    data = matrix.to_dict()
    # a tree gives the map between trivial groups; nothing to test
    data["dominance"] = check_dominant_det(matrix.entries).to_dict() if matrix.size else None
    return data


def cmd_matrix(args, report):
    """Homology matrix of a state, or the determinant checks."""
    fmt = _format(args, ("text", "json"))
    if args.sharp is not None:
        rows = []
        for n in range(1, args.sharp + 1):
            check = check_dominant_det(sharp_family(n))
            rows.append({"n": n, **check.to_dict()})
        data = {"sharp_family": rows}
        title = "SHARP DETERMINANT FAMILY"
    elif args.sweep:
        result = dominance_sweep(samples=args.samples, seed=args.seed)
        data = {**result.to_dict(), "histogram": {str(k): v for k, v in result.histogram.items()}}
        title = "DOMINANT DETERMINANT SWEEP"
    else:
        diagram = _read_diagram(args)
        state = _read_state(args, diagram)
        reduced = reduce(build_graph(smooth(diagram, state)))
        if args.blocks:
            data = {
                "state": str(state),
                "blocks": [
                    {"edges": list(block.edge_ids), **_matrix_entry(matrix)}
                    for block, matrix in block_matrices(reduced)
                ],
            }
            if fmt == "text":
                # one section per block
                data["blocks"] = {f"block {i}": b for i, b in enumerate(data["blocks"])}
        else:
            data = {"state": str(state), **_matrix_entry(homology_matrix(reduced))}
        title = "HOMOLOGY MATRIX"
    if fmt == "json":
        return report.json(data)
    return report.text(title, data)


def cmd_alexander(args, report):
    """Alexander polynomial and the monic test."""
    fmt = _format(args, ("text", "json"))
    diagram = _read_diagram(args)
    deleted = None
    if args.faces:
        try:
            deleted = tuple(int(x) for x in args.faces.split(","))
        except ValueError:
            raise UsageError(f"--faces wants two face ids like 0,1; got {args.faces!r}") from None
        if len(deleted) != 2:
            raise UsageError(f"--faces wants two face ids like 0,1; got {args.faces!r}")
    poly = alexander_polynomial(diagram, deleted)
    try:
        verdict = murasugi_verdict(diagram, poly)
    except InvalidInput as e:
        verdict = f"not applicable: {e}"
    data = {
        "pd": diagram.to_pd(),
        "polynomial": str(poly),
        "terms": poly.serialize(),
        "degree": poly.degree,
        "determinant": poly.determinant,
        "monic": poly.is_monic,
        "symmetric": poly.is_symmetric,
        "murasugi_verdict": verdict,
    }
    if fmt == "json":
        return report.json(data)
    return report.text("ALEXANDER POLYNOMIAL", data)


def check_entry(entry, exhaustive=False):
    """Agreement checks for one corpus entry; ``ok`` is False on any mismatch."""
    diagram = entry.diagram
    row = {
        "name": entry.name,
        "crossings": entry.crossings,
        "alexander": "",
        "murasugi": "",
        "seifert_state": "",
        "seifert_verdict": "",
        "divergences": 0,
        "divergent_states": "",
        "problems": "",
        "ok": True,
    }
    problems = []
    murasugi = None
    if entry.is_knot:
        poly = alexander_polynomial(diagram)
        row["alexander"] = poly.serialize()
        if poly != entry.alexander:
            problems.append(f"alexander {poly.serialize()} != table {entry.alexander.serialize()}")
        try:
            murasugi = murasugi_verdict(diagram, poly)
        except InvalidInput:
            murasugi = None
        if murasugi is not None:
            row["murasugi"] = murasugi
            if (murasugi == FIBERED) != entry.fibered:
                problems.append(f"murasugi {murasugi} disagrees with the table")

    state = seifert_state(diagram)
    result = decide_fiber(diagram, state)
    row["seifert_state"] = str(state)
    row["seifert_verdict"] = result.verdict
    # only a homogeneous Seifert state is known to give a minimal genus surface
    if "homogeneous" in result.state_class:
        if entry.fibered is not None and (result.verdict == FIBERED) != entry.fibered:
            problems.append(f"seifert verdict {result.verdict} disagrees with the table")
        if murasugi is not None and result.verdict != murasugi:
            problems.append(f"seifert verdict {result.verdict} disagrees with murasugi {murasugi}")

    if exhaustive and entry.crossings <= Config.EXHAUSTIVE_BOUND:
        checked = check_all_states(diagram)
        problems.extend(checked.problems)
        row["divergences"] = len(checked.divergences)
        row["divergent_states"] = " ".join(d.state for d in checked.divergences)

    row["problems"] = "; ".join(problems)
    row["ok"] = not problems
    return row


def cmd_corpus_check(args, report):
    """Agreement checks over a corpus; exit 3 when any entry fails."""
    fmt = _format(args, ("text", "json", "csv"))
    entries = CorpusLoader(Config).load(args.corpus)
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        rows = list(pool.map(lambda e: check_entry(e, args.exhaustive), entries))
    table = pd.DataFrame(rows)
    failed = table[~table["ok"]] if len(table) else table
    summary = {"entries": len(table), "agreeing": len(table) - len(failed), "failing": len(failed)}
    if args.exhaustive:
        summary["homogeneity_divergences"] = int(table["divergences"].sum()) if len(table) else 0
    code = Config.EXIT_OK if failed.empty else Config.EXIT_INTERNAL
    if not failed.empty:
        log.error("corpus check failed for %s", ", ".join(failed["name"]))

    if fmt == "csv":
        return table.to_csv(index=False, lineterminator="\n"), code
    if fmt == "json":
        return report.json({"rows": rows, "summary": summary}), code
    columns = ["name", "crossings", "murasugi", "seifert_state", "seifert_verdict", "ok"]
    if args.exhaustive:
        columns.insert(-1, "divergences")
    listing = table[columns].to_string(index=False) + "\n" if len(table) else ""
    problems = "".join(f"  {r['name']}: {r['problems']}\n" for r in rows if r["problems"])
    divergent = "".join(
        f"  {r['name']}: {r['divergent_states']}\n" for r in rows if r["divergent_states"]
    )
    if divergent:
        divergent = "homogeneity divergences (regions vs blocks):\n" + divergent
    return report.text("CORPUS CHECK", summary) + listing + problems + divergent, code


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "decide": cmd_decide,
    "census": cmd_census,
    "matrix": cmd_matrix,
    "alexander": cmd_alexander,
    "corpus-check": cmd_corpus_check,
}


# -- parser ----------------------------------------------------------------

def build_parser():
    """The kstate argument parser."""
    parser = _Parser(
        prog="kstate",
        description="Fiberedness of Kauffman state surfaces of knot and link diagrams.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)

    def diagram_args(p):
        """Diagram input and output options."""
        p.add_argument("--pd", help='PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"')
        p.add_argument("--file", help="file holding a PD code")
        p.add_argument("--allow-split", action="store_true", help="accept split diagrams")
        p.add_argument("--format", choices=FORMATS, help="output format")
        p.add_argument("--save", action="store_true", help="also write the report to reports/")

    def state_args(p):
        """State selection options."""
        p.add_argument("--state", help="state as a string over A and B, one letter per crossing")
        p.add_argument("--seifert", action="store_true", help="Seifert state (default)")
        p.add_argument("--all-a", action="store_true", help="all-A state")
        p.add_argument("--all-b", action="store_true", help="all-B state")

    p_validate = subparsers.add_parser("validate", help="Parse and validate a diagram")
    diagram_args(p_validate)

    p_classify = subparsers.add_parser("classify", help="Alternating / homogeneous class of a state")
    diagram_args(p_classify)
    state_args(p_classify)
    p_classify.add_argument(
        "--strict-consecutive", action="store_true",
        help="only neighbouring attachments on a circle count as consecutive",
    )

    p_classify.add_argument("--reduced", action="store_true",
                            help="with --format dot, draw the reduced graph")

    p_decide = subparsers.add_parser("decide", help="Certified fiberedness verdict for a state")
    diagram_args(p_decide)
    state_args(p_decide)
    p_decide.add_argument("--reduced", action="store_true",
                          help="with --format dot, draw the reduced graph")

    p_census = subparsers.add_parser("census", help="Verdicts for every state of a diagram")
    diagram_args(p_census)
    p_census.add_argument("--bound", type=int, default=Config.CENSUS_BOUND,
                          help=f"maximum crossings (default: {Config.CENSUS_BOUND})")
    p_census.add_argument("--workers", type=int, default=Config.CENSUS_WORKERS,
                          help=f"worker threads (default: {Config.CENSUS_WORKERS})")

    p_matrix = subparsers.add_parser("matrix", help="Homology matrix and determinant checks")
    diagram_args(p_matrix)
    state_args(p_matrix)
    p_matrix.add_argument("--blocks", action="store_true", help="one matrix per Murasugi block")
    p_matrix.add_argument("--sharp", type=int, metavar="N",
                          help="check the determinant-2 family for n = 1..N")
    p_matrix.add_argument("--sweep", action="store_true",
                          help="random sweep of dominant integer matrices")
    p_matrix.add_argument("--samples", type=int, default=Config.SWEEP_SAMPLES,
                          help=f"sweep size (default: {Config.SWEEP_SAMPLES})")
    p_matrix.add_argument("--seed", type=int, default=Config.SWEEP_SEED,
                          help=f"sweep seed (default: {Config.SWEEP_SEED})")

    p_alexander = subparsers.add_parser("alexander", help="Alexander polynomial and monic test")
    diagram_args(p_alexander)
    p_alexander.add_argument("--faces", help="the two adjacent face ids to delete, e.g. 0,1")

    p_corpus = subparsers.add_parser("corpus-check", help="Agreement checks over a corpus CSV")
    p_corpus.add_argument("--corpus", default=str(Config.CORPUS_FILE),
                          help="corpus CSV (default: bundled corpus)")
    p_corpus.add_argument("--workers", type=int, default=Config.CENSUS_WORKERS,
                          help=f"worker threads (default: {Config.CENSUS_WORKERS})")
    p_corpus.add_argument("--exhaustive", action="store_true",
                          help=f"also run every state of diagrams up to {Config.EXHAUSTIVE_BOUND} crossings")
    p_corpus.add_argument("--format", choices=FORMATS, help="output format")
    p_corpus.add_argument("--save", action="store_true", help="also write the report to reports/")

    return parser


def run_cli(argv=None):
    """Run one command; returns the exit code."""
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        if args.command == "matrix" and args.sharp is not None and args.sharp < 1:
            raise UsageError("--sharp needs N >= 1")
        report = ReportGenerator(Config)
        outcome = COMMANDS[args.command](args, report)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"Error: {e}", file=sys.stderr)
        return Config.EXIT_USAGE
    except InvalidInput as e:
        print(f"Error: {e}", file=sys.stderr)
        return Config.EXIT_INVALID
    except InvariantViolation as e:
        print(f"Error: internal check failed: {e}", file=sys.stderr)
        return Config.EXIT_INTERNAL
    except SystemExit as e:
        # --help
        return Config.EXIT_OK if not e.code else Config.EXIT_USAGE
    except Exception as e:
        log.exception("unexpected failure")
        print(f"Error: {e}", file=sys.stderr)
        return Config.EXIT_INTERNAL

    content, code = outcome if isinstance(outcome, tuple) else (outcome, Config.EXIT_OK)
    sys.stdout.write(content)
    if args.save:
        fmt = args.format or ("csv" if args.command == "census" else "text")
        path = report.save(args.command.replace("-", "_"), content, fmt)
        print(f"Report saved to: {path}", file=sys.stderr)
    return code


if __name__ == "__main__":
    try:
        sys.exit(run_cli())
    except Exception as e:
        print(f"\nError: {e}", file=sys.stderr)
        sys.exit(Config.EXIT_INTERNAL)
