"""Command-line front end.

Example usage:
toric-invariants info torus9
toric-invariants betti pentagon --method both
toric-invariants genus cp2-alt --nu 1,2 --json
toric-invariants arrangement three-points --kind coord
toric-invariants reproduce --filter genus --filter torus
"""

import argparse
import logging
import sys
from typing import Any, Optional, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from toric_invariants import __version__
from toric_invariants.arrangements import (
    CoordinateArrangement,
    complex_from_arrangement,
    coord_complement_betti,
    diagonal_complement_betti,
    real_coord_complement_betti,
)
from toric_invariants.configuration import ArrangementKind, Configuration, OutputFormat
from toric_invariants.corpus import corpus_names, load_corpus, resolve_document_path
from toric_invariants.documents import (
    ArrangementDocument,
    BigradedBettiTable,
    ComplexDocument,
    Document,
    GenusReport,
    PairDocument,
    ReproduceReport,
    load_document,
)
from toric_invariants.exceptions import DocumentError, InputError, ToricInvariantsError
from toric_invariants.face_enumeration import (
    dehn_sommerville_defect,
    g_theorem_verdict,
    g_vector,
    h_vector,
    neighbourliness,
)
from toric_invariants.quasitoric import genus_report, pair_from_document
from toric_invariants.reproduce import CHECK_GROUPS, run_reproduction
from toric_invariants.simplicial import SimplicialComplex
from toric_invariants.tor_algebra import betti_table, cm_gorenstein_classify
from toric_invariants.utils import canonical_json, configure_logging

console = Console()
error_console = Console(stderr=True)


##########################
# Document helpers
##########################
def _load(reference: str) -> Document:
    return load_document(resolve_document_path(reference))


def _complex_of(document: Document) -> SimplicialComplex:
    if isinstance(document, PairDocument):
        return document.complex.to_complex()
    if isinstance(document, ArrangementDocument):
        return complex_from_arrangement(CoordinateArrangement.from_document(document))
    return document.to_complex()


def _parse_nu(text: Optional[str]) -> Optional[tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise InputError(f"--nu expects comma-separated integers such as 1,2; got '{text}'") from e


def _emit_json(payload: Any) -> None:
    sys.stdout.write(canonical_json(payload) + "\n")


##########################
# Commands
##########################
def cmd_complex_info(args: argparse.Namespace, config: Configuration) -> int:
    document = _load(args.path)
    K = _complex_of(document)
    h = h_vector(K)
    verdict = cm_gorenstein_classify(K)
    report = {
        "name": K.name or args.path,
        "m": K.m,
        "n": K.n,
        "f_vector": K.f_vector,
        "h_vector": h,
        "g_vector": g_vector(h),
        "euler_characteristic": K.euler_characteristic(),
        "neighbourliness": neighbourliness(K),
        "missing_faces": K.missing_faces(),
        "cohen_macaulay": verdict,
        "dehn_sommerville": dehn_sommerville_defect(K),
        "g_theorem": g_theorem_verdict(h),
    }
    if config.output_format == OutputFormat.JSON:
        _emit_json(report)
        return 0
    table = Table(title=f"Complex {escape(str(report['name']))}", show_header=True)
    table.add_column("Invariant", style="cyan")
    table.add_column("Value")
    for key in ("m", "n", "f_vector", "h_vector", "g_vector", "euler_characteristic", "neighbourliness"):
        table.add_row(key, str(report[key]))
    table.add_row("missing faces", str(len(K.missing_faces())))
    table.add_row("Cohen-Macaulay", _yes_no(verdict.cohen_macaulay, verdict.cm_failure))
    table.add_row("Gorenstein*", _yes_no(verdict.gorenstein_star, verdict.gorenstein_failure))
    defect = dehn_sommerville_defect(K)
    table.add_row("Dehn-Sommerville defect", f"{defect.defect} (predicted {defect.predicted})")
    g_theorem = g_theorem_verdict(h)
    table.add_row("g-theorem", "passes" if g_theorem.passes else "fails")
    console.print(table)
    return 0


def _yes_no(flag: bool, failure: Optional[list[int]]) -> str:
    if flag:
        return "[green]yes[/green]"
    return f"[red]no[/red] (link of {failure})"


def render_betti_grid(table: BigradedBettiTable, title: str) -> Table:
    """Second-quadrant layout: columns -i, rows 2j from the top down, zeros blank."""
    columns, rows, cells = table.grid()
    grid = Table(title=title, show_header=True, min_width=len(title) + 4)
    grid.add_column("2j \\ -i", style="cyan", justify="right")
    for column in columns:
        grid.add_column(str(column), justify="right")
    for row, values in zip(rows, cells):
        grid.add_row(str(row), *[str(v) if v else "" for v in values])
    return grid


def cmd_betti(args: argparse.Namespace, config: Configuration) -> int:
    K = _complex_of(_load(args.path))
    table = betti_table(K, config.betti_method, jobs=config.max_concurrent_strands)
    payload = {
        "name": K.name or args.path,
        "method": config.betti_method.value,
        "table": table,
        "total_degrees": table.total_degrees(),
    }
    if config.output_format == OutputFormat.JSON:
        _emit_json(payload)
        return 0
    console.print(render_betti_grid(table, f"Bigraded Betti numbers of {escape(str(payload['name']))}"))
    console.print(f"dim H^k(Z_K), k = 0..: {table.total_degrees()}")
    return 0


def cmd_genus(args: argparse.Namespace, config: Configuration) -> int:
    document = _load(args.path)
    if not isinstance(document, PairDocument):
        raise DocumentError("genus needs a characteristic pair document (with a 'lambda' key)", path=args.path)
    pair = pair_from_document(document)
    report = genus_report(
        pair, _parse_nu(args.nu), radius=config.generic_search_radius, jobs=config.max_concurrent_strands
    )
    if config.output_format == OutputFormat.JSON:
        _emit_json(report)
        return 0
    _render_genus(report, pair.name or args.path)
    return 0


def _render_genus(report: GenusReport, name: str) -> None:
    summary = (
        f"chi_y = {report.chi_y}\n"
        f"signature = {report.signature}\n"
        f"todd = {report.todd}\n"
        f"c_n = {report.top_chern}\n"
        f"nu = {report.nu}"
    )
    console.print(Panel(summary, title=f"Genus of {escape(name)}", expand=False))
    vertices = Table(show_header=True)
    vertices.add_column("vertex")
    vertices.add_column("sigma", justify="right")
    vertices.add_column("ind", justify="right")
    vertices.add_column("edge vectors")
    for data in report.vertices:
        edges = [tuple(row[k] for row in data.edge_matrix) for k in range(len(data.facet))]
        vertices.add_row(str(data.facet), str(data.sigma), str(data.index), str(edges))
    console.print(vertices)


def cmd_arrangement(args: argparse.Namespace, config: Configuration) -> int:
    document = _load(args.path)
    kind = config.arrangement_kind
    source: Any
    if isinstance(document, ArrangementDocument):
        source = CoordinateArrangement.from_document(document)
    else:
        source = _complex_of(document)
    jobs = config.max_concurrent_strands
    if kind == ArrangementKind.COORD:
        betti = coord_complement_betti(source, jobs=jobs)
    elif kind == ArrangementKind.REAL:
        betti = real_coord_complement_betti(source, jobs=jobs)
    else:
        if isinstance(source, CoordinateArrangement):
            source = complex_from_arrangement(source)
        betti = diagonal_complement_betti(source, jobs=jobs)
    payload = {"name": getattr(document, "name", None) or args.path, "kind": kind.value, "betti": betti}
    if config.output_format == OutputFormat.JSON:
        _emit_json(payload)
        return 0
    console.print(f"[bold]{escape(str(payload['name']))}[/bold] ({kind.value} complement)")
    console.print(f"dim H^i, i = 0..{len(betti) - 1}: {betti}")
    return 0


def cmd_reproduce(args: argparse.Namespace, config: Configuration) -> int:
    groups = [g for entry in args.filter or [] for g in entry.split(",") if g]
    unknown = [g for g in groups if g not in CHECK_GROUPS]
    if unknown:
        raise InputError(f"Unknown check groups {unknown}.\nAvailable groups: {', '.join(CHECK_GROUPS)}")
    report = run_reproduction(config, groups or None)
    if config.output_format == OutputFormat.JSON:
        _emit_json(report)
    else:
        _render_reproduce(report)
    return 0 if report.passed else 1


def _render_reproduce(report: ReproduceReport) -> None:
    table = Table(title="Reproduction suite", show_header=True)
    table.add_column("group", style="cyan")
    table.add_column("check")
    table.add_column("result")
    table.add_column("seconds", justify="right")
    for check in report.checks:
        status = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(check.group, escape(check.key), status, f"{check.seconds:.3f}")
    console.print(table)
    for check in report.failures:
        console.print(
            f"[red]{escape(check.group)}/{escape(check.key)}[/red]: "
            f"expected {escape(str(check.expected))}, got {escape(str(check.actual))}"
        )
    passed = len(report.checks) - len(report.failures)
    colour = "green" if report.passed else "red"
    console.print(f"[{colour}]{passed}/{len(report.checks)} checks passed[/{colour}]")


def cmd_corpus(args: argparse.Namespace, config: Configuration) -> int:
    entries = []
    for name in corpus_names():
        document = load_corpus(name)
        kind = {ComplexDocument: "complex", PairDocument: "pair", ArrangementDocument: "arrangement"}[type(document)]
        m = document.complex.m if isinstance(document, PairDocument) else document.m
        entries.append({"name": name, "kind": kind, "m": m, "note": document.note or ""})
    if config.output_format == OutputFormat.JSON:
        _emit_json(entries)
        return 0
    table = Table(title="Bundled corpus", show_header=True)
    for column in ("name", "kind", "m", "note"):
        table.add_column(column)
    for entry in entries:
        table.add_row(entry["name"], entry["kind"], str(entry["m"]), escape(entry["note"]))
    console.print(table)
    return 0


##########################
# Entry point
##########################
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output_format", action="store_const", const=OutputFormat.JSON.value, help="Canonical JSON output")
    output.add_argument("--text", dest="output_format", action="store_const", const=OutputFormat.TEXT.value, help="Rich text output (default)")
    common.add_argument("--jobs", type=int, help="Strands or subsets processed concurrently")
    common.add_argument("--log-level", help="Logging level, e.g. DEBUG or INFO")

    parser = argparse.ArgumentParser(prog="toric-invariants", description="Exact invariants of simplicial complexes and toric spaces")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", parents=[common], help="f/h/g-vectors, Euler characteristic and classifier verdicts")
    info.add_argument("path", help="Document path or bundled corpus name")
    info.set_defaults(handler=cmd_complex_info)

    betti = commands.add_parser("betti", parents=[common], help="Bigraded Betti numbers of the face ring")
    betti.add_argument("path", help="Document path or bundled corpus name")
    betti.add_argument("--method", choices=["koszul", "hochster", "both"], help="Computation path")
    betti.set_defaults(handler=cmd_betti)

    genus = commands.add_parser("genus", parents=[common], help="chi_y genus of a characteristic pair")
    genus.add_argument("path", help="Pair document path or bundled corpus name")
    genus.add_argument("--nu", help="Generic vector as comma-separated integers, e.g. 1,2")
    genus.set_defaults(handler=cmd_genus)

    arrangement = commands.add_parser("arrangement", parents=[common], help="Cohomology of an arrangement complement")
    arrangement.add_argument("path", help="Arrangement or complex document path or bundled corpus name")
    arrangement.add_argument("--kind", choices=["coord", "real", "diag"], help="Which complement")
    arrangement.set_defaults(handler=cmd_arrangement)

    reproduce = commands.add_parser("reproduce", parents=[common], help="Run the reproduction suite")
    reproduce.add_argument("--filter", action="append", help=f"Check groups to run: {', '.join(CHECK_GROUPS)}")
    reproduce.set_defaults(handler=cmd_reproduce)

    corpus = commands.add_parser("corpus", parents=[common], help="List bundled documents")
    corpus.set_defaults(handler=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {
        "betti_method": getattr(args, "method", None),
        "arrangement_kind": getattr(args, "kind", None),
        "output_format": args.output_format,
        "max_concurrent_strands": args.jobs,
        "log_level": args.log_level,
    }
    try:
        config = Configuration.from_overrides(overrides)
    except ValidationError as e:
        error_console.print(f"[red]Invalid configuration:[/red] {escape(str(e))}")
        return InputError.exit_code
    configure_logging(config.log_level)
    try:
        logging.debug(f"running {args.command} with {config.model_dump(mode='json')}")
        return args.handler(args, config)
    except ToricInvariantsError as e:
        error_console.print(f"[red]Error:[/red] {escape(str(e))}")
        return getattr(e, "exit_code", 1)


if __name__ == "__main__":
    sys.exit(main())
