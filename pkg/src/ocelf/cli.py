"""Command-line interface.

Exit codes: 0 success, 1 domain error (validation failures, unknown
types/ids, bad feature specs), 2 input error (unreadable or malformed
files). All outputs are deterministic; the worker count never changes the
produced bytes.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import __version__
from .encoders import (
    encode_graph,
    encode_sequential,
    encode_tabular,
    sublog_timeseries,
    timeseries_to_csv,
    write_text,
)
from .errors import DomainError, InputError, OcelfError
from .executions import (
    build_execution_graph,
    extract_components,
    extract_leading_type_report,
)
from .features import compute_matrix, parse_spec
from .model import validate
from .object_graph import build_object_graph, object_graph_dot
from .ocel_io import parse_ocel

SCHEMA_VERSION = "1"


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (DomainError, OcelfError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _default_threads() -> int:
    env = os.environ.get("OCELF_THREADS")
    if env and env.isdigit() and int(env) > 0:
        return int(env)
    return os.cpu_count() or 1


def _extract(log, strategy: str, lead_type: str | None):
    """Returns (executions, dropped) for the chosen strategy."""
    if strategy == "components":
        return extract_components(log), []
    if not lead_type:
        raise DomainError("--lead-type is required with --strategy leading")
    result = extract_leading_type_report(log, lead_type)
    return list(result.executions), list(result.dropped)


_strategy_options = [
    click.option(
        "--strategy",
        type=click.Choice(["components", "leading"]),
        default="components",
        show_default=True,
    ),
    click.option("--lead-type", default=None, help="Leading object type."),
]


def _with_options(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return deco


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Feature extraction and encoding for object-centric event logs."""


@main.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@_handle_errors
def cli_validate(path: str, as_json: bool) -> None:
    """Check a log against the structural invariants."""
    log = parse_ocel(path)
    report = validate(log)
    if as_json:
        click.echo(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "is_clean": report.is_clean,
                    "violations": [
                        {"kind": v.kind, "detail": v.detail} for v in report.violations
                    ],
                },
                sort_keys=True,
            )
        )
    else:
        for v in report.violations:
            click.echo(f"{v.kind}: {v.detail}", err=True)
        click.echo(
            "clean" if report.is_clean else f"{len(report.violations)} violation(s)",
            err=True,
        )
    sys.exit(0 if report.is_clean else 1)


@main.command("extract")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_with_options(_strategy_options)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report to this file.")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report.")
@_handle_errors
def cli_extract(path: str, strategy: str, lead_type: str | None,
                out: str | None, as_json: bool) -> None:
    """Extract process executions and report their composition."""
    log = parse_ocel(path)
    executions, dropped = _extract(log, strategy, lead_type)
    report = {
        "schema_version": SCHEMA_VERSION,
        "strategy": strategy,
        "lead_type": lead_type,
        "executions": [
            {
                "exec_id": p.exec_id,
                "objects": sorted(p.objects),
                "object_count": len(p.objects),
                "events": list(p.events),
                "event_count": len(p.events),
                "leading_object": p.leading_object,
            }
            for p in executions
        ],
        "dropped": [
            {"leading_object": d.leading_object, "contained_in": d.contained_in}
            for d in dropped
        ],
    }
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if out:
        write_text(text, out)
    if as_json or not out:
        click.echo(text, nl=False)
    click.echo(f"{len(executions)} execution(s), {len(dropped)} dropped", err=True)


@main.command("featurize")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_with_options(_strategy_options)
@click.option("--feature", "features", multiple=True, required=True,
              help="Feature spec, e.g. 'O5', 'C3[place order]', 'D1[amount,avg]'.")
@click.option("--encoding", type=click.Choice(["tabular", "sequential", "graph"]),
              default="tabular", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--impute-zero", is_flag=True,
              help="Replace missing values by 0 instead of leaving them empty.")
@click.option("--threads", type=int, default=None,
              help="Worker count (default: OCELF_THREADS or machine cores).")
@click.option("--resource-attribute", default="resource", show_default=True)
@_handle_errors
def cli_featurize(path: str, strategy: str, lead_type: str | None,
                  features: tuple[str, ...], encoding: str, out: str,
                  impute_zero: bool, threads: int | None,
                  resource_attribute: str) -> None:
    """Compute features and write one encoding to a file."""
    log = parse_ocel(path)
    specs = [parse_spec(f, resource_attribute=resource_attribute) for f in features]
    executions, _ = _extract(log, strategy, lead_type)
    graphs = [build_execution_graph(log, p) for p in executions]
    matrix = compute_matrix(log, executions, specs,
                            threads=threads or _default_threads(), graphs=graphs)
    if encoding == "tabular":
        enc = encode_tabular(matrix, impute_zero=impute_zero)
        write_text(enc.to_csv(), out)
        click.echo(f"{len(enc.rows)} row(s), {len(enc.header)} column(s)", err=True)
    elif encoding == "sequential":
        enc = encode_sequential(log, matrix, executions, impute_zero=impute_zero)
        write_text(enc.to_jsonl(), out)
        click.echo(f"{len(enc.sequences)} sequence(s)", err=True)
    else:
        enc = encode_graph(log, matrix, executions, graphs, impute_zero=impute_zero)
        write_text(enc.to_jsonl(), out)
        click.echo(f"{len(enc.graphs)} graph(s)", err=True)


@main.command("timeseries")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--window", type=float, required=True, help="Window length in seconds.")
@click.option("--feature", required=True,
              help="Event-local feature spec (C5, D3, O5, O6 families).")
@click.option("--agg", type=click.Choice(["avg", "sum", "count"]),
              default="avg", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
              help="Additionally render the series as a figure (png/svg/pdf).")
@click.option("--resource-attribute", default="resource", show_default=True)
@_handle_errors
def cli_timeseries(path: str, window: float, feature: str, agg: str,
                   out: str, plot_path: str | None, resource_attribute: str) -> None:
    """Aggregate an event-local feature over consecutive time windows."""
    log = parse_ocel(path)
    spec = parse_spec(feature, resource_attribute=resource_attribute)
    series = sublog_timeseries(log, window, spec, agg)
    write_text(timeseries_to_csv(series), out)
    if plot_path:
        from .plotting import plot_timeseries

        plot_timeseries(series, plot_path,
                        title=f"{agg} of {spec.name()} per {window:g}s window",
                        ylabel=f"{agg}({spec.name()})")
    click.echo(f"{len(series)} window(s)", err=True)


@main.command("variant")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--exec-id", type=int, required=True)
@_with_options(_strategy_options)
@click.option("--format", "fmt", type=click.Choice(["dot", "json", "seq"]),
              default="dot", show_default=True)
@click.option("--feature", "features", multiple=True,
              help="Optional feature specs to label nodes/steps with.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--resource-attribute", default="resource", show_default=True)
@_handle_errors
def cli_variant(path: str, exec_id: int, strategy: str, lead_type: str | None,
                fmt: str, features: tuple[str, ...], out: str | None,
                resource_attribute: str) -> None:
    """Export one execution's variant as a labeled graph or step list."""
    log = parse_ocel(path)
    executions, _ = _extract(log, strategy, lead_type)
    matching = [p for p in executions if p.exec_id == exec_id]
    if not matching:
        raise DomainError(f"unknown exec id: {exec_id}")
    p = matching[0]
    g = build_execution_graph(log, p)
    specs = [parse_spec(f, resource_attribute=resource_attribute) for f in features]
    matrix = compute_matrix(log, [p], specs, graphs=[g])
    if fmt == "seq":
        enc = encode_sequential(log, matrix, [p])
        text = enc.to_jsonl()
    else:
        enc = encode_graph(log, matrix, [p], [g])
        text = enc.graphs[0].to_dot() if fmt == "dot" else (
            json.dumps(enc.graphs[0].to_json_obj(), ensure_ascii=False) + "\n"
        )
    if out:
        write_text(text, out)
    else:
        click.echo(text, nl=False)


@main.command("stats")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--object-graph-dot", "dot_path", type=click.Path(dir_okay=False),
              default=None, help="Write the object graph as Graphviz DOT.")
@click.option("--json", "as_json", is_flag=True)
@_handle_errors
def cli_stats(path: str, dot_path: str | None, as_json: bool) -> None:
    """Summarize a log: sizes, types, activities, object-graph shape."""
    log = parse_ocel(path)
    graph = build_object_graph(log)
    from .object_graph import connected_components

    stats = {
        "schema_version": SCHEMA_VERSION,
        "events": len(log.events),
        "objects": len(log.objects),
        "object_types": sorted(log.object_types),
        "activities": sorted(set(log.activity.values())),
        "object_graph_edges": len(graph.edges),
        "connected_components": len(connected_components(graph)),
    }
    if dot_path:
        write_text(object_graph_dot(graph, dict(log.type_of)), dot_path)
    if as_json:
        click.echo(json.dumps(stats, sort_keys=True))
    else:
        for key, value in stats.items():
            if key == "schema_version":
                continue
            click.echo(f"{key}: {value}")


if __name__ == "__main__":
    main()
