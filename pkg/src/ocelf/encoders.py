"""Tabular, sequential and graph encodings of a feature matrix.

File formats:

* tabular: RFC-4180 CSV, UTF-8, LF line endings, header row
  ``event_id,exec_id,<feature columns>``; rows sorted by
  (exec_id, completion time, event id); missing values are empty cells.
* sequential: JSONL, one execution per line:
  ``{"exec_id": ..., "steps": [{"event", "activity", "objects", "features"}]}``
  with steps in completion-time order (ties broken by event id).
* graph: JSONL of node-link objects
  ``{"exec_id": ..., "nodes": [{"id", "activity", "objects", "features"}],
  "edges": [[src, dst], ...]}`` with nodes in completion-time order and
  edges sorted lexicographically. A Graphviz DOT rendering labels each node
  ``activity\\nobjects``.

Missing feature values serialize as empty CSV cells / JSON nulls unless
imputation to zero is explicitly requested. All outputs are byte-stable for
identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import IoError, UnsupportedSpec
from .executions import ExecutionGraph, ProcessExecution
from .features import FeatureMatrix, FeatureSpec, compute_event_local
from .model import EventLog
from .ocel_io import format_timestamp


def _impute(values, impute_zero: bool):
    if not impute_zero:
        return tuple(values)
    return tuple(0.0 if v is None else v for v in values)


@dataclass(frozen=True)
class TabularEncoding:
    header: tuple[str, ...]
    rows: tuple[tuple[object, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow(["" if v is None else v for v in row])
        return buf.getvalue()


def encode_tabular(matrix: FeatureMatrix, impute_zero: bool = False) -> TabularEncoding:
    header = ("event_id", "exec_id") + matrix.columns
    rows = tuple(
        (r.event_id, r.exec_id) + _impute(r.values, impute_zero) for r in matrix.rows
    )
    return TabularEncoding(header=header, rows=rows)


@dataclass(frozen=True)
class SequenceStep:
    event: str
    activity: str
    objects: tuple[str, ...]
    features: dict[str, float | None]


@dataclass(frozen=True)
class ExecutionSequence:
    exec_id: int
    steps: tuple[SequenceStep, ...]


@dataclass(frozen=True)
class SequentialEncoding:
    sequences: tuple[ExecutionSequence, ...]

    def to_jsonl(self) -> str:
        lines = []
        for seq in self.sequences:
            obj = {
                "exec_id": seq.exec_id,
                "steps": [
                    {
                        "event": s.event,
                        "activity": s.activity,
                        "objects": list(s.objects),
                        "features": s.features,
                    }
                    for s in seq.steps
                ],
            }
            lines.append(json.dumps(obj, ensure_ascii=False))
        return "\n".join(lines) + ("\n" if lines else "")


def encode_sequential(
    log: EventLog,
    matrix: FeatureMatrix,
    executions: Sequence[ProcessExecution],
    impute_zero: bool = False,
) -> SequentialEncoding:
    values = matrix.row_map()
    sequences = []
    for p in executions:
        steps = tuple(
            SequenceStep(
                event=e,
                activity=log.activity[e],
                objects=tuple(sorted(log.objects_of(e))),
                features=dict(
                    zip(matrix.columns, _impute(values[(e, p.exec_id)], impute_zero))
                ),
            )
            for e in p.events
        )
        sequences.append(ExecutionSequence(exec_id=p.exec_id, steps=steps))
    return SequentialEncoding(sequences=tuple(sequences))


@dataclass(frozen=True)
class GraphNode:
    id: str
    activity: str
    objects: tuple[str, ...]
    features: dict[str, float | None]


@dataclass(frozen=True)
class EncodedGraph:
    exec_id: int
    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[str, str], ...]

    def to_json_obj(self) -> dict:
        return {
            "exec_id": self.exec_id,
            "nodes": [
                {
                    "id": n.id,
                    "activity": n.activity,
                    "objects": list(n.objects),
                    "features": n.features,
                }
                for n in self.nodes
            ],
            "edges": [list(edge) for edge in self.edges],
        }

    def to_dot(self) -> str:
        lines = [f"digraph exec_{self.exec_id} {{", "  rankdir=LR;"]
        for n in self.nodes:
            label = f"{n.activity}\\n{','.join(n.objects)}"
            lines.append(f'  "{n.id}" [label="{label}"];')
        for src, dst in self.edges:
            lines.append(f'  "{src}" -> "{dst}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphEncoding:
    graphs: tuple[EncodedGraph, ...]

    def to_jsonl(self) -> str:
        lines = [json.dumps(g.to_json_obj(), ensure_ascii=False) for g in self.graphs]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_dot(self) -> str:
        return "".join(g.to_dot() for g in self.graphs)


def encode_graph(
    log: EventLog,
    matrix: FeatureMatrix,
    executions: Sequence[ProcessExecution],
    graphs: Sequence[ExecutionGraph],
    impute_zero: bool = False,
) -> GraphEncoding:
    values = matrix.row_map()
    encoded = []
    for p, g in zip(executions, graphs):
        nodes = tuple(
            GraphNode(
                id=e,
                activity=log.activity[e],
                objects=tuple(sorted(log.objects_of(e))),
                features=dict(
                    zip(matrix.columns, _impute(values[(e, p.exec_id)], impute_zero))
                ),
            )
            for e in p.events
        )
        edges = tuple(sorted(g.edges))
        encoded.append(EncodedGraph(exec_id=p.exec_id, nodes=nodes, edges=edges))
    return GraphEncoding(graphs=tuple(encoded))


# ---------------------------------------------------------------------------
# windowed time series over sublogs


def sublog_timeseries(
    log: EventLog,
    window: float,
    spec: FeatureSpec,
    agg: str = "avg",
) -> list[tuple[float, float | None]]:
    """Aggregate an event-local feature over consecutive time windows.

    Windows are left-closed right-open, aligned to the earliest completion
    time. ``count`` counts events whose value is present and non-zero; empty
    windows yield a missing value.
    """
    if agg not in ("avg", "sum", "count"):
        raise UnsupportedSpec(f"unknown time-series aggregation {agg!r}")
    if not spec.is_event_local or spec.is_family:
        raise UnsupportedSpec(
            f"spec {spec.name()} is not event-local; time series support "
            "C5, D3, O5 and O6 with concrete parameters"
        )
    if window <= 0:
        raise UnsupportedSpec("window must be positive")
    if not log.events:
        return []
    start = min(log.complete_time[e] for e in log.events)
    end = max(log.complete_time[e] for e in log.events)
    cts = [(log.complete_time[e], e) for e in log.events]  # already sorted
    ct_only = [ct for ct, _ in cts]

    series: list[tuple[float, float | None]] = []
    k = 0
    while start + k * window <= end:
        w_start = start + k * window
        k += 1
        lo = bisect_left(ct_only, w_start)
        hi = bisect_left(ct_only, w_start + window)
        values = [compute_event_local(log, e, spec) for _, e in cts[lo:hi]]
        present = [v for v in values if v is not None]
        if hi == lo:
            series.append((w_start, None))
        elif agg == "count":
            series.append((w_start, float(sum(1 for v in present if v != 0))))
        elif not present:
            series.append((w_start, None))
        elif agg == "sum":
            series.append((w_start, sum(present)))
        else:
            series.append((w_start, sum(present) / len(present)))
    return series


def timeseries_to_csv(series: Sequence[tuple[float, float | None]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["window_start", "value"])
    for start, value in series:
        writer.writerow([format_timestamp(start), "" if value is None else value])
    return buf.getvalue()


def write_text(text: str, path: str | Path) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
