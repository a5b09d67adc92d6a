"""Process-execution extraction and per-execution event graphs.

Two extraction strategies are provided. Component extraction turns each
connected component of the object graph into one execution. Leading-type
extraction builds one execution per object of a chosen type: every other
object in that object's component joins unless an object of its own type is
strictly closer to the leading object (distances measured in the full
component). Executions fully contained in another retained execution are
dropped; the drops are reported.

An execution's events are all events touching at least one member object
(intersection semantics), sorted by the stable (complete_time, id) order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import UnknownEvent, UnknownType
from .model import EventLog, order_key
from .object_graph import ObjectGraph, build_object_graph, connected_components


@dataclass(frozen=True)
class ProcessExecution:
    exec_id: int
    objects: frozenset[str]
    events: tuple[str, ...]
    leading_object: str | None = None


@dataclass(frozen=True)
class ExecutionGraph:
    """Directed event graph: edges between consecutive events of each
    member object's trace, deduplicated across objects."""

    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]
    order: Mapping[str, int]
    #: event -> {(object, preceding event in that object's trace)}
    preds: Mapping[str, frozenset[tuple[str, str]]]


@dataclass(frozen=True)
class DroppedExecution:
    """A leading-type execution removed by the maximality filter."""

    leading_object: str
    contained_in: str  # leading object (or smallest member) of the container


@dataclass(frozen=True)
class LeadExtraction:
    executions: tuple[ProcessExecution, ...]
    dropped: tuple[DroppedExecution, ...]


def _events_touching(log: EventLog, objs: frozenset[str]) -> tuple[str, ...]:
    seen: set[str] = set()
    for o in objs:
        seen.update(log.trace.get(o, ()))
    return tuple(sorted(seen, key=lambda e: order_key(log, e)))


def extract_components(log: EventLog) -> list[ProcessExecution]:
    """One execution per connected component of the object graph."""
    graph = build_object_graph(log)
    out = []
    for i, comp in enumerate(connected_components(graph)):
        out.append(
            ProcessExecution(exec_id=i, objects=comp, events=_events_touching(log, comp))
        )
    return out


def _leading_member_set(graph: ObjectGraph, log: EventLog, lead_obj: str) -> frozenset[str]:
    dist = graph.distances_from(lead_obj)  # finite exactly on the component
    best: dict[str, int] = {}
    for o, d in dist.items():
        t = log.type_of[o]
        if t not in best or d < best[t]:
            best[t] = d
    chosen = {o for o, d in dist.items() if d == best[log.type_of[o]]}
    # keep only the part still connected to the leading object
    kept = {lead_obj}
    queue = deque([lead_obj])
    while queue:
        cur = queue.popleft()
        for nbr in graph.adjacency[cur]:
            if nbr in chosen and nbr not in kept:
                kept.add(nbr)
                queue.append(nbr)
    return frozenset(kept)


def extract_leading_type_report(log: EventLog, lead: str) -> LeadExtraction:
    """Leading-type extraction with the maximality-filter drop log."""
    if lead not in log.object_types:
        raise UnknownType(f"unknown object type: {lead}")
    graph = build_object_graph(log)
    leads = sorted(o for o in log.objects if log.type_of[o] == lead)

    candidates: list[tuple[str, frozenset[str], tuple[str, ...]]] = []
    for lead_obj in leads:
        members = _leading_member_set(graph, log, lead_obj)
        candidates.append((lead_obj, members, _events_touching(log, members)))

    dropped: list[DroppedExecution] = []
    retained: list[tuple[str, frozenset[str], tuple[str, ...]]] = []
    for lead_obj, objs, events in candidates:
        evset = set(events)
        container = None
        for other_lead, other_objs, other_events in candidates:
            if other_lead == lead_obj:
                continue
            if objs <= other_objs and evset <= set(other_events):
                same = objs == other_objs and evset == set(other_events)
                if not same or other_lead < lead_obj:
                    container = other_lead
                    break
        if container is None:
            retained.append((lead_obj, objs, events))
        else:
            dropped.append(DroppedExecution(leading_object=lead_obj, contained_in=container))

    executions = tuple(
        ProcessExecution(exec_id=i, objects=objs, events=events, leading_object=lead_obj)
        for i, (lead_obj, objs, events) in enumerate(retained)
    )
    return LeadExtraction(executions=executions, dropped=tuple(dropped))


def extract_leading_type(log: EventLog, lead: str) -> list[ProcessExecution]:
    return list(extract_leading_type_report(log, lead).executions)


def build_execution_graph(log: EventLog, p: ProcessExecution) -> ExecutionGraph:
    """Event graph of one execution (consecutive-trace edges, deduplicated)."""
    nodes = frozenset(p.events)
    edges: set[tuple[str, str]] = set()
    preds: dict[str, set[tuple[str, str]]] = {e: set() for e in p.events}
    for o in sorted(p.objects):
        seq = log.trace.get(o, ())
        for prev, nxt in zip(seq, seq[1:]):
            if prev != nxt:
                edges.add((prev, nxt))
                preds[nxt].add((o, prev))
    order = {e: i for i, e in enumerate(p.events)}
    return ExecutionGraph(
        nodes=nodes,
        edges=frozenset(edges),
        order=order,
        preds={e: frozenset(s) for e, s in preds.items()},
    )


def predecessors(g: ExecutionGraph, e: str) -> frozenset[tuple[str, str]]:
    """Per-object predecessor events of e: {(object, previous event)}."""
    try:
        return g.preds[e]
    except KeyError:
        raise UnknownEvent(f"event not in execution graph: {e}") from None
