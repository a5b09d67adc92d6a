"""Object-centric feature catalog.

Every feature maps an (event, execution) pair to a real number, or to
"missing" when the defining quantity does not exist. The catalog covers five
perspectives:

* control-flow: C1 current_activities, C2 preceding_activity,
  C3 previous_activity_count, C4 following_activity_count, C5 current_activity
* data-flow: D1 previous_value, D2 preceding_value, D3 value
* resource: R1 resource_workload, R2 system_workload, R3 resource_is
* performance: P2 elapsed_time, P3 remaining_time, P5 synchronization_time,
  P7 pooling_time, P8 lagging_time, plus service_time, waiting_time,
  sojourn_time, flow_time and execution_duration
* objects: O1 system_object_count, O2 previous_object_count,
  O3 previous_type_count, O5 object_count, O6 type_count (O4, the raw object
  set, is label-only and lives in the sequential/graph encoders)

"Previous"/"following" always means strictly earlier/later completion time
within the execution; "preceding" means a per-object predecessor in the
execution graph. Spec strings use a small grammar: KEY, optionally followed
by bracketed comma-separated parameters, e.g. ``C3[place order]``,
``D1[amount,avg]``, ``P7[item]``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import (
    DomainError,
    NotInExecution,
    SpecGrammarError,
    TypeMismatch,
    UnsupportedSpec,
)
from .model import EventLog
from .executions import ExecutionGraph, ProcessExecution, build_execution_graph

DEFAULT_WINDOW = 86400.0
DEFAULT_RESOURCE_ATTRIBUTE = "resource"
AGGREGATIONS = ("avg", "sum", "min", "max", "last")

#: key -> kind of parameter the key takes
_ACTIVITY_KEYS = {"C1", "C2", "C3", "C4", "C5"}
_TYPE_KEYS = {"P7", "P8", "O3", "O6"}
_ATTRIBUTE_KEYS = {"D1", "D2", "D3"}
_WINDOW_KEYS = {"R1", "R2"}
_PLAIN_KEYS = {
    "P2", "P3", "P5",
    "service_time", "waiting_time", "sojourn_time", "flow_time",
    "execution_duration",
    "O1", "O2", "O5",
}
_LABEL_KEYS = {"O4"}
ALL_KEYS = _ACTIVITY_KEYS | _TYPE_KEYS | _ATTRIBUTE_KEYS | _WINDOW_KEYS | _PLAIN_KEYS | {"R3"} | _LABEL_KEYS

#: keys computable from the event alone (usable for sublog time series)
EVENT_LOCAL_KEYS = {"C5", "D3", "O5", "O6"}


@dataclass(frozen=True)
class FeatureSpec:
    key: str
    activity: str | None = None
    type_name: str | None = None
    attribute: str | None = None
    aggregation: str = "avg"
    window: float = DEFAULT_WINDOW
    resource: str | None = None
    resource_attribute: str = DEFAULT_RESOURCE_ATTRIBUTE

    @property
    def is_family(self) -> bool:
        """True when the spec still needs expansion over observed values."""
        if self.key in _ACTIVITY_KEYS:
            return self.activity is None
        if self.key in _TYPE_KEYS:
            return self.type_name is None
        if self.key == "R3":
            return self.resource is None
        return False

    @property
    def is_event_local(self) -> bool:
        return self.key in EVENT_LOCAL_KEYS

    def name(self) -> str:
        params: list[str] = []
        if self.key in _ACTIVITY_KEYS and self.activity is not None:
            params = [self.activity]
        elif self.key in _TYPE_KEYS and self.type_name is not None:
            params = [self.type_name]
        elif self.key in _ATTRIBUTE_KEYS:
            params = [self.attribute or ""]
            if self.key in ("D1", "D2"):
                params.append(self.aggregation)
        elif self.key in _WINDOW_KEYS and self.window != DEFAULT_WINDOW:
            w = self.window
            params = [str(int(w)) if w == int(w) else str(w)]
        elif self.key == "R3" and self.resource is not None:
            params = [self.resource]
        return self.key if not params else f"{self.key}[{','.join(params)}]"


def parse_spec(text: str, resource_attribute: str = DEFAULT_RESOURCE_ATTRIBUTE) -> FeatureSpec:
    """Parse one feature spec string; raises SpecGrammarError."""
    text = text.strip()
    if text.endswith("]") and "[" in text:
        key, _, rest = text.partition("[")
        params = [p.strip() for p in rest[:-1].split(",")]
    elif "[" in text or "]" in text:
        raise SpecGrammarError(f"unbalanced brackets in spec {text!r}")
    else:
        key, params = text, []
    key = key.strip()
    if key not in ALL_KEYS:
        raise SpecGrammarError(f"unknown feature key {key!r} in spec {text!r}")

    def _need(n_min: int, n_max: int) -> None:
        if not (n_min <= len(params) <= n_max):
            raise SpecGrammarError(f"wrong parameter count for {key} in spec {text!r}")

    spec = FeatureSpec(key=key, resource_attribute=resource_attribute)
    if key in _ACTIVITY_KEYS:
        _need(0, 1)
        return replace(spec, activity=params[0]) if params else spec
    if key in _TYPE_KEYS:
        _need(0, 1)
        return replace(spec, type_name=params[0]) if params else spec
    if key in _ATTRIBUTE_KEYS:
        if key == "D3":
            _need(1, 1)
            return replace(spec, attribute=params[0])
        _need(1, 2)
        agg = params[1] if len(params) == 2 else "avg"
        if agg not in AGGREGATIONS:
            raise SpecGrammarError(f"unknown aggregation {agg!r} in spec {text!r}")
        return replace(spec, attribute=params[0], aggregation=agg)
    if key in _WINDOW_KEYS:
        _need(0, 1)
        if params:
            try:
                return replace(spec, window=float(params[0]))
            except ValueError:
                raise SpecGrammarError(f"bad window in spec {text!r}") from None
        return spec
    if key == "R3":
        _need(0, 1)
        return replace(spec, resource=params[0]) if params else spec
    _need(0, 0)
    return spec


def expand_specs(log: EventLog, specs: Sequence[FeatureSpec]) -> list[FeatureSpec]:
    """Replace family specs by one concrete spec per observed value, sorted."""
    activities = sorted(set(log.activity.values()))
    types = sorted(log.object_types)
    out: list[FeatureSpec] = []
    for spec in specs:
        if not spec.is_family:
            out.append(spec)
        elif spec.key in _ACTIVITY_KEYS:
            out.extend(replace(spec, activity=a) for a in activities)
        elif spec.key in _TYPE_KEYS:
            out.extend(replace(spec, type_name=t) for t in types)
        else:  # R3
            values = sorted(
                {
                    str(v)
                    for e in log.events
                    if (v := log.attribute(e, spec.resource_attribute)) is not None
                }
            )
            out.extend(replace(spec, resource=v) for v in values)
    return out


# ---------------------------------------------------------------------------
# computation contexts


class _LogContext:
    """Log-wide indexes shared by all executions."""

    def __init__(self, log: EventLog):
        self.log = log
        self.all_cts = sorted(log.complete_time[e] for e in log.events)
        self.first_cts = sorted(
            log.complete_time[seq[0]] for seq in log.trace.values() if seq
        )
        self._resource_cts: dict[tuple[str, object], list[float]] = {}

    def resource_cts(self, attr: str, value: object) -> list[float]:
        key = (attr, value)
        if key not in self._resource_cts:
            by_value: dict[object, list[float]] = {}
            for e in self.log.events:
                v = self.log.attribute(e, attr)
                if v is not None:
                    by_value.setdefault(v, []).append(self.log.complete_time[e])
            for cts in by_value.values():
                cts.sort()
            for v, cts in by_value.items():
                self._resource_cts[(attr, v)] = cts
            self._resource_cts.setdefault(key, [])
        return self._resource_cts[key]


class _ExecutionContext:
    """Per-execution indexes; built once, then O(log n) per feature query."""

    def __init__(self, log: EventLog, p: ProcessExecution, g: ExecutionGraph):
        self.log = log
        self.p = p
        self.g = g
        self.events = p.events
        self.pos = {e: i for i, e in enumerate(p.events)}
        self.cts = [log.complete_time[e] for e in p.events]
        self.min_ct = min(self.cts) if self.cts else 0.0
        self.max_ct = max(self.cts) if self.cts else 0.0
        # first index of each run of equal completion times
        self.group_start: list[int] = []
        for i, ct in enumerate(self.cts):
            if i > 0 and ct == self.cts[i - 1]:
                self.group_start.append(self.group_start[i - 1])
            else:
                self.group_start.append(i)
        self._act_cts: dict[str, list[float]] = {}
        self._attr_index: dict[str, tuple[list[int], list[float]]] = {}
        self._cum_objects: list[int] | None = None
        self._cum_typed: dict[str, list[int]] = {}
        self._sink_intervals: dict[str, tuple[list[float], list[float]]] | None = None

    def act_cts(self, activity: str) -> list[float]:
        if not self._act_cts:
            for e, ct in zip(self.events, self.cts):
                self._act_cts.setdefault(self.log.activity[e], []).append(ct)
        return self._act_cts.get(activity, [])

    def attr_index(self, attr: str) -> tuple[list[int], list[float]]:
        """Positions and numeric values of execution events carrying attr."""
        if attr not in self._attr_index:
            positions: list[int] = []
            values: list[float] = []
            for i, e in enumerate(self.events):
                v = self.log.attribute(e, attr)
                if v is None:
                    continue
                if isinstance(v, str):
                    raise TypeMismatch(
                        f"attribute {attr!r} of event {e} is a string, not a number"
                    )
                positions.append(i)
                values.append(v)
            self._attr_index[attr] = (positions, values)
        return self._attr_index[attr]

    def cum_objects(self, type_name: str | None = None) -> list[int]:
        """cum[i] = distinct objects (optionally of one type) among events
        strictly before event i's completion-time group."""
        cache = self._cum_objects if type_name is None else self._cum_typed.get(type_name)
        if cache is not None:
            return cache
        cum = [0] * len(self.events)
        seen: set[str] = set()
        i = 0
        while i < len(self.events):
            j = i
            count_before = len(seen)
            while j < len(self.events) and self.group_start[j] == i:
                cum[j] = count_before
                j += 1
            for k in range(i, j):
                for o in self.log.objects_of(self.events[k]):
                    if type_name is None or self.log.type_of[o] == type_name:
                        seen.add(o)
            i = j
        if type_name is None:
            self._cum_objects = cum
        else:
            self._cum_typed[type_name] = cum
        return cum

    def sink_intervals(self) -> dict[str, tuple[list[float], list[float]]]:
        """Per activity: interval lists [ct(u), min successor ct) during which
        node u is a sink of the time-prefix execution graph."""
        if self._sink_intervals is None:
            min_succ: dict[str, float] = {}
            for src, dst in self.g.edges:
                ct = self.log.complete_time[dst]
                if src not in min_succ or ct < min_succ[src]:
                    min_succ[src] = ct
            per_act: dict[str, tuple[list[float], list[float]]] = {}
            for e, ct in zip(self.events, self.cts):
                starts, ends = per_act.setdefault(self.log.activity[e], ([], []))
                starts.append(ct)
                ends.append(min_succ.get(e, float("inf")))
            self._sink_intervals = {
                a: (sorted(starts), sorted(ends)) for a, (starts, ends) in per_act.items()
            }
        return self._sink_intervals

    def pred_cts(self, e: str, type_name: str | None = None) -> list[float]:
        return [
            self.log.complete_time[prev]
            for (o, prev) in self.g.preds.get(e, ())
            if type_name is None or self.log.type_of[o] == type_name
        ]


def _aggregate(values: list[float], positions: list[int], agg: str) -> float | None:
    if not values:
        return None
    if agg == "avg":
        return sum(values) / len(values)
    if agg == "sum":
        return sum(values)
    if agg == "min":
        return min(values)
    if agg == "max":
        return max(values)
    if agg == "last":
        last = max(range(len(values)), key=lambda i: positions[i])
        return values[last]
    raise SpecGrammarError(f"unknown aggregation {agg!r}")


def _compute(ctx: _ExecutionContext, lctx: _LogContext, e: str, spec: FeatureSpec) -> float | None:
    log = ctx.log
    key = spec.key
    ct = log.complete_time[e]
    i = ctx.pos[e]

    if key in _ACTIVITY_KEYS or key in _TYPE_KEYS or key == "R3":
        if spec.is_family:
            raise SpecGrammarError(f"spec {key} needs a parameter for compute()")

    if key == "C1":
        starts, ends = ctx.sink_intervals().get(spec.activity, ([], []))
        covering = bisect_right(starts, ct) - bisect_right(ends, ct)
        return 1.0 if covering > 0 else 0.0
    if key == "C2":
        acts = {log.activity[prev] for (_, prev) in ctx.g.preds.get(e, ())}
        return 1.0 if spec.activity in acts else 0.0
    if key == "C3":
        return float(bisect_left(ctx.act_cts(spec.activity), ct))
    if key == "C4":
        cts = ctx.act_cts(spec.activity)
        return float(len(cts) - bisect_right(cts, ct))
    if key == "C5":
        return 1.0 if log.activity[e] == spec.activity else 0.0

    if key in ("D1", "D2"):
        positions, values = ctx.attr_index(spec.attribute)
        if key == "D1":
            boundary = ctx.group_start[i]
            cut = bisect_left(positions, boundary)
            return _aggregate(values[:cut], positions[:cut], spec.aggregation)
        pred_events = sorted(
            {prev for (_, prev) in ctx.g.preds.get(e, ())}, key=lambda x: ctx.pos[x]
        )
        vals: list[float] = []
        pos: list[int] = []
        for prev in pred_events:
            v = log.attribute(prev, spec.attribute)
            if v is None:
                continue
            if isinstance(v, str):
                raise TypeMismatch(
                    f"attribute {spec.attribute!r} of event {prev} is a string"
                )
            vals.append(v)
            pos.append(ctx.pos[prev])
        return _aggregate(vals, pos, spec.aggregation)
    if key == "D3":
        v = log.attribute(e, spec.attribute)
        if v is None:
            return None
        if isinstance(v, str):
            raise TypeMismatch(f"attribute {spec.attribute!r} of event {e} is a string")
        return v

    if key == "R1":
        v = log.attribute(e, spec.resource_attribute)
        if v is None:
            return None
        cts = lctx.resource_cts(spec.resource_attribute, v)
        n = bisect_right(cts, ct) - bisect_left(cts, ct - spec.window)
        return float(n - 1)
    if key == "R2":
        cts = lctx.all_cts
        n = bisect_right(cts, ct) - bisect_left(cts, ct - spec.window)
        return float(n - 1)
    if key == "R3":
        v = log.attribute(e, spec.resource_attribute)
        return 1.0 if v is not None and str(v) == spec.resource else 0.0

    if key == "P2":
        return ct - ctx.min_ct
    if key == "P3":
        return ctx.max_ct - ct
    if key == "P5":
        cts = ctx.pred_cts(e)
        return max(cts) - min(cts) if len(cts) >= 2 else 0.0
    if key == "P7":
        cts = ctx.pred_cts(e, spec.type_name)
        return max(cts) - min(cts) if len(cts) >= 2 else 0.0
    if key == "P8":
        all_cts = ctx.pred_cts(e)
        typed = ctx.pred_cts(e, spec.type_name)
        if not all_cts or not typed:
            return 0.0
        return min(typed) - min(all_cts)
    if key == "service_time":
        return ct - log.start_time[e]
    if key == "waiting_time":
        cts = ctx.pred_cts(e)
        if not cts:
            return 0.0
        return max(0.0, log.start_time[e] - max(cts))
    if key == "sojourn_time":
        waiting = _compute(ctx, lctx, e, replace(spec, key="waiting_time"))
        service = _compute(ctx, lctx, e, replace(spec, key="service_time"))
        return waiting + service
    if key == "flow_time":
        sync = _compute(ctx, lctx, e, replace(spec, key="P5"))
        sojourn = _compute(ctx, lctx, e, replace(spec, key="sojourn_time"))
        return sync + sojourn
    if key == "execution_duration":
        return ctx.max_ct - ctx.min_ct

    if key == "O1":
        return float(bisect_right(lctx.first_cts, ct))
    if key == "O2":
        return float(ctx.cum_objects()[i])
    if key == "O3":
        return float(ctx.cum_objects(spec.type_name)[i])
    if key == "O5":
        return float(len(log.objects_of(e)))
    if key == "O6":
        return float(len(log.objects_of_type(e, spec.type_name)))
    if key == "O4":
        raise UnsupportedSpec("O4 is label-only; objects are emitted as labels "
                              "by the sequential and graph encoders")
    raise SpecGrammarError(f"unknown feature key {key!r}")


def compute(
    log: EventLog,
    p: ProcessExecution,
    g: ExecutionGraph,
    e: str,
    spec: FeatureSpec,
) -> float | None:
    """Value of one feature for one event of one execution (or None)."""
    if e not in g.order:
        raise NotInExecution(f"event {e} is not in execution {p.exec_id}")
    return _compute(_ExecutionContext(log, p, g), _LogContext(log), e, spec)


def compute_event_local(log: EventLog, e: str, spec: FeatureSpec) -> float | None:
    """Value of an event-local feature (C5, D3, O5, O6) without an execution."""
    if spec.key not in EVENT_LOCAL_KEYS or spec.is_family:
        raise UnsupportedSpec(
            f"spec {spec.name()} needs execution context or expansion"
        )
    if spec.key == "C5":
        return 1.0 if log.activity[e] == spec.activity else 0.0
    if spec.key == "D3":
        v = log.attribute(e, spec.attribute)
        if v is None:
            return None
        if isinstance(v, str):
            raise TypeMismatch(f"attribute {spec.attribute!r} of event {e} is a string")
        return v
    if spec.key == "O5":
        return float(len(log.objects_of(e)))
    return float(len(log.objects_of_type(e, spec.type_name)))


# ---------------------------------------------------------------------------
# matrix


@dataclass(frozen=True)
class FeatureRow:
    event_id: str
    exec_id: int
    values: tuple[float | None, ...]


@dataclass(frozen=True)
class FeatureMatrix:
    specs: tuple[FeatureSpec, ...]
    columns: tuple[str, ...]
    rows: tuple[FeatureRow, ...]

    def row_map(self) -> dict[tuple[str, int], tuple[float | None, ...]]:
        return {(r.event_id, r.exec_id): r.values for r in self.rows}


def compute_matrix(
    log: EventLog,
    executions: Sequence[ProcessExecution],
    specs: Sequence[FeatureSpec],
    threads: int = 1,
    graphs: Sequence[ExecutionGraph] | None = None,
) -> FeatureMatrix:
    """One row per (event, execution) pair, one column per expanded spec.

    Output is independent of the worker count: executions are processed in
    exec_id order and merged deterministically.
    """
    expanded = expand_specs(log, specs)
    for spec in expanded:
        if spec.key in _LABEL_KEYS:
            raise UnsupportedSpec("O4 is label-only and cannot be a matrix column")
    columns = tuple(s.name() for s in expanded)
    lctx = _LogContext(log)
    if graphs is None:
        graphs = [build_execution_graph(log, p) for p in executions]

    def one_execution(pair: tuple[ProcessExecution, ExecutionGraph]) -> list[FeatureRow]:
        p, g = pair
        ctx = _ExecutionContext(log, p, g)
        rows = []
        for e in p.events:
            values = []
            for spec in expanded:
                try:
                    values.append(_compute(ctx, lctx, e, spec))
                except DomainError as exc:
                    raise type(exc)(
                        f"execution {p.exec_id}, event {e}, feature {spec.name()}: {exc}"
                    ) from exc
            rows.append(FeatureRow(event_id=e, exec_id=p.exec_id, values=tuple(values)))
        return rows

    pairs = list(zip(executions, graphs))
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(one_execution, pairs))
    else:
        chunks = [one_execution(pair) for pair in pairs]
    rows = tuple(row for chunk in chunks for row in chunk)
    return FeatureMatrix(specs=tuple(expanded), columns=columns, rows=rows)
