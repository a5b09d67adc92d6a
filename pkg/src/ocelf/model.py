"""In-memory model of an object-centric event log.

An event log couples a set of events with the objects they touch. Every
object carries a type and an event sequence sorted by completion time; every
event carries an activity, a start and a completion timestamp (seconds since
epoch) and an optional attribute map. The log is immutable after
construction, so read-only access from multiple workers is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import UnknownEvent

#: Attribute values are either real numbers or plain strings.
AttributeValue = float | str


def order_key(log: "EventLog", event_id: str) -> tuple[float, str]:
    """Stable total order on events: completion time, then id."""
    return (log.complete_time[event_id], event_id)


@dataclass(frozen=True)
class EventLog:
    """An object-centric event log.

    Attributes:
        events: all event ids, sorted by (complete_time, id).
        objects: all object ids.
        object_types: all object types in use.
        type_of: object id -> type name (total).
        complete_time: event id -> completion timestamp.
        start_time: event id -> start timestamp (defaults to completion).
        trace: object id -> event sequence sorted by completion time.
        activity: event id -> activity name.
        attributes: event id -> attribute map (absent keys mean no attributes).
    """

    events: tuple[str, ...]
    objects: frozenset[str]
    object_types: frozenset[str]
    type_of: Mapping[str, str]
    complete_time: Mapping[str, float]
    start_time: Mapping[str, float]
    trace: Mapping[str, tuple[str, ...]]
    activity: Mapping[str, str]
    attributes: Mapping[str, Mapping[str, AttributeValue]] = field(default_factory=dict)

    _objects_of: dict[str, frozenset[str]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        index: dict[str, set[str]] = {e: set() for e in self.events}
        for o, seq in self.trace.items():
            for e in seq:
                if e in index:
                    index[e].add(o)
        object.__setattr__(
            self, "_objects_of", {e: frozenset(s) for e, s in index.items()}
        )

    def objects_of(self, event_id: str) -> frozenset[str]:
        """Objects whose trace contains the event."""
        try:
            return self._objects_of[event_id]
        except KeyError:
            raise UnknownEvent(f"unknown event: {event_id}") from None

    def objects_of_type(self, event_id: str, type_name: str) -> frozenset[str]:
        return frozenset(
            o for o in self.objects_of(event_id) if self.type_of[o] == type_name
        )

    def attribute(self, event_id: str, name: str) -> AttributeValue | None:
        return self.attributes.get(event_id, {}).get(name)

    @staticmethod
    def empty() -> "EventLog":
        return EventLog(
            events=(),
            objects=frozenset(),
            object_types=frozenset(),
            type_of={},
            complete_time={},
            start_time={},
            trace={},
            activity={},
            attributes={},
        )


def objects_of(log: EventLog, event_id: str) -> frozenset[str]:
    """Module-level alias for :meth:`EventLog.objects_of`."""
    return log.objects_of(event_id)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def is_clean(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def validate(log: EventLog) -> ValidationReport:
    """Check the structural invariants of a log; never raises on content.

    Reported kinds: start_after_complete, unsorted_trace, orphan_event,
    dangling_object, unknown_event_in_trace.
    """
    violations: list[Violation] = []
    event_set = set(log.events)

    for e in log.events:
        if log.start_time[e] > log.complete_time[e]:
            violations.append(
                Violation("start_after_complete", f"event {e}: start after complete")
            )

    for o, seq in log.trace.items():
        if o not in log.objects or o not in log.type_of:
            violations.append(
                Violation("dangling_object", f"object {o} traced but not declared")
            )
        for e in seq:
            if e not in event_set:
                violations.append(
                    Violation("unknown_event_in_trace", f"object {o} references {e}")
                )
        known = [e for e in seq if e in event_set]
        times = [log.complete_time[e] for e in known]
        if any(a > b for a, b in zip(times, times[1:])):
            violations.append(
                Violation("unsorted_trace", f"trace of {o} not sorted by complete time")
            )

    for o in log.objects:
        if o not in log.type_of:
            violations.append(Violation("dangling_object", f"object {o} has no type"))

    for e in log.events:
        if not log.objects_of(e):
            violations.append(Violation("orphan_event", f"event {e} appears in no trace"))

    return ValidationReport(tuple(violations))
