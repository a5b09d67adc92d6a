"""Reference event-log flattener, test-suite only.

Projects an object-centric log onto a single case notion the way
traditional tooling does: pick a notion, duplicate shared events per case,
drop everything else. Used exclusively to demonstrate the distortions
(deficiency, convergence, divergence) the native pipeline avoids.
"""

from __future__ import annotations

from ocelf.executions import extract_components
from ocelf.model import EventLog, order_key


def flatten_by_type(log: EventLog, type_name: str) -> dict[str, tuple[str, ...]]:
    """One case per object of the notion type; its trace is the case.

    Events touching several notion objects are duplicated (convergence);
    events touching none disappear (deficiency).
    """
    return {
        o: log.trace[o]
        for o in sorted(log.objects)
        if log.type_of[o] == type_name
    }


def flatten_composite(log: EventLog) -> dict[str, tuple[str, ...]]:
    """Composite notion: all transitively connected objects form one case,
    whose events are forced into a single sequence (divergence)."""
    cases = {}
    for p in extract_components(log):
        case_id = min(p.objects)
        cases[case_id] = tuple(sorted(p.events, key=lambda e: order_key(log, e)))
    return cases


def flat_preceding_activity(log: EventLog, case: tuple[str, ...], e: str) -> str | None:
    i = case.index(e)
    return log.activity[case[i - 1]] if i > 0 else None


def flat_elapsed(log: EventLog, case: tuple[str, ...], e: str) -> float:
    return log.complete_time[e] - log.complete_time[case[0]]


def flat_remaining(log: EventLog, case: tuple[str, ...], e: str) -> float:
    return log.complete_time[case[-1]] - log.complete_time[e]


def flat_workload(
    cases: dict[str, tuple[str, ...]],
    log: EventLog,
    e: str,
    window: float,
    resource_attr: str = "resource",
) -> float | None:
    """Same-resource workload counted over flattened event instances, so
    duplicated events inflate the count."""
    mine = log.attribute(e, resource_attr)
    if mine is None:
        return None
    ct = log.complete_time[e]
    count = 0
    for case in cases.values():
        for x in case:
            if x == e:
                continue
            if ct - window <= log.complete_time[x] <= ct and \
                    log.attribute(x, resource_attr) == mine:
                count += 1
    return float(count)
