"""Independent brute-force oracles used to check the library.

Everything here is deliberately naive: transitive closure by repeated
neighborhood expansion, subset enumeration for leading-type extraction,
direct scans for feature values. None of it shares code with the package.
"""

from __future__ import annotations

from itertools import combinations

from ocelf.model import EventLog


def closure_components(nodes: set[str], edges: set[tuple[str, str]]) -> list[frozenset[str]]:
    """Connected components via explicit transitive closure."""
    reach = {n: {n} for n in nodes}
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            for x in list(reach):
                if a in reach[x] and b not in reach[x]:
                    reach[x].add(b)
                    changed = True
                if b in reach[x] and a not in reach[x]:
                    reach[x].add(a)
                    changed = True
    seen: set[frozenset[str]] = {frozenset(r) for r in reach.values()}
    return sorted(seen, key=min)


def naive_object_edges(log: EventLog) -> set[tuple[str, str]]:
    edges = set()
    for e in log.events:
        objs = sorted(log.objects_of(e))
        for a, b in combinations(objs, 2):
            edges.add((a, b))
    return edges


def naive_distances(nodes: set[str], edges: set[tuple[str, str]], source: str) -> dict[str, int]:
    """Bellman-Ford style relaxation; O(V*E), independent of BFS."""
    inf = float("inf")
    edges = {(a, b) for a, b in edges if a in nodes and b in nodes}
    dist = {n: inf for n in nodes}
    dist[source] = 0
    for _ in range(len(nodes)):
        for a, b in edges:
            if dist[a] + 1 < dist[b]:
                dist[b] = dist[a] + 1
            if dist[b] + 1 < dist[a]:
                dist[a] = dist[b] + 1
    return {n: d for n, d in dist.items() if d != inf}


def _connected_subset(objs: frozenset[str], edges: set[tuple[str, str]]) -> bool:
    if not objs:
        return False
    start = next(iter(objs))
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == cur and y in objs and y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return seen == objs


def brute_force_leading_sets(log: EventLog, lead: str) -> set[frozenset[str]]:
    """All maximal connected object sets qualifying for leading-type
    extraction, by exhaustive subset enumeration (small logs only).

    A set qualifies when it holds a leading-type object such that every
    member sits at minimal distance (in the member's full component) among
    all component objects of the member's type.
    """
    nodes = set(log.objects)
    edges = naive_object_edges(log)
    components = closure_components(nodes, edges)

    qualifying: set[frozenset[str]] = set()
    for comp in components:
        leads = [o for o in comp if log.type_of[o] == lead]
        if not leads:
            continue
        comp_list = sorted(comp)
        dist = {o: naive_distances(set(comp), edges, o) for o in leads}
        for r in range(1, len(comp_list) + 1):
            for subset in combinations(comp_list, r):
                objs = frozenset(subset)
                if not _connected_subset(objs, edges):
                    continue
                for o in leads:
                    if o not in objs:
                        continue
                    ok = True
                    for member in objs:
                        t = log.type_of[member]
                        best = min(
                            dist[o][x] for x in comp if log.type_of[x] == t
                        )
                        if dist[o][member] != best:
                            ok = False
                            break
                    if ok:
                        qualifying.add(objs)
                        break
    return {
        objs
        for objs in qualifying
        if not any(objs < other for other in qualifying)
    }


def naive_events_of(log: EventLog, objs: frozenset[str]) -> set[str]:
    return {e for e in log.events if log.objects_of(e) & objs}


# --------------------------------------------------------------------------
# direct-scan feature oracles (all strict-time semantics, no indexes)


def naive_previous_activity_count(log: EventLog, exec_events, e: str, activity: str) -> float:
    ct = log.complete_time[e]
    return float(
        sum(
            1
            for x in exec_events
            if log.complete_time[x] < ct and log.activity[x] == activity
        )
    )


def naive_following_activity_count(log: EventLog, exec_events, e: str, activity: str) -> float:
    ct = log.complete_time[e]
    return float(
        sum(
            1
            for x in exec_events
            if log.complete_time[x] > ct and log.activity[x] == activity
        )
    )


def naive_previous_object_count(log: EventLog, exec_events, e: str, type_name=None) -> float:
    ct = log.complete_time[e]
    objs: set[str] = set()
    for x in exec_events:
        if log.complete_time[x] < ct:
            for o in log.objects_of(x):
                if type_name is None or log.type_of[o] == type_name:
                    objs.add(o)
    return float(len(objs))


def naive_system_object_count(log: EventLog, e: str) -> float:
    ct = log.complete_time[e]
    return float(
        sum(
            1
            for o in log.objects
            if any(log.complete_time[x] <= ct for x in log.trace.get(o, ()))
        )
    )


def naive_workload(log: EventLog, e: str, window: float, resource_attr: str = "resource",
                   same_resource: bool = True) -> float | None:
    mine = log.attribute(e, resource_attr)
    if same_resource and mine is None:
        return None
    ct = log.complete_time[e]
    count = 0
    for x in log.events:
        if x == e:
            continue
        if not (ct - window <= log.complete_time[x] <= ct):
            continue
        if same_resource and log.attribute(x, resource_attr) != mine:
            continue
        count += 1
    return float(count)


def naive_sync_time(log: EventLog, p_objects, e: str) -> float:
    cts = []
    for o in sorted(p_objects):
        seq = log.trace.get(o, ())
        for i, x in enumerate(seq):
            if x == e and i > 0:
                cts.append(log.complete_time[seq[i - 1]])
    return max(cts) - min(cts) if len(cts) >= 2 else 0.0
