"""Object interaction graph: objects linked by shared events.

Provides the two primitives execution extraction needs: connected
components (union-find) and shortest-path distances (BFS, memoized per
source behind a lock so concurrent readers are safe).
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import UnknownObject
from .model import EventLog

INFINITY = float("inf")


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class ObjectGraph:
    """Undirected graph over objects; edge iff two objects share an event."""

    nodes: frozenset[str]
    adjacency: dict[str, frozenset[str]]

    _bfs_cache: dict[str, dict[str, int]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _lock: threading.Lock = field(
        init=False, repr=False, compare=False, default_factory=threading.Lock
    )

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (min(a, b), max(a, b)) for a, nbrs in self.adjacency.items() for b in nbrs
        )

    def neighbors(self, o: str) -> frozenset[str]:
        try:
            return self.adjacency[o]
        except KeyError:
            raise UnknownObject(f"unknown object: {o}") from None

    def distances_from(self, source: str) -> dict[str, int]:
        """All BFS distances from one node (memoized)."""
        if source not in self.nodes:
            raise UnknownObject(f"unknown object: {source}")
        with self._lock:
            cached = self._bfs_cache.get(source)
        if cached is not None:
            return cached
        dist = {source: 0}
        queue = deque([source])
        while queue:
            cur = queue.popleft()
            for nbr in self.adjacency[cur]:
                if nbr not in dist:
                    dist[nbr] = dist[cur] + 1
                    queue.append(nbr)
        with self._lock:
            self._bfs_cache[source] = dist
        return dist


def build_object_graph(log: EventLog) -> ObjectGraph:
    """All objects as nodes; every event links its objects pairwise."""
    adjacency: dict[str, set[str]] = {o: set() for o in log.objects}
    for e in log.events:
        objs = sorted(log.objects_of(e))
        for a, b in combinations(objs, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
    return ObjectGraph(
        nodes=frozenset(log.objects),
        adjacency={o: frozenset(s) for o, s in adjacency.items()},
    )


def connected_components(g: ObjectGraph) -> list[frozenset[str]]:
    """Maximal connected node sets, ordered by smallest member id."""
    uf = _UnionFind(g.nodes)
    for o, nbrs in g.adjacency.items():
        for o2 in nbrs:
            uf.union(o, o2)
    groups: dict[str, set[str]] = {}
    for o in g.nodes:
        groups.setdefault(uf.find(o), set()).add(o)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def distance(g: ObjectGraph, o: str, o2: str) -> float:
    """Shortest-path edge count; inf when disconnected; 0 for o == o2."""
    if o2 not in g.nodes:
        raise UnknownObject(f"unknown object: {o2}")
    d = g.distances_from(o).get(o2)
    return INFINITY if d is None else d


def object_graph_dot(g: ObjectGraph, type_of: dict[str, str] | None = None) -> str:
    """Graphviz source for the object graph."""
    lines = ["graph objects {"]
    for o in sorted(g.nodes):
        label = f"{o}\\n{type_of[o]}" if type_of else o
        lines.append(f'  "{o}" [label="{label}"];')
    for a, b in sorted(g.edges):
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
