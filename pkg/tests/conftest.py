from __future__ import annotations

import random
from pathlib import Path

import pytest

from ocelf.model import EventLog
from ocelf.ocel_io import parse_ocel

DATA_DIR = Path(__file__).parent / "data"

ACTIVITIES = ["create", "check", "approve", "ship", "close"]
RESOURCES = ["ann", "ben", "cyd"]


@pytest.fixture(scope="session")
def fig1_path() -> Path:
    return DATA_DIR / "fig1.jsonocel"


@pytest.fixture(scope="session")
def fig1(fig1_path: Path) -> EventLog:
    return parse_ocel(fig1_path)


def random_log(
    seed: int,
    max_objects: int = 10,
    max_events: int = 40,
    with_attributes: bool = True,
) -> EventLog:
    """Small random but valid log; timestamps are whole seconds (ties allowed)."""
    rng = random.Random(seed)
    n_types = rng.randint(1, 3)
    types = [f"t{i}" for i in range(n_types)]
    n_objects = rng.randint(1, max_objects)
    objects = [f"o{i}" for i in range(n_objects)]
    type_of = {o: rng.choice(types) for o in objects}

    n_events = rng.randint(1, max_events)
    events = [f"e{i:03d}" for i in range(n_events)]
    cts = sorted(rng.randint(0, 500) for _ in range(n_events))
    complete_time = {e: float(ct) for e, ct in zip(events, cts)}
    start_time = {
        e: complete_time[e] - (rng.randint(0, 20) if rng.random() < 0.4 else 0)
        for e in events
    }
    activity = {e: rng.choice(ACTIVITIES) for e in events}
    omap = {e: rng.sample(objects, rng.randint(1, min(3, n_objects))) for e in events}
    attributes = {}
    if with_attributes:
        for e in events:
            attrs = {}
            if rng.random() < 0.5:
                attrs["amount"] = float(rng.randint(1, 1000))
            if rng.random() < 0.5:
                attrs["resource"] = rng.choice(RESOURCES)
            if attrs:
                attributes[e] = attrs

    ordered = tuple(sorted(events, key=lambda e: (complete_time[e], e)))
    trace = {
        o: tuple(e for e in ordered if o in omap[e]) for o in objects
    }
    return EventLog(
        events=ordered,
        objects=frozenset(objects),
        object_types=frozenset(types),
        type_of=type_of,
        complete_time=complete_time,
        start_time=start_time,
        trace=trace,
        activity=activity,
        attributes=attributes,
    )
