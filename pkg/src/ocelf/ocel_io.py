"""Reading and writing OCEL JSON files.

Accepted input is OCEL 1.0-style JSON: "ocel:events" / "ocel:objects" maps
with "ocel:activity", "ocel:timestamp", "ocel:omap", "ocel:vmap" and
"ocel:type" keys. Output is byte-stable: keys sorted, timestamps ISO-8601
with milliseconds in UTC.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

from .errors import IoError, ParseError, SchemaError
from .model import AttributeValue, EventLog

START_TIME_KEY = "start_timestamp"


def _parse_timestamp(raw: str, where: str) -> float:
    if not isinstance(raw, str):
        raise SchemaError(f"{where}: timestamp must be a string, got {type(raw).__name__}")
    text = raw.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError:
        raise SchemaError(f"{where}: unparseable timestamp {raw!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def format_timestamp(ts: float) -> str:
    """Epoch seconds -> ISO-8601 UTC with millisecond precision."""
    ms_total = round(ts * 1000)
    secs, ms = divmod(ms_total, 1000)
    dt = datetime.fromtimestamp(secs, tz=timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S") + f".{ms:03d}Z"


def _parse_value(raw: object, where: str) -> AttributeValue:
    if isinstance(raw, bool):
        raise SchemaError(f"{where}: boolean attribute values are not supported")
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, str):
        return raw
    raise SchemaError(f"{where}: unsupported attribute value {raw!r}")


def parse_ocel(path: str | Path) -> EventLog:
    """Parse an OCEL JSON file into an :class:`EventLog`.

    Traces are rebuilt from the omaps and sorted by (complete_time, event id).
    A vmap entry named "start_timestamp" becomes the event's start time;
    missing start times default to the completion time.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc.msg} "
                         f"(line {exc.lineno}, column {exc.colno})",
                         line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")

    raw_objects = doc.get("ocel:objects", {})
    raw_events = doc.get("ocel:events", {})
    if not isinstance(raw_objects, dict) or not isinstance(raw_events, dict):
        raise SchemaError(f"{path}: 'ocel:events' and 'ocel:objects' must be maps")

    type_of: dict[str, str] = {}
    for oid, obj in raw_objects.items():
        if not isinstance(obj, dict) or not isinstance(obj.get("ocel:type"), str):
            raise SchemaError(f"object {oid}: missing 'ocel:type'")
        type_of[oid] = obj["ocel:type"]

    activity: dict[str, str] = {}
    complete_time: dict[str, float] = {}
    start_time: dict[str, float] = {}
    attributes: dict[str, dict[str, AttributeValue]] = {}
    omaps: dict[str, list[str]] = {}

    for eid, ev in raw_events.items():
        if not isinstance(ev, dict):
            raise SchemaError(f"event {eid}: not an object")
        act = ev.get("ocel:activity")
        if not isinstance(act, str):
            raise SchemaError(f"event {eid}: missing 'ocel:activity'")
        activity[eid] = act
        complete_time[eid] = _parse_timestamp(ev.get("ocel:timestamp"), f"event {eid}")
        omap = ev.get("ocel:omap", [])
        if not isinstance(omap, list):
            raise SchemaError(f"event {eid}: 'ocel:omap' must be a list")
        for oid in omap:
            if oid not in type_of:
                raise SchemaError(f"event {eid}: unknown object {oid!r} in omap")
        omaps[eid] = list(omap)
        vmap = ev.get("ocel:vmap", {})
        if not isinstance(vmap, dict):
            raise SchemaError(f"event {eid}: 'ocel:vmap' must be a map")
        attrs: dict[str, AttributeValue] = {}
        st: float | None = None
        for key, raw in vmap.items():
            if key == START_TIME_KEY and isinstance(raw, str):
                try:
                    st = _parse_timestamp(raw, f"event {eid}")
                    continue
                except SchemaError:
                    pass  # not ISO-8601: keep it as an ordinary attribute
            attrs[key] = _parse_value(raw, f"event {eid}, attribute {key!r}")
        if attrs:
            attributes[eid] = attrs
        start_time[eid] = st if st is not None else complete_time[eid]

    events = tuple(sorted(activity, key=lambda e: (complete_time[e], e)))
    trace: dict[str, tuple[str, ...]] = {}
    for o in type_of:
        mine = [e for e in events if o in omaps[e]]
        trace[o] = tuple(mine)

    return EventLog(
        events=events,
        objects=frozenset(type_of),
        object_types=frozenset(type_of.values()),
        type_of=type_of,
        complete_time=complete_time,
        start_time=start_time,
        trace=trace,
        activity=activity,
        attributes=attributes,
    )


def write_ocel(log: EventLog, path: str | Path) -> None:
    """Serialize a log so that :func:`parse_ocel` reproduces it exactly."""
    events_doc: dict[str, dict] = {}
    for e in log.events:
        vmap: dict[str, object] = dict(log.attributes.get(e, {}))
        if log.start_time[e] != log.complete_time[e]:
            vmap[START_TIME_KEY] = format_timestamp(log.start_time[e])
        events_doc[e] = {
            "ocel:activity": log.activity[e],
            "ocel:timestamp": format_timestamp(log.complete_time[e]),
            "ocel:omap": sorted(log.objects_of(e)),
            "ocel:vmap": vmap,
        }
    objects_doc = {o: {"ocel:type": log.type_of[o]} for o in sorted(log.objects)}
    doc = {
        "ocel:global-log": {
            "ocel:object-types": sorted(log.object_types),
            "ocel:version": "1.0",
        },
        "ocel:events": events_doc,
        "ocel:objects": objects_doc,
    }
    try:
        Path(path).write_text(
            json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
