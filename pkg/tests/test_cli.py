from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from ocelf.cli import main
from ocelf.ocel_io import parse_ocel, write_ocel

from conftest import random_log


@pytest.fixture()
def runner():
    return CliRunner()


def _run(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


def test_validate_clean(runner, fig1_path):
    result = _run(runner, "validate", fig1_path)
    assert result.exit_code == 0


def test_validate_corrupt_json_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.jsonocel"
    bad.write_text("{ not json")
    result = _run(runner, "validate", bad)
    assert result.exit_code == 2


def test_validate_orphan_event_exits_1(runner, tmp_path):
    doc = {
        "ocel:events": {
            "e1": {
                "ocel:activity": "a",
                "ocel:timestamp": "1970-01-01T00:00:01.000Z",
                "ocel:omap": [],
                "ocel:vmap": {},
            }
        },
        "ocel:objects": {},
    }
    path = tmp_path / "orphan.jsonocel"
    path.write_text(json.dumps(doc))
    result = _run(runner, "validate", path)
    assert result.exit_code == 1


def test_validate_json_output(runner, fig1_path):
    result = _run(runner, "validate", fig1_path, "--json")
    payload = json.loads(result.stdout)
    assert payload["schema_version"] == "1"
    assert payload["is_clean"] is True


def test_extract_components(runner, fig1_path, tmp_path):
    out = tmp_path / "report.json"
    result = _run(runner, "extract", fig1_path, "--strategy", "components",
                  "--out", out)
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert len(report["executions"]) == 2
    assert report["executions"][0]["objects"] == ["i1", "i2", "o1"]


def test_extract_leading_item(runner, fig1_path):
    result = _run(runner, "extract", fig1_path, "--strategy", "leading",
                  "--lead-type", "item", "--json")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert [e["objects"] for e in report["executions"]] == [
        ["i1", "o1"], ["i2", "o1"], ["i3", "o2"],
    ]


def test_extract_unknown_lead_type_exits_1(runner, fig1_path):
    result = _run(runner, "extract", fig1_path, "--strategy", "leading",
                  "--lead-type", "invoice")
    assert result.exit_code == 1


def test_featurize_tabular(runner, fig1_path, tmp_path):
    out = tmp_path / "features.csv"
    result = _run(runner, "featurize", fig1_path, "--feature", "O5",
                  "--encoding", "tabular", "--out", out)
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "event_id,exec_id,O5"
    assert len(lines) == 12


def test_featurize_graph(runner, fig1_path, tmp_path):
    out = tmp_path / "graphs.jsonl"
    result = _run(runner, "featurize", fig1_path, "--feature", "C5",
                  "--encoding", "graph", "--out", out)
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert all("nodes" in json.loads(line) for line in lines)


def test_featurize_bad_spec_exits_1_and_names_it(runner, fig1_path, tmp_path):
    result = _run(runner, "featurize", fig1_path, "--feature", "Q9",
                  "--out", tmp_path / "x.csv")
    assert result.exit_code == 1
    assert "Q9" in result.stderr


def test_featurize_thread_count_is_byte_invariant(runner, fig1_path, tmp_path):
    outs = []
    for threads in (1, 8):
        out = tmp_path / f"t{threads}.csv"
        result = _run(runner, "featurize", fig1_path,
                      "--feature", "O5", "--feature", "P3", "--feature", "C5",
                      "--threads", threads, "--out", out)
        assert result.exit_code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_timeseries(runner, fig1_path, tmp_path):
    out = tmp_path / "series.csv"
    result = _run(runner, "timeseries", fig1_path, "--window", 25,
                  "--feature", "O5", "--agg", "avg", "--out", out)
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 4  # header + 3 windows


def test_timeseries_plot(runner, fig1_path, tmp_path):
    out = tmp_path / "series.csv"
    plot = tmp_path / "series.png"
    result = _run(runner, "timeseries", fig1_path, "--window", 25,
                  "--feature", "O5", "--out", out, "--plot", plot)
    assert result.exit_code == 0
    assert plot.stat().st_size > 0


def test_timeseries_rejects_execution_context_spec(runner, fig1_path, tmp_path):
    result = _run(runner, "timeseries", fig1_path, "--window", 25,
                  "--feature", "P3", "--out", tmp_path / "x.csv")
    assert result.exit_code == 1


def test_variant_dot(runner, fig1_path):
    result = _run(runner, "variant", fig1_path, "--exec-id", 1, "--format", "dot")
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph exec_1 {")
    assert result.stdout.count(" -> ") == 4
    assert result.stdout.count("[label=") == 5


def test_variant_seq(runner, fig1_path):
    result = _run(runner, "variant", fig1_path, "--exec-id", 1, "--format", "seq")
    payload = json.loads(result.stdout)
    assert [s["activity"] for s in payload["steps"]] == [
        "place order", "pick item", "pay order", "send delivery", "delivery received",
    ]


def test_variant_json(runner, fig1_path):
    result = _run(runner, "variant", fig1_path, "--exec-id", 0, "--format", "json")
    payload = json.loads(result.stdout)
    assert len(payload["nodes"]) == 6
    assert ["e3", "e4"] not in payload["edges"]


def test_variant_unknown_exec_id(runner, fig1_path):
    result = _run(runner, "variant", fig1_path, "--exec-id", 99)
    assert result.exit_code == 1


def test_stats_with_object_graph_dot(runner, fig1_path, tmp_path):
    dot = tmp_path / "objects.dot"
    result = _run(runner, "stats", fig1_path, "--object-graph-dot", dot, "--json")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["events"] == 11
    assert payload["connected_components"] == 2
    assert '"i1" -- "i2";' in dot.read_text()


def test_cli_on_random_log_round_trips(runner, tmp_path):
    log = random_log(3)
    path = tmp_path / "random.jsonocel"
    write_ocel(log, path)
    out = tmp_path / "features.csv"
    result = _run(runner, "featurize", path, "--feature", "O5", "--out", out)
    assert result.exit_code == 0
    assert len(out.read_text().splitlines()) == len(log.events) + 1
