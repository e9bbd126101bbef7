import json

from ramval.reporting import Report, RunConfig, render_table


ROWS = [{"i": 1, "ok": True, "value": "1/2"}, {"i": 2, "ok": False, "value": "17/16"}]


def test_render_tsv():
    out = render_table(ROWS, "tsv")
    lines = out.strip().splitlines()
    assert lines[0] == "i\tok\tvalue"
    assert lines[1] == "1\tyes\t1/2"
    assert lines[2] == "2\tno\t17/16"


def test_render_md():
    out = render_table(ROWS, "md", title="demo")
    assert "### demo" in out
    assert "| i | ok | value |" in out
    assert "| 2 | no | 17/16 |" in out


def test_render_text_alignment():
    out = render_table(ROWS, "text")
    header, row1, _ = out.splitlines()
    assert header.index("value") == row1.index("1/2")


def test_render_ragged_rows():
    rows = [{"a": 1}, {"a": 2, "b": 3}]
    out = render_table(rows, "tsv")
    assert out.splitlines()[0] == "a\tb"
    assert out.splitlines()[1] == "1\t"


def test_report_json_schema_and_ok_flag():
    rep = Report(RunConfig(p=2, c=1, fmt="json"))
    rep.add("first", ROWS, ok=True)
    rep.add("second", ROWS, ok=False)
    payload = json.loads(rep.render())
    assert payload["config"]["schema"] == 1
    assert payload["ok"] is False
    assert [s["title"] for s in payload["sections"]] == ["first", "second"]
