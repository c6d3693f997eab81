import json
import math

import pytest

from genfrac.report import (
    CommandOutput,
    OutputFormat,
    format_cell,
    jsonable,
    render,
)


def make_output() -> CommandOutput:
    return CommandOutput(
        "demo",
        {"f": "x^2", "alpha": 0.5},
        [{"t": 0.1, "value": math.inf, "passed": True}],
        {"failed": 0},
        summary_lines=["all good"],
    )


def test_jsonable() -> None:
    data = {"a": [math.inf, -math.inf, 1.5], "b": (math.nan,), 3: None}
    assert jsonable(data) == {"a": ["inf", "-inf", 1.5], "b": ["nan"], "3": None}


@pytest.mark.parametrize(
    "value, expected",
    (
        (None, "-"),
        (True, "yes"),
        (False, "no"),
        (0.1 + 0.2, "0.3"),
        (3, "3"),
        (["a", 2.5], "a; 2.5"),
    ),
)
def test_format_cell(value: object, expected: str) -> None:
    assert format_cell(value) == expected


def test_render_json() -> None:
    text = render(make_output(), OutputFormat.JSON)
    assert text.endswith("}\n")
    document = json.loads(text)
    assert list(document) == ["command", "results", "spec", "summary"]
    assert document["results"][0]["value"] == "inf"
    # Floats are written with repr, so they read back bit for bit.
    assert document["results"][0]["t"] == 0.1
    assert render(make_output(), OutputFormat.JSON) == text


def test_render_csv() -> None:
    output = make_output()
    output.results[0]["t"] = 0.1 + 0.2
    lines = render(output, OutputFormat.CSV).splitlines()
    assert lines == ["t,value,passed", "0.30000000000000004,inf,yes"]


def test_render_table() -> None:
    lines = render(make_output(), OutputFormat.TABLE).splitlines()
    assert lines[0].split() == ["t", "value", "passed"]
    assert set(lines[1]) == {"-", " "}
    assert lines[2].split() == ["0.1", "inf", "yes"]
    assert lines[-1] == "all good"


def test_render_table_prefers_flat_rows() -> None:
    output = make_output()
    output.rows = [{"theorem": "power", "passed": False}]
    assert render(output, OutputFormat.TABLE).splitlines()[2].split() == [
        "power",
        "no",
    ]
