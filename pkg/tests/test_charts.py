import re
import xml.etree.ElementTree as ET

import pytest

from quiring import (
    AggregateRow,
    AggregateTable,
    QUIRING_COLUMNS,
    render_bar,
    render_legend,
    render_stacked,
)
from quiring.charts import color_for

#: Corpus-wide presence sums for the general chart, used as a realistic row.
GENERAL_SUMS = {
    "1": 27, "2": 8004, "3": 1, "4": 12920, "5": 2, "6": 4930, "7": 2,
    "8": 9808, "9": 2, "10": 468, "8/4": 199, "8/6": 1,
    "double": 1417, "triple": 235, "quadruple": 322,
}


def _row(label="general", sums=None):
    full = dict.fromkeys(QUIRING_COLUMNS, 0)
    full.update(sums or GENERAL_SUMS)
    return AggregateRow(label=label, sums=full)


def _rects(svg):
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    return [e for e in root.iter(f"{ns}rect") if "data-column" in e.attrib]


def test_color_palette_stable_and_distinct():
    colors = [color_for(i) for i in range(34)]
    assert colors == [color_for(i) for i in range(34)]
    assert len(set(colors)) == 34
    assert all(re.fullmatch(r"#[0-9a-f]{6}", c) for c in colors)


def test_render_bar_deterministic():
    row = _row()
    assert render_bar(row, "General") == render_bar(row, "General")


def test_render_bar_valid_xml_heights_in_data_units():
    svg = render_bar(_row(), "General")
    rects = _rects(svg)
    assert len(rects) == 34
    by_column = {r.get("data-column"): r for r in rects}
    for column in QUIRING_COLUMNS:
        expected = GENERAL_SUMS.get(column, 0)
        rect = by_column[column]
        assert rect.get("data-value") == str(expected)
        assert rect.get("height") == str(expected)


def test_render_bar_tallest_is_column_4():
    rects = _rects(render_bar(_row(), "General"))
    tallest = max(rects, key=lambda r: int(r.get("height")))
    assert tallest.get("data-column") == "4"


def test_render_stacked_deterministic_and_valid():
    table = AggregateTable(
        rows=(
            _row("17th-c", {"4": 10, "8": 3}),
            _row("18th-c", {"4": 7, "12": 2}),
        )
    )
    svg = render_stacked(table, "Centuries")
    assert svg == render_stacked(table, "Centuries")
    rects = _rects(svg)
    # zero segments are omitted; heights carry the exact counts
    assert {(r.get("data-row"), r.get("data-column"), r.get("height")) for r in rects} == {
        ("17th-c", "4", "10"),
        ("17th-c", "8", "3"),
        ("18th-c", "4", "7"),
        ("18th-c", "12", "2"),
    }


def test_render_stacked_segments_stack_without_gaps():
    table = AggregateTable(rows=(_row("r", {"2": 5, "4": 7, "8": 11}),))
    rects = sorted(_rects(render_stacked(table, "t")), key=lambda r: float(r.get("y")))
    cumulative = 0
    for rect in rects:
        assert float(rect.get("y")) == cumulative
        cumulative += int(rect.get("height"))


def test_render_stacked_empty_table_rejected():
    with pytest.raises(ValueError):
        render_stacked(AggregateTable(rows=()), "t")


def test_render_legend_covers_all_columns():
    svg = render_legend()
    assert svg == render_legend()
    rects = _rects(svg)
    assert [r.get("data-column") for r in rects] == list(QUIRING_COLUMNS)
    for i, rect in enumerate(rects):
        assert rect.get("fill") == color_for(i)


def test_title_escaped():
    svg = render_bar(_row(), "a < b & c")
    assert "a &lt; b &amp; c" in svg
    ET.fromstring(svg)
