"""Deterministic SVG bar and stacked-bar charts for aggregate rows.

Bars live inside a group whose transform maps data units to pixels, so every
rect's height attribute is the exact integer count it represents.  Output is
a pure function of the input: identical data yields byte-identical SVG.
The legend is a separate document, one swatch per column.
"""

from __future__ import annotations

import colorsys

from .analytics import AggregateRow, AggregateTable
from .features import QUIRING_COLUMNS

WIDTH = 980
HEIGHT = 420
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 90


def color_for(index: int) -> str:
    """Stable palette keyed by column index (golden-angle hue walk)."""
    hue = (index * 0.381966) % 1.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.5, 0.65)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def _fmt(x: float) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".")


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<title>{_escape(title)}</title>',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{_escape(title)}</text>',
    ]


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _axes_and_labels(labels: list[str], max_value: int) -> list[str]:
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    baseline = MARGIN_TOP + plot_h
    parts = [
        f'<line x1="{MARGIN_LEFT}" y1="{baseline}" x2="{MARGIN_LEFT + plot_w}" '
        f'y2="{baseline}" stroke="black"/>',
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{baseline}" stroke="black"/>',
    ]
    for tick in range(5):
        value = max_value * tick // 4
        y = baseline - (plot_h * tick / 4)
        parts.append(
            f'<text x="{MARGIN_LEFT - 6}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{value}</text>'
        )
    slot = plot_w / len(labels)
    for i, label in enumerate(labels):
        x = MARGIN_LEFT + slot * (i + 0.5)
        parts.append(
            f'<text x="{_fmt(x)}" y="{baseline + 10}" text-anchor="end" '
            f'font-family="sans-serif" font-size="9" '
            f'transform="rotate(-60 {_fmt(x)} {baseline + 10})">'
            f"{_escape(label)}</text>"
        )
    return parts


def render_bar(row: AggregateRow, title: str) -> str:
    """Bar chart of one aggregate row: one bar per canonical column."""
    values = row.as_list()
    max_value = max(max(values), 1)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    baseline = MARGIN_TOP + plot_h
    scale = plot_h / max_value
    slot = plot_w / len(values)
    bar_w = slot * 0.8

    parts = _header(title)
    # Flip the y axis so rect heights stay in data units.
    parts.append(
        f'<g transform="translate({MARGIN_LEFT},{baseline}) '
        f'scale(1,-{_fmt(scale)})">'
    )
    for i, (column, value) in enumerate(zip(QUIRING_COLUMNS, values)):
        x = slot * i + (slot - bar_w) / 2
        parts.append(
            f'<rect data-column="{column}" data-value="{value}" '
            f'x="{_fmt(x)}" y="0" width="{_fmt(bar_w)}" height="{value}" '
            f'fill="{color_for(i)}"/>'
        )
    parts.append("</g>")
    parts.extend(_axes_and_labels(list(QUIRING_COLUMNS), max_value))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_stacked(table: AggregateTable, title: str) -> str:
    """Stacked bar chart: one bar per table row, 34 segments per bar."""
    if not table.rows:
        raise ValueError("stacked chart needs at least one row")
    totals = [sum(row.as_list()) for row in table.rows]
    max_total = max(max(totals), 1)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    baseline = MARGIN_TOP + plot_h
    scale = plot_h / max_total
    slot = plot_w / len(table.rows)
    bar_w = slot * 0.7

    parts = _header(title)
    parts.append(
        f'<g transform="translate({MARGIN_LEFT},{baseline}) '
        f'scale(1,-{_fmt(scale)})">'
    )
    for r, row in enumerate(table.rows):
        x = slot * r + (slot - bar_w) / 2
        cumulative = 0
        for i, column in enumerate(QUIRING_COLUMNS):
            value = row.sums[column]
            if value == 0:
                continue
            parts.append(
                f'<rect data-row="{_escape(row.label)}" data-column="{column}" '
                f'data-value="{value}" x="{_fmt(x)}" y="{cumulative}" '
                f'width="{_fmt(bar_w)}" height="{value}" fill="{color_for(i)}"/>'
            )
            cumulative += value
    parts.append("</g>")
    parts.extend(_axes_and_labels([row.label for row in table.rows], max_total))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_legend(title: str = "Legend") -> str:
    """Separate legend document mapping colors to the 34 column names."""
    columns = 4
    swatch = 14
    row_h = 22
    rows = (len(QUIRING_COLUMNS) + columns - 1) // columns
    height = MARGIN_TOP + rows * row_h + 20
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">',
        f"<title>{_escape(title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{_escape(title)}</text>',
    ]
    col_w = (WIDTH - 40) / columns
    for i, column in enumerate(QUIRING_COLUMNS):
        cx = 20 + (i // rows) * col_w
        cy = MARGIN_TOP + (i % rows) * row_h
        parts.append(
            f'<rect data-column="{column}" x="{_fmt(cx)}" y="{cy}" '
            f'width="{swatch}" height="{swatch}" fill="{color_for(i)}"/>'
        )
        parts.append(
            f'<text x="{_fmt(cx + swatch + 6)}" y="{cy + swatch - 2}" '
            f'font-family="sans-serif" font-size="12">{_escape(column)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
