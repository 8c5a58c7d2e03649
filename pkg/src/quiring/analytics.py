"""Filtering, aggregation and pivot tables over featurized records.

Sums are per catalogue row (one row per volume) by default; the per-edition
mode ORs flags across all rows sharing an identifier before summing.
Century pivots default to full inclusive centuries (xx00-xx99); compat mode
reproduces legacy half-open ranges that stop at xx98.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import UnknownFormatError, WriteFailureError
from .features import QUIRING_COLUMNS, QuiringVector, extract_features
from .grammar import parse
from .ingest import EditionRecord

#: The nine canonical bibliographic format names, smallest fold count first.
CANONICAL_FORMATS = (
    "plano",
    "folio",
    "quarto",
    "octavo",
    "duodecimo",
    "sextodecimo",
    "octodecimo",
    "vicesimoquarto",
    "tricesimosecundo",
)

EVOLUTION_FORMATS = ("folio", "quarto", "octavo", "duodecimo")
CENTURY_LABELS = ("15th-c", "16th-c", "17th-c", "18th-c")


@dataclass(frozen=True)
class FeatureTable:
    rows: tuple[tuple[EditionRecord, QuiringVector], ...]

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class FilterSpec:
    format_equals: Optional[str] = None
    year_range: Optional[tuple[int, int]] = None  # inclusive, applied to year1
    place_codes: Optional[frozenset[str]] = None
    per_edition: bool = False


@dataclass(frozen=True)
class AggregateRow:
    label: str
    sums: dict[str, int]

    def as_list(self) -> list[int]:
        return [self.sums[c] for c in QUIRING_COLUMNS]


@dataclass(frozen=True)
class AggregateTable:
    rows: tuple[AggregateRow, ...]


def featurize(
    records: Iterable[EditionRecord],
) -> tuple[FeatureTable, list[tuple[str, str]]]:
    """Parse and featurize records; unparseable rows go to the error list."""
    rows = []
    errors = []
    for record in records:
        report = parse(record.collation)
        if report.ok:
            rows.append((record, extract_features(report.formula)))
        else:
            errors.append(
                (record.identifier, f"{report.failure.reason.value}: {report.failure.message}")
            )
    return FeatureTable(rows=tuple(rows)), errors


def _year(record: EditionRecord) -> Optional[int]:
    try:
        return int(record.year1.strip())
    except (ValueError, AttributeError):
        return None


def filter_table(table: FeatureTable, spec: FilterSpec) -> FeatureTable:
    """Keep rows satisfying every present criterion.

    Rows with a non-numeric year1 are excluded whenever a year range is
    given.  Raises UnknownFormatError for a format outside the canonical nine.
    """
    if spec.format_equals is not None and spec.format_equals not in CANONICAL_FORMATS:
        raise UnknownFormatError(spec.format_equals)
    kept = []
    for record, vector in table.rows:
        if spec.format_equals is not None and record.format != spec.format_equals:
            continue
        if spec.year_range is not None:
            year = _year(record)
            if year is None or not (spec.year_range[0] <= year <= spec.year_range[1]):
                continue
        if spec.place_codes is not None and record.place_code not in spec.place_codes:
            continue
        kept.append((record, vector))
    return FeatureTable(rows=tuple(kept))


def _edition_vectors(table: FeatureTable) -> list[QuiringVector]:
    """OR flags across rows sharing an identifier, in first-seen order."""
    merged: dict[str, dict[str, int]] = {}
    order: list[str] = []
    for record, vector in table.rows:
        if record.identifier not in merged:
            merged[record.identifier] = dict.fromkeys(QUIRING_COLUMNS, 0)
            order.append(record.identifier)
        flags = merged[record.identifier]
        for c in QUIRING_COLUMNS:
            flags[c] |= vector.flags[c]
    return [QuiringVector(flags=merged[i]) for i in order]


def sum_features(
    table: FeatureTable, label: str = "total", per_edition: bool = False
) -> AggregateRow:
    """Columnwise sums over rows (or over OR-merged editions)."""
    if per_edition:
        vectors = _edition_vectors(table)
    else:
        vectors = [v for _, v in table.rows]
    sums = dict.fromkeys(QUIRING_COLUMNS, 0)
    for vector in vectors:
        for c in QUIRING_COLUMNS:
            sums[c] += vector.flags[c]
    return AggregateRow(label=label, sums=sums)


def pivot_formats(table: FeatureTable, per_edition: bool = False) -> AggregateTable:
    """One row per canonical format, in canonical order."""
    rows = []
    for name in CANONICAL_FORMATS:
        subset = filter_table(table, FilterSpec(format_equals=name))
        rows.append(sum_features(subset, label=name, per_edition=per_edition))
    return AggregateTable(rows=tuple(rows))


def century_bounds(century: int, compat: bool = False) -> tuple[int, int]:
    """Inclusive year bounds of a century (15 → 1400s).

    Compat mode reproduces half-open legacy ranges whose upper bound stops at
    xx98, dropping the final year of each century.
    """
    lo = (century - 1) * 100
    hi = lo + (98 if compat else 99)
    return lo, hi


def pivot_centuries(
    table: FeatureTable, compat: bool = False, per_edition: bool = False
) -> AggregateTable:
    """One row per century, 15th through 18th."""
    rows = []
    for century, label in zip(range(15, 19), CENTURY_LABELS):
        subset = filter_table(
            table, FilterSpec(year_range=century_bounds(century, compat))
        )
        rows.append(sum_features(subset, label=label, per_edition=per_edition))
    return AggregateTable(rows=tuple(rows))


def pivot_evolution(
    table: FeatureTable, compat: bool = False, per_edition: bool = False
) -> AggregateTable:
    """Format × century rows for folio, quarto, octavo and duodecimo."""
    rows = []
    for name in EVOLUTION_FORMATS:
        for century, century_label in zip(range(15, 19), CENTURY_LABELS):
            subset = filter_table(
                table,
                FilterSpec(
                    format_equals=name, year_range=century_bounds(century, compat)
                ),
            )
            rows.append(
                sum_features(
                    subset, label=f"{century_label} {name}", per_edition=per_edition
                )
            )
    return AggregateTable(rows=tuple(rows))


def export_table(table: AggregateTable, path: str | Path) -> None:
    """Write an aggregate table as UTF-8 CSV: label column plus 34 sums."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["label", *QUIRING_COLUMNS])
            for row in table.rows:
                writer.writerow([row.label, *row.as_list()])
    except OSError as exc:
        raise WriteFailureError(str(exc)) from exc


def load_place_set(path: str | Path) -> frozenset[str]:
    """Read a place-code filter set: one code per line, ``#`` comments."""
    codes = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                codes.append(line)
    return frozenset(codes)
