"""Catalogue ingest: SQLite and CSV readers, cleaning, row-level CSV export.

The SQLite reader mirrors a join of the ``collation`` table with a distinct
per-record format subquery and the ``impressum`` table.  Cleaning drops rows
with an empty or placeholder format, an empty collation, a collation ending
in ``#`` (bare volume markers) or in `` volumes`` (volume-count placeholders).
All text I/O is UTF-8 throughout, so π and χ survive a CSV round-trip.
"""

from __future__ import annotations

import csv
import logging
import sqlite3
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    FileUnreadableError,
    HeaderMismatchError,
    MalformedRowError,
    SchemaMismatchError,
    WriteFailureError,
)
from .features import QUIRING_COLUMNS

log = logging.getLogger(__name__)

#: Column order of row-level CSV files.
RECORD_COLUMNS = (
    "identifier",
    "format",
    "collation",
    "year1",
    "year2",
    "place_code",
    "place_name",
    "publisher_code",
    "publisher_name",
)


@dataclass(frozen=True)
class EditionRecord:
    """One catalogue row: a single volume of an edition."""

    identifier: str
    format: str
    collation: str
    year1: str = ""
    year2: str = ""
    place_code: str = ""
    place_name: str = ""
    publisher_code: str = ""
    publisher_name: str = ""

    def as_row(self) -> list[str]:
        return [getattr(self, c) for c in RECORD_COLUMNS]


class DropReason(Enum):
    EMPTY_FORMAT = "EmptyFormat"
    DASH_FORMAT = "DashFormat"
    EMPTY_COLLATION = "EmptyCollation"
    TRAILING_HASH = "TrailingHash"
    VOLUMES_PLACEHOLDER = "VolumesPlaceholder"
    HEADER_ROW = "HeaderRow"


@dataclass
class CleanReport:
    kept: int = 0
    dropped: list[tuple[str, DropReason]] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def examined(self) -> int:
        return self.kept + len(self.dropped)


def clean(record: EditionRecord) -> Optional[DropReason]:
    """Return the drop reason for an unusable record, or None to keep it."""
    if record.identifier == "identifier":
        return DropReason.HEADER_ROW
    if record.format == "":
        return DropReason.EMPTY_FORMAT
    if record.format == "- ":
        return DropReason.DASH_FORMAT
    if record.collation == "":
        return DropReason.EMPTY_COLLATION
    if record.collation.endswith("#"):
        return DropReason.TRAILING_HASH
    if record.collation.endswith(" volumes"):
        return DropReason.VOLUMES_PLACEHOLDER
    return None


_CATALOGUE_QUERY = """
select distinct collation.cloi, fmt.format, collation.collation_ka,
       impressum.impressum_ju1sv, impressum.impressum_ju2sv,
       impressum.impressum_pc, impressum.impressum_pl,
       impressum.impressum_uc, impressum.impressum_ug
from collation
join (select distinct collation.cloi as id, collation.collation_fm as format
      from collation) as fmt
  on fmt.id = collation.cloi
join impressum on impressum.cloi = collation.cloi
"""

_REQUIRED_SCHEMA = {
    "collation": ("cloi", "collation_ka", "collation_fm"),
    "impressum": (
        "cloi",
        "impressum_ju1sv",
        "impressum_ju2sv",
        "impressum_pc",
        "impressum_pl",
        "impressum_uc",
        "impressum_ug",
    ),
}


def _check_schema(conn: sqlite3.Connection) -> None:
    for table, columns in _REQUIRED_SCHEMA.items():
        try:
            rows = conn.execute(f"pragma table_info({table})").fetchall()
        except sqlite3.DatabaseError as exc:
            raise FileUnreadableError(str(exc)) from exc
        present = {r[1] for r in rows}
        if not present:
            raise SchemaMismatchError(f"missing table {table!r}")
        missing = [c for c in columns if c not in present]
        if missing:
            raise SchemaMismatchError(
                f"table {table!r} lacks columns: {', '.join(missing)}"
            )


def _text(value: object) -> str:
    return "" if value is None else str(value)


def load_catalogue(path: str | Path) -> tuple[list[EditionRecord], CleanReport]:
    """Load joined catalogue rows from a SQLite file and clean them.

    Per-row conversion errors are logged and collected on the report rather
    than aborting the load.
    """
    path = Path(path)
    if not path.is_file():
        raise FileUnreadableError(f"no such file: {path}")
    try:
        conn = sqlite3.connect(f"file:{path}?mode=ro", uri=True)
    except sqlite3.Error as exc:
        raise FileUnreadableError(str(exc)) from exc
    report = CleanReport()
    records: list[EditionRecord] = []
    try:
        _check_schema(conn)
        try:
            cursor = conn.execute(_CATALOGUE_QUERY)
        except sqlite3.DatabaseError as exc:
            raise FileUnreadableError(str(exc)) from exc
        for row in cursor:
            try:
                record = EditionRecord(*(_text(v) for v in row))
            except Exception as exc:  # noqa: BLE001 - mirror tolerant row loop
                log.warning("Error: %r", row)
                report.errors.append(f"{row!r}: {exc}")
                continue
            reason = clean(record)
            if reason is not None:
                report.dropped.append((record.identifier, reason))
                continue
            report.kept += 1
            records.append(record)
    finally:
        conn.close()
    return records, report


def load_csv(path: str | Path) -> list[EditionRecord]:
    """Load records from a CSV with the nine record columns.

    A leading unnamed index column (as written by dataframe exports) is
    tolerated and skipped.
    """
    path = Path(path)
    if not path.is_file():
        raise FileUnreadableError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise HeaderMismatchError("file is empty") from None
        skip_index = False
        if header and header[0] == "" and tuple(header[1:]) == RECORD_COLUMNS:
            skip_index = True
        elif tuple(header) != RECORD_COLUMNS:
            raise HeaderMismatchError(
                f"expected columns {list(RECORD_COLUMNS)}, got {header}"
            )
        records = []
        for line_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if skip_index:
                row = row[1:]
            if len(row) != len(RECORD_COLUMNS):
                raise MalformedRowError(
                    line_number, f"expected {len(RECORD_COLUMNS)} fields, got {len(row)}"
                )
            records.append(EditionRecord(*row))
    return records


def export_rows(
    path: str | Path,
    records: Optional[Sequence[EditionRecord]] = None,
    vectors: Optional[Sequence] = None,
) -> None:
    """Write a row-level CSV.

    With both records and vectors (aligned, same length): nine record columns
    followed by the 34 feature columns.  With records only: the
    ``STCV_all.csv`` shape.  With vectors only: the ``STCV_quiring.csv`` shape.
    """
    if records is None and vectors is None:
        raise ValueError("nothing to export")
    if records is not None and vectors is not None and len(records) != len(vectors):
        raise ValueError(
            f"records and vectors must align: {len(records)} != {len(vectors)}"
        )
    header: list[str] = []
    if records is not None:
        header.extend(RECORD_COLUMNS)
    if vectors is not None:
        header.extend(QUIRING_COLUMNS)
    n = len(records) if records is not None else len(vectors)  # type: ignore[arg-type]
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for i in range(n):
                row: list = []
                if records is not None:
                    row.extend(records[i].as_row())
                if vectors is not None:
                    row.extend(vectors[i].as_list())
                writer.writerow(row)
    except OSError as exc:
        raise WriteFailureError(str(exc)) from exc
