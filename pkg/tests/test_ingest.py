import csv

import pytest

from quiring import (
    DropReason,
    EditionRecord,
    FileUnreadableError,
    HeaderMismatchError,
    MalformedRowError,
    RECORD_COLUMNS,
    SchemaMismatchError,
    clean,
    export_rows,
    load_catalogue,
    load_csv,
)


def _record(**kwargs):
    base = dict(identifier="c:test:1", format="octavo", collation="A-F⁸")
    base.update(kwargs)
    return EditionRecord(**base)


class TestClean:
    def test_keeps_good_record(self):
        assert clean(_record()) is None

    def test_empty_format(self):
        assert clean(_record(format="")) is DropReason.EMPTY_FORMAT

    def test_dash_format(self):
        assert clean(_record(format="- ")) is DropReason.DASH_FORMAT

    def test_empty_collation(self):
        assert clean(_record(collation="")) is DropReason.EMPTY_COLLATION

    def test_trailing_hash(self):
        assert clean(_record(collation="16#")) is DropReason.TRAILING_HASH

    def test_volumes_placeholder(self):
        assert clean(_record(collation="16 volumes")) is DropReason.VOLUMES_PLACEHOLDER

    def test_header_row(self):
        assert clean(_record(identifier="identifier")) is DropReason.HEADER_ROW

    def test_predicate_order_format_first(self):
        # a record failing several predicates reports the format one
        assert clean(_record(format="", collation="")) is DropReason.EMPTY_FORMAT


def test_load_catalogue_fixture(fixture_db):
    records, report = load_catalogue(fixture_db)
    assert report.kept == 26
    assert report.examined == 30
    assert len(records) == 26
    reasons = {identifier: reason for identifier, reason in report.dropped}
    assert reasons == {
        "c:test:9000027": DropReason.EMPTY_FORMAT,
        "c:test:9000028": DropReason.DASH_FORMAT,
        "c:test:9000029": DropReason.TRAILING_HASH,
        "c:test:9000030": DropReason.VOLUMES_PLACEHOLDER,
    }
    assert report.errors == []


def test_load_catalogue_fields(fixture_db):
    records, _ = load_catalogue(fixture_db)
    by_id = {r.identifier: r for r in records}
    r = by_id["c:test:9000003"]
    assert r.collation == "π⁴ A-Z⁸ 2A⁶"
    assert (r.format, r.year1, r.year2) == ("octavo", "1787", "1789")
    assert (r.place_code, r.place_name) == ("a::91.493.8000:1.13", "Brugge")
    assert r.publisher_name == "De Busscher, Joseph"


def test_load_catalogue_empty(empty_db):
    records, report = load_catalogue(empty_db)
    assert records == []
    assert report.examined == 0


def test_load_catalogue_missing_file(tmp_path):
    with pytest.raises(FileUnreadableError):
        load_catalogue(tmp_path / "nope.sqlite")


def test_load_catalogue_not_a_database(tmp_path):
    path = tmp_path / "garbage.sqlite"
    path.write_bytes(b"this is not a sqlite file, just bytes\n" * 20)
    with pytest.raises((FileUnreadableError, SchemaMismatchError)):
        load_catalogue(path)


def test_load_catalogue_schema_mismatch(tmp_path):
    import sqlite3

    path = tmp_path / "wrong.sqlite"
    conn = sqlite3.connect(path)
    conn.execute("create table collation (cloi, collation_ka)")  # no format col
    conn.commit()
    conn.close()
    with pytest.raises(SchemaMismatchError):
        load_catalogue(path)


def test_load_csv_fixture(stcv_rows_csv):
    records = load_csv(stcv_rows_csv)
    assert len(records) == 11
    assert all(r.identifier == "c:stcv:12840621" for r in records)
    assert records[0].collation == "1# π⁴ A- Z⁸ 2A⁶"


def test_load_csv_tolerates_index_column(tmp_path):
    path = tmp_path / "indexed.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["", *RECORD_COLUMNS])
        writer.writerow(["0", "c:test:1", "octavo", "A⁸", "", "", "", "", "", ""])
    records = load_csv(path)
    assert len(records) == 1
    assert records[0].identifier == "c:test:1"


def test_load_csv_header_mismatch(tmp_path):
    path = tmp_path / "bad_header.csv"
    path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
    with pytest.raises(HeaderMismatchError):
        load_csv(path)


def test_load_csv_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(HeaderMismatchError):
        load_csv(path)


def test_load_csv_malformed_row(tmp_path):
    path = tmp_path / "short_row.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_COLUMNS)
        writer.writerow(["only", "three", "fields"])
    with pytest.raises(MalformedRowError) as excinfo:
        load_csv(path)
    assert excinfo.value.line_number == 2


def test_export_rows_round_trip(tmp_path, fixture_db):
    records, _ = load_catalogue(fixture_db)
    path = tmp_path / "out.csv"
    export_rows(path, records=records)
    assert load_csv(path) == records


def test_export_rows_preserves_greek(tmp_path):
    records = [
        _record(collation="π⁴ A-Z⁸ 2A⁶"),
        _record(identifier="c:test:2", collation="C⁸ (C3 + χD² )"),
    ]
    path = tmp_path / "greek.csv"
    export_rows(path, records=records)
    again = load_csv(path)
    assert [r.collation for r in again] == ["π⁴ A-Z⁸ 2A⁶", "C⁸ (C3 + χD² )"]


def test_export_rows_alignment_checked(tmp_path):
    with pytest.raises(ValueError):
        export_rows(tmp_path / "x.csv", records=[_record()], vectors=[])
    with pytest.raises(ValueError):
        export_rows(tmp_path / "x.csv")
