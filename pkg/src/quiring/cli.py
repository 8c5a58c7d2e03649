"""Command-line front end: ingest → featurize → filter → aggregate → export.

Subcommands mirror the analysis pipeline: ``ingest`` writes the cleaned
row-level CSV, ``features`` the feature CSVs, ``sum`` prints filtered column
sums, ``pivot`` writes the format/century/evolution tables and ``plot``
emits SVG charts plus a separate legend.  Diagnostics go to standard error;
``--summary`` writes a machine-readable JSON run summary.
"""

from __future__ import annotations

import json
import sys
from collections import Counter
from pathlib import Path

import click

from . import analytics, charts
from .errors import QuiringError
from .ingest import (
    CleanReport,
    EditionRecord,
    clean,
    export_rows,
    load_catalogue,
    load_csv,
)

OUT_ALL = "STCV_all.csv"
OUT_QUIRING = "STCV_quiring.csv"
OUT_ALL_QUIRING = "STCV_all_quiring.csv"
OUT_FORMATS = "STCV_formats_vs_quiring.csv"
OUT_CENTURIES = "STCV_centuries_vs_quiring.csv"
OUT_EVOLUTION = "STCV_evolution_vs_quiring.csv"


class _Run:
    def __init__(self, db, csv_path, out, paper_compat, alphabet, summary):
        self.db = db
        self.csv_path = csv_path
        self.out = Path(out)
        self.paper_compat = paper_compat
        self.alphabet = alphabet
        self.summary_path = summary
        self.clean_report: CleanReport | None = None
        self.parse_failures: list[tuple[str, str]] = []

    def load_records(self) -> list[EditionRecord]:
        if self.db is None and self.csv_path is None:
            raise click.UsageError("provide an input with --db or --csv")
        if self.db is not None:
            records, report = load_catalogue(self.db)
        else:
            report = CleanReport()
            records = []
            for record in load_csv(self.csv_path):
                reason = clean(record)
                if reason is None:
                    report.kept += 1
                    records.append(record)
                else:
                    report.dropped.append((record.identifier, reason))
        self.clean_report = report
        for identifier, reason in report.dropped:
            click.echo(f"dropped {identifier}: {reason.value}", err=True)
        return records

    def load_table(self) -> analytics.FeatureTable:
        table, errors = analytics.featurize(self.load_records())
        self.parse_failures = errors
        for identifier, message in errors:
            click.echo(f"parse failure {identifier}: {message}", err=True)
        return table

    def load_alphabet(self) -> tuple[str, ...] | None:
        if self.alphabet is None:
            return None
        letters = Path(self.alphabet).read_text(encoding="utf-8").split()
        if not letters:
            raise click.UsageError(f"alphabet file {self.alphabet} is empty")
        return tuple(letters)

    def write_summary(self) -> None:
        if self.summary_path is None:
            return
        report = self.clean_report or CleanReport()
        dropped = Counter(reason.value for _, reason in report.dropped)
        payload = {
            "rows_examined": report.examined,
            "kept": report.kept,
            "dropped": dict(sorted(dropped.items())),
            "parse_failures": len(self.parse_failures),
        }
        Path(self.summary_path).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )


@click.group()
@click.option("--db", type=click.Path(), default=None, help="SQLite catalogue file.")
@click.option("--csv", "csv_path", type=click.Path(), default=None,
              help="Row-level CSV input (STCV_all.csv shape).")
@click.option("--out", type=click.Path(), default=".", show_default=True,
              help="Output directory.")
@click.option("--paper-compat", is_flag=True,
              help="Century pivots use legacy half-open year ranges (xx00-xx98).")
@click.option("--alphabet", type=click.Path(), default=None,
              help="Signing alphabet file, letters separated by whitespace.")
@click.option("--summary", type=click.Path(), default=None,
              help="Write a JSON run summary to this path.")
@click.pass_context
def cli(ctx, db, csv_path, out, paper_compat, alphabet, summary):
    """Quiring-practice analysis of collation formulas."""
    ctx.obj = _Run(db, csv_path, out, paper_compat, alphabet, summary)
    ctx.obj.out.mkdir(parents=True, exist_ok=True)


@cli.command()
@click.pass_obj
def ingest(run: _Run):
    """Load and clean the catalogue; write the row-level CSV."""
    records = run.load_records()
    target = run.out / OUT_ALL
    export_rows(target, records=records)
    run.write_summary()
    click.echo(f"wrote {target} ({len(records)} records)")


@cli.command()
@click.option("--counts", is_flag=True,
              help="Write gathering counts (ranges expanded) instead of presence flags.")
@click.pass_obj
def features(run: _Run, counts):
    """Featurize records; write the feature and combined CSVs."""
    from .features import extract_counts, extract_features
    from .grammar import DEFAULT_ALPHABET, parse

    records = run.load_records()
    alphabet = run.load_alphabet() or DEFAULT_ALPHABET
    kept_records = []
    vectors = []
    for record in records:
        report = parse(record.collation)
        if not report.ok:
            run.parse_failures.append(
                (record.identifier, report.failure.reason.value)
            )
            click.echo(
                f"parse failure {record.identifier}: {report.failure.reason.value}",
                err=True,
            )
            continue
        kept_records.append(record)
        if counts:
            vectors.append(extract_counts(report.formula, alphabet))
        else:
            vectors.append(extract_features(report.formula))
    export_rows(run.out / OUT_QUIRING, vectors=vectors)
    export_rows(run.out / OUT_ALL_QUIRING, records=kept_records, vectors=vectors)
    run.write_summary()
    click.echo(f"wrote {run.out / OUT_QUIRING} and {run.out / OUT_ALL_QUIRING} "
               f"({len(vectors)} rows)")


def _years_option(value: str | None) -> tuple[int, int] | None:
    if value is None:
        return None
    try:
        lo_text, hi_text = value.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise click.UsageError(f"--years expects LO:HI, got {value!r}") from None
    if lo > hi:
        raise click.UsageError(f"--years range is empty: {value!r}")
    return lo, hi


def _spec_from_options(run, fmt, years, place_set, per_edition) -> analytics.FilterSpec:
    place_codes = None
    if place_set is not None:
        place_codes = analytics.load_place_set(place_set)
    return analytics.FilterSpec(
        format_equals=fmt,
        year_range=_years_option(years),
        place_codes=place_codes,
        per_edition=per_edition,
    )


_FORMAT_CHOICE = click.Choice(analytics.CANONICAL_FORMATS)


@cli.command("sum")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default=None)
@click.option("--years", default=None, help="Inclusive year range LO:HI on year1.")
@click.option("--place-set", type=click.Path(exists=True), default=None,
              help="File of place codes, one per line.")
@click.option("--per-edition", is_flag=True,
              help="OR flags across an identifier's rows before summing.")
@click.pass_obj
def sum_cmd(run: _Run, fmt, years, place_set, per_edition):
    """Print columnwise sums for the filtered corpus as CSV."""
    spec = _spec_from_options(run, fmt, years, place_set, per_edition)
    table = run.load_table()
    filtered = analytics.filter_table(table, spec)
    row = analytics.sum_features(filtered, label="sum", per_edition=per_edition)
    click.echo(",".join(["label", *analytics.QUIRING_COLUMNS]))
    click.echo(",".join([row.label, *map(str, row.as_list())]))
    run.write_summary()


_PIVOTS = {
    "formats": (analytics.pivot_formats, OUT_FORMATS, False),
    "centuries": (analytics.pivot_centuries, OUT_CENTURIES, True),
    "evolution": (analytics.pivot_evolution, OUT_EVOLUTION, True),
}


@cli.command()
@click.option("--by", type=click.Choice(sorted(_PIVOTS)), required=True)
@click.option("--per-edition", is_flag=True)
@click.pass_obj
def pivot(run: _Run, by, per_edition):
    """Write a pivot table CSV (formats, centuries or evolution)."""
    table = run.load_table()
    builder, filename, takes_compat = _PIVOTS[by]
    kwargs = {"per_edition": per_edition}
    if takes_compat:
        kwargs["compat"] = run.paper_compat
    result = builder(table, **kwargs)
    target = run.out / filename
    analytics.export_table(result, target)
    run.write_summary()
    click.echo(f"wrote {target} ({len(result.rows)} rows)")


@cli.command()
@click.option("--kind", type=click.Choice(["bar", "stacked"]), required=True)
@click.option("--by", type=click.Choice(sorted(_PIVOTS)), default="formats",
              show_default=True, help="Pivot used for stacked charts.")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default=None)
@click.option("--years", default=None)
@click.option("--place-set", type=click.Path(exists=True), default=None)
@click.option("--per-edition", is_flag=True)
@click.option("--title", default=None)
@click.pass_obj
def plot(run: _Run, kind, by, fmt, years, place_set, per_edition, title):
    """Render a bar or stacked-bar chart to chart.svg plus legend.svg."""
    spec = _spec_from_options(run, fmt, years, place_set, per_edition)
    table = run.load_table()
    if kind == "bar":
        filtered = analytics.filter_table(table, spec)
        row = analytics.sum_features(filtered, per_edition=per_edition)
        svg = charts.render_bar(row, title or "General")
    else:
        builder, _, takes_compat = _PIVOTS[by]
        kwargs = {"per_edition": per_edition}
        if takes_compat:
            kwargs["compat"] = run.paper_compat
        result = builder(table, **kwargs)
        svg = charts.render_stacked(result, title or by.capitalize())
    chart_path = run.out / "chart.svg"
    legend_path = run.out / "legend.svg"
    chart_path.write_text(svg, encoding="utf-8")
    legend_path.write_text(charts.render_legend(), encoding="utf-8")
    run.write_summary()
    click.echo(f"wrote {chart_path} and {legend_path}")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 2
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.exceptions.Abort:
        return 1
    except QuiringError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
