import json
import sqlite3
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def corpus() -> list[str]:
    text = (DATA_DIR / "conformance_corpus.txt").read_text(encoding="utf-8")
    return text.splitlines()


@pytest.fixture(scope="session")
def truncation_catalogue() -> dict:
    return json.loads(
        (DATA_DIR / "truncated_divergences.json").read_text(encoding="utf-8")
    )


@pytest.fixture(scope="session")
def stcv_rows_csv() -> Path:
    return DATA_DIR / "stcv_rows.csv"


@pytest.fixture(scope="session")
def fixture_db(tmp_path_factory) -> Path:
    """The 30-row catalogue fixture, materialized as a SQLite file."""
    path = tmp_path_factory.mktemp("catalogue") / "fixture.sqlite"
    conn = sqlite3.connect(path)
    conn.executescript(
        (DATA_DIR / "fixture_catalogue.sql").read_text(encoding="utf-8")
    )
    conn.commit()
    conn.close()
    return path


@pytest.fixture(scope="session")
def empty_db(tmp_path_factory) -> Path:
    """A catalogue with the right schema and no rows."""
    path = tmp_path_factory.mktemp("catalogue") / "empty.sqlite"
    conn = sqlite3.connect(path)
    conn.execute("create table collation (cloi, collation_ka, collation_fm)")
    conn.execute(
        "create table impressum (cloi, impressum_ju1sv, impressum_ju2sv,"
        " impressum_pc, impressum_pl, impressum_uc, impressum_ug)"
    )
    conn.commit()
    conn.close()
    return path


#: The untruncated displayed catalogue rows with their known feature flags.
GOLDEN_ROWS = [
    ("1# π⁴ A- Z⁸ 2A⁶", {"4", "6", "8"}),
    ("3# [A] ⁸ B- Z⁸ (Z8 blank)", {"8"}),
    ("8# [A] ⁸ B- 2A⁸ (2A8 blank)", {"8"}),
    ("9# [A] ⁸ B- Z⁸ 2A⁶", {"6", "8"}),
    ("11# [A] ⁸ B- Y⁸", {"8"}),
]


@pytest.fixture(scope="session")
def golden_rows():
    return GOLDEN_ROWS
