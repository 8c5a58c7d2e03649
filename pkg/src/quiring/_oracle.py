"""Substring-scan feature oracle over raw formula strings.

A deliberately literal replica of a naive counting pass over the source
encoding (Unicode superscript digits, fraction slash for alternating sizes,
caret π/χ for superscript Greek prefixes).  A trailing space is appended so a
size superscript at the end of the string still counts; a size superscript
followed by any other character (a period, a closing parenthesis) is missed,
and a single superscript digit 2-7 followed by a non-space wrongly registers
as a multiple-series mark.  Those deficiencies are intentional: this module
exists only for differential testing of the AST-based extractor and is not
part of the public API.
"""

from __future__ import annotations

import re

from .features import QUIRING_COLUMNS

_SUP_DIGITS = "⁰¹²³⁴⁵⁶⁷⁸⁹"
_FRACTION_SLASH = "⁄"
_RUN_RE = re.compile(f"[{_SUP_DIGITS}{_FRACTION_SLASH}]+")

_ALTERNATING_PAIRS = ((4, 2), (4, 6), (4, 8), (6, 8), (8, 4), (8, 6))


def superscript(n: int) -> str:
    """Render an integer with Unicode superscript digits."""
    return "".join(_SUP_DIGITS[int(d)] for d in str(n))


def _runs(text: str) -> list[tuple[str, str]]:
    """Maximal superscript runs with the character that follows each run."""
    out = []
    for m in _RUN_RE.finditer(text):
        follower = text[m.end()] if m.end() < len(text) else ""
        out.append((m.group(0), follower))
    return out


def oracle_features(raw: str) -> dict[str, int]:
    """Presence flags for the 34 canonical columns, by substring scan."""
    collation = str(raw) + " "
    runs = _runs(collation)
    flags: dict[str, int] = {}
    for n in range(1, 21):
        token = superscript(n)
        flags[str(n)] = int(any(run == token and nxt == " " for run, nxt in runs))
    for a, b in _ALTERNATING_PAIRS:
        token = superscript(a) + _FRACTION_SLASH + superscript(b)
        flags[f"{a}/{b}"] = int(
            any(run == token and nxt == " " for run, nxt in runs)
        )
    for i, name in zip(
        range(2, 8),
        ("double", "triple", "quadruple", "quintuple", "sextuple", "septuple"),
    ):
        token = superscript(i)
        flags[name] = int(
            any(run == token and nxt and not nxt.isspace() for run, nxt in runs)
        )
    flags["pi"] = int("^π" in raw)
    flags["chi"] = int("^χ" in raw)
    assert tuple(flags) == QUIRING_COLUMNS
    return flags
