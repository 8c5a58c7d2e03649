"""Quiring feature extraction: the 34-column presence vector and count mode.

The schema covers uniform gathering sizes 1-20, six alternating size pairs,
multiple-series usage (double through septuple) and superscript π/χ inserted
gatherings.  Observations outside the schema (sizes above 20, other
alternating pairs, plain π/χ marks) are reported in a side channel of extras
instead of being dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .grammar import (
    DEFAULT_ALPHABET,
    Alternating,
    CollationFormula,
    MarkClass,
    Uniform,
    range_length,
    walk_items,
)

_SIZE_COLUMNS = tuple(str(n) for n in range(1, 21))
_ALTERNATING_COLUMNS = ("4/2", "4/6", "4/8", "6/8", "8/4", "8/6")
_SERIES_COLUMNS = ("double", "triple", "quadruple", "quintuple", "sextuple", "septuple")
_GREEK_COLUMNS = ("pi", "chi")

#: The canonical 34 column names, in schema order.
QUIRING_COLUMNS: tuple[str, ...] = (
    _SIZE_COLUMNS + _ALTERNATING_COLUMNS + _SERIES_COLUMNS + _GREEK_COLUMNS
)

_SERIES_BY_INDEX = {i + 2: name for i, name in enumerate(_SERIES_COLUMNS)}


def vector_columns() -> list[str]:
    """Return the 34 canonical column names in order."""
    return list(QUIRING_COLUMNS)


@dataclass(frozen=True)
class QuiringVector:
    """Presence flags (0/1) over the 34 canonical columns."""

    flags: dict[str, int]
    extras: dict[str, int] = field(default_factory=dict)

    def as_list(self) -> list[int]:
        return [self.flags[c] for c in QUIRING_COLUMNS]


@dataclass(frozen=True)
class QuiringCounts:
    """Gathering counts over the 34 canonical columns, ranges expanded."""

    counts: dict[str, int]
    extras: dict[str, int] = field(default_factory=dict)

    def as_list(self) -> list[int]:
        return [self.counts[c] for c in QUIRING_COLUMNS]


def _accumulate(formula: CollationFormula, weigh) -> tuple[dict[str, int], dict[str, int]]:
    values = {c: 0 for c in QUIRING_COLUMNS}
    extras: dict[str, int] = {}

    def bump_extra(key: str, by: int) -> None:
        extras[key] = extras.get(key, 0) + by

    for item in walk_items(formula):
        w = weigh(item)
        size = item.size
        if isinstance(size, Uniform):
            if 1 <= size.leaves <= 20:
                values[str(size.leaves)] += w
            else:
                bump_extra(f"size:{size.leaves}", w)
        else:
            key = f"{size.first}/{size.second}"
            if key in values:
                values[key] += w
            else:
                bump_extra(f"alternating:{key}", w)

        # Series and π/χ properties ride on the start signature; a prefix on a
        # range (^2A-F^4) covers every expanded gathering.
        sig = item.start
        if sig.series_index in _SERIES_BY_INDEX:
            values[_SERIES_BY_INDEX[sig.series_index]] += w
        elif sig.series_index > 1:
            bump_extra(f"series:{sig.series_index}", w)
        if sig.mark_class is MarkClass.PI:
            bump_extra("plain-pi", w)
        elif sig.mark_class is MarkClass.CHI:
            bump_extra("plain-chi", w)
        if sig.prefix is not None:
            name = "pi" if sig.prefix.letter == "π" else "chi"
            if sig.prefix.superscript:
                values[name] += w
            else:
                bump_extra(f"plain-{name}", w)
    return values, extras


def extract_features(formula: CollationFormula) -> QuiringVector:
    """Map a parsed formula to the 34 presence flags.

    A flag is 1 when any gathering item (inserted items included) exhibits the
    column's property.  Plain, non-superscript π/χ marks do not set the pi/chi
    flags; they surface in the extras channel instead.
    """
    values, extras = _accumulate(formula, lambda item: 1)
    flags = {c: (1 if values[c] else 0) for c in QUIRING_COLUMNS}
    return QuiringVector(flags=flags, extras=extras)


def extract_counts(
    formula: CollationFormula, alphabet: Sequence[str] = DEFAULT_ALPHABET
) -> QuiringCounts:
    """Count gatherings per column, expanding signature ranges.

    ``A-F^4 G^2`` counts six gatherings of four leaves and one of two.
    Raises LetterNotInAlphabetError when a range endpoint is not in the
    signing alphabet.
    """
    values, extras = _accumulate(
        formula, lambda item: range_length(item, alphabet)
    )
    return QuiringCounts(counts=values, extras=extras)
