"""Collation formula parsing and quiring-practice analytics."""

from .analytics import (
    CANONICAL_FORMATS,
    AggregateRow,
    AggregateTable,
    FeatureTable,
    FilterSpec,
    export_table,
    featurize,
    filter_table,
    load_place_set,
    pivot_centuries,
    pivot_evolution,
    pivot_formats,
    sum_features,
)
from .charts import render_bar, render_legend, render_stacked
from .errors import (
    EmptyInputError,
    EmptyRangeError,
    FileUnreadableError,
    HeaderMismatchError,
    LetterNotInAlphabetError,
    MalformedRowError,
    QuiringError,
    SchemaMismatchError,
    UnknownFormatError,
    WriteFailureError,
)
from .features import (
    QUIRING_COLUMNS,
    QuiringCounts,
    QuiringVector,
    extract_counts,
    extract_features,
    vector_columns,
)
from .grammar import (
    DEFAULT_ALPHABET,
    Alternating,
    Annotation,
    BlankLeaf,
    CollationFormula,
    GatheringItem,
    GreekPrefix,
    Insertion,
    MarkClass,
    NormalizedFormula,
    ParseFailure,
    ParseReason,
    ParseReport,
    RawNote,
    Signature,
    SizeSpec,
    Uniform,
    expand_range,
    normalize,
    parse,
    range_length,
    serialize,
    structurally_equal,
    tokenize,
    walk_items,
)
from .ingest import (
    RECORD_COLUMNS,
    CleanReport,
    DropReason,
    EditionRecord,
    clean,
    export_rows,
    load_catalogue,
    load_csv,
)
from .transformer import QuiringFeaturizer

__version__ = "0.1.0"
