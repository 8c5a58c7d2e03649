"""scikit-learn compatible featurizer over collation formula strings."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .features import extract_counts, extract_features, vector_columns
from .grammar import DEFAULT_ALPHABET, parse


class QuiringFeaturizer(TransformerMixin, BaseEstimator):
    """Transform collation formula strings into the 34-column feature matrix.

    Parameters
    ----------
    mode : "presence" or "counts"
        Presence flags (0/1) or gathering counts with ranges expanded.
    alphabet : sequence of letters, optional
        Signing alphabet used to expand ranges in counts mode; defaults to
        the 23-letter hand-press alphabet.
    on_error : "raise" or "zero"
        What to do with unparseable strings: raise ValueError, or emit an
        all-zero row.
    """

    def __init__(
        self,
        mode: str = "presence",
        alphabet: Optional[Sequence[str]] = None,
        on_error: str = "raise",
    ) -> None:
        self.mode = mode
        self.alphabet = alphabet
        self.on_error = on_error

    def fit(self, X: Iterable[str], y=None) -> "QuiringFeaturizer":
        if self.mode not in ("presence", "counts"):
            raise ValueError(f"mode must be 'presence' or 'counts', got {self.mode!r}")
        if self.on_error not in ("raise", "zero"):
            raise ValueError(f"on_error must be 'raise' or 'zero', got {self.on_error!r}")
        self.columns_ = vector_columns()
        return self

    def transform(self, X: Iterable[str]) -> np.ndarray:
        if not hasattr(self, "columns_"):
            raise NotFittedError("QuiringFeaturizer is not fitted; call fit first")
        alphabet = tuple(self.alphabet) if self.alphabet else DEFAULT_ALPHABET
        rows = []
        for value in X:
            report = parse(str(value))
            if not report.ok:
                if self.on_error == "raise":
                    raise ValueError(
                        f"unparseable collation {value!r}: "
                        f"{report.failure.reason.value} at {report.failure.position}"
                    )
                rows.append([0] * len(self.columns_))
                continue
            if self.mode == "counts":
                rows.append(extract_counts(report.formula, alphabet).as_list())
            else:
                rows.append(extract_features(report.formula).as_list())
        return np.asarray(rows, dtype=np.int64).reshape(-1, len(self.columns_))

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        if not hasattr(self, "columns_"):
            raise NotFittedError("QuiringFeaturizer is not fitted; call fit first")
        return np.asarray(self.columns_, dtype=object)
