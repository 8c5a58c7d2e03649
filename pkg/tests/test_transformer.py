import numpy as np
import pytest
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from quiring import QUIRING_COLUMNS, QuiringFeaturizer


def test_transform_presence():
    model = QuiringFeaturizer().fit([])
    matrix = model.transform(["A-F⁴ G²", "π⁴ A-Z⁸ 2A⁶"])
    assert matrix.shape == (2, 34)
    assert matrix.dtype == np.int64
    columns = list(model.get_feature_names_out())
    assert columns == list(QUIRING_COLUMNS)
    assert matrix[0, columns.index("4")] == 1
    assert matrix[0, columns.index("2")] == 1
    assert set(matrix.flatten()) <= {0, 1}


def test_transform_counts():
    model = QuiringFeaturizer(mode="counts").fit([])
    matrix = model.transform(["A-F^4 G^2"])
    columns = list(model.get_feature_names_out())
    assert matrix[0, columns.index("4")] == 6
    assert matrix[0, columns.index("2")] == 1


def test_custom_alphabet():
    model = QuiringFeaturizer(mode="counts", alphabet=tuple("ABCDEF")).fit([])
    matrix = model.transform(["A-F^4"])
    assert matrix[0, list(model.get_feature_names_out()).index("4")] == 6


def test_on_error_raise_and_zero():
    strict = QuiringFeaturizer().fit([])
    with pytest.raises(ValueError):
        strict.transform([")("])
    lenient = QuiringFeaturizer(on_error="zero").fit([])
    matrix = lenient.transform([")(", "A⁸"])
    assert matrix[0].sum() == 0
    assert matrix[1].sum() == 1


def test_not_fitted():
    model = QuiringFeaturizer()
    with pytest.raises(NotFittedError):
        model.transform(["A⁸"])
    with pytest.raises(NotFittedError):
        model.get_feature_names_out()


def test_invalid_params_rejected_at_fit():
    with pytest.raises(ValueError):
        QuiringFeaturizer(mode="frequencies").fit([])
    with pytest.raises(ValueError):
        QuiringFeaturizer(on_error="ignore").fit([])


def test_empty_input_gives_empty_matrix():
    model = QuiringFeaturizer().fit([])
    assert model.transform([]).shape == (0, 34)


def test_get_params_round_trip():
    model = QuiringFeaturizer(mode="counts", on_error="zero")
    params = model.get_params()
    assert params["mode"] == "counts"
    assert params["on_error"] == "zero"
    clone = QuiringFeaturizer(**params).fit([])
    assert clone.mode == "counts"


def test_works_in_pipeline():
    pipeline = make_pipeline(QuiringFeaturizer())
    matrix = pipeline.fit_transform(["A-F⁴ G²"])
    assert matrix.shape == (1, 34)
