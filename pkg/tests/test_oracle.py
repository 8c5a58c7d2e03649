"""The substring oracle: literal behavior, warts included."""

from quiring._oracle import oracle_features, superscript


def _nonzero(flags):
    return {k: v for k, v in flags.items() if v}


def test_superscript_rendering():
    assert superscript(8) == "⁸"
    assert superscript(12) == "¹²"
    assert superscript(20) == "²⁰"


def test_golden_rows(golden_rows):
    for raw, expected in golden_rows:
        assert set(_nonzero(oracle_features(raw))) == expected, raw


def test_empty_string_all_zero():
    flags = oracle_features("")
    assert set(flags) == set(flags)
    assert all(v == 0 for v in flags.values())


def test_values_binary(corpus):
    for s in corpus:
        assert set(oracle_features(s).values()) <= {0, 1}


def test_trailing_space_insensitive(corpus):
    for s in corpus:
        assert oracle_features(s) == oracle_features(s + " ")


def test_multidigit_size_does_not_leak_suffix():
    # ¹² must count as 12, not as 1 or 2
    flags = oracle_features("A¹²")
    assert _nonzero(flags) == {"12": 1}


def test_alternating_does_not_leak_components():
    flags = oracle_features("A-D⁴⁄²")
    assert _nonzero(flags) == {"4/2": 1}


def test_series_prefix_counts_as_multiple_not_size():
    flags = oracle_features("²A-F⁴")
    assert _nonzero(flags) == {"4": 1, "double": 1}


def test_size_before_period_is_missed():
    # the documented deficiency: ⁴ followed by "." is neither a size nor safe
    flags = oracle_features("10# [A]⁸ B-Z⁸ 2A⁴...")
    assert flags["4"] == 0
    assert flags["quadruple"] == 1
    assert flags["8"] == 1


def test_size_before_close_paren_is_missed():
    assert oracle_features("A⁸ (A5 + ^χA² B-D⁸)")["8"] == 1  # earlier ⁸ counts
    assert _nonzero(oracle_features("(B-D⁴)")) == {"quadruple": 1}


def test_caret_pi_chi_only():
    assert oracle_features("π⁴ A-Z⁸")["pi"] == 0
    assert oracle_features("^πA⁴")["pi"] == 1
    assert oracle_features("^χB²")["chi"] == 1
