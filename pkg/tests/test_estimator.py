import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from bsgeodesic.estimator import (
    GeodesicTransformer,
    NormalizerTransformer,
    check_group_param,
    check_word,
    check_words,
    geodesic_lengths,
)
from bsgeodesic.words import evaluate, parse_word

WORDS = ["AtAtaTT", "aaaaaa", "T", "", "taT"]


def test_params_round_trip():
    est = GeodesicTransformer(p=3, output="length")
    assert est.get_params() == {"p": 3, "output": "length"}
    est.set_params(p=5)
    assert est.p == 5
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est


def test_geodesic_words():
    out = GeodesicTransformer(p=2).fit_transform(WORDS)
    assert out.shape == (5, 1) and out.dtype == object
    assert list(out[:, 0]) == ["a", "taaaT", "T", "", "aa"]


def test_geodesic_lengths():
    out = GeodesicTransformer(p=2, output="length").fit(WORDS).transform(WORDS)
    assert out.dtype == np.int64
    assert out.ravel().tolist() == [1, 5, 1, 0, 2]
    assert geodesic_lengths(WORDS, 2).tolist() == [1, 5, 1, 0, 2]


def test_normalizer_outputs_equal_elements():
    out = NormalizerTransformer(p=2).fit_transform(WORDS)
    assert out[1, 0] == "taaaT"
    for w, n in zip(WORDS, out[:, 0]):
        assert evaluate(parse_word(n), 2) == evaluate(parse_word(w), 2)


def test_feature_names():
    assert list(NormalizerTransformer().get_feature_names_out()) == ["canonical"]
    assert list(GeodesicTransformer(output="length").get_feature_names_out()) == ["geodesic_length"]
    assert list(GeodesicTransformer().get_feature_names_out()) == ["geodesic"]


def test_accepts_column_arrays_and_codes():
    X = np.array(WORDS, dtype=object).reshape(-1, 1)
    est = GeodesicTransformer(p=2, output="length").fit(X)
    assert est.n_features_in_ == 1
    assert est.transform(X).ravel().tolist() == [1, 5, 1, 0, 2]
    assert est.transform([[2, 1, -2]]).ravel().tolist() == [2]


def test_pipeline():
    pipe = make_pipeline(NormalizerTransformer(p=2), GeodesicTransformer(p=2, output="length"))
    assert pipe.fit_transform(WORDS).ravel().tolist() == [1, 5, 1, 0, 2]
    pipe = make_pipeline(GeodesicTransformer(p=2, output="length"), FunctionTransformer(np.sqrt))
    assert pipe.fit_transform(["aaaa"])[0, 0] == 2.0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        GeodesicTransformer().transform(["a"])


@pytest.mark.parametrize("p", [1, 0, -3, 2.5, "2"])
def test_bad_p(p):
    with pytest.raises((ValueError, TypeError)):
        GeodesicTransformer(p=p).fit(["a"])


def test_numpy_integer_p():
    assert check_group_param(np.int64(3)) == 3


def test_bad_output():
    with pytest.raises(ValueError):
        GeodesicTransformer(output="tree").fit(["a"])


def test_validation_helpers():
    assert check_word("a^2 t") == parse_word("aat")
    assert check_word(np.array("tT")) == parse_word("tT")
    with pytest.raises(ValueError):
        check_word([1, 3])
    with pytest.raises(TypeError):
        check_word(5)
    with pytest.raises(TypeError):
        check_words("at")
    with pytest.raises(ValueError):
        check_words(np.array([["a", "t"]], dtype=object))
