"""scikit-learn style wrappers around the normalizer and geodesic search.

Both transformers are stateless apart from the validated ``p``; ``fit``
only checks parameters. Inputs are sequences of words, each either a string
such as ``"aatT"`` / ``"a^3 t"`` or a sequence of letter codes.
"""

from __future__ import annotations

from typing import Iterable, List

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .normalizer import normalize
from .search import geodesic
from .words import Letter, Word, as_word, check_p, format_word, invert_word, parse_word

_OUTPUTS = ("word", "length")


def check_group_param(p) -> int:
    """Validate ``p`` the way the estimators do; raises ``ValueError``."""
    if isinstance(p, np.integer):
        p = int(p)
    return check_p(p)


def check_word(w) -> Word:
    """Coerce one sample into a :data:`~bsgeodesic.words.Word`."""
    if isinstance(w, np.ndarray) and w.ndim == 0:
        w = w.item()
    if isinstance(w, str):
        return parse_word(w)
    try:
        codes = [int(x) for x in w]
    except TypeError:
        raise TypeError(f"expected a word string or letter codes, got {type(w).__name__}") from None
    try:
        return as_word(codes)
    except KeyError as exc:
        raise ValueError(f"invalid letter code {exc.args[0]}") from None


def check_words(X) -> List[Word]:
    """Coerce a batch of samples; a 2-D array must have a single column."""
    if isinstance(X, str):
        raise TypeError("expected a sequence of words, got a single string")
    if isinstance(X, np.ndarray) and X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected one column of words, got {X.shape[1]}")
        X = X[:, 0]
    return [check_word(w) for w in X]


class _WordTransformer(TransformerMixin, BaseEstimator):
    def __init__(self, p: int = 2):
        self.p = p

    def fit(self, X=None, y=None):
        self.p_ = check_group_param(self.p)
        if X is not None:
            check_words(X)
        self.n_features_in_ = 1
        return self

    def _words(self, X) -> List[Word]:
        check_is_fitted(self, "p_")
        return check_words(X)


class NormalizerTransformer(_WordTransformer):
    """Maps each word to its canonical form ``t^-k a^e0 t ... a^eq t^-m``.

    ``transform`` returns a ``(n_samples, 1)`` object array of word strings
    representing the same elements as the inputs.
    """

    def transform(self, X):
        out = []
        for w in self._words(X):
            outcome = normalize(w, self.p_)
            word = outcome.word()
            if outcome.inverted:
                word = invert_word(word)
            out.append(format_word(word))
        return np.array(out, dtype=object).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.array(["canonical"], dtype=object)


class GeodesicTransformer(_WordTransformer):
    """Maps each word to a geodesic for it, or to its geodesic length.

    ``output="word"`` yields a ``(n_samples, 1)`` object array of strings;
    ``output="length"`` yields a ``(n_samples, 1)`` integer array.
    """

    def __init__(self, p: int = 2, output: str = "word"):
        super().__init__(p)
        self.output = output

    def fit(self, X=None, y=None):
        if self.output not in _OUTPUTS:
            raise ValueError(f"output must be one of {_OUTPUTS}, got {self.output!r}")
        return super().fit(X, y)

    def transform(self, X):
        results = [geodesic(w, self.p_) for w in self._words(X)]
        if self.output == "length":
            return np.array([r.length for r in results], dtype=np.int64).reshape(-1, 1)
        return np.array([format_word(r.word) for r in results], dtype=object).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        name = "geodesic_length" if self.output == "length" else "geodesic"
        return np.array([name], dtype=object)


def geodesic_lengths(words: Iterable, p: int) -> np.ndarray:
    """Convenience: geodesic lengths of a batch of words as a 1-D array."""
    return GeodesicTransformer(p=p, output="length").fit_transform(list(words)).ravel()


__all__ = [
    "GeodesicTransformer",
    "NormalizerTransformer",
    "check_group_param",
    "check_word",
    "check_words",
    "geodesic_lengths",
    "Letter",
]
