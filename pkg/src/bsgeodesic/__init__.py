"""Linear-time geodesics for the Baumslag-Solitar groups BS(1, p)."""

from .buffer import OrderUndecidable, StrikeTable, WordBuffer, buffer_from_word, read_out
from .estimator import GeodesicTransformer, NormalizerTransformer
from .normalizer import CanonicalForm, NormalizeOutcome, normalize
from .oracle import Ball, CapacityExceeded, OutOfBall, build_ball, check_geodesic, oracle_distance
from .search import GeodesicResult, LevelFrontier, advance_level, best_suffix, geodesic
from .words import (
    GroupElement,
    Letter,
    ParseError,
    Word,
    WordForm,
    classify_form,
    evaluate,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
    t_exponent_sum,
)

__all__ = [
    "Ball", "CanonicalForm", "CapacityExceeded", "GeodesicResult", "GeodesicTransformer",
    "GroupElement", "Letter", "LevelFrontier", "NormalizeOutcome", "NormalizerTransformer",
    "OrderUndecidable", "OutOfBall", "ParseError", "StrikeTable", "Word", "WordBuffer",
    "WordForm", "advance_level", "best_suffix", "buffer_from_word", "build_ball",
    "check_geodesic", "classify_form", "evaluate", "format_word", "free_reduce", "geodesic",
    "invert_word", "normalize", "oracle_distance", "parse_word", "read_out", "t_exponent_sum",
]
