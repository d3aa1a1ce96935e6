"""Part 2: turn a canonical form into a geodesic.

Write the canonical word as ``t^-k u t^-m`` with
``u = a^e0 t a^e1 ... t a^eq``. After the forced ``t^-k`` prefix, a shortest
path only needs to know, at each level ``j`` of ``u``, the distances to the
vertex ``u`` passes through and its two a-neighbours. Those three labels are
pushed up one level at a time by :func:`advance_level`. At the top the path
either finishes with a geodesic for the leftover power of ``a``
(:func:`best_suffix`) or, when ``m > 0``, turns down early at some level and
walks straight to the point above the endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .normalizer import CanonicalForm, normalize
from .words import Word, WordForm, as_word, check_p, classify_form, free_reduce, invert_word, t_exponent_sum

INF = 1 << 62
COORDS = (-1, 0, 1)

# (coordinate left at the level below, a-exponent there, a-exponent after
# climbing); the path to a vertex is the path to that lower coordinate
# followed by a^lower t a^upper
Via = Tuple[int, int, int]


@dataclass(frozen=True)
class LevelFrontier:
    """Distance labels at coordinates -1, 0, 1 around ``u`` at one level."""

    level: int
    dist: Tuple[int, int, int]
    via: Tuple[Optional[Via], Optional[Via], Optional[Via]] = (None, None, None)
    u_coord: int = 0

    @property
    def candidates(self) -> List[Tuple[int, int, Optional[Via]]]:
        return [(self.u_coord + c, d, v)
                for c, d, v in zip(COORDS, self.dist, self.via) if d < INF]

    def label(self, coord: int) -> int:
        return self.dist[coord - self.u_coord + 1]


def base_frontier(level: int = 0) -> LevelFrontier:
    return LevelFrontier(level, (INF, 0, INF))


def advance_level(f: LevelFrontier, eps: int, p: int, clamp: bool = True) -> LevelFrontier:
    """Labels one level up, after ``u`` reads ``a^eps t``.

    The foot of ``u``'s t-edge is ``x = u_coord + eps``; the new candidates sit
    above ``x - p, x, x + p``. Each gets ``min_c dist(c) + |c - e| + 1``; with
    ``clamp`` the labels are then relaxed along the new level so that
    neighbours differ by at most one.
    """
    x = f.u_coord + eps
    raw = [INF, INF, INF]
    via: List[Optional[Via]] = [None, None, None]
    for i, y in enumerate(COORDS):
        e = x + y * p
        for c, d in zip(COORDS, f.dist):
            if d >= INF:
                continue
            c += f.u_coord
            cost = d + abs(c - e) + 1
            if cost < raw[i]:
                raw[i] = cost
                via[i] = (c, e - c, 0)
    if clamp:
        for i, j in ((1, 0), (2, 1), (1, 2), (0, 1)):
            if raw[j] + 1 < raw[i]:
                raw[i] = raw[j] + 1
                c, lower, upper = via[j]
                via[i] = (c, lower, upper + (i - j))
    return LevelFrontier(f.level + 1, tuple(raw), tuple(via))


@lru_cache(maxsize=None)
def _suffix_digits(r: int, p: int, depth: int = 0) -> Tuple[int, Tuple[int, ...]]:
    """Cheapest ``(cost, digits)`` with ``sum(d_i p**i) = r``.

    Cost is ``sum |d_i| + 2 * (len(digits) - 1)``: climbing one level and
    coming back down costs two t-letters.
    """
    best = (abs(r), (r,))
    if abs(r) < 2 or depth > 64:
        return best
    low = r % p
    for d in {low, low - p}:
        sub_cost, sub = _suffix_digits((r - d) // p, p, depth + 1)
        cost = abs(d) + 2 + sub_cost
        if cost < best[0]:
            best = (cost, (d,) + sub)
    return best


def best_suffix(delta: int, p: int) -> Word:
    """A geodesic for ``a^delta``: ``a^d0 t a^d1 ... t a^dh t^-h``.

    Such a word never needs to dip below its start level, and digits of
    absolute value ``p`` or more below the top are never cheaper than
    carrying, so a search over the two residues per level is exhaustive.
    """
    check_p(p)
    _, digits = _suffix_digits(delta, p)
    out: List[int] = []
    for i, d in enumerate(digits):
        if i:
            out.append(2)
        out.extend([1 if d > 0 else -1] * abs(d))
    out.extend([-2] * (len(digits) - 1))
    return as_word(out)


@dataclass(frozen=True)
class GeodesicResult:
    word: Word
    input_length: int = 0
    t_exponent: int = 0
    form: WordForm = WordForm.E
    inverted: bool = False
    descent: int = field(default=0, compare=False)
    visits: int = field(default=0, compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def to_json(self) -> dict:
        from .words import format_word

        return {
            "input_length": self.input_length,
            "geodesic": format_word(self.word),
            "geodesic_length": self.length,
            "t_exponent": self.t_exponent,
            "form": self.form.value,
            "inverted": self.inverted,
        }


def _descent_bound(p: int) -> int:
    # Turning down at level h instead of h + 1 can only pay off while
    # (p - 1) * |T_{h+1}| <= 2p + 2; see the module tests for the oracle check.
    return (2 * p + 2) // (p - 1)


def _path(vias: Sequence[Tuple[Optional[Via], ...]], level: int, coord: int) -> List[int]:
    pieces: List[int] = []
    for j in range(level, 0, -1):
        c, lower, upper = vias[j][coord + 1]
        pieces.extend([1 if upper > 0 else -1] * abs(upper))
        pieces.append(2)
        pieces.extend([1 if lower > 0 else -1] * abs(lower))
        coord = c
    pieces.reverse()
    return pieces


def _search(u: CanonicalForm) -> Tuple[Word, int]:
    p, k, m, q, eps = u.p, u.k, u.m, u.q, u.eps
    frontiers = [base_frontier()]
    for j in range(q):
        frontiers.append(advance_level(frontiers[-1], eps[j], p))
    vias = [f.via for f in frontiers]

    # (cost, descent depth, coord, level, a-run or None for best_suffix)
    best = None
    top = frontiers[q]
    for c, d, _ in top.candidates:
        cost = d + len(best_suffix(eps[q] - c, p)) + m
        key = (cost, m, c)
        if best is None or key < best[0]:
            best = (key, q, None)
    bottom = q - m
    target = eps[q]
    bound = _descent_bound(p)
    for h in range(q - 1, bottom - 1, -1):
        if abs(target) > bound:
            break
        target = eps[h] + p * target
        for c, d, _ in frontiers[h].candidates:
            cost = d + abs(target - c) + (h - bottom)
            key = (cost, h - bottom, c)
            if key < best[0]:
                best = (key, h, target - c)
    (cost, depth, coord), level, run = best
    out: List[int] = [-2] * k
    out.extend(_path(vias, level, coord))
    if run is None:
        out.extend(best_suffix(eps[q] - coord, p))
    else:
        out.extend([1 if run > 0 else -1] * abs(run))
    out.extend([-2] * depth)
    return free_reduce(out), depth


def _result(u: CanonicalForm) -> GeodesicResult:
    word, depth = _search(u)
    return GeodesicResult(word, len(u), t_exponent_sum(word), classify_form(word), False, depth)


def search_P(u: CanonicalForm) -> GeodesicResult:
    if u.k or u.m:
        raise ValueError("type P needs k = m = 0")
    return _result(u)


def search_NP(u: CanonicalForm) -> GeodesicResult:
    if u.k == 0 or u.m:
        raise ValueError("type NP needs k > 0 and m = 0")
    return _result(u)


def search_PN(u: CanonicalForm) -> GeodesicResult:
    if u.k or u.m == 0:
        raise ValueError("type PN needs k = 0 and m > 0")
    return _result(u)


def search_NPN(u: CanonicalForm) -> GeodesicResult:
    if u.k == 0 or u.m == 0:
        raise ValueError("type NPN needs k > 0 and m > 0")
    return _result(u)


def search_canonical(u: CanonicalForm) -> GeodesicResult:
    return _result(u)


def geodesic(w: Sequence[int], p: int) -> GeodesicResult:
    """A shortest word equal to ``w`` in BS(1, p)."""
    check_p(p)
    w = tuple(w)
    outcome = normalize(w, p)
    if outcome.is_finite:
        word = outcome.finite
        depth = 0
    else:
        word, depth = _search(outcome.canonical)
    if outcome.inverted:
        word = invert_word(word)
    return GeodesicResult(word, len(w), t_exponent_sum(w), classify_form(word),
                          outcome.inverted, depth, outcome.visits)
