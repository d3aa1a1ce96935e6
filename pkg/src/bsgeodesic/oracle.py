"""Brute-force ground truth: breadth-first search over the Cayley graph.

The ball of radius ``R`` around the identity is grown level by level with
elements stored as normalized ``(k, num, e)`` keys (see
:class:`~bsgeodesic.words.GroupElement`). Each discovered element remembers
the letter and predecessor it was reached by, so a geodesic for any element
of the ball can be read back.
"""

from __future__ import annotations

import os
import pickle
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from .words import GroupElement, Letter, Word, check_p, evaluate

DEFAULT_BUDGET = 50_000_000
_MAGIC = b"BS1P"
_CACHE_VERSION = 1

Key = Tuple[int, int, int]


class CapacityExceeded(RuntimeError):
    """The ball would hold more elements than the allowed budget."""


class OutOfBall(KeyError):
    """The element is farther from the identity than the ball radius."""


def _times_a(key: Key, sign: int, p: int) -> Key:
    # x -> p**k x + m, followed by a**sign: m += sign * p**k
    k, num, e = key
    if k + e >= 0:
        num = num + sign * p ** (k + e)
    else:
        num = num * p ** (-k - e) + sign
        e = -k
    if num == 0:
        return (k, 0, 0)
    while e > 0 and num % p == 0:
        num //= p
        e -= 1
    return (k, num, e)


def _neighbours(key: Key, p: int):
    k, num, e = key
    yield Letter.A_POS, _times_a(key, 1, p)
    yield Letter.A_NEG, _times_a(key, -1, p)
    yield Letter.T_POS, (k + 1, num, e)
    yield Letter.T_NEG, (k - 1, num, e)


@dataclass
class Ball:
    p: int
    radius: int
    # key -> (distance, parent key, letter appended to the parent)
    table: Dict[Key, Tuple[int, Optional[Key], int]] = field(default_factory=dict)
    sphere_sizes: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, g: GroupElement) -> bool:
        return g.key() in self.table

    def distance(self, g: GroupElement) -> int:
        try:
            return self.table[g.key()][0]
        except KeyError:
            raise OutOfBall(g) from None

    def geodesic(self, g: GroupElement) -> Word:
        key = g.key()
        if key not in self.table:
            raise OutOfBall(g)
        letters = []
        while True:
            _, parent, letter = self.table[key]
            if parent is None:
                break
            letters.append(Letter(letter))
            key = parent
        return tuple(reversed(letters))

    def save(self, path: str) -> None:
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            pickle.dump((_CACHE_VERSION, self.p, self.radius, self.table, self.sphere_sizes), fh)

    @classmethod
    def load(cls, path: str) -> "Ball":
        with open(path, "rb") as fh:
            if fh.read(4) != _MAGIC:
                raise ValueError(f"{path} is not a ball cache")
            version, p, radius, table, spheres = pickle.load(fh)
        if version != _CACHE_VERSION:
            raise ValueError(f"unsupported ball cache version {version}")
        return cls(p, radius, table, spheres)


def build_ball(p: int, radius: int, budget: int = DEFAULT_BUDGET) -> Ball:
    """All elements at distance at most ``radius`` from the identity."""
    check_p(p)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    origin: Key = (0, 0, 0)
    table: Dict[Key, Tuple[int, Optional[Key], int]] = {origin: (0, None, 0)}
    frontier = [origin]
    spheres = [1]
    for d in range(1, radius + 1):
        nxt = []
        for key in frontier:
            for letter, nb in _neighbours(key, p):
                if nb not in table:
                    table[nb] = (d, key, int(letter))
                    nxt.append(nb)
        if len(table) > budget:
            raise CapacityExceeded(
                f"ball of radius {radius} for p={p} exceeds {budget} elements at radius {d}"
            )
        spheres.append(len(nxt))
        frontier = nxt
    return Ball(p, radius, table, spheres)


def cached_ball(p: int, radius: int, cache_dir: Optional[str] = None,
                budget: int = DEFAULT_BUDGET) -> Ball:
    """Like :func:`build_ball`, reusing a file in ``cache_dir`` when present."""
    if cache_dir is None:
        return build_ball(p, radius, budget)
    path = os.path.join(cache_dir, f"ball_p{p}_r{radius}.bin")
    if os.path.exists(path):
        return Ball.load(path)
    ball = build_ball(p, radius, budget)
    os.makedirs(cache_dir, exist_ok=True)
    ball.save(path)
    return ball


def oracle_distance(b: Ball, e: GroupElement) -> int:
    """Exact word length of ``e``; raises :class:`OutOfBall` if not stored."""
    return b.distance(e)


def oracle_geodesic(b: Ball, e: GroupElement) -> Word:
    """A shortest word for ``e`` read off the BFS parent chain."""
    return b.geodesic(e)


def check_geodesic(w: Sequence[int], p: int, b: Ball) -> bool:
    """True iff ``w`` is as short as any word for the element it represents."""
    if b.p != p:
        raise ValueError(f"ball is for p={b.p}, not p={p}")
    return len(w) == b.distance(evaluate(w, p))
