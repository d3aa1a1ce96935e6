"""Words over the generators of BS(1, p) = <a, t | t a t^-1 = a^p>.

A word is a tuple of :class:`Letter` values. Group elements are kept in the
faithful affine representation ``x -> p**k * x + m`` with ``m`` an exact
p-adic rational, which is what equality checks and the brute-force oracle
use.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple


class ParseError(ValueError):
    """Raised when a word string cannot be parsed."""


class Letter(enum.IntEnum):
    A_POS = 1
    A_NEG = -1
    T_POS = 2
    T_NEG = -2

    def inverse(self) -> "Letter":
        return Letter(-self.value)

    @property
    def is_t(self) -> bool:
        return abs(self.value) == 2

    @property
    def char(self) -> str:
        return _CHARS[self.value]


Word = Tuple[Letter, ...]

_CHARS = {1: "a", -1: "A", 2: "t", -2: "T"}
_FROM_CHAR = {"a": Letter.A_POS, "A": Letter.A_NEG, "t": Letter.T_POS, "T": Letter.T_NEG}
_BY_VALUE = {l.value: l for l in Letter}
_TOKEN = re.compile(r"([aAtT])(?:\^([+-]?\d+))?")


class WordForm(str, enum.Enum):
    E = "E"
    P = "P"
    N = "N"
    PN = "PN"
    NP = "NP"
    NPN = "NPN"
    PNP = "PNP"
    OTHER = "OTHER"


def check_p(p: int) -> int:
    """Validate the relator exponent."""
    if isinstance(p, bool) or not isinstance(p, int) or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p!r}")
    return p


def parse_word(text: str) -> Word:
    """Parse ``text`` into a word.

    Accepts the letters ``a, A, t, T`` with an optional signed integer
    exponent (``a^-3``); whitespace is ignored. No reduction is performed.
    """
    compact = "".join(text.split())
    letters = []
    pos = 0
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if m is None:
            raise ParseError(f"unexpected character {compact[pos]!r} at offset {pos}")
        base = _FROM_CHAR[m.group(1)]
        exp = 1 if m.group(2) is None else int(m.group(2))
        if exp < 0:
            base = base.inverse()
        letters.extend([base] * abs(exp))
        pos = m.end()
    if pos < len(compact):
        raise ParseError(f"malformed word near offset {pos}")
    return tuple(letters)


def format_word(w: Iterable[int]) -> str:
    return "".join(_CHARS[int(x)] for x in w)


def as_word(values: Iterable[int]) -> Word:
    """Convert plain integer letter codes into a :data:`Word`."""
    return tuple(_BY_VALUE[v] for v in values)


def invert_word(w: Sequence[Letter]) -> Word:
    return tuple(_BY_VALUE[-x] for x in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs in one left-to-right pass."""
    out: list = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return as_word(out)


def t_exponent_sum(w: Iterable[int]) -> int:
    s = 0
    for x in w:
        if x == 2:
            s += 1
        elif x == -2:
            s -= 1
    return s


def t_blocks(w: Iterable[int]) -> list:
    """Signs (+1 / -1) of the maximal blocks of t-letters, ignoring a-letters."""
    blocks: list = []
    for x in w:
        if x == 2 or x == -2:
            s = 1 if x == 2 else -1
            if not blocks or blocks[-1] != s:
                blocks.append(s)
    return blocks


_FORMS = {
    (): WordForm.E,
    (1,): WordForm.P,
    (-1,): WordForm.N,
    (1, -1): WordForm.PN,
    (-1, 1): WordForm.NP,
    (-1, 1, -1): WordForm.NPN,
    (1, -1, 1): WordForm.PNP,
}


def classify_form(w: Iterable[int]) -> WordForm:
    return _FORMS.get(tuple(t_blocks(w)), WordForm.OTHER)


def has_four_alternations(w: Iterable[int]) -> bool:
    """True if ``w`` contains an NPNP or PNPN factor."""
    return len(t_blocks(w)) >= 4


@dataclass(frozen=True)
class GroupElement:
    """The affine map ``x -> p**k * x + num / p**e`` (normalized)."""

    p: int
    k: int = 0
    num: int = 0
    e: int = 0

    @classmethod
    def make(cls, p: int, k: int, num: int, e: int = 0) -> "GroupElement":
        num, e = normalize_fraction(p, num, e)
        return cls(p, k, num, e)

    def compose(self, other: "GroupElement") -> "GroupElement":
        """Product ``self * other``; ``self`` is applied outermost."""
        if other.p != self.p:
            raise ValueError("elements of different groups")
        p = self.p
        # common denominator p**big for p**k1 * n2 / p**e2 + n1 / p**e1
        big = max(self.e, other.e - self.k, 0)
        num = other.num * p ** (self.k - other.e + big) + self.num * p ** (big - self.e)
        return GroupElement.make(p, self.k + other.k, num, big)

    def inverse(self) -> "GroupElement":
        # x -> p**-k * (x - m)
        return GroupElement.make(self.p, -self.k, -self.num, self.e + self.k)

    @property
    def m(self):
        from fractions import Fraction

        return Fraction(self.num, self.p**self.e)

    def key(self) -> tuple:
        return (self.k, self.num, self.e)


def normalize_fraction(p: int, num: int, e: int) -> tuple:
    if num == 0:
        return 0, 0
    while e > 0 and num % p == 0:
        num //= p
        e -= 1
    while e < 0:
        num *= p
        e += 1
    return num, e


def identity(p: int) -> GroupElement:
    return GroupElement(check_p(p))


def evaluate(w: Iterable[int], p: int) -> GroupElement:
    """Exact image of ``w`` in BS(1, p).

    Each ``a`` read at level ``l`` (the t-exponent sum of the prefix before
    it) contributes ``p**l`` to the translation part. Magnitudes grow like
    ``p**len(w)``, so this is meant for oracle and test scale.
    """
    check_p(p)
    level = 0
    low = 0
    counts: dict = {}
    for x in w:
        if x == 2:
            level += 1
        elif x == -2:
            level -= 1
            if level < low:
                low = level
        else:
            counts[level] = counts.get(level, 0) + x
    num = 0
    if counts:
        top = max(counts)
        for lev in range(top, low - 1, -1):
            num = num * p + counts.get(lev, 0)
    return GroupElement.make(p, level, num, -low)


def elements_equal(x: GroupElement, y: GroupElement) -> bool:
    return x == y
