"""Part 1: rewrite any word into the canonical form

    t^-k a^e0 t a^e1 t ... t a^eq t^-m

with ``q >= k + m``, ``|e_i| < p`` below the top, ``|e_q| < 3p``, nonzero
boundary exponents and length no larger than the input. Every step works on
a :class:`~bsgeodesic.buffer.WordBuffer` and costs time linear in the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .buffer import BLANK, RunIndex, StrikeTable, WordBuffer
from .words import (
    Word,
    WordForm,
    as_word,
    check_p,
    classify_form,
    free_reduce,
    invert_word,
    t_exponent_sum,
)


@dataclass(frozen=True)
class CanonicalForm:
    p: int
    k: int
    eps: Tuple[int, ...]
    m: int

    @property
    def q(self) -> int:
        return len(self.eps) - 1

    def word(self) -> Word:
        out: List[int] = [-2] * self.k
        for i, e in enumerate(self.eps):
            if i:
                out.append(2)
            out.extend([1 if e > 0 else -1] * abs(e))
        out.extend([-2] * self.m)
        return as_word(out)

    def __len__(self) -> int:
        return self.k + self.q + self.m + sum(abs(e) for e in self.eps)

    def violations(self, input_length: Optional[int] = None) -> List[str]:
        """Broken canonical-form conditions, as readable strings."""
        p, k, m, q, eps = self.p, self.k, self.m, self.q, self.eps
        bad = []
        if q < 0:
            bad.append("no exponent blocks")
            return bad
        if k < 0 or m < 0:
            bad.append("negative k or m")
        if q < k + m:
            bad.append(f"q={q} < k+m={k + m}")
        if k > 0 and eps[0] == 0:
            bad.append("k > 0 but eps_0 = 0")
        if m > 0 and eps[q] == 0:
            bad.append("m > 0 but eps_q = 0")
        for i, e in enumerate(eps[:-1]):
            if abs(e) >= p:
                bad.append(f"|eps_{i}| = {abs(e)} >= p")
        if abs(eps[q]) >= 3 * p:
            bad.append(f"|eps_q| = {abs(eps[q])} >= 3p")
        if input_length is not None and len(self) > input_length:
            bad.append(f"length {len(self)} exceeds input length {input_length}")
        return bad

    def to_json(self) -> dict:
        return {"k": self.k, "eps": list(self.eps), "m": self.m}


@dataclass(frozen=True)
class NormalizeOutcome:
    """Either a canonical form or, for a power of ``a``, a geodesic for it."""

    p: int
    inverted: bool
    form: WordForm
    canonical: Optional[CanonicalForm] = None
    finite: Optional[Word] = None
    visits: int = field(default=0, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.finite is not None

    def word(self) -> Word:
        """The normalized word for the (possibly inverted) input."""
        return self.finite if self.finite is not None else self.canonical.word()


# -- step 1 ----------------------------------------------------------------


def step1_load(w: Sequence[int]) -> WordBuffer:
    return WordBuffer.from_word(free_reduce(w))


# -- step 2 ----------------------------------------------------------------


def _collapse_here(b: WordBuffer, k: int, p: int) -> int:
    """Collapse ``a^(+-3p)`` runs ending at ``k`` until none is left.

    ``k`` is the last processed cell; returns the new last processed cell.
    """
    last = k
    while True:
        window = b._collapse(k, p)
        if window is None:
            return last
        if k == last:
            last = window[4]
        left = b.settle(b.pred[window[0]])
        if not b.is_live(last):
            return left
        if not b.is_live(window[3]):
            return last
        k = window[3]


def step2_sweep(b: WordBuffer, p: int) -> None:
    """Left-to-right pass that leaves every a-run shorter than ``3p``.

    The processed prefix is kept freely reduced with short runs, like a
    stack; an incoming letter either cancels the top or is pushed, and a
    pushed ``a`` that completes a run of ``3p`` triggers a collapse.
    """
    letters, succ = b.letters, b.succ
    cur = 0
    while True:
        c = succ[cur]
        if c == b.finish:
            return
        b.visits += 1
        x = letters[c]
        if letters[cur] == -x:
            cur = b.remove_pair(cur)
            continue
        cur = c
        if x == 1 or x == -1:
            cur = _collapse_here(b, c, p)


# -- step 3 ----------------------------------------------------------------


def _resolve(b: WordBuffer, tbl: StrikeTable, level: int, p3: int) -> Tuple[int, int]:
    """Remove one t-letter pair after a third arrival at ``level``.

    Writing the strikes in word order as p1 < p2 < p3 and q1, q2 for the
    t-letters after p1, p2, both q1..p2 and q2..p3 have t-exponent zero and
    commute with their neighbours. One of three splices always puts a
    letter next to its inverse:

    * q1 = p1^-1: move q1..p2 to after p1, cancel p1 q1;
    * q2 = p1^-1: move q2..p3 to after p1, cancel p1 q2;
    * otherwise q1 = q2 = p1, hence q2 = p2^-1: move q2..p3 to after p2.

    Returns the new cursor (last processed cell) and its level.
    """
    letters, pred = b.letters, b.pred
    p_a, p_b = [c for c in tbl.positions(level) if c != p3]
    p1, p2, q1, q2 = b.order_positions(p_a, p_b, p3)
    b.removed.clear()
    cursor = p3
    if letters[q1] == -letters[p1]:
        junctions = [pred[q1], p2]
        b.splice_block(q1, p2, p1)
        cut = p1
    elif letters[q2] == -letters[p1]:
        cursor = pred[q2]
        junctions = [pred[q2], p3]
        b.splice_block(q2, p3, p1)
        cut = p1
    else:
        if letters[q2] != -letters[p2]:
            raise AssertionError("strike configuration admits no cancellation")
        cursor = pred[q2]
        junctions = [pred[q2], p3]
        b.splice_block(q2, p3, p2)
        cut = p2
    junctions.insert(0, b.remove_pair(cut))
    for left in junctions:
        if letters[left] == BLANK:
            continue
        survivor = b.settle(left)
        if letters[cursor] == BLANK:
            cursor = survivor
    texp = level
    for code, mark in b.removed:
        if mark is None and (code == 2 or code == -2):
            # an unread letter cancelled against the processed prefix
            texp += 1 if code == 2 else -1
    return cursor, texp


def step3_three_strikes(b: WordBuffer, tbl: Optional[StrikeTable] = None) -> int:
    """Mark levels and cancel t-pairs so that no level is reached 3 times.

    Each t-letter is marked with the level it arrives at. A third arrival at
    one level is resolved at once by :func:`_resolve`; the processed prefix
    therefore never holds more than two arrivals per level. Returns the
    number of resolutions performed.
    """
    if tbl is None:
        tbl = StrikeTable(b)
    b.runs = RunIndex(b)
    b.removed = []
    letters, succ, mark = b.letters, b.succ, b.mark
    cur, texp, count = 0, 0, 0
    try:
        while True:
            c = succ[cur]
            if c == b.finish:
                break
            b.visits += 1
            x = letters[c]
            cur = c
            if x == 2 or x == -2:
                texp += 1 if x == 2 else -1
                mark[c] = texp
                if tbl.record(texp, c) == 3:
                    cur, texp = _resolve(b, tbl, texp, c)
                    count += 1
    finally:
        b.runs = None
        b.removed = None
    return count


# -- step 4 ----------------------------------------------------------------


def step4_fix_pnp(b: WordBuffer) -> bool:
    """Turn a zero-exponent PNP word into NPN by swapping its halves.

    The prefix up to the t^-1 that returns to level 0 and the remaining
    suffix both have t-exponent zero, so they commute. Other words are left
    alone. Returns whether a swap happened.
    """
    codes = b.codes()
    if classify_form(codes) is not WordForm.PNP or t_exponent_sum(codes) != 0:
        return False
    level, cut = 0, None
    for c in b.cells():
        x = b.letters[c]
        if x == 2 or x == -2:
            level += 1 if x == 2 else -1
            if x == -2 and level == 0:
                cut = c
                break
    b.visits += len(codes)
    start, end = b.succ[cut], b.pred[b.finish]
    b.splice_block(start, end, 0)
    b.settle(end)
    return True


# -- step 5 ----------------------------------------------------------------


def _push_a(stack: list, s: int, n: int) -> None:
    if n == 0:
        return
    if stack and stack[-1][0] == s:
        stack[-1][1] += n
    elif stack and stack[-1][0] == -s:
        top = stack[-1]
        if top[1] > n:
            top[1] -= n
        elif top[1] == n:
            stack.pop()
        else:
            stack.pop()
            stack.append([s, n - top[1]])
    else:
        stack.append([s, n])


def pinch(codes: Sequence[int], p: int) -> List[int]:
    """Free reduction plus every rewrite ``t^-1 a^(xp) t -> a^x``.

    Works on a run-length stack so that rewrites enabled by earlier ones
    are found in the same linear pass.
    """
    stack: list = []
    for x in codes:
        if x == 1 or x == -1:
            _push_a(stack, x, 1)
            continue
        if (x == 2 and len(stack) >= 2 and stack[-2][0] == -2
                and abs(stack[-1][0]) == 1 and stack[-1][1] % p == 0):
            s, n = stack.pop()
            stack[-1][1] -= 1
            if stack[-1][1] == 0:
                stack.pop()
            _push_a(stack, s, n // p)
        elif stack and stack[-1][0] == x:
            stack[-1][1] += 1
        elif stack and stack[-1][0] == -x:
            stack[-1][1] -= 1
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([x, 1])
    out: List[int] = []
    for x, n in stack:
        out.extend([x] * n)
    return out


def step5_classify_pinch(b: WordBuffer, p: int) -> WordForm:
    codes = b.codes()
    b.reload(pinch(codes, p))
    return classify_form(b.codes())


# -- step 6 ----------------------------------------------------------------


def level_buckets(codes: Sequence[int]) -> Tuple[int, int, int, List[int]]:
    """``(low, high, final, counts)`` with ``counts[j]`` the net a-exponent
    read at level ``low + j``."""
    level = low = high = 0
    counts = {}
    for x in codes:
        if x == 2:
            level += 1
            if level > high:
                high = level
        elif x == -2:
            level -= 1
            if level < low:
                low = level
        else:
            counts[level] = counts.get(level, 0) + x
    return low, high, level, [counts.get(j, 0) for j in range(low, high + 1)]


def step6_push_a(b: WordBuffer) -> None:
    """Gather all a-letters of each level into one run on a single sheet.

    Letters at one level commute past any zero-exponent detour, so the word
    equals ``t^low a^A_low t ... t a^A_high t^(final-high)``, which is never
    longer than the input when the t-exponent sum is non-negative.
    """
    codes = b.codes()
    low, high, final, counts = level_buckets(codes)
    out: List[int] = [-2] * (-low)
    for j, n in enumerate(counts):
        if j:
            out.append(2)
        out.extend([1 if n > 0 else -1] * abs(n))
    out.extend([-2] * (high - final))
    b.reload(list(free_reduce(out)))


# -- steps 7 and 8 -----------------------------------------------------------


def _carry(b: WordBuffer, tcell: int, p: int) -> int:
    """Rewrite ``a^(+-p) t -> t a^(+-1)`` at ``tcell`` while possible.

    Returns a live cell from which a left-to-right scan can continue.
    """
    letters, pred = b.letters, b.pred
    while True:
        x = letters[pred[tcell]]
        if x != 1 and x != -1:
            return tcell
        run = []
        c = pred[tcell]
        while len(run) < p and letters[c] == x:
            run.append(c)
            c = pred[c]
        b.visits += len(run)
        if len(run) < p:
            return tcell
        run.reverse()
        after = b.succ[tcell]
        c1, c2 = run[0], run[1]
        letters[c1] = 2
        letters[c2] = x
        for c in run[2:]:
            b._erase(c)
        b._erase(tcell)
        b._link(c2, after)
        b.live_length -= p - 1
        left = b.settle(c2)
        if letters[c1] == BLANK:
            return left
        left = b.settle(pred[c1])
        if letters[c1] == BLANK:
            return left
        tcell = c1


def step7_remove_apt(b: WordBuffer, p: int) -> None:
    letters, succ = b.letters, b.succ
    c = succ[0]
    while c != b.finish:
        b.visits += 1
        if letters[c] == 2:
            c = _carry(b, c, p)
        c = succ[c]


def step8_collapse_tail(b: WordBuffer, p: int) -> None:
    """Shrink the top a-run below ``3p`` by pushing multiples of p upward."""
    letters, pred = b.letters, b.pred
    end = pred[b.finish]
    while letters[end] == -2:
        end = pred[end]
        b.visits += 1
    while letters[end] == 1 or letters[end] == -1:
        window = b._collapse(end, p)
        if window is None:
            return
        _carry(b, window[0], p)
        end = window[3]


# -- driver ----------------------------------------------------------------


def extract_canonical(codes: Sequence[int], p: int) -> CanonicalForm:
    n = len(codes)
    i = 0
    while i < n and codes[i] == -2:
        i += 1
    k = i
    j = n
    while j > i and codes[j - 1] == -2:
        j -= 1
    m = n - j
    eps = [0]
    for x in codes[i:j]:
        if x == 2:
            eps.append(0)
        elif x == -2:
            raise ValueError("word is not in t^-k P t^-m shape")
        else:
            eps[-1] += x
    return CanonicalForm(p, k, tuple(eps), m)


def normalize(w: Sequence[int], p: int) -> NormalizeOutcome:
    check_p(p)
    w = tuple(w)
    inverted = t_exponent_sum(w) < 0
    if inverted:
        w = invert_word(w)
    b = step1_load(w)
    step2_sweep(b, p)
    step3_three_strikes(b)
    step4_fix_pnp(b)
    form = step5_classify_pinch(b, p)
    if form is WordForm.E:
        i = sum(b.codes())
        if abs(i) < 3 * p:
            from .search import best_suffix

            return NormalizeOutcome(p, inverted, form, CanonicalForm(p, 0, (i,), 0),
                                    finite=best_suffix(i, p), visits=b.visits)
    step6_push_a(b)
    step5_classify_pinch(b, p)
    step7_remove_apt(b, p)
    step8_collapse_tail(b, p)
    canonical = extract_canonical(b.codes(), p)
    return NormalizeOutcome(p, inverted, form, canonical=canonical, visits=b.visits)
