"""Splice-capable word container.

Cells live in flat arrays addressed by stable column indices: column 0 holds
the start sentinel, the last column the finish sentinel, and every other
column one letter. Letters never move; the word is read by following the
successor links from the start sentinel, so commuting a block or deleting
letters only rewrites a constant number of links.

Letter codes are the :class:`~bsgeodesic.words.Letter` values
(``a=1, A=-1, t=2, T=-2``); erased cells hold :data:`BLANK`.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .words import Word, as_word

BLANK = 0
START = 5
FINISH = 6

_SYMBOLS = {1: "a", -1: "A", 2: "t", -2: "T", BLANK: "x", START: "S", FINISH: "F"}


class OrderUndecidable(RuntimeError):
    """Three strike positions whose order cannot be decided.

    The configuration is unreachable for a correct strike scan, so seeing
    this error means an invariant was broken upstream.
    """


def _is_a(x: int) -> bool:
    return x == 1 or x == -1


def _is_t(x: int) -> bool:
    return x == 2 or x == -2


class RunIndex:
    """Endpoint links for maximal runs of a single a-letter.

    ``end[first] == last`` and ``end[last] == first`` for every run; values
    stored on interior cells are stale and never read. With these links the
    nearest t-letter on either side of a t-letter is found in O(1) however
    long the intervening run is.
    """

    def __init__(self, buf: "WordBuffer"):
        self.buf = buf
        self.end = [0] * len(buf.letters)
        letters, succ, end = buf.letters, buf.succ, self.end
        c = succ[0]
        while c != buf.finish:
            buf.visits += 1
            x = letters[c]
            if _is_a(x):
                first = c
                while letters[succ[c]] == x:
                    c = succ[c]
                    buf.visits += 1
                end[first] = c
                end[c] = first
            c = succ[c]

    def before_remove(self, x: int, y: int) -> None:
        letters, end = self.buf.letters, self.end
        if _is_a(letters[x]):
            first = end[x]
            if first != x:
                new_last = self.buf.pred[x]
                end[first] = new_last
                end[new_last] = first
        if _is_a(letters[y]):
            last = end[y]
            if last != y:
                new_first = self.buf.succ[y]
                end[new_first] = last
                end[last] = new_first

    def join(self, left: int, right: int) -> None:
        first, last = self.end[left], self.end[right]
        self.end[first] = last
        self.end[last] = first


class WordBuffer:
    """Array of cells with successor / predecessor links and level marks."""

    def __init__(self, letters: List[int]):
        self.visits = 0
        self.reload(letters)

    def reload(self, letters: List[int]) -> None:
        """Replace the contents with ``letters`` in column order.

        The visit counter keeps accumulating across reloads.
        """
        n = len(letters)
        self.letters: List[int] = [START] + list(letters) + [FINISH]
        self.succ: List[int] = list(range(1, n + 2)) + [-1]
        self.pred: List[int] = [-1] + list(range(0, n + 1))
        self.mark: List[Optional[int]] = [None] * (n + 2)
        self.finish = n + 1
        self.live_length = n
        self.visits += n + 2
        self.runs: Optional[RunIndex] = None
        self.removed: Optional[List[int]] = None

    # -- construction and reading -------------------------------------

    @classmethod
    def from_word(cls, w: Iterable[int]) -> "WordBuffer":
        return cls([int(x) for x in w])

    def cells(self) -> Iterator[int]:
        """Live columns in link order."""
        succ, c, fin = self.succ, self.succ[0], self.finish
        while c != fin:
            yield c
            c = succ[c]

    def codes(self) -> List[int]:
        letters, succ, fin = self.letters, self.succ, self.finish
        out = []
        c = succ[0]
        while c != fin:
            out.append(letters[c])
            c = succ[c]
        self.visits += len(out) + 1
        return out

    def read_out(self) -> Word:
        return as_word(self.codes())

    def is_live(self, c: int) -> bool:
        return self.letters[c] != BLANK

    def in_column_order(self) -> bool:
        c, succ = 0, self.succ
        while c != self.finish:
            if succ[c] <= c:
                return False
            c = succ[c]
        return True

    def check_links(self) -> None:
        """Raise AssertionError unless the links form a valid list."""
        seen = 0
        c = 0
        while c != self.finish:
            nxt = self.succ[c]
            assert self.pred[nxt] == c, f"pred[{nxt}] != {c}"
            assert self.letters[nxt] != BLANK, f"link into erased column {nxt}"
            c = nxt
            seen += 1
            assert seen <= len(self.letters), "cycle in successor links"
        assert seen - 1 == self.live_length, (seen - 1, self.live_length)

    def dump(self) -> str:
        """Five tab-separated rows: column, word, t-exp, to, from."""
        cols = range(len(self.letters))

        def cell(v):
            return "" if v is None or v < 0 else str(v)

        rows = [
            ["column"] + [str(c) for c in cols],
            ["word"] + [_SYMBOLS[self.letters[c]] for c in cols],
            ["t-exp"] + ["" if self.mark[c] is None else str(self.mark[c]) for c in cols],
            ["to"] + [cell(self.succ[c]) if self.letters[c] != BLANK else "x" for c in cols],
            ["from"] + [cell(self.pred[c]) if self.letters[c] != BLANK else "x" for c in cols],
        ]
        return "\n".join("\t".join(r) for r in rows)

    # -- local edits ---------------------------------------------------

    def _erase(self, c: int) -> None:
        self.letters[c] = BLANK
        self.mark[c] = None
        self.succ[c] = -1
        self.pred[c] = -1

    def _link(self, x: int, y: int) -> None:
        self.succ[x] = y
        self.pred[y] = x

    def remove_pair(self, x: int) -> int:
        """Erase ``x`` and its successor; return the cell now before the gap."""
        y = self.succ[x]
        if self.runs is not None:
            self.runs.before_remove(x, y)
        left, right = self.pred[x], self.succ[y]
        self._link(left, right)
        if self.removed is not None:
            # (letter, level mark) of each erased cell, for callers that
            # must track what left a region they care about
            self.removed.append((self.letters[x], self.mark[x]))
            self.removed.append((self.letters[y], self.mark[y]))
        self._erase(x)
        self._erase(y)
        self.live_length -= 2
        self.visits += 2
        return left

    def cancel_pair_at(self, k: int) -> bool:
        """Free-cancel the letter at ``k`` against a neighbour, if possible."""
        x = self.letters[k]
        if not (_is_a(x) or _is_t(x)):
            return False
        j = self.pred[k]
        self.visits += 2
        if self.letters[j] == -x:
            self.remove_pair(j)
            return True
        i = self.succ[k]
        if self.letters[i] == -x:
            self.remove_pair(k)
            return True
        return False

    def settle(self, left: int) -> int:
        """Repair the junction after ``left``.

        Cancels inverse pairs meeting there until none remain, then (when a
        run index is active) joins two same-letter runs that became adjacent.
        Returns the live cell before the junction.
        """
        letters, succ = self.letters, self.succ
        while True:
            self.visits += 1
            x = letters[left]
            right = succ[left]
            y = letters[right]
            if abs(x) <= 2 and x != BLANK and y == -x:
                left = self.remove_pair(left)
                continue
            if self.runs is not None and x == y and _is_a(x):
                self.runs.join(left, right)
            return left

    def _collapse(self, k: int, p: int) -> Optional[Tuple[int, ...]]:
        x = self.letters[k]
        if not _is_a(x):
            return None
        window = [k]
        c = self.pred[k]
        while len(window) < 3 * p and self.letters[c] == x:
            window.append(c)
            c = self.pred[c]
        self.visits += len(window)
        if len(window) < 3 * p:
            return None
        window.reverse()
        after = self.succ[k]
        letters = self.letters
        letters[window[0]] = 2
        letters[window[1]] = letters[window[2]] = letters[window[3]] = x
        letters[window[4]] = -2
        for c in window[:5]:
            self.mark[c] = None
        for c in window[5:]:
            self._erase(c)
        self._link(window[4], after)
        self.live_length -= 3 * p - 5
        return tuple(window[:5])

    def collapse_run_at(self, k: int, p: int) -> bool:
        """Rewrite a run ``a^(+-3p)`` ending at ``k`` as ``t a^(+-3) T``."""
        if self.runs is not None:
            raise RuntimeError("collapse would invalidate the active run index")
        return self._collapse(k, p) is not None

    def splice_block(self, block_start: int, block_end: int, dest: int) -> None:
        """Move the segment ``block_start..block_end`` to just after ``dest``."""
        if dest == block_end or self.pred[block_start] == dest:
            return
        before, after = self.pred[block_start], self.succ[block_end]
        self._link(before, after)
        dest_next = self.succ[dest]
        self._link(dest, block_start)
        self._link(block_end, dest_next)
        self.visits += 6

    # -- scans ---------------------------------------------------------

    def prev_t(self, x: int) -> int:
        """Nearest t-letter (or the start sentinel) before ``x``."""
        c = self.pred[x]
        if self.runs is not None:
            if _is_a(self.letters[c]):
                c = self.pred[self.runs.end[c]]
            self.visits += 2
            return c
        while _is_a(self.letters[c]):
            self.visits += 1
            c = self.pred[c]
        return c

    def next_t(self, x: int) -> int:
        """Nearest t-letter (or the finish sentinel) after ``x``."""
        c = self.succ[x]
        if self.runs is not None:
            if _is_a(self.letters[c]):
                c = self.succ[self.runs.end[c]]
            self.visits += 2
            return c
        while _is_a(self.letters[c]):
            self.visits += 1
            c = self.succ[c]
        return c

    def order_positions(self, p_a: int, p_b: int, p3: int) -> Tuple[int, int, int, int]:
        """Order two earlier strikes of a level given the latest one, ``p3``.

        Returns ``(p1, p2, q1, q2)`` where ``p1`` precedes ``p2`` in the
        word and ``q1``, ``q2`` are the t-letters following them.
        """
        letters = self.letters
        if self.prev_t(p_a) == 0:
            first, second = p_a, p_b
        elif self.prev_t(p_b) == 0:
            first, second = p_b, p_a
        else:
            q_a, q_b = self.next_t(p_a), self.next_t(p_b)
            target = letters[p3]
            if letters[q_a] == target:
                first, second = p_a, p_b
            elif letters[q_b] == target:
                first, second = p_b, p_a
            elif letters[p_a] != target:
                first, second = p_a, p_b
            elif letters[p_b] != target:
                first, second = p_b, p_a
            else:
                raise OrderUndecidable(f"cannot order columns {p_a}, {p_b} against {p3}")
        return first, second, self.next_t(first), self.next_t(second)


class StrikeTable:
    """Per level, the columns of the t-letters that arrived at that level."""

    def __init__(self, buf: WordBuffer):
        self.buf = buf
        self.slots: Dict[int, List[int]] = {}

    def positions(self, texp: int) -> List[int]:
        slot = self.slots.get(texp)
        if not slot:
            return []
        letters = self.buf.letters
        live = [c for c in slot if letters[c] != BLANK]
        if len(live) != len(slot):
            self.slots[texp] = live
        return live

    def record(self, texp: int, pos: int) -> int:
        slot = self.positions(texp)
        if len(slot) >= 3:
            raise RuntimeError(f"level {texp} already has three strikes")
        slot.append(pos)
        self.slots[texp] = slot
        return len(slot)

    def max_strikes(self) -> int:
        return max((len(self.positions(k)) for k in list(self.slots)), default=0)


def buffer_from_word(w: Iterable[int]) -> WordBuffer:
    return WordBuffer.from_word(w)


def read_out(b: WordBuffer) -> Word:
    return b.read_out()


def strike_record(tbl: StrikeTable, texp: int, pos: int) -> int:
    return tbl.record(texp, pos)
