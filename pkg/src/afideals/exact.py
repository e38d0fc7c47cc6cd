"""Exact dyadic arithmetic and eventually periodic binary words.

Every metric value produced by this package is a `fractions.Fraction`;
nothing on the value path ever touches floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

ExactRational = Fraction


class EmptyRangeError(ValueError):
    """Raised when a geometric block is requested over an empty range."""


def pow2(e: int) -> Fraction:
    """2**e as a reduced fraction, for any signed integer e."""
    return Fraction(2) ** e


def geom_block(a: int, b=None) -> Fraction:
    """Sum of 2**-p for p = a..b, exactly.

    `b` may be None (or math.inf) for the infinite tail, which sums to
    2**(1-a).  An empty range (a > b) is an error, not zero.
    """
    if a < 1:
        raise ValueError(f"block must start at a positive index, got a={a}")
    if b is None or b == math.inf:
        return pow2(1 - a)
    if a > b:
        raise EmptyRangeError(f"empty block: a={a} > b={b}")
    return pow2(1 - a) - pow2(-b)


def quarter_tail(a: int) -> Fraction:
    """Sum of 4**-p for p >= a: the closed form 4**(1-a)/3."""
    if a < 1:
        raise ValueError(f"tail must start at a positive index, got a={a}")
    return Fraction(4) ** (1 - a) / 3


def _primitive(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


class BinaryWord:
    """An infinite bit sequence b(1), b(2), ... that is eventually periodic.

    Stored as an explicit head followed by a repeating period; an empty
    period means every later bit is zero.  Construction canonicalizes
    (primitive period, shortest possible head), so two words denote the
    same bit stream if and only if they compare equal structurally.
    """

    __slots__ = ("_head", "_period")

    def __init__(self, head=(), period=()):
        head = tuple(int(b) for b in head)
        period = tuple(int(b) for b in period)
        if any(b not in (0, 1) for b in head + period):
            raise ValueError("bits must be 0 or 1")
        if not any(period):
            period = ()
        else:
            period = _primitive(period)
        if period:
            while head and head[-1] == period[-1]:
                head = head[:-1]
                period = period[-1:] + period[:-1]
        else:
            while head and head[-1] == 0:
                head = head[:-1]
        self._head = head
        self._period = period

    @property
    def head(self) -> tuple:
        return self._head

    @property
    def period(self) -> tuple:
        return self._period

    def bit(self, k: int) -> int:
        """Bit at position k >= 1."""
        if k < 1:
            raise ValueError(f"positions start at 1, got {k}")
        if k <= len(self._head):
            return self._head[k - 1]
        if not self._period:
            return 0
        return self._period[(k - len(self._head) - 1) % len(self._period)]

    def is_eventually_zero(self) -> bool:
        return not self._period

    def last_one(self):
        """Largest position carrying a 1, for eventually-zero words.

        Returns 0 for the all-zero word and None when ones recur forever.
        """
        if self._period:
            return None
        last = 0
        for i, b in enumerate(self._head, 1):
            if b:
                last = i
        return last

    def ones(self, upto: int):
        """Positions <= upto carrying a 1."""
        return [k for k in range(1, upto + 1) if self.bit(k)]

    def __eq__(self, other):
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return self._head == other._head and self._period == other._period

    def __hash__(self):
        return hash((self._head, self._period))

    def __repr__(self):
        return f"BinaryWord(head={self._head!r}, period={self._period!r})"


def word_xor(u: BinaryWord, v: BinaryWord) -> BinaryWord:
    """Bitwise XOR of two words (eventually periodic again)."""
    h = max(len(u.head), len(v.head))
    lu, lv = len(u.period), len(v.period)
    if lu == 0 and lv == 0:
        length = 0
    else:
        length = math.lcm(lu or 1, lv or 1)
    head = [u.bit(k) ^ v.bit(k) for k in range(1, h + 1)]
    period = [u.bit(k) ^ v.bit(k) for k in range(h + 1, h + length + 1)]
    return BinaryWord(head, period)


def first_diff_index(u: BinaryWord, v: BinaryWord):
    """Least position where the two words differ, or None when equal."""
    if u == v:
        return None
    h = max(len(u.head), len(v.head))
    length = math.lcm(len(u.period) or 1, len(v.period) or 1)
    for k in range(1, h + length + 1):
        if u.bit(k) != v.bit(k):
            return k
    raise AssertionError("canonically distinct words must differ within one common period")


def word_weight(w: BinaryWord, from_index: int = 1) -> Fraction:
    """Sum of 2**-k over positions k >= from_index with bit 1, exactly."""
    if from_index < 1:
        raise ValueError(f"positions start at 1, got {from_index}")
    total = Fraction(0)
    h = len(w.head)
    for k in range(from_index, h + 1):
        if w.head[k - 1]:
            total += pow2(-k)
    length = len(w.period)
    if length == 0:
        return total
    start = max(from_index, h + 1)
    block = Fraction(0)
    for i in range(length):
        k = start + i
        if w.bit(k):
            block += pow2(-k)
    return total + block / (1 - pow2(-length))


def format_rational(x: Fraction) -> str:
    """Serialize as "p/q", or plain "p" for integers."""
    return str(x)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_word(w: BinaryWord) -> str:
    head = "".join(map(str, w.head))
    period = "".join(map(str, w.period))
    return f"head={head};period={period}"


def parse_word(text: str) -> BinaryWord:
    m = re.fullmatch(r"head=([01]*);period=([01]*)", text.strip())
    if m is None:
        raise ValueError(f"not a binary word literal: {text!r}")
    return BinaryWord(tuple(map(int, m.group(1))), tuple(map(int, m.group(2))))
