"""The quantized interval: closed subsets, Hausdorff distance, and the
closed-set / ideal-descriptor correspondence.

Points are x_k = 2**(1-k) for k >= 1 together with the limit point 0.
A closed subset is an eventually periodic membership word over the x_k;
a set with infinitely many points automatically contains 0, and a finite
set may carry 0 explicitly.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .bratteli import EventualDescriptor, level_set
from .exact import BinaryWord, format_word, parse_rational, parse_word, pow2

__all__ = [
    "ZERO",
    "QIPoint",
    "ClosedSubsetQI",
    "EmptySetError",
    "DescriptorConventionError",
    "contains",
    "point_distance",
    "hausdorff",
    "ideal_of_closed_set",
    "closed_set_of_ideal",
    "paper_table_descriptor",
    "parse_closed_set",
    "format_closed_set",
]


class EmptySetError(ValueError):
    """Distance to the empty set is undefined."""


class DescriptorConventionError(ValueError):
    """Descriptor does not arise from the support-disjointness convention."""


class QIPoint:
    """A point of the quantized interval: index k denotes 2**(1-k), None denotes 0."""

    __slots__ = ("_index",)

    def __init__(self, index=None):
        if index is not None and index < 1:
            raise ValueError("point indices start at 1")
        self._index = index

    @property
    def index(self):
        return self._index

    @property
    def is_zero(self) -> bool:
        return self._index is None

    @property
    def value(self) -> Fraction:
        if self._index is None:
            return Fraction(0)
        return pow2(1 - self._index)

    @classmethod
    def from_value(cls, v: Fraction) -> "QIPoint":
        v = Fraction(v)
        if v == 0:
            return cls(None)
        if v < 0 or v > 1 or v.numerator != 1 or v.denominator & (v.denominator - 1):
            raise ValueError(f"{v} is not a point of the quantized interval")
        return cls(1 + v.denominator.bit_length() - 1)

    def __eq__(self, other):
        if not isinstance(other, QIPoint):
            return NotImplemented
        return self._index == other._index

    def __hash__(self):
        return hash(self._index)

    def __repr__(self):
        return "QIPoint(0)" if self.is_zero else f"QIPoint(index={self._index})"


ZERO = QIPoint(None)


class ClosedSubsetQI:
    """Closed subset of the quantized interval.

    bit(k) of the word says whether x_k = 2**(1-k) belongs to the set.
    Infinitely many points force the limit point 0 in; a finite set is
    closed with or without 0, so 0-membership is tracked explicitly there.
    """

    __slots__ = ("_word", "_zero")

    def __init__(self, word: BinaryWord = BinaryWord(), include_zero: bool = False):
        self._word = word
        self._zero = bool(include_zero) or not word.is_eventually_zero()

    @property
    def word(self) -> BinaryWord:
        return self._word

    @property
    def contains_zero(self) -> bool:
        return self._zero

    @property
    def is_finite(self) -> bool:
        return self._word.is_eventually_zero() and not self._zero

    def is_empty(self) -> bool:
        return self._word == BinaryWord() and not self._zero

    def point_indices(self, upto: int):
        return self._word.ones(upto)

    @classmethod
    def from_points(cls, points, include_zero: bool = False) -> "ClosedSubsetQI":
        indices = set()
        for p in points:
            q = p if isinstance(p, QIPoint) else QIPoint.from_value(p)
            if q.is_zero:
                include_zero = True
            else:
                indices.add(q.index)
        head = [1 if k in indices else 0 for k in range(1, max(indices, default=0) + 1)]
        return cls(BinaryWord(head), include_zero)

    def __eq__(self, other):
        if not isinstance(other, ClosedSubsetQI):
            return NotImplemented
        return self._word == other._word and self._zero == other._zero

    def __hash__(self):
        return hash((self._word, self._zero))

    def __repr__(self):
        return f"ClosedSubsetQI({format_closed_set(self)!r})"


def contains(s: ClosedSubsetQI, x: QIPoint) -> bool:
    if x.is_zero:
        return s.contains_zero
    return bool(s.word.bit(x.index))


def _nearest_beyond(s: ClosedSubsetQI, i: int):
    """Smallest member index > i, scanning at most one period past the head."""
    limit = i + len(s.word.head) + 2 * max(1, len(s.word.period)) + 2
    for k in range(i + 1, limit + 1):
        if s.word.bit(k):
            return k
    return None


def point_distance(x: QIPoint, s: ClosedSubsetQI) -> Fraction:
    """Exact distance from a point to a nonempty closed subset."""
    if s.is_empty():
        raise EmptySetError("distance to the empty set is undefined")
    if contains(s, x):
        return Fraction(0)
    if x.is_zero:
        # s is finite here (otherwise 0 would be a member); nearest is its
        # smallest point.
        return pow2(1 - s.word.last_one())
    i = x.index
    v = pow2(1 - i)
    candidates = []
    for k in range(i - 1, 0, -1):
        if s.word.bit(k):
            candidates.append(pow2(1 - k) - v)
            break
    k = _nearest_beyond(s, i)
    if k is not None:
        candidates.append(v - pow2(1 - k))
    if s.contains_zero:
        candidates.append(v)
    return min(candidates)


def _sup_cutoff(s: ClosedSubsetQI, t: ClosedSubsetQI) -> int:
    heads = max(len(s.word.head), len(t.word.head))
    periods = math.lcm(max(1, len(s.word.period)), max(1, len(t.word.period)))
    return heads + 2 * periods + 2


def hausdorff(s: ClosedSubsetQI, t: ClosedSubsetQI) -> Fraction:
    """Exact Hausdorff distance between two nonempty closed subsets.

    The directed suprema are evaluated over member indices up to a common
    cutoff plus the point 0.  Beyond the cutoff both membership words are
    jointly periodic, so candidate distances either repeat scaled down by
    a power of two or are dominated by the distance from 0, which is
    always inspected when 0 is a member.
    """
    if s.is_empty() or t.is_empty():
        raise EmptySetError("Hausdorff distance to the empty set is undefined")
    cut = _sup_cutoff(s, t)

    def directed(a: ClosedSubsetQI, b: ClosedSubsetQI) -> Fraction:
        best = Fraction(0)
        for k in a.point_indices(cut):
            best = max(best, point_distance(QIPoint(k), b))
        if a.contains_zero:
            best = max(best, point_distance(ZERO, b))
        return best

    return max(directed(s, t), directed(t, s))


def _derived_level(s: ClosedSubsetQI, p: int) -> frozenset:
    """Summands of level p whose spanning function has support disjoint from s."""
    out = {k for k in range(1, p) if not s.word.bit(k)}
    tail_meets = s.contains_zero or any(s.word.bit(k) for k in _tail_probe(s, p))
    if not tail_meets:
        out.add(p)
    return frozenset(out)


def _tail_probe(s: ClosedSubsetQI, p: int):
    # members with index >= p; for eventually-zero words a finite scan suffices
    last = s.word.last_one()
    if last is None:
        return range(p, p + len(s.word.head) + 2 * max(1, len(s.word.period)) + 2)
    return range(p, last + 1)


def ideal_of_closed_set(s: ClosedSubsetQI) -> EventualDescriptor:
    """Descriptor of the ideal of functions vanishing on s.

    Summand k < p corresponds to the isolated point x_k and belongs to the
    ideal iff x_k is outside s; the tail summand p belongs iff s misses
    [0, 2**(1-p)] entirely.
    """
    if s.is_finite:
        p0 = s.word.last_one() + 2
        tail = True
    else:
        p0 = 1
        tail = False
    head = [_derived_level(s, p) for p in range(1, p0)]
    return EventualDescriptor(p0, head, s.word, tail)


def closed_set_of_ideal(e: EventualDescriptor) -> ClosedSubsetQI:
    """Inverse of ideal_of_closed_set; rejects descriptors of any other shape."""
    if e.include_tail:
        if not e.excluded.is_eventually_zero():
            raise DescriptorConventionError(
                "tail flag set but excluded points recur forever"
            )
        s = ClosedSubsetQI(e.excluded, include_zero=False)
    else:
        s = ClosedSubsetQI(e.excluded, include_zero=True)
    check = ideal_of_closed_set(s)
    depth = max(e.p0, check.p0) + 1
    for p in range(1, depth + 1):
        if level_set(e, p) != level_set(check, p):
            raise DescriptorConventionError(
                f"level {p} is {sorted(level_set(e, p))}, support rule gives "
                f"{sorted(level_set(check, p))}"
            )
    return s


def paper_table_descriptor(selector) -> EventualDescriptor:
    """Descriptor following the published level-set table verbatim.

    `selector` is either an integer m (the singleton {2**-m}) or a pair
    (n, k) (the two-point set {2**-n, 2**-(n+k)}).  These patterns differ
    from the support-disjointness convention at levels up to m (resp. n):
    there the table keeps the tail summand inside the ideal.
    """
    if isinstance(selector, int):
        m = selector
        if m < 1:
            raise ValueError("m must be positive")

        def lvl(p):
            if p <= m:
                return range(1, p + 1)
            if p == m + 1:
                return range(1, m + 1)
            return [*range(1, m + 1), *range(m + 2, p + 1)]

        excluded = BinaryWord([0] * m + [1])
        p0 = m + 2
    else:
        n, k = selector
        if n < 1 or k < 1:
            raise ValueError("n and k must be positive")

        def lvl(p):
            if p <= n:
                return range(1, p + 1)
            if p == n + 1:
                return range(1, n + 1)
            if p <= n + k:
                return [*range(1, n + 1), *range(n + 2, p + 1)]
            if p == n + k + 1:
                return [*range(1, n + 1), *range(n + 2, p)]
            return [*range(1, n + 1), *range(n + 2, n + k + 1), *range(n + k + 2, p + 1)]

        bits = [0] * (n + k + 1)
        bits[n] = 1
        bits[n + k] = 1
        excluded = BinaryWord(bits)
        p0 = n + k + 2
    head = [frozenset(lvl(p)) for p in range(1, p0)]
    return EventualDescriptor(p0, head, excluded, True)


def parse_closed_set(text: str) -> ClosedSubsetQI:
    """Parse the shared closed-set grammar.

    Either a comma list of dyadic points ("1,1/2,1/8", optionally with "0",
    empty for the empty set) or an explicit word "head=BITS;period=BITS"
    with an optional ";zero=1" suffix for finite sets containing 0.
    """
    text = text.strip()
    if text.startswith("head="):
        m = re.fullmatch(r"(head=[01]*;period=[01]*)(;zero=1)?", text)
        if m is None:
            raise ValueError(f"bad closed-set literal: {text!r}")
        return ClosedSubsetQI(parse_word(m.group(1)), include_zero=bool(m.group(2)))
    if not text:
        return ClosedSubsetQI()
    points = []
    zero = False
    for token in text.split(","):
        token = token.strip()
        try:
            v = parse_rational(token)
        except ValueError:
            raise ValueError(f"bad point token: {token!r}") from None
        if v == 0:
            zero = True
        else:
            try:
                points.append(QIPoint.from_value(v))
            except ValueError:
                raise ValueError(f"bad point token: {token!r}") from None
    return ClosedSubsetQI.from_points(points, include_zero=zero)


def format_closed_set(s: ClosedSubsetQI) -> str:
    if s.word.is_eventually_zero():
        parts = [str(pow2(1 - k)) for k in s.word.ones(len(s.word.head))]
        if s.contains_zero:
            parts.append("0")
        if parts:
            return ",".join(parts)
        return format_word(s.word)
    return format_word(s.word)
