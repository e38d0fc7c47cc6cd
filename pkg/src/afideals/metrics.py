"""Three metrics on ideal descriptors of the quantized interval.

d_phi scores only the first level where two ideals disagree; d_beta weights
every disagreeing summand at every level by 2**-(level+index); the dual
Hausdorff metric measures the vanishing sets.  All values are exact
rationals, with certified intervals for truncated evaluation.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bratteli import EventualDescriptor, FiniteDescriptor, level_set, symdiff_level
from .exact import (
    first_diff_index,
    format_rational,
    geom_block,
    pow2,
    quarter_tail,
    word_weight,
    word_xor,
)
from .qi import (
    ClosedSubsetQI,
    closed_set_of_ideal,
    format_closed_set,
    hausdorff,
    ideal_of_closed_set,
    paper_table_descriptor,
)


class DepthMismatchError(ValueError):
    """Truncated descriptors must share a depth."""


class NonConstantDifferenceError(ValueError):
    """Symmetric difference never settles; use d_beta_truncated."""


class EmptySpectrumError(ValueError):
    """The full algebra has empty vanishing set; Hausdorff distance undefined."""


class MalformedComparisonError(ValueError):
    """Comparison inputs must be a singleton and a two-point set."""


class CertifiedValue:
    """Either an exact rational or a bracket [lo, hi] containing the limit."""

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo: Fraction, hi: Fraction):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        self._lo = lo
        self._hi = hi

    @classmethod
    def exact(cls, value) -> "CertifiedValue":
        return cls(value, value)

    @classmethod
    def interval(cls, lo, hi) -> "CertifiedValue":
        return cls(lo, hi)

    @property
    def kind(self) -> str:
        return "exact" if self._lo == self._hi else "interval"

    @property
    def value(self) -> Fraction:
        if self._lo != self._hi:
            raise ValueError("interval value is not exact")
        return self._lo

    @property
    def lo(self) -> Fraction:
        return self._lo

    @property
    def hi(self) -> Fraction:
        return self._hi

    @property
    def width(self) -> Fraction:
        return self._hi - self._lo

    def contains(self, x) -> bool:
        return self._lo <= x <= self._hi

    def encloses(self, other: "CertifiedValue") -> bool:
        return self._lo <= other._lo and other._hi <= self._hi

    def __eq__(self, other):
        if not isinstance(other, CertifiedValue):
            return NotImplemented
        return self._lo == other._lo and self._hi == other._hi

    def __hash__(self):
        return hash((self._lo, self._hi))

    def __str__(self):
        if self.kind == "exact":
            return format_rational(self._lo)
        return f"[{format_rational(self._lo)}, {format_rational(self._hi)}]"

    def __repr__(self):
        return f"CertifiedValue({self})"


def first_disagreement(i: EventualDescriptor, j: EventualDescriptor):
    """Least level where the two descriptors differ, or None when equal.

    The scan is bounded: past both explicit heads, the level sets follow
    the eventual rules, so any disagreement shows up by the level after the
    first differing excluded bit (or at the head boundary for tail flags).
    """
    kstar = first_diff_index(i.excluded, j.excluded)
    bound = max(i.p0, j.p0)
    if kstar is not None:
        bound = max(bound, kstar + 1)
    for p in range(1, bound + 1):
        if level_set(i, p) != level_set(j, p):
            return p
    if kstar is None and i.include_tail == j.include_tail:
        return None
    raise AssertionError("distinct eventual rules must disagree within the scan bound")


def d_phi(i: EventualDescriptor, j: EventualDescriptor) -> Fraction:
    """2**-(first level of disagreement), or 0 for equal ideals."""
    m = first_disagreement(i, j)
    if m is None:
        return Fraction(0)
    return pow2(-m)


def d_phi_truncated(i: FiniteDescriptor, j: FiniteDescriptor) -> CertifiedValue:
    """Exact when a disagreement is visible; otherwise [0, 2**-(depth+1)]."""
    if i.depth != j.depth:
        raise DepthMismatchError(f"depths differ: {i.depth} vs {j.depth}")
    for p in range(1, i.depth + 1):
        if i.sets(p) != j.sets(p):
            return CertifiedValue.exact(pow2(-p))
    return CertifiedValue.interval(Fraction(0), pow2(-(i.depth + 1)))


def d_beta(i: EventualDescriptor, j: EventualDescriptor) -> Fraction:
    """Sum over levels p and disagreeing indices k of 2**-(p+k), exactly.

    Requires the level-wise symmetric difference to settle to a fixed
    finite set (plus possibly the moving tail index); the settled part is
    summed as a geometric series.
    """
    diff = word_xor(i.excluded, j.excluded)
    if not diff.is_eventually_zero():
        raise NonConstantDifferenceError(
            "symmetric difference is not eventually constant; use d_beta_truncated"
        )
    p_star = max(i.p0, j.p0, diff.last_one() + 1)
    total = Fraction(0)
    for p in range(1, p_star):
        for k in symdiff_level(i, j, p):
            total += pow2(-(p + k))
    total += geom_block(p_star) * word_weight(diff)
    if i.include_tail != j.include_tail:
        total += quarter_tail(p_star)
    return total


def _level_of(desc, p: int) -> frozenset:
    if isinstance(desc, EventualDescriptor):
        return level_set(desc, p)
    return desc.sets(p)


def d_beta_truncated(i, j, depth: int) -> CertifiedValue:
    """Partial sum through `depth` levels, bracketed by the 2**-depth tail bound."""
    if depth < 1:
        raise ValueError("depth must be positive")
    for desc in (i, j):
        if isinstance(desc, FiniteDescriptor) and desc.depth < depth:
            raise DepthMismatchError(f"descriptor depth {desc.depth} below {depth}")
    partial = Fraction(0)
    for p in range(1, depth + 1):
        for k in _level_of(i, p) ^ _level_of(j, p):
            partial += pow2(-(p + k))
    return CertifiedValue.interval(partial, partial + pow2(-depth))


def d_hausdorff_ideal(i: EventualDescriptor, j: EventualDescriptor) -> Fraction:
    """Hausdorff distance between the vanishing sets of two ideals."""
    s, t = closed_set_of_ideal(i), closed_set_of_ideal(j)
    if s.is_empty() or t.is_empty():
        raise EmptySpectrumError(
            "empty-spectrum: the full algebra has no vanishing set to measure"
        )
    return hausdorff(s, t)


def closed_form_dphi(m: int, n: int, k: int) -> Fraction:
    """Published first-disagreement value 2**-(min(m,n)+1)."""
    if min(m, n, k) < 1:
        raise ValueError("m, n, k must be positive")
    return pow2(-(min(m, n) + 1))


def closed_form_dbeta(m: int, n: int, k: int) -> Fraction:
    """Published value (1/2)(2**-2(n+k) + 2**-m + 4**-n), asserted for m < n."""
    if min(m, n, k) < 1:
        raise ValueError("m, n, k must be positive")
    if m >= n:
        raise ValueError("closed form is only asserted for m < n")
    return (pow2(-2 * (n + k)) + pow2(-m) + Fraction(4) ** (-n)) / 2


def closed_form_dhausdorff(m: int, n: int, k: int) -> Fraction:
    """Hausdorff distance between {2**-m} and {2**-n, 2**-(n+k)}."""
    if min(m, n, k) < 1:
        raise ValueError("m, n, k must be positive")
    if m <= n:
        return abs(pow2(-m) - pow2(-(n + k)))
    return abs(pow2(-m) - pow2(-n))


def _singleton_index(s: ClosedSubsetQI) -> int:
    if not s.is_finite or s.contains_zero:
        raise MalformedComparisonError("first set must be a singleton {2**-m}")
    ones = s.word.ones(len(s.word.head))
    if len(ones) != 1 or ones[0] < 2:
        raise MalformedComparisonError("first set must be a singleton {2**-m} with m >= 1")
    return ones[0] - 1


def _pair_indices(s: ClosedSubsetQI):
    if not s.is_finite or s.contains_zero:
        raise MalformedComparisonError("second set must be a pair {2**-n, 2**-(n+k)}")
    ones = s.word.ones(len(s.word.head))
    if len(ones) != 2 or ones[0] < 2:
        raise MalformedComparisonError(
            "second set must be a pair {2**-n, 2**-(n+k)} with n, k >= 1"
        )
    return ones[0] - 1, ones[1] - ones[0]


class ComparisonReport:
    """All three metric values for a singleton-vs-pair comparison."""

    __slots__ = ("convention", "set_a", "set_b", "d_hausdorff", "d_phi", "d_beta")

    def __init__(self, convention, set_a, set_b, dh, dphi, dbeta):
        # d_beta <= 2*d_phi is the sharp comparison between the two level
        # metrics; together with the global 2/3 and 1/2 bounds it holds for
        # every pair of ideal descriptors.
        if not (dbeta <= 2 * dphi or dphi == 0 == dbeta):
            raise ValueError("d_beta exceeds twice d_phi; inputs are not ideal descriptors")
        if not (dbeta <= Fraction(2, 3) and dphi <= Fraction(1, 2)):
            raise ValueError("global metric bounds violated; inputs are not ideal descriptors")
        self.convention = convention
        self.set_a = set_a
        self.set_b = set_b
        self.d_hausdorff = dh
        self.d_phi = dphi
        self.d_beta = dbeta

    def as_dict(self) -> dict:
        return {
            "convention": self.convention,
            "set_a": self.set_a,
            "set_b": self.set_b,
            "d_hausdorff": format_rational(self.d_hausdorff),
            "d_phi": format_rational(self.d_phi),
            "d_beta": format_rational(self.d_beta),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def to_text(self) -> str:
        return "\n".join(f"{key}: {value}" for key, value in self.as_dict().items())

    def __repr__(self):
        return f"ComparisonReport({self.as_dict()!r})"


def compare(a: ClosedSubsetQI, b: ClosedSubsetQI, convention: str = "paper") -> ComparisonReport:
    """Compare the ideals of a singleton and a two-point set under a convention.

    "paper" uses the published level-set table; "derived" uses the
    support-disjointness rule.  The Hausdorff value is convention-free.
    """
    m = _singleton_index(a)
    n, k = _pair_indices(b)
    if convention == "paper":
        di, dj = paper_table_descriptor(m), paper_table_descriptor((n, k))
    elif convention == "derived":
        di, dj = ideal_of_closed_set(a), ideal_of_closed_set(b)
    else:
        raise ValueError(f"unknown convention: {convention!r}")
    return ComparisonReport(
        convention,
        format_closed_set(a),
        format_closed_set(b),
        hausdorff(a, b),
        d_phi(di, dj),
        d_beta(di, dj),
    )
