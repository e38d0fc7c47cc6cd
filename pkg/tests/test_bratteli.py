import random

import pytest

from afideals.bratteli import (
    BratteliDiagram,
    EventualDescriptor,
    FiniteDescriptor,
    WidthMismatchError,
    ideal_closure,
    is_ideal,
    level_set,
    parse_descriptor,
    parse_diagram,
    qi_diagram,
    serialize_descriptor,
    serialize_diagram,
    symdiff_level,
    to_finite,
    validate_diagram,
)
from afideals.exact import BinaryWord
from afideals.qi import ideal_of_closed_set, paper_table_descriptor, parse_closed_set


def brute_closure(d, seed):
    """Independent closure oracle: repeated single-rule application."""
    sets = [set(seed.sets(n)) for n in range(1, seed.depth + 1)]
    while True:
        before = [set(s) for s in sets]
        for n in range(1, seed.depth):
            for k in range(1, d.width(n) + 1):
                succ = {j for (kk, j), m in d.edges(n).items() if kk == k and m > 0}
                if k in sets[n - 1]:
                    sets[n] |= succ
                if succ <= sets[n] and k not in sets[n - 1]:
                    sets[n - 1].add(k)
        if sets == before:
            return FiniteDescriptor(sets)


class TestQiDiagram:
    def test_level_three_shape(self):
        d = qi_diagram(3)
        assert d.dims(3) == (1, 1, 1)
        assert d.edges(2) == {(1, 1): 1, (2, 2): 1, (2, 3): 1}

    def test_depth_one(self):
        d = qi_diagram(1)
        assert d.depth == 1
        assert d.dims(1) == (1,)

    def test_valid_by_direct_unitality_sums(self):
        d = qi_diagram(8)
        assert validate_diagram(d) == []
        for n in range(1, 8):
            for j in range(1, d.width(n + 1) + 1):
                embedded = sum(
                    d.multiplicity(n, k, j) * d.dims(n)[k - 1]
                    for k in range(1, d.width(n) + 1)
                )
                assert embedded == d.dims(n + 1)[j - 1]


class TestValidateDiagram:
    def test_unitality_violation(self):
        d = qi_diagram(5)
        dims = [list(d.dims(n)) for n in range(1, 6)]
        dims[3][0] = 2
        bad = BratteliDiagram(dims, [d.edges(n) for n in range(1, 5)])
        report = validate_diagram(bad)
        assert any("unitality" in line and "level 4" in line for line in report)

    def test_orphan_summand(self):
        bad = BratteliDiagram([(1,), (1, 1)], [{(1, 1): 1}])
        report = validate_diagram(bad)
        assert any("orphan" in line for line in report)


class TestIsIdeal:
    def test_full_and_empty(self):
        d = qi_diagram(5)
        full = FiniteDescriptor([range(1, n + 1) for n in range(1, 6)])
        empty = FiniteDescriptor([()] * 5)
        assert is_ideal(d, full)
        assert is_ideal(d, empty)

    def test_vanish_at_zero(self):
        d = qi_diagram(6)
        f = FiniteDescriptor([range(1, n) for n in range(1, 7)])
        assert is_ideal(d, f)

    def test_rejects_forward_violation(self):
        d = qi_diagram(3)
        # tail summand 1 at level 1 must push into both successors at level 2
        f = FiniteDescriptor([(1,), (1,), (1,)])
        assert not is_ideal(d, f)

    def test_rejects_unsaturated(self):
        d = qi_diagram(2)
        # both successors of the level-1 summand are present, so it must be too
        f = FiniteDescriptor([(), (1, 2)])
        assert not is_ideal(d, f)

    def test_width_mismatch(self):
        d = qi_diagram(3)
        with pytest.raises(WidthMismatchError):
            is_ideal(d, FiniteDescriptor([(1,), (1, 3)]))


class TestIdealClosure:
    def test_fixed_point_on_ideals(self):
        d = qi_diagram(6)
        f = FiniteDescriptor([range(1, n) for n in range(1, 7)])
        assert ideal_closure(d, f) == f

    def test_empty_seed(self):
        d = qi_diagram(4)
        empty = FiniteDescriptor([()] * 4)
        assert ideal_closure(d, empty) == empty

    def test_forward_fill_from_single_summand(self):
        d = qi_diagram(6)
        seed = FiniteDescriptor([(), (), (3,), (), (), ()])
        closed = ideal_closure(d, seed)
        assert closed == FiniteDescriptor([(), (), (3,), (3, 4), (3, 4, 5), (3, 4, 5, 6)])
        assert closed == brute_closure(d, seed)

    def test_idempotent_and_monotone(self):
        rng = random.Random(21)
        d = qi_diagram(8)
        for _ in range(100):
            small = [frozenset(k for k in range(1, p + 1) if rng.random() < 0.25)
                     for p in range(1, 9)]
            big = [s | frozenset(k for k in range(1, p + 1) if rng.random() < 0.25)
                   for p, s in enumerate(small, 1)]
            c_small = ideal_closure(d, FiniteDescriptor(small))
            c_big = ideal_closure(d, FiniteDescriptor(big))
            assert is_ideal(d, c_small)
            assert ideal_closure(d, c_small) == c_small
            assert all(c_small.sets(p) <= c_big.sets(p) for p in range(1, 9))
            assert c_small == brute_closure(d, FiniteDescriptor(small))


class TestLevelSet:
    def test_paper_singleton_pattern(self):
        for m in (1, 3, 5):
            e = paper_table_descriptor(m)
            for p in range(1, m + 1):
                assert level_set(e, p) == frozenset(range(1, p + 1))
            assert level_set(e, m + 1) == frozenset(range(1, m + 1))
            for p in range(m + 2, m + 8):
                assert level_set(e, p) == frozenset(range(1, m + 1)) | frozenset(
                    range(m + 2, p + 1)
                )

    def test_full_algebra(self):
        e = EventualDescriptor(1, [], BinaryWord(), True)
        for p in (1, 2, 7, 30):
            assert level_set(e, p) == frozenset(range(1, p + 1))

    def test_derived_singleton_level(self):
        e = ideal_of_closed_set(parse_closed_set("1/2"))
        assert level_set(e, 3) == frozenset({1, 3})


class TestSymdiffLevel:
    def test_identical(self):
        e = paper_table_descriptor(2)
        assert all(symdiff_level(e, e, p) == frozenset() for p in range(1, 20))

    def test_paper_patterns(self):
        a = paper_table_descriptor(1)
        b = paper_table_descriptor((2, 1))
        assert symdiff_level(a, b, 2) == frozenset({2})
        assert symdiff_level(a, b, 5) == frozenset({2, 3, 4})

    def test_width_bound(self):
        rng = random.Random(4)
        from afideals.checks import random_ideal

        for _ in range(100):
            i, j = random_ideal(rng), random_ideal(rng)
            for p in range(1, 20):
                assert len(symdiff_level(i, j, p)) <= p


def test_eventual_descriptor_prefix_ideal_extends():
    rng = random.Random(17)
    from afideals.checks import random_word

    found = 0
    for _ in range(400):
        p0 = rng.randint(1, 4)
        word = random_word(rng)
        tail = rng.random() < 0.5
        head = [frozenset(k for k in range(1, p + 1) if rng.random() < 0.5)
                for p in range(1, p0)]
        e = EventualDescriptor(p0, head, word, tail)
        check_depth = e.p0 + 2 * max(1, len(e.excluded.period)) + 4
        d = qi_diagram(64)
        if is_ideal(d, to_finite(e, check_depth)):
            found += 1
            assert is_ideal(d, to_finite(e, 64))
    assert found > 10


class TestSerialization:
    def test_diagram_round_trip(self):
        d = qi_diagram(5)
        text = serialize_diagram(d)
        assert parse_diagram(text) == d
        assert serialize_diagram(parse_diagram(text)) == text

    def test_diagram_format_shape(self):
        text = serialize_diagram(qi_diagram(2))
        assert text == "dims: 1\nedges: 1>1:1 1>2:1\ndims: 1 1\n"

    def test_descriptor_round_trip(self):
        for e in (
            paper_table_descriptor(2),
            paper_table_descriptor((2, 3)),
            ideal_of_closed_set(parse_closed_set("1/2,0")),
            EventualDescriptor(1, [], BinaryWord((), (1, 0)), False),
        ):
            text = serialize_descriptor(e)
            assert parse_descriptor(text) == e
            assert serialize_descriptor(parse_descriptor(text)) == text

    def test_descriptor_format_shape(self):
        e = ideal_of_closed_set(parse_closed_set("1/2"))
        assert serialize_descriptor(e) == (
            "p0=3; exclude=head=01;period=; tail=1; head_levels=[{},{1}]"
        )
