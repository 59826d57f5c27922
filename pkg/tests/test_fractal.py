import math
import random
from fractions import Fraction
from itertools import product

import pytest
from conftest import legal_systems

from trihex import (
    DigitSystem,
    DomainError,
    GridSquare,
    MembershipAutomaton,
    Prefractal,
    ResourceError,
    carry_free,
    covers_point,
    equivalence_check,
    expansions,
    ifs_prefractal,
    index_bounds,
    iterate,
    lattice,
    lattice_cardinality,
    member,
    prefractal_by_digits,
    prefractal_from_json,
    prefractal_to_json,
    unit_square,
)

BT = DigitSystem(3, 1)


def brute_force_lattice(m, b):
    lo, hi = -b, m - 1 - b
    return {
        (k, h)
        for k in range(lo, hi + 1)
        for h in range(lo, hi + 1)
        if lo <= k + h <= hi
    }


class TestLattice:
    def test_base_two(self):
        assert set(lattice(2, 0).points) == {(0, 0), (1, 0), (0, 1)}

    def test_base_three_standard(self):
        assert len(lattice(3, 0)) == 6

    def test_balanced_ternary(self):
        assert lattice(3, 1).points == (
            (-1, 0), (-1, 1), (0, -1), (0, 0), (0, 1), (1, -1), (1, 0),
        )

    def test_cardinality_examples(self):
        assert lattice_cardinality(2, 0) == 3
        assert lattice_cardinality(3, 1) == 7
        for m in range(2, 13):
            assert lattice_cardinality(m, 0) == m * (m + 1) // 2

    def test_cardinality_matches_enumeration(self):
        for system in legal_systems(12):
            m, b = system.m, system.b
            pts = brute_force_lattice(m, b)
            assert set(lattice(m, b).points) == pts
            assert lattice_cardinality(m, b) == len(pts)

    def test_illegal_system(self):
        with pytest.raises(DomainError):
            lattice(1, 0)
        with pytest.raises(DomainError):
            lattice_cardinality(2, 1)

    def test_sorted_deterministic(self):
        for system in legal_systems(6):
            pts = lattice(system.m, system.b).points
            assert list(pts) == sorted(pts)


class TestPrefractal:
    def test_unit_square(self):
        for system in (DigitSystem(2, 0), BT, DigitSystem(5, 2)):
            p = unit_square(system)
            assert p.depth == 0 and list(p) == [(0, 0)]

    def test_constructor_sorts(self):
        p = Prefractal(DigitSystem(2, 0), 1, [(1, 0), (0, 1), (0, 0)])
        assert list(p) == [(0, 0), (0, 1), (1, 0)]

    def test_constructor_rejects_duplicates(self):
        with pytest.raises(DomainError):
            Prefractal(DigitSystem(2, 0), 1, [(0, 0), (0, 0)])

    def test_constructor_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            Prefractal(DigitSystem(2, 0), 1, [(2, 0)])
        with pytest.raises(DomainError):
            Prefractal(DigitSystem(2, 0), 1, [(-1, 0)])
        Prefractal(BT, 1, [(-1, 1)])  # negative indices fine when balanced

    def test_index_bounds(self):
        assert index_bounds(DigitSystem(2, 0), 3) == (0, 7)
        assert index_bounds(BT, 2) == (-4, 4)
        assert index_bounds(DigitSystem(5, 2), 2) == (-12, 12)

    def test_has_square(self):
        p = ifs_prefractal(BT, 2)
        assert p.has_square(-4, 3)
        assert not p.has_square(4, 4)

    def test_grid_square_bounds(self):
        sq = GridSquare(2, -4, 3)
        assert sq.bounds(BT) == (
            Fraction(-4, 9), Fraction(-3, 9), Fraction(3, 9), Fraction(4, 9),
        )


class TestIterate:
    def test_depth_one_base_two(self):
        p = iterate(unit_square(DigitSystem(2, 0)), lattice(2, 0))
        assert list(p) == [(0, 0), (0, 1), (1, 0)]

    def test_depth_two_base_two_exact(self):
        p = ifs_prefractal(DigitSystem(2, 0), 2)
        assert set(p) == {
            (0, 0), (1, 0), (0, 1), (2, 0), (3, 0), (2, 1), (0, 2), (1, 2), (0, 3),
        }
        assert not p.has_square(3, 1)

    def test_depth_one_balanced(self):
        p = iterate(unit_square(BT), lattice(3, 1))
        assert len(p) == 7
        assert p.has_square(-1, 0) and p.has_square(1, -1)

    def test_mismatched_system(self):
        with pytest.raises(DomainError):
            iterate(unit_square(BT), lattice(3, 0))

    def test_resource_cap(self):
        p = ifs_prefractal(DigitSystem(2, 0), 4)
        with pytest.raises(ResourceError):
            iterate(p, lattice(2, 0), max_squares=100)

    def test_cardinality_law(self):
        for system in (DigitSystem(2, 0), DigitSystem(4, 1), DigitSystem(5, 2)):
            ell = lattice_cardinality(system.m, system.b)
            lat = lattice(system.m, system.b)
            p = unit_square(system)
            for n in range(1, 5):
                p = iterate(p, lat)
                assert len(p) == ell**n


class TestDigitConstruction:
    def test_depth_zero(self):
        for system in (DigitSystem(2, 0), BT):
            assert prefractal_by_digits(system, 0) == unit_square(system)

    def test_depth_one_base_two(self):
        assert list(prefractal_by_digits(DigitSystem(2, 0), 1)) == [(0, 0), (0, 1), (1, 0)]

    def test_depth_one_balanced_matches_lattice(self):
        assert prefractal_by_digits(BT, 1) == ifs_prefractal(BT, 1)

    def test_resource_cap(self):
        with pytest.raises(ResourceError):
            prefractal_by_digits(DigitSystem(2, 0), 10, max_squares=100)

    def test_equivalence_examples(self):
        assert equivalence_check(DigitSystem(2, 0), 4)
        assert len(ifs_prefractal(DigitSystem(2, 0), 4)) == 81
        assert equivalence_check(BT, 3)
        assert len(ifs_prefractal(BT, 3)) == 343
        assert equivalence_check(DigitSystem(5, 2), 2)
        assert len(ifs_prefractal(DigitSystem(5, 2), 2)) == 361


class TestNesting:
    def test_floor_division_nesting_standard_base(self):
        # children of a b=0 prefractal stay inside their floor-division parent
        for system in (DigitSystem(2, 0), DigitSystem(3, 0)):
            lat = lattice(system.m, system.b)
            p = unit_square(system)
            for _ in range(4):
                child = iterate(p, lat)
                for i, j in child:
                    assert p.has_square(i // system.m, j // system.m)
                p = child

    def test_floor_division_nesting_fails_when_balanced(self):
        # balanced children can overhang the previous depth: square (-4, 3)
        # of depth 2 pokes left of every depth-1 square
        h1 = ifs_prefractal(BT, 1)
        h2 = ifs_prefractal(BT, 2)
        assert h2.has_square(-4, 3)
        assert not h1.has_square(-4 // 3, 3 // 3)
        assert not covers_point(h1, Fraction(-4, 9), Fraction(3, 9) + Fraction(1, 18))

    def test_digit_parent_recursion_all_systems(self):
        # stripping the lowest digit of each index lands on a parent square
        for system in (DigitSystem(2, 0), BT, DigitSystem(4, 2), DigitSystem(5, 1)):
            parent = ifs_prefractal(system, 2)
            child = ifs_prefractal(system, 3)
            for i, j in child:
                pi = (i - system.digit_for(i)) // system.m
                pj = (j - system.digit_for(j)) // system.m
                assert parent.has_square(pi, pj)


class TestSymmetry:
    def test_square_sets_diagonal_symmetric(self):
        for system in (DigitSystem(2, 0), BT, DigitSystem(5, 2)):
            p = ifs_prefractal(system, 3)
            flipped = Prefractal(system, 3, p.squares[:, ::-1])
            assert p == flipped

    def test_member_symmetric(self):
        rng = random.Random(0x5)
        for system in (DigitSystem(2, 0), BT):
            iv = system.interval()
            for _ in range(150):
                q = rng.randint(1, 300)
                x = iv.lo + Fraction(rng.randint(0, q), q) * (iv.hi - iv.lo)
                y = iv.lo + Fraction(rng.randint(0, q), q) * (iv.hi - iv.lo)
                assert member(x, y, system) == member(y, x, system)


class TestMembership:
    def test_origin_everywhere(self):
        for system in (DigitSystem(2, 0), BT, DigitSystem(5, 2)):
            assert member(0, 0, system)

    def test_half_half_base_two(self):
        assert member(Fraction(1, 2), Fraction(1, 2), DigitSystem(2, 0))

    def test_three_quarters_excluded(self):
        assert not member(Fraction(3, 4), Fraction(3, 4), DigitSystem(2, 0))

    def test_balanced_ternary_split(self):
        assert member(Fraction(1, 3), Fraction(-1, 3), BT)
        assert not member(Fraction(1, 3), Fraction(1, 3), BT)

    def test_outside_attractor_box(self):
        assert not member(Fraction(2), Fraction(0), DigitSystem(2, 0))
        assert not member(Fraction(2, 3), Fraction(0), BT)

    def test_state_cap(self):
        with pytest.raises(ResourceError):
            member(Fraction(1, 7), Fraction(1, 7), DigitSystem(2, 0), max_states=2)

    def test_automaton_memoizes_and_reports_states(self):
        auto = MembershipAutomaton(DigitSystem(2, 0))
        assert auto.decide(Fraction(1, 2), Fraction(1, 2))
        states = auto.states()
        assert states[(Fraction(1, 2), Fraction(1, 2))] == "alive"
        assert all(v in ("alive", "dead") for v in states.values())
        # second query on the same automaton reuses the memo
        assert auto.decide(Fraction(1, 2), Fraction(1, 2))

    def test_denominator_ten_thousand_terminates(self):
        auto = MembershipAutomaton(BT, max_states=10**6)
        auto.decide(Fraction(4999, 10000), Fraction(-3333, 10000))
        auto2 = MembershipAutomaton(DigitSystem(2, 0), max_states=10**6)
        assert auto2.decide(Fraction(9999, 10000), Fraction(1, 10000))

    def test_member_implies_cover_standard_base(self):
        # for b = 0 the limit set sits inside every finite depth
        rng = random.Random(0xC0)
        for system in (DigitSystem(2, 0), DigitSystem(3, 0)):
            lat = lattice(system.m, system.b)
            chain = []
            p = unit_square(system)
            for _ in range(6):
                p = iterate(p, lat)
                chain.append(p)
            for _ in range(120):
                q = rng.choice([rng.randint(1, 729), system.m ** rng.randint(1, 6)])
                x = Fraction(rng.randint(0, q), q)
                y = Fraction(rng.randint(0, q), q)
                if member(x, y, system):
                    for level in chain:
                        assert covers_point(level, x, y)

    def test_balanced_member_within_tail_padding_of_cover(self):
        # balanced prefractals overhang: a member point sits within the
        # value-interval tail of some depth-n square, not always inside it
        rng = random.Random(0xC1)
        iv = BT.interval()
        chain = []
        p = unit_square(BT)
        lat = lattice(3, 1)
        for _ in range(5):
            p = iterate(p, lat)
            chain.append(p)

        def witness(level, x, y):
            scale = 3**level.depth
            found = []
            for t in (x, y):
                t = Fraction(t) * scale
                lo = math.ceil(t - iv.hi)
                found.append([i for i in range(lo, lo + 2) if iv.lo <= t - i <= iv.hi])
            return any(level.has_square(i, j) for i in found[0] for j in found[1])

        # the attractor-box corner is a member but escapes the depth-1 cover
        corner = (Fraction(-1, 2), Fraction(1, 2))
        assert member(*corner, BT)
        assert not covers_point(chain[0], *corner)
        assert all(witness(level, *corner) for level in chain)
        for _ in range(80):
            q = rng.randint(1, 500)
            x = iv.lo + Fraction(rng.randint(0, q), q)
            y = iv.lo + Fraction(rng.randint(0, q), q)
            if member(x, y, BT):
                for level in chain:
                    assert witness(level, x, y)

    def test_carry_free_bridge(self):
        # finite-expansion points belong iff some expansion pair adds carry-free
        for m, k in ((2, 4), (3, 2), (5, 1)):
            system = DigitSystem(m, 0)
            q = m**k
            for a, c in product(range(q + 1), repeat=2):
                x, y = Fraction(a, q), Fraction(c, q)
                ex = expansions(x, system, k + 1)
                ey = expansions(y, system, k + 1)
                bridged = any(carry_free(px, py) for px, py in product(ex, ey))
                assert member(x, y, system) == bridged


class TestCoversPoint:
    def test_boundary_point_in_two_squares(self):
        p = ifs_prefractal(DigitSystem(2, 0), 1)
        assert covers_point(p, Fraction(1, 2), Fraction(1, 2))
        assert covers_point(p, Fraction(1, 2), Fraction(0))
        assert not covers_point(p, Fraction(3, 4), Fraction(3, 4))

    def test_depth_zero(self):
        p = unit_square(DigitSystem(2, 0))
        assert covers_point(p, Fraction(1, 2), Fraction(1, 2))
        assert not covers_point(p, Fraction(3, 2), Fraction(1, 2))


class TestJson:
    def test_golden_format(self):
        p = ifs_prefractal(DigitSystem(2, 0), 1)
        assert (
            prefractal_to_json(p)
            == '{"m":2,"b":0,"depth":1,"count":3,"squares":[[0,0],[0,1],[1,0]]}'
        )

    def test_round_trip(self):
        for system in (DigitSystem(2, 0), BT, DigitSystem(5, 2)):
            p = ifs_prefractal(system, 2)
            assert prefractal_from_json(prefractal_to_json(p)) == p

    @pytest.mark.parametrize(
        "bad",
        [
            "not json",
            "[]",
            '{"m":2,"b":0,"depth":1,"count":2,"squares":[[0,0],[0,1],[1,0]]}',
            '{"m":2,"b":0,"depth":1,"count":2,"squares":[[0,0],[0,0]]}',
            '{"m":2,"b":0,"depth":1,"count":1,"squares":[[5,0]]}',
            '{"m":2,"b":0,"count":3,"squares":[[0,0],[0,1],[1,0]]}',
        ],
    )
    def test_rejects_tampered(self, bad):
        with pytest.raises(DomainError):
            prefractal_from_json(bad)

    def test_squares_are_plain_ints(self):
        text = prefractal_to_json(ifs_prefractal(BT, 1))
        assert "numpy" not in text and "." not in text.split("squares")[1]
