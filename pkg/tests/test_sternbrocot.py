import math
from fractions import Fraction

import pytest

from apollodepth.conics import conic_tangency_x, parabola_conic, tangency_point
from apollodepth.sternbrocot import (
    deformed_add,
    diagonal_chain,
    farey_add,
    main_chain,
    parabolic_corona,
    sb_array,
    sb_row_of,
    squared_fraction_pair,
    x_corona,
)

F = Fraction


class TestArray:
    def test_first_row(self):
        assert sb_array(1) == [[(1, 0), (0, 1)]]

    def test_third_row(self):
        assert sb_array(3)[2] == [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1)]

    def test_fourth_row_members(self):
        row = sb_array(4)[3]
        assert (3, 2) in row and (2, 3) in row

    def test_adjacent_determinants(self):
        for row in sb_array(8):
            for (a, b), (c, d) in zip(row, row[1:]):
                assert abs(a * d - b * c) == 1

    def test_all_pairs_reduced(self):
        for row in sb_array(8):
            for p, q in row:
                assert math.gcd(p, q) == 1


class TestFareyAdd:
    def test_examples(self):
        assert farey_add((1, 2), (1, 1)) == (2, 3)
        assert farey_add((1, 0), (0, 1)) == (1, 1)
        assert farey_add((2, 1), (1, 1)) == (3, 2)


class TestDeformedAdd:
    def test_worked_example(self):
        # 1/4 ⊞ 4/9 = 9/25
        assert deformed_add((1, 2), (2, 3)) == (3, 5)

    def test_axis_extremes(self):
        # 0/1 ⊞ 1/1 = 1/4
        assert deformed_add((0, 1), (1, 1)) == (1, 2)

    def test_x_corona_child(self):
        # 1/4 ⊞ 1/9 = 4/25
        assert deformed_add((1, 2), (1, 3)) == (2, 5)

    def test_squared_fraction_conversion(self):
        assert squared_fraction_pair(F(1, 4)) == (1, 2)
        assert squared_fraction_pair(F(9, 25)) == (3, 5)
        with pytest.raises(ValueError):
            squared_fraction_pair(F(1, 3))

    def test_matches_raw_fraction_arithmetic(self):
        # (√a+√c)²/(√b+√d)² on the squared fractions themselves, for every
        # unimodular neighbor pair with m+n <= 40
        pairs = [
            (p, m)
            for m in range(1, 40)
            for p in range(0, m + 1)
            if math.gcd(p, m) == 1
        ]
        count = 0
        for i, (p, m) in enumerate(pairs):
            for q, n in pairs[i + 1:]:
                if m + n > 40 or abs(p * n - q * m) != 1:
                    continue
                r = deformed_add((p, m), (q, n))
                assert F(r[0] ** 2, r[1] ** 2) == F((p + q) ** 2, (m + n) ** 2)
                count += 1
        assert count > 200


class TestRowIndex:
    def test_root(self):
        assert sb_row_of((1, 1)) == 1

    def test_examples(self):
        assert sb_row_of((2, 3)) == 3
        assert sb_row_of((3, 4)) == 4

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            sb_row_of((1, 0))
        with pytest.raises(ValueError):
            sb_row_of((0, 1))

    def test_unreduced_rejected(self):
        with pytest.raises(ValueError):
            sb_row_of((2, 4))

    def test_tree_completeness(self):
        for total in range(2, 13):
            for p in range(1, total):
                q = total - p
                if math.gcd(p, q) == 1:
                    assert sb_row_of((p, q)) <= total


class TestXCorona:
    def test_two_rows(self):
        entries = x_corona(2)
        assert [(e.pair, e.tangent_x) for e in entries] == [
            ((1, 2), F(1, 4)),
            ((1, 1), F(1)),
        ]

    def test_three_rows_members(self):
        entries = {e.pair: e.tangent_x for e in x_corona(3)}
        assert entries[(2, 3)] == F(4, 9)
        assert entries[(1, 3)] == F(1, 9)

    def test_main_chain_subsequence(self):
        tangents = {e.pair: e.tangent_x for e in x_corona(6)}
        assert [tangents[(n - 1, n)] for n in range(2, 6)] == [
            F(1, 4), F(4, 9), F(9, 16), F(16, 25)
        ]

    def test_conic_agrees_with_tangent_x(self):
        for e in x_corona(6):
            assert conic_tangency_x(e.conic) == e.tangent_x

    def test_rows_bounded_and_sorted(self):
        entries = x_corona(5)
        assert all(e.row <= 5 for e in entries)
        xs = [e.tangent_x for e in entries]
        assert xs == sorted(xs)


class TestParabolicCorona:
    def test_root(self):
        nodes = {e.pair: e for e in parabolic_corona(1)}
        assert nodes[(1, 1)].point == (F(1, 4), F(1, 4))
        assert not nodes[(1, 1)].degenerate

    def test_degenerate_axes_flagged(self):
        nodes = {e.pair: e for e in parabolic_corona(1)}
        assert nodes[(1, 0)].degenerate and nodes[(0, 1)].degenerate
        assert nodes[(1, 0)].point == (F(1), F(0))

    def test_children(self):
        nodes = {e.pair: e for e in parabolic_corona(2)}
        assert nodes[(1, 2)].point == (F(1, 9), F(4, 9))
        assert nodes[(2, 1)].point == (F(4, 9), F(1, 9))

    def test_mediant_step(self):
        assert deformed_add((1, 1), (2, 1)) == (3, 2)
        nodes = {e.pair: e for e in parabolic_corona(3)}
        assert nodes[(3, 2)].point == (F(9, 25), F(4, 25))

    def test_all_points_on_parabola(self):
        conic = parabola_conic()
        for node in parabolic_corona(5):
            assert conic.eval(*node.point) == 0
            for _, pt in node.parent_tangencies:
                assert pt is not None

    def test_root_parent_tangencies(self):
        nodes = {e.pair: e for e in parabolic_corona(1)}
        tangencies = dict(nodes[(1, 1)].parent_tangencies)
        assert tangencies[(1, 0)] == (F(1, 4), F(0))
        assert tangencies[(0, 1)] == (F(0), F(1, 4))


class TestChains:
    def test_diagonal_values(self):
        assert diagonal_chain(2) == [(F(1, 4), F(1, 4)), (F(1, 12), F(1, 12))]
        assert diagonal_chain(4)[3] == (F(1, 40), F(1, 40))

    def test_diagonal_y_axis_contacts(self):
        for m in (2, 3, 4):
            assert tangency_point(1, m, 0, 1) == (F(0), F(1, m * m))

    def test_main_chain_values(self):
        links = main_chain(3)
        assert links[0].pair == (1, 2)
        assert links[0].separation == (F(1, 3), F(1, 12))
        assert links[1].separation == (F(1, 2), F(1, 24))

    def test_main_chain_cross_check(self):
        # the Eq-14 style tangency formula agrees with the closed form
        for link, n in zip(main_chain(6), range(2, 7)):
            assert link.separation == tangency_point(n - 1, n, n, n + 1)

    def test_count_validation(self):
        with pytest.raises(ValueError):
            main_chain(1)
        with pytest.raises(ValueError):
            diagonal_chain(0)


class TestVerticalAlignment:
    def test_axis_and_parabola_contacts_align(self):
        from apollodepth.conics import corona_conic

        for p in range(1, 7):
            conic = corona_conic(p, p + 1)
            axis_x = conic_tangency_x(conic)
            parabola_pt = tangency_point(p, p + 1, 1, 1)
            assert axis_x == parabola_pt[0] == F(p * p, (p + 1) ** 2)
            assert parabola_pt[1] == F(1, (p + 1) ** 2)
