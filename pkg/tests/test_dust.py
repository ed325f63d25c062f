import pytest

from apollodepth.dust import (
    Circle,
    apollonian_window_seed,
    circles_tangent,
    dust_points,
    generate_packing,
    reflect_circle,
)


class TestCircleBasics:
    def test_weighted_center_round_trip(self):
        c = Circle.from_center(3.0, 0.0, 2.0 / 3.0)
        assert c.center == pytest.approx((0.0, 2.0 / 3.0))
        assert c.radius == pytest.approx(1.0 / 3.0)

    def test_seed_is_mutually_tangent(self):
        seed = apollonian_window_seed()
        for i in range(4):
            for j in range(i + 1, 4):
                assert circles_tangent(seed[i], seed[j])

    def test_bounding_circle_tangency(self):
        outer = Circle.from_center(-1.0, 0.0, 0.0)
        inner = Circle.from_center(2.0, 0.5, 0.0)
        assert circles_tangent(outer, inner)
        shifted = Circle.from_center(2.0, 0.4, 0.0)
        assert not circles_tangent(outer, shifted)


class TestReflection:
    def test_known_circle(self):
        seed = apollonian_window_seed()
        new = reflect_circle(seed, 0)
        assert new.curvature == pytest.approx(15.0)
        assert new.center == pytest.approx((0.0, 4.0 / 15.0))

    def test_mirror_sibling(self):
        seed = apollonian_window_seed()
        new = reflect_circle(seed, 3)
        assert new.curvature == pytest.approx(3.0)
        assert new.center == pytest.approx((0.0, -2.0 / 3.0))


class TestPacking:
    def test_window_census_to_15(self):
        packing = generate_packing(apollonian_window_seed(), 15.0)
        curvatures = sorted(round(c.curvature) for c in packing)
        assert curvatures == [-1, 2, 2, 3, 3, 6, 6, 6, 6,
                              11, 11, 11, 11, 14, 14, 14, 14, 15, 15]

    def test_every_member_integral(self):
        packing = generate_packing(apollonian_window_seed(), 40.0)
        for c in packing:
            assert c.curvature == pytest.approx(round(c.curvature), abs=1e-6)

    def test_rejects_zero_curvature(self):
        belt_like = (
            Circle(0.0, 1.0, 0.0),
            Circle(0.0, -1.0, 0.0),
            Circle.from_center(1.0, 0.0, 0.0),
            Circle.from_center(1.0, 0.0, 2.0),
        )
        with pytest.raises(ValueError):
            generate_packing(belt_like, 10.0)

    def test_rejects_non_descartes(self):
        bad = (
            Circle.from_center(-1.0, 0.0, 0.0),
            Circle.from_center(2.0, -0.5, 0.0),
            Circle.from_center(2.0, 0.5, 0.0),
            Circle.from_center(4.0, 0.0, 0.75),
        )
        with pytest.raises(ValueError):
            generate_packing(bad, 10.0)

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            generate_packing(apollonian_window_seed(), 2.0)


class TestDust:
    def test_contains_expected_moduli_points(self):
        points = dust_points(apollonian_window_seed(), 15.0)
        as_set = {(round(x, 9), round(y, 9)) for x, y in points}
        assert (round(2 / 3, 9), round(2 / 3, 9)) in as_set
        assert (round(1 / 3, 9), round(1 / 2, 9)) in as_set

    def test_all_points_in_closed_unit_square(self):
        points = dust_points(apollonian_window_seed(), 25.0)
        assert points
        for x, y in points:
            assert 0.0 < x <= 1.0 and 0.0 < y <= 1.0
            assert x <= y  # ascending-curvature normalization

    def test_emitted_tricycles_pass_metric_test(self):
        # spot-check: reconstruct circles for a couple of emitted points
        seed = apollonian_window_seed()
        packing = generate_packing(seed, 15.0)
        positive = [c for c in packing if c.curvature > 0]
        triangles = 0
        for i in range(len(positive)):
            for j in range(i + 1, len(positive)):
                if not circles_tangent(positive[i], positive[j]):
                    continue
                for k in range(j + 1, len(positive)):
                    if circles_tangent(positive[i], positive[k]) and circles_tangent(
                        positive[j], positive[k]
                    ):
                        triangles += 1
        assert triangles >= len(dust_points(seed, 15.0))

    def test_grows_with_bound(self):
        small = dust_points(apollonian_window_seed(), 12.0)
        big = dust_points(apollonian_window_seed(), 30.0)
        assert len(big) > len(small)
        assert set(small) <= set(big)
