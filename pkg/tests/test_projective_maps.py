"""Projective points, rational-map evaluation, local multiplicities, and
preimage fibers on the sphere."""

import math
import random
from fractions import Fraction

import pytest

from cocyclekit import (
    AmbiguousMultiplicityError,
    DegenerateMapError,
    DegreeError,
    Poly,
    ProjectivePoint,
    Scalar,
    apply_map,
    chordal_distance,
    chordal_to_unit_circle,
    compose_map,
    find_roots,
    iterate_map,
    iterate_multiplicity,
    local_multiplicity,
    make_map,
    preimages,
)
from cocyclekit.errors import InputError

from conftest import MAP_CORPUS, map_inv_z2, map_newton_sqrt2, map_z2, map_z2_minus_2


def pt(value) -> ProjectivePoint:
    return ProjectivePoint.exact(value)


INF = ProjectivePoint.infinity()


class TestProjectivePoint:
    def test_normalization(self):
        p = ProjectivePoint(Scalar.exact(6), Scalar.exact(2))
        assert p.z == Scalar.exact(3) and p.w == Scalar.exact(1)

    def test_infinity(self):
        assert INF.is_infinity
        assert INF.z == Scalar.exact(1) and INF.w == Scalar.exact(0)
        with pytest.raises(InputError):
            INF.to_complex()

    def test_zero_zero_rejected(self):
        with pytest.raises(InputError):
            ProjectivePoint(Scalar.exact(0), Scalar.exact(0))

    def test_same_point_exact(self):
        assert pt(2).same_point(ProjectivePoint(Scalar.exact(4), Scalar.exact(2)))
        assert not pt(2).same_point(pt(3))

    def test_same_point_mixed_modes_uses_chordal(self):
        approx = ProjectivePoint.from_complex(2.0 + 1e-12j)
        assert pt(2).same_point(approx)
        assert not pt(2).same_point(ProjectivePoint.from_complex(2.1))

    def test_chordal_distance(self):
        assert chordal_distance(pt(0), INF) == 1.0
        assert chordal_distance(pt(1), pt(1)) == 0.0
        d = chordal_distance(pt(0), pt(1))
        assert abs(d - 1 / math.sqrt(2)) < 1e-15
        assert chordal_distance(pt(3), INF) == chordal_distance(INF, pt(3))

    def test_chordal_to_unit_circle(self):
        assert chordal_to_unit_circle(pt(1)) == 0.0
        assert abs(chordal_to_unit_circle(INF) - 1 / math.sqrt(2)) < 1e-15
        assert chordal_to_unit_circle(pt(0)) == pytest.approx(1 / math.sqrt(2))


class TestMakeMap:
    def test_z2(self):
        f = map_z2()
        assert f.degree == 2 and f.mode == "exact"

    def test_z2_minus_2(self):
        assert map_z2_minus_2().degree == 2

    def test_common_zero_rejected(self):
        # (z w, w^2) share the projective zero [1:0]
        with pytest.raises(DegenerateMapError):
            make_map(Poly.exact([1, 0]), Poly.exact([1]), 2)

    def test_affine_common_root_rejected(self):
        with pytest.raises(DegenerateMapError):
            make_map(Poly.exact([1, -1]), Poly.exact([1, -1]), 2)

    def test_degree_below_two_rejected(self):
        with pytest.raises(DegreeError):
            make_map(Poly.exact([1, 0]), Poly.exact([1]))

    def test_component_above_declared_degree(self):
        with pytest.raises(DegreeError):
            make_map(Poly.exact([1, 0, 0, 0]), Poly.exact([1]), 2)


class TestApply:
    def test_squaring(self):
        f = map_z2()
        assert apply_map(f, pt(2)).same_point(pt(4))
        assert apply_map(f, INF).is_infinity
        assert iterate_map(f, pt(2), 3).same_point(pt(256))

    def test_fixed_point(self):
        assert apply_map(map_z2_minus_2(), pt(2)).same_point(pt(2))

    def test_inversion_swaps_zero_and_infinity(self):
        f = map_inv_z2()
        assert apply_map(f, pt(0)).is_infinity
        assert apply_map(f, INF).same_point(pt(0))

    def test_iterate_zero_steps(self):
        assert iterate_map(map_z2(), pt(7), 0).same_point(pt(7))

    def test_approx_inverted_chart(self):
        # naive squaring of 1e100 stays representable only because the
        # evaluation renormalizes through the chart at infinity
        f = map_z2().approx
        got = apply_map(f, ProjectivePoint.from_complex(1e100))
        assert not got.is_infinity
        assert got.to_complex() == pytest.approx(1e200, rel=1e-12)
        # 1e200 squared leaves binary64 range entirely; the renormalized
        # answer collapses to the point at infinity
        assert apply_map(f, ProjectivePoint.from_complex(1e200)).is_infinity

    def test_exact_point_on_approx_map_aligns(self):
        f = map_z2().approx
        got = apply_map(f, pt(3))
        assert got.mode == "approx"
        assert got.same_point(pt(9))


class TestLocalMultiplicity:
    def test_z2_values(self):
        f = map_z2()
        assert local_multiplicity(f, pt(0)) == 2
        assert local_multiplicity(f, pt(1)) == 1
        assert local_multiplicity(f, INF) == 2

    def test_z2_minus_2_at_infinity(self):
        assert local_multiplicity(map_z2_minus_2(), INF) == 2

    def test_newton_regular_at_infinity(self):
        assert local_multiplicity(map_newton_sqrt2(), INF) == 1

    def test_inv_z2(self):
        f = map_inv_z2()
        assert local_multiplicity(f, pt(0)) == 2
        assert local_multiplicity(f, INF) == 2
        assert local_multiplicity(f, pt(1)) == 1

    def test_ambiguous_in_approx_mode(self):
        # 5e-9 sits between the membership ring (1e-9) and its 32x guard
        f = map_z2().approx
        with pytest.raises(AmbiguousMultiplicityError) as info:
            local_multiplicity(f, ProjectivePoint.from_complex(5e-9))
        assert sorted(info.value.candidates) == [1, 2]

    def test_approx_resolves_far_from_boundary(self):
        f = map_z2().approx
        assert local_multiplicity(f, ProjectivePoint.from_complex(1e-12)) == 2
        assert local_multiplicity(f, ProjectivePoint.from_complex(0.5)) == 1


class TestIterateMultiplicity:
    def test_fixed_critical_point(self):
        assert iterate_multiplicity(map_z2(), pt(0), 5) == 32

    def test_regular_orbit(self):
        assert iterate_multiplicity(map_z2(), pt(2), 4) == 1

    def test_critical_orbit_of_z2_minus_2(self):
        # 0 -> -2 -> 2: critical only at the first step
        assert iterate_multiplicity(map_z2_minus_2(), pt(0), 2) == 2

    def test_zero_steps(self):
        assert iterate_multiplicity(map_z2(), pt(0), 0) == 1

    def test_multiplicativity_along_orbits(self):
        rng = random.Random(77)
        starts = [pt(0), pt(2), pt(Fraction(1, 2)), INF, ProjectivePoint.exact(0, 1)]
        for name, build in MAP_CORPUS.items():
            f = build()
            for x in starts:
                for n in range(0, 4):
                    for m in range(0, 7 - n):
                        lhs = iterate_multiplicity(f, x, n + m)
                        rhs = iterate_multiplicity(f, x, n) * iterate_multiplicity(
                            f, iterate_map(f, x, n), m
                        )
                        assert lhs == rhs

    def test_chain_rule_against_composed_map(self):
        # n <= 3: multiplicity of the iterate equals the product along the orbit,
        # checked at every critical point of the composed map
        for build in (map_z2, map_z2_minus_2, map_inv_z2):
            f = build()
            composed = f
            for n in (2, 3):
                composed = compose_map(composed, f)
                crit: list[ProjectivePoint] = [
                    ProjectivePoint.affine(c.center)
                    for c in find_roots(composed.wronskian)
                ]
                if local_multiplicity(composed, INF) > 1:
                    crit.append(INF)
                for x in crit:
                    assert local_multiplicity(composed, x) == iterate_multiplicity(f, x, n)


class TestPreimages:
    def test_z2_generic_fiber(self):
        fiber = preimages(map_z2(), pt(4))
        got = {(str(y), m) for y, m in fiber.points}
        assert got == {("-2", 1), ("2", 1)}

    def test_z2_ramified_fiber(self):
        fiber = preimages(map_z2(), pt(0))
        assert len(fiber.points) == 1
        y, m = fiber.points[0]
        assert y.same_point(pt(0)) and m == 2

    def test_infinity_degree_drop(self):
        fiber = preimages(map_z2_minus_2(), INF)
        assert len(fiber.points) == 1
        y, m = fiber.points[0]
        assert y.is_infinity and m == 2

    def test_inversion_fibers(self):
        f = map_inv_z2()
        (y, m), = preimages(f, pt(0)).points
        assert y.is_infinity and m == 2
        (y, m), = preimages(f, INF).points
        assert y.same_point(pt(0)) and m == 2

    def test_total_is_degree_across_corpus(self):
        targets = [pt(0), pt(1), pt(-3), pt(Fraction(2, 7)), INF, ProjectivePoint.exact(1, 1)]
        for build in MAP_CORPUS.values():
            f = build()
            for t in targets:
                assert preimages(f, t).total == f.degree

    def test_fiber_members_map_back(self):
        for build in MAP_CORPUS.values():
            f = build()
            target = pt(3)
            for y, _ in preimages(f, target).points:
                assert apply_map(f, y).same_point(target, tol=1e-6)

    def test_exact_fiber_of_newton(self):
        # (z^2+2)/(2z) = inf only at z = 0 and z = inf
        fiber = preimages(map_newton_sqrt2(), INF)
        keys = {("inf" if y.is_infinity else str(y), m) for y, m in fiber.points}
        assert keys == {("0", 1), ("inf", 1)}


class TestComposeMap:
    def test_z2_squared(self):
        g = compose_map(map_z2(), map_z2())
        assert g.degree == 4
        assert apply_map(g, pt(3)).same_point(pt(81))

    def test_matches_pointwise_iteration(self):
        rng = random.Random(9)
        for build in MAP_CORPUS.values():
            f = build()
            g = compose_map(f, f)
            for _ in range(5):
                x = pt(Fraction(rng.randint(-8, 8), rng.randint(1, 5)))
                assert apply_map(g, x).same_point(iterate_map(f, x, 2), tol=1e-7)
