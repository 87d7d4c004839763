"""Exceptional-set detection, certificates, and the backward-invariant core."""

import math

import pytest

from cocyclekit import (
    Poly,
    ProjectivePoint,
    Scalar,
    apply_map,
    exceptional_set,
    find_roots,
    make_map,
    preimages,
    totally_invariant_core,
)
from cocyclekit.errors import (
    InputError,
    NotBackwardInvariantError,
    UnsupportedSpecError,
)
from cocyclekit.poly import p_sub, p_scale

from conftest import (
    MAP_CORPUS,
    map_inv_z2,
    map_lattes_like,
    map_newton_sqrt2,
    map_z2,
    map_z2_minus_2,
    map_z3,
)

INF = ProjectivePoint.infinity()


def pt(value) -> ProjectivePoint:
    return ProjectivePoint.exact(value)


def point_set(points) -> set[str]:
    return {str(p) for p in points}


def refetch_fiber(f, a):
    """Recompute a fiber from scratch by solving p - a*q = 0 directly."""
    if a.is_infinity:
        # preimages of infinity are the zeros of q plus the degree drop
        eq = f.q
    else:
        eq = p_sub(f.p, p_scale(f.q, a.z))
    points = []
    if eq.degree >= 1:
        for c in find_roots(eq):
            points.append((ProjectivePoint.affine(c.center), c.multiplicity))
    drop = f.degree - eq.degree
    if drop > 0:
        points.append((ProjectivePoint.infinity(f.mode), drop))
    return points


class TestExceptionalSets:
    def test_power_maps(self):
        for build, d in ((map_z2, 2), (map_z3, 3)):
            rep = exceptional_set(build())
            assert point_set(rep.points) == {"0", "inf"}
            assert [len(c) for c in rep.cycle_structure] == [1, 1]
            assert rep.points[0].same_point(pt(0))  # affine sorts first
            assert rep.points[1].is_infinity

    def test_polynomial_with_full_julia_set(self):
        rep = exceptional_set(map_z2_minus_2())
        assert point_set(rep.points) == {"inf"}
        assert rep.cycle_structure == ((rep.points[0],),)

    def test_inversion_two_cycle(self):
        rep = exceptional_set(map_inv_z2())
        assert point_set(rep.points) == {"0", "inf"}
        assert len(rep.cycle_structure) == 1
        cyc = rep.cycle_structure[0]
        assert len(cyc) == 2
        assert point_set(cyc) == {"0", "inf"}

    def test_empty_set(self):
        rep = exceptional_set(map_lattes_like())
        assert rep.points == ()
        assert rep.cycle_structure == ()
        assert rep.certificates == ()

    def test_certificates_reverify(self):
        # do not trust the search loop: recompute each member's fiber from
        # the defining polynomial and check total invariance from scratch
        for build in (map_z2, map_z3, map_z2_minus_2, map_inv_z2):
            f = build()
            rep = exceptional_set(f)
            members = list(rep.points)
            assert len(rep.certificates) == len(members)
            recovered = []
            for a, fiber in rep.certificates:
                assert any(a.same_point(m) for m in members)
                assert len(fiber.points) == 1
                y, mult = fiber.points[0]
                assert mult == f.degree
                assert any(y.same_point(m) for m in members)
                recovered.append(y)
                fresh = refetch_fiber(f, a)
                assert len(fresh) == 1
                fy, fm = fresh[0]
                assert fm == f.degree and fy.same_point(y, tol=1e-7)
                assert any(apply_map(f, a).same_point(m) for m in members)
            # f^{-1}(E) = E: the fiber singletons exhaust the set
            assert point_set(recovered) == point_set(members)

    def test_growth_check_values(self):
        rep = exceptional_set(map_z3())
        for _, values in rep.growth_check:
            assert values == (3, 9, 27, 81)

    def test_budget_note(self):
        rep = exceptional_set(map_z2())
        assert "2" in rep.budget_note and rep.budget_note

    def test_points_sorted(self):
        rep = exceptional_set(map_inv_z2())
        assert not rep.points[0].is_infinity and rep.points[1].is_infinity


class TestNewtonMap:
    def test_exact_mode_refuses(self):
        # the totally ramified points sit at +-sqrt(2), outside the Gaussian
        # rationals, so exact certification is impossible and says so
        with pytest.raises(UnsupportedSpecError):
            exceptional_set(map_newton_sqrt2())

    def test_approx_mode_finds_both_roots(self):
        rep = exceptional_set(map_newton_sqrt2().approx)
        assert len(rep.points) == 2
        centers = sorted(p.to_complex().real for p in rep.points)
        assert centers[0] == pytest.approx(-math.sqrt(2), abs=1e-9)
        assert centers[1] == pytest.approx(math.sqrt(2), abs=1e-9)
        # both are fixed points (the basins of the two square roots)
        assert [len(c) for c in rep.cycle_structure] == [1, 1]


class TestConjugationInvariance:
    def test_conjugated_basilica_tail(self):
        # w^2 / (1 - 2 w^2) is z^2 - 2 watched through z -> 1/z, so its
        # exceptional set is the image of {inf} under the same change
        g = make_map(Poly.exact([1, 0, 0]), Poly.exact([-2, 0, 1]), 2)
        rep = exceptional_set(g)
        assert point_set(rep.points) == {"0"}
        assert rep.cycle_structure == ((rep.points[0],),)

    def test_approx_power_map(self):
        rep = exceptional_set(map_z2().approx)
        assert len(rep.points) == 2
        assert rep.points[0].same_point(ProjectivePoint.from_complex(0))
        assert rep.points[1].is_infinity


class TestTotallyInvariantCore:
    def test_stable_set_returned(self):
        got = totally_invariant_core(map_z2(), [pt(0), INF], 1)
        assert point_set(got) == {"0", "inf"}
        assert not got[0].is_infinity  # sorted, affine first

    def test_enlarged_set_rejected(self):
        # f^{-1}(-1) = {+-i} leaves the set, so the premise fails
        with pytest.raises(NotBackwardInvariantError) as info:
            totally_invariant_core(map_z2(), [pt(0), INF, pt(1), pt(-1)], 1)
        w = info.value.witness
        assert w.same_point(ProjectivePoint.exact(0, 1)) or w.same_point(
            ProjectivePoint.exact(0, -1)
        )

    def test_single_extra_point_rejected(self):
        with pytest.raises(NotBackwardInvariantError):
            totally_invariant_core(map_z2(), [pt(0), INF, pt(1)], 1)

    def test_deeper_backward_step(self):
        got = totally_invariant_core(map_inv_z2(), [pt(0), INF], 2)
        assert point_set(got) == {"0", "inf"}

    def test_m_below_one_rejected(self):
        with pytest.raises(InputError):
            totally_invariant_core(map_z2(), [pt(0)], 0)

    def test_duplicates_deduped(self):
        got = totally_invariant_core(map_z2(), [pt(0), pt(0), INF], 1)
        assert len(got) == 2

    def test_empty_input(self):
        assert totally_invariant_core(map_z2(), [], 1) == ()

    def test_matches_exceptional_set(self):
        for build in (map_z2, map_z3, map_inv_z2, map_z2_minus_2):
            f = build()
            rep = exceptional_set(f)
            if not rep.points:
                continue
            got = totally_invariant_core(f, list(rep.points), 1)
            assert point_set(got) == point_set(rep.points)
