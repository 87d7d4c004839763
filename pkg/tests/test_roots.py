"""Root finding with multiplicity clustering, in both scalar modes."""

import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocyclekit import NumericFailureError, Poly, Scalar, find_roots
from cocyclekit.errors import DegenerateInputError
from cocyclekit.poly import compose, p_mul


def test_exact_simple_roots():
    got = find_roots(Poly.exact([1, 0, -4]))
    centers = sorted((c.center.re for c in got))
    assert centers == [-2, 2]
    assert all(c.multiplicity == 1 and c.exact and c.radius == 0.0 for c in got)


def test_exact_triple_root():
    cube = compose(Poly.exact([1, 0, 0, 0]), Poly.exact([1, -1]))  # (z-1)^3
    got = find_roots(cube)
    assert len(got) == 1
    assert got[0].center == Scalar.exact(1)
    assert got[0].multiplicity == 3


def test_cube_roots_of_unity():
    got = find_roots(Poly.exact([1, 0, 0, -1]))
    assert sorted(c.multiplicity for c in got) == [1, 1, 1]
    args = sorted(cmath.phase(c.center.to_complex()) for c in got)
    expected = [-2 * math.pi / 3, 0.0, 2 * math.pi / 3]
    assert all(abs(a - e) < 1e-9 for a, e in zip(args, expected))
    for c in got:
        z = c.center.to_complex()
        assert abs(z**3 - 1) < 1e-12


def test_approx_triple_root_clusters():
    # (z-1)^3 expanded in floats: rounding splits the root by ~eps^(1/3),
    # so reuniting it needs a tolerance at that scale, not the default 1e-9
    got = find_roots(Poly.approx([1.0, -3.0, 3.0, -1.0]), tol=1e-4)
    assert len(got) == 1
    assert got[0].multiplicity == 3
    assert abs(got[0].center.to_complex() - 1.0) < 1e-4


def test_exact_gaussian_quadratic():
    got = find_roots(Poly.exact([1, 0, 1]))  # z^2 + 1
    centers = {c.center for c in got}
    assert centers == {Scalar.exact(0, 1), Scalar.exact(0, -1)}
    assert all(c.exact for c in got)


def test_exact_irrational_roots_fall_back_to_clusters():
    got = find_roots(Poly.exact([1, 0, -2]))  # z^2 - 2
    assert sorted(c.multiplicity for c in got) == [1, 1]
    vals = sorted(c.center.to_complex().real for c in got)
    assert abs(vals[0] + math.sqrt(2)) < 1e-9
    assert abs(vals[1] - math.sqrt(2)) < 1e-9


def test_exact_rational_roots_are_exact():
    p = p_mul(Poly.exact([2, -1]), Poly.exact([1, 5]))  # (2z-1)(z+5)
    got = find_roots(p)
    exact_centers = {c.center for c in got if c.exact}
    half = Scalar.exact(1) / Scalar.exact(2)
    assert exact_centers == {half, Scalar.exact(-5)}


def test_degree_zero_rejected():
    with pytest.raises(DegenerateInputError):
        find_roots(Poly.exact([7]))


def test_nonconvergence_reports_residuals():
    p = Poly.approx([1.0, -3.0, 3.0, -1.0])
    with pytest.raises(NumericFailureError) as info:
        find_roots(p, max_iter=1)
    assert info.value.residuals


def _random_int_poly(rng: random.Random, degree: int) -> Poly:
    coeffs = [rng.randint(-9, 9) for _ in range(degree + 1)]
    while coeffs[0] == 0:
        coeffs[0] = rng.randint(-9, 9)
    return Poly.exact(coeffs)


def test_multiplicities_sum_to_degree_corpus():
    rng = random.Random(20240816)
    for _ in range(60):
        degree = rng.randint(1, 12)
        p = _random_int_poly(rng, degree)
        got = find_roots(p)
        assert sum(c.multiplicity for c in got) == degree


def test_residual_bound_corpus():
    rng = random.Random(11)
    for _ in range(40):
        degree = rng.randint(1, 8)
        p = _random_int_poly(rng, degree)
        bound = 1e-8 * (1 + max(abs(c.to_complex()) for c in p.coeffs))
        approx = Poly.approx([c.to_complex() for c in p.coeffs])
        for cluster in find_roots(approx):
            cs = [c.to_complex() for c in approx.coeffs]
            val = 0j
            for c in cs:
                val = val * cluster.center.to_complex() + c
            assert abs(val) <= bound


coeff_lists = st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=9)


@given(coeff_lists)
@settings(max_examples=60, deadline=None)
def test_multiplicity_sum_property(coeffs):
    if coeffs[0] == 0:
        coeffs[0] = 1
    p = Poly.exact(coeffs)
    got = find_roots(p)
    assert sum(c.multiplicity for c in got) == p.degree


def test_repeated_factor_multiplicity_structure():
    # (z^2+1)^2 (z-3): exact path confirms multiplicities by gcd descent
    sq = p_mul(Poly.exact([1, 0, 1]), Poly.exact([1, 0, 1]))
    p = p_mul(sq, Poly.exact([1, -3]))
    got = find_roots(p)
    mults = sorted(c.multiplicity for c in got)
    assert mults == [1, 2, 2]
