"""Root finding with multiplicity clustering.

Approximate mode runs Aberth-Ehrlich simultaneous iteration on binary64
complex numbers, freezing a root once its residual drops to the level that
rounding alone can produce, then merges nearby roots into clusters.  Exact
mode first splits the polynomial into square-free factors (so every
multiplicity is certified by gcd arithmetic), solves what it can in closed
form over the Gaussian rationals, and falls back to the float iteration for
genuinely irrational roots, keeping the exact multiplicity either way.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateInputError, NumericFailureError
from .poly import Poly, derivative, evaluate, poly_divmod, squarefree_decomposition
from .scalars import EXACT, Scalar

_EPS = 2.220446049250313e-16

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class RootCluster:
    center: Scalar
    multiplicity: int
    radius: float

    @property
    def exact(self) -> bool:
        return self.center.is_exact()


def _horner(cs: list[complex], z: complex) -> complex:
    acc = 0j
    for c in cs:
        acc = acc * z + c
    return acc


def _residual_floor(cs: list[complex], z: complex) -> float:
    """Magnitude below which |p(z)| is indistinguishable from rounding noise."""
    m = len(cs) - 1
    az = abs(z)
    s = 0.0
    for j, c in enumerate(cs):
        s += abs(c) * az ** (m - j) * (4 * (m - j) + 1)
    return _EPS * s


def _aberth(cs: list[complex], max_iter: int) -> list[complex]:
    """All roots of the polynomial with descending complex coefficients.

    Expects degree >= 1, nonzero leading and trailing coefficients (the
    caller strips exact zeros at the origin first).
    """
    m = len(cs) - 1
    if m == 1:
        return [-cs[1] / cs[0]]
    if m == 2:
        a, b, c = cs
        disc = cmath.sqrt(b * b - 4 * a * c)
        # pick the sign that avoids cancellation in -b -/+ disc
        if (b.conjugate() * disc).real > 0:
            disc = -disc
        q = -0.5 * (b - disc)
        z1 = q / a
        z2 = c / q if q != 0 else 0j
        return [z1, z2]
    lead = cs[0]
    radius = 1.0 + max(abs(c / lead) for c in cs[1:])
    roots = [
        radius * cmath.exp(2j * cmath.pi * (k / m) + 0.4j) for k in range(m)
    ]
    deriv = [c * (m - j) for j, c in enumerate(cs[:-1])]
    frozen = [False] * m
    for _ in range(max_iter):
        moved = False
        for k in range(m):
            if frozen[k]:
                continue
            z = roots[k]
            pz = _horner(cs, z)
            if abs(pz) <= _residual_floor(cs, z):
                frozen[k] = True
                continue
            dpz = _horner(deriv, z)
            if dpz == 0:
                roots[k] = z * (1 + 1e-6) + 1e-6
                moved = True
                continue
            newton = pz / dpz
            repel = sum(1 / (z - roots[j]) for j in range(m) if j != k)
            denom = 1 - newton * repel
            step = newton if denom == 0 else newton / denom
            roots[k] = z - step
            if abs(step) > _EPS * 4 * max(1.0, abs(z)):
                moved = True
            else:
                frozen[k] = True
        if all(frozen) or not moved:
            break
    bad = [abs(_horner(cs, z)) for z in roots]
    floors = [_residual_floor(cs, z) for z in roots]
    # multiple roots legitimately sit above the simple-root floor; accept a
    # cluster-sized relaxation before declaring failure
    if any(r > f * 1e6 + 1e-290 for r, f in zip(bad, floors)):
        raise NumericFailureError(
            f"root iteration stalled after {max_iter} iterations",
            residuals=sorted(bad, reverse=True),
        )
    return roots


def _cluster(points: list[complex], tol: float) -> list[tuple[complex, int, float]]:
    """Union points at pairwise distance < tol*max(1, |.|); (center, size, radius)."""
    n = len(points)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(points[i]), abs(points[j]))
            if abs(points[i] - points[j]) < tol * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(points[i])
    out = []
    for members in groups.values():
        center = sum(members) / len(members)
        radius = max(abs(p - center) for p in members)
        out.append((center, len(members), radius))
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


def _strip_origin_roots(cs: list[complex]) -> tuple[list[complex], int]:
    k = 0
    while len(cs) > 1 and cs[-1] == 0:
        cs = cs[:-1]
        k += 1
    return cs, k


def _gaussian_sqrt(d: Scalar) -> Optional[Scalar]:
    """Exact square root of a Gaussian rational, if one exists in Q(i)."""
    x, y = d.re, d.im

    def _frac_sqrt(v: Fraction) -> Optional[Fraction]:
        if v < 0:
            return None
        num = _isqrt_exact(v.numerator)
        den = _isqrt_exact(v.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    if y == 0:
        r = _frac_sqrt(x)
        if r is not None:
            return Scalar(r, Fraction(0))
        r = _frac_sqrt(-x)
        if r is not None:
            return Scalar(Fraction(0), r)
        return None
    norm = _frac_sqrt(x * x + y * y)
    if norm is None:
        return None
    u2 = (x + norm) / 2
    u = _frac_sqrt(u2)
    if u is None or u == 0:
        return None
    v = y / (2 * u)
    return Scalar(u, v)


def _isqrt_exact(n: int) -> Optional[int]:
    r = math.isqrt(n)
    return r if r * r == n else None


def _exact_linear_root(factor: Poly) -> Scalar:
    return -(factor.coeffs[1] / factor.coeffs[0])


def _exact_quadratic_roots(factor: Poly) -> Optional[tuple[Scalar, Scalar]]:
    a, b, c = factor.coeffs
    disc = b * b - Scalar.exact(4) * a * c
    root = _gaussian_sqrt(disc)
    if root is None:
        return None
    two_a = Scalar.exact(2) * a
    return ((-b + root) / two_a, (-b - root) / two_a)


def _snap_rational_roots(factor: Poly, approx: list[complex]) -> tuple[list[Scalar], Poly]:
    """Peel off Gaussian-rational roots of a square-free exact factor."""
    found: list[Scalar] = []
    remaining = factor
    for z in approx:
        if remaining.degree < 1:
            break
        for digits in (1, 2, 4, 6, 9, 12):
            cand = Scalar(
                Fraction(z.real).limit_denominator(10**digits),
                Fraction(z.imag).limit_denominator(10**digits),
            )
            if evaluate(remaining, cand).is_zero():
                found.append(cand)
                divisor = Poly((Scalar.one(EXACT), -cand))
                remaining, rem = poly_divmod(remaining, divisor)
                assert rem.is_zero()
                break
    return found, remaining


def find_roots(p: Poly, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> list[RootCluster]:
    """Root clusters of p; multiplicities always sum to deg(p).

    Exact mode certifies multiplicities through square-free decomposition
    and reports Gaussian-rational roots with exact centers (radius 0);
    irrational roots keep exact multiplicities but binary64 centers.
    """
    if p.degree < 1:
        raise DegenerateInputError("root finding needs degree >= 1")
    if tol <= 0:
        raise DegenerateInputError("tolerance must be positive")
    if p.mode == EXACT:
        return _find_roots_exact(p, tol, max_iter)
    cs = [c.to_complex() for c in p.coeffs]
    cs, at_origin = _strip_origin_roots(cs)
    points = [0j] * at_origin
    if len(cs) > 1:
        points.extend(_aberth(cs, max_iter))
    return [
        RootCluster(Scalar.approx(center), size, radius)
        for center, size, radius in _cluster(points, tol)
    ]


def _find_roots_exact(p: Poly, tol: float, max_iter: int) -> list[RootCluster]:
    clusters: list[RootCluster] = []
    for factor, mult in squarefree_decomposition(p):
        f = factor
        if evaluate(f, Scalar.exact(0)).is_zero():
            clusters.append(RootCluster(Scalar.exact(0), mult, 0.0))
            f, rem = poly_divmod(f, Poly.exact([1, 0]))
            assert rem.is_zero()
        if f.degree == 0:
            continue
        if f.degree == 1:
            clusters.append(RootCluster(_exact_linear_root(f), mult, 0.0))
            continue
        if f.degree == 2:
            got = _exact_quadratic_roots(f)
            if got is not None:
                clusters.append(RootCluster(got[0], mult, 0.0))
                clusters.append(RootCluster(got[1], mult, 0.0))
                continue
        approx = _aberth([c.to_complex() for c in f.coeffs], max_iter)
        snapped, remaining = _snap_rational_roots(f, approx)
        for s in snapped:
            clusters.append(RootCluster(s, mult, 0.0))
        if remaining.degree >= 1:
            rs = _aberth([c.to_complex() for c in remaining.coeffs], max_iter)
            # remaining is square-free; a cluster of size > 1 just means the
            # tolerance is coarser than the actual root separation
            for center, size, radius in _cluster(rs, tol):
                clusters.append(RootCluster(Scalar.approx(center), mult * size, radius))

    def sort_key(c: RootCluster):
        z = c.center.to_complex()
        return (z.real, z.imag)

    return sorted(clusters, key=sort_key)
