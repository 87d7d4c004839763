"""Rational self-maps of the projective line and their multiplicity cocycle.

A map is stored as a pair of univariate polynomials (p, q) together with a
declared common degree d; the homogeneous components are recovered by
padding with powers of w.  The local multiplicity of the map at a point is
1 + (vanishing order of the Wronskian p'q - pq' in a chart containing the
point), and the product of local multiplicities along a forward orbit is
the n-step multiplicity.  On top of that sit preimage fibers, backward
growth estimation, exceptional-set detection, and an equidistribution
diagnostic for backward orbits.

Everything here treats infinity through the coordinate swap z -> 1/z, so
no operation special-cases large numbers.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    AmbiguousMultiplicityError,
    DegenerateMapError,
    DegreeError,
    ExactModeRequiredError,
    InputError,
    NotBackwardInvariantError,
    NumericFailureError,
    UnsupportedSpecError,
)
from .poly import (
    Poly,
    p_add,
    p_mul,
    p_scale,
    p_sub,
    resultant,
    reversed_at,
    vanishing_order,
)
from .projective import CHORDAL_TOL, ProjectivePoint, chordal_to_unit_circle
from .roots import DEFAULT_TOL, find_roots
from .scalars import APPROX, EXACT, Scalar

# Membership decisions sit between "inside the cluster" and this many
# cluster radii away; anything in the band is reported as ambiguous
# rather than silently resolved.
_AMBIGUITY_FACTOR = 32.0

# Leading coefficients at most this far (relatively) from zero are treated
# as a genuine projective degree drop when solving for a fiber.
_DROP_TOL = 1e-12

# Width of the spherical band around |z| = 1 used by the radial
# concentration figure of the equidistribution report.
RADIAL_BAND = 1e-2


def wronskian_pair(p: Poly, q: Poly, degree: int) -> Poly:
    """p'q - pq' through one fused coefficient sum.

    The coefficient of z^m is sum over r+s = m+1 of (r - s) p_r q_s, and the
    top candidate m = 2d - 1 cancels structurally (r = s = d), so the sum is
    taken only up to m = 2d - 2.  Fusing avoids the cancellation that the
    two-product form would hit in approximate mode.
    """
    mode = p.mode
    coeffs = []
    for m in range(2 * degree - 2, -1, -1):
        acc = Scalar.zero(mode)
        for r in range(0, min(m + 1, degree) + 1):
            s = m + 1 - r
            if r == s or s < 0 or s > degree:
                continue
            acc = acc + (p.coefficient(r) * q.coefficient(s)).scaled(r - s)
        coeffs.append(acc)
    return Poly.make(coeffs or [Scalar.zero(mode)])


def _poly_to_approx(p: Poly) -> Poly:
    return Poly.make([Scalar.approx(c.to_complex()) for c in p.coeffs])


@dataclass(frozen=True)
class RationalMap:
    """A degree-d rational self-map of the projective line.

    p and q are affine representatives of the homogeneous components; the
    declared degree fixes the homogenization, so a pair like (z, 1) with
    degree 2 means [zw : w^2], which is degenerate and rejected.
    """

    p: Poly
    q: Poly
    degree: int

    def __post_init__(self):
        if self.p.mode != self.q.mode:
            self.p.coeffs[0]._check(self.q.coeffs[0])
        if self.degree < 2:
            raise DegreeError("a rational map needs degree at least 2")
        if max(self.p.degree, self.q.degree) > self.degree:
            raise DegreeError("component degree exceeds the declared degree")
        res = resultant(self.p, self.q, self.degree, self.degree)
        if self.mode == EXACT:
            degenerate = res.is_zero()
        else:
            # Hadamard bound on the Sylvester determinant: |res| is at most
            # the product of the 2d row norms, d rows from each component
            norm_p = math.sqrt(sum(abs(c) ** 2 for c in self.p.coeffs))
            norm_q = math.sqrt(sum(abs(c) ** 2 for c in self.q.coeffs))
            degenerate = abs(res) <= 1e-10 * (norm_p * norm_q) ** self.degree
        if degenerate:
            raise DegenerateMapError(
                "the components share a projective zero (resultant vanishes)"
            )

    @property
    def mode(self) -> str:
        return self.p.mode

    @classmethod
    def _trusted(cls, p: Poly, q: Poly, degree: int) -> "RationalMap":
        # bypasses the degeneracy check; only for pairs derived from a map
        # that already passed it (mode conversion, chart swap)
        self = object.__new__(cls)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "degree", degree)
        return self

    @cached_property
    def wronskian(self) -> Poly:
        return wronskian_pair(self.p, self.q, self.degree)

    @cached_property
    def reciprocal_conjugate(self) -> "RationalMap":
        """The same dynamics watched through z -> 1/z; swaps 0 and infinity."""
        return RationalMap._trusted(
            reversed_at(self.q, self.degree),
            reversed_at(self.p, self.degree),
            self.degree,
        )

    @cached_property
    def approx(self) -> "RationalMap":
        if self.mode == APPROX:
            return self
        return RationalMap._trusted(
            _poly_to_approx(self.p), _poly_to_approx(self.q), self.degree
        )

    def __str__(self) -> str:
        return f"[{self.p} : {self.q}] deg {self.degree}"


def make_map(p: Poly, q: Poly, degree: int | None = None) -> RationalMap:
    """Validate a component pair and wrap it as a map.

    The degree defaults to the larger component degree; passing it
    explicitly declares extra powers of w on both sides, which the
    resultant check then rejects as a common zero.
    """
    if degree is None:
        degree = max(p.degree, q.degree)
    return RationalMap(p, q, degree)


def _align(f: RationalMap, x: ProjectivePoint) -> tuple[RationalMap, ProjectivePoint]:
    if f.mode == EXACT and x.mode == EXACT:
        return f, x
    return f.approx, x.to_approx()


def _homog_eval(p: Poly, degree: int, a: Scalar, b: Scalar) -> Scalar:
    bp = [Scalar.one(a.mode)]
    for _ in range(degree):
        bp.append(bp[-1] * b)
    acc = Scalar.zero(a.mode)
    for k in range(degree, -1, -1):
        acc = acc * a + p.coefficient(k) * bp[degree - k]
    return acc


def apply_map(f: RationalMap, x: ProjectivePoint) -> ProjectivePoint:
    """Evaluate both homogeneous components and renormalize."""
    f, x = _align(f, x)
    if x.is_infinity:
        a, b = Scalar.one(x.mode), Scalar.zero(x.mode)
    elif x.mode == APPROX and abs(x.z) > 1.0:
        # same projective point, better conditioned coordinates
        a, b = Scalar.one(APPROX), Scalar.one(APPROX) / x.z
    else:
        a, b = x.z, Scalar.one(x.mode)
    top = _homog_eval(f.p, f.degree, a, b)
    bot = _homog_eval(f.q, f.degree, a, b)
    if top.is_zero() and bot.is_zero():
        raise NumericFailureError(
            "both homogeneous components evaluated to zero", residuals=[0.0]
        )
    return ProjectivePoint(top, bot)


def iterate_map(f: RationalMap, x: ProjectivePoint, n: int) -> ProjectivePoint:
    """Apply the map n times pointwise; never composes the polynomials."""
    if n < 0:
        raise InputError("iteration count must be nonnegative")
    for _ in range(n):
        x = apply_map(f, x)
    return x


def compose_map(outer: RationalMap, inner: RationalMap) -> RationalMap:
    """The map outer(inner(z)) as an explicit component pair.

    Used by tests as the oracle against iterate_map/iterate_multiplicity;
    degrees multiply, so keep the composition depth small.
    """
    if outer.mode != inner.mode:
        outer, inner = outer.approx, inner.approx
    mode = outer.mode
    d = outer.degree
    powers_p = [Poly.one(mode)]
    powers_q = [Poly.one(mode)]
    for _ in range(d):
        powers_p.append(p_mul(powers_p[-1], inner.p))
        powers_q.append(p_mul(powers_q[-1], inner.q))
    num = Poly.zero(mode)
    den = Poly.zero(mode)
    for k in range(d + 1):
        basis = p_mul(powers_p[k], powers_q[d - k])
        num = p_add(num, p_scale(basis, outer.p.coefficient(k)))
        den = p_add(den, p_scale(basis, outer.q.coefficient(k)))
    return RationalMap(num, den, outer.degree * inner.degree)


# -- local multiplicities ----------------------------------------------------


def local_multiplicity(
    f: RationalMap, x: ProjectivePoint, tol: float = DEFAULT_TOL
) -> int:
    """1 + (order of vanishing of the Wronskian at x, in a chart holding x)."""
    if x.is_infinity:
        g = f.reciprocal_conjugate
        return local_multiplicity(g, ProjectivePoint.affine(Scalar.zero(g.mode)), tol)
    f, x = _align(f, x)
    w = f.wronskian
    if f.mode == EXACT:
        if w.is_zero():
            raise DegenerateMapError("identically vanishing Wronskian")
        return 1 + vanishing_order(w, x.z)
    if w.degree < 1:
        return 1
    z = x.to_complex()
    total = 1
    for cluster in find_roots(w, tol):
        center = cluster.center.to_complex()
        dist = abs(z - center)
        inner = max(cluster.radius, tol * max(1.0, abs(z), abs(center)))
        if dist <= inner:
            total += cluster.multiplicity
        elif dist <= inner * _AMBIGUITY_FACTOR:
            raise AmbiguousMultiplicityError(
                f"point sits {dist:.3e} from a Wronskian cluster of "
                f"multiplicity {cluster.multiplicity} (boundary {inner:.3e})",
                candidates=[1, 1 + cluster.multiplicity],
            )
    return total


def iterate_multiplicity(
    f: RationalMap, x: ProjectivePoint, n: int, tol: float = DEFAULT_TOL
) -> int:
    """Multiplicity of the n-fold iterate at x: the chain-rule product."""
    if n < 0:
        raise InputError("iteration count must be nonnegative")
    out = 1
    for _ in range(n):
        out *= local_multiplicity(f, x, tol)
        x = apply_map(f, x)
    return out


# -- preimage fibers ---------------------------------------------------------


@dataclass(frozen=True)
class PreimageFiber:
    """Full preimage of one point, with local multiplicities summing to d."""

    base: ProjectivePoint
    points: tuple[tuple[ProjectivePoint, int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.points)


def _point_key(x: ProjectivePoint) -> tuple:
    if x.is_infinity:
        return (1, 0.0, 0.0)
    z = x.z.to_complex()
    return (0, z.real, z.imag)


def _fiber_polynomial(f: RationalMap, x: ProjectivePoint) -> tuple[Poly, int]:
    """Affine equation for f = x and the multiplicity parked at infinity.

    Solves z_t Q - w_t P = 0 for the target written as [z_t : w_t]; the
    degree drop of the affine representative is exactly the number of
    fiber points at infinity, counted with multiplicity.
    """
    d = f.degree
    if x.is_infinity:
        r = f.q
    else:
        r = p_sub(f.p, p_scale(f.q, x.z))
    if f.mode == APPROX:
        if x.is_infinity:
            sources = [abs(c) for c in f.q.coeffs]
        else:
            za = abs(x.z)
            sources = [abs(c) for c in f.p.coeffs]
            sources += [abs(c) * za for c in f.q.coeffs]
        scale = max([1e-300] + sources)
        body = list(r.coeffs)
        while len(body) > 1 and abs(body[0]) <= _DROP_TOL * scale:
            body.pop(0)
        if len(body) == 1 and abs(body[0]) <= _DROP_TOL * scale:
            raise NumericFailureError(
                "fiber polynomial vanished to working precision",
                residuals=[abs(body[0])],
            )
        r = Poly.make(body)
    if r.is_zero():
        raise DegenerateMapError("fiber polynomial is identically zero")
    return r, d - r.degree


def preimages(
    f: RationalMap, x: ProjectivePoint, tol: float = DEFAULT_TOL
) -> PreimageFiber:
    """All d preimages of x counted with multiplicity."""
    f2, x2 = _align(f, x)
    r, at_infinity = _fiber_polynomial(f2, x2)
    points: list[tuple[ProjectivePoint, int]] = []
    if at_infinity > 0:
        points.append((ProjectivePoint.infinity(x2.mode), at_infinity))
    if r.degree >= 1:
        for cluster in find_roots(r, tol):
            points.append((ProjectivePoint.affine(cluster.center), cluster.multiplicity))
    points.sort(key=lambda t: _point_key(t[0]))
    fiber = PreimageFiber(x, tuple(points))
    assert fiber.total == f.degree
    return fiber


# -- backward growth ---------------------------------------------------------


@dataclass(frozen=True)
class BackwardEstimate:
    """Largest n-step multiplicity over the backward fiber, with a witness.

    witness[0] is the achieving preimage y; successive entries are its
    forward orbit, ending at the queried point.  complete is False when the
    exploration budget ran out, in which case value is a lower bound
    achieved by the witness path.
    """

    value: int
    witness: tuple[ProjectivePoint, ...]
    complete: bool
    explored: int


def kappa_backward_analytic(
    f: RationalMap,
    x: ProjectivePoint,
    n: int,
    budget: int = 20000,
    tol: float = DEFAULT_TOL,
) -> BackwardEstimate:
    """Best-first search of the backward tree for max kappa_n over f^{-n}(x).

    Walking one step back from a point w to a fiber point y contributes
    y's local multiplicity, so the product of fiber multiplicities along a
    backward path of length n is exactly kappa_n at its endpoint.  A branch
    whose optimistic completion (times d per remaining step) cannot beat
    the best finished path is never expanded.
    """
    if n < 1:
        raise InputError("backward depth must be at least 1")
    if budget < 1:
        raise InputError("budget must be positive")
    d = f.degree
    fibers: dict[ProjectivePoint, PreimageFiber] = {}

    def fiber_of(pt: ProjectivePoint) -> PreimageFiber:
        got = fibers.get(pt)
        if got is None:
            got = preimages(f, pt, tol)
            fibers[pt] = got
        return got

    seq = itertools.count()
    # entries: (-optimistic value, tiebreak, product so far, remaining, path)
    heap = [(-(d**n), next(seq), 1, n, (x,))]
    explored = 0
    while heap:
        _, _, product, remaining, path = heapq.heappop(heap)
        if remaining == 0:
            return BackwardEstimate(product, path, True, explored)
        fib = fiber_of(path[0])
        if explored + len(fib.points) > budget:
            # out of budget: finish this (currently best-bounded) branch
            # greedily so the caller still gets an honest achieved path
            cur, prod, rem = path, product, remaining
            while rem > 0:
                best = None
                for y, mult in fiber_of(cur[0]).points:
                    if best is None or mult > best[1]:
                        best = (y, mult)
                cur = (best[0],) + cur
                prod *= best[1]
                rem -= 1
            return BackwardEstimate(prod, cur, False, explored)
        explored += len(fib.points)
        for y, mult in fib.points:
            value = product * mult
            heapq.heappush(
                heap,
                (-(value * d ** (remaining - 1)), next(seq), value, remaining - 1, (y,) + path),
            )
    raise AssertionError("backward search heap drained without completing")


# -- exceptional sets --------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalSetReport:
    """The maximal totally invariant finite set, with certificates.

    certificates pairs each member a with its full fiber, exhibiting
    f^{-1}(a) as a single member of multiplicity d.  growth_check records
    kappa_backward_analytic values d^n for n = 1..4 at each member.
    budget_note states the ramification count that caps the set at two
    points and the search at period two.
    """

    points: tuple[ProjectivePoint, ...]
    cycle_structure: tuple[tuple[ProjectivePoint, ...], ...]
    certificates: tuple[tuple[ProjectivePoint, PreimageFiber], ...]
    growth_check: tuple[tuple[ProjectivePoint, tuple[int, ...]], ...]
    budget_note: str


def _index_in(
    points: list[ProjectivePoint], x: ProjectivePoint, tol: float
) -> int | None:
    for i, a in enumerate(points):
        if a.same_point(x, tol):
            return i
    return None


def _totally_ramified_candidates(
    f: RationalMap, tol: float
) -> list[ProjectivePoint]:
    """Points where the map is d-to-1 locally; only these can be exceptional.

    An exceptional point is the unique preimage of its image, so its local
    multiplicity is d and its Wronskian order is d - 1.  The ramification
    budget 2d - 2 then allows at most two such points on the whole sphere.
    """
    d = f.degree
    out: list[ProjectivePoint] = []
    w = f.wronskian
    if w.degree >= 1:
        for cluster in find_roots(w, tol):
            if cluster.multiplicity != d - 1:
                continue
            if f.mode == EXACT and not cluster.exact:
                raise UnsupportedSpecError(
                    f"a totally ramified point near {cluster.center} is not "
                    "Gaussian rational; the exceptional set cannot be "
                    "certified in exact arithmetic"
                )
            out.append(ProjectivePoint.affine(cluster.center))
    g = f.reciprocal_conjugate
    if local_multiplicity(g, ProjectivePoint.affine(Scalar.zero(g.mode)), tol) == d:
        out.append(ProjectivePoint.infinity(f.mode))
    out.sort(key=_point_key)
    return out


def exceptional_set(f: RationalMap, tol: float = DEFAULT_TOL) -> ExceptionalSetReport:
    """Detect the maximal finite totally invariant set of the map.

    Starts from the totally ramified candidates and repeatedly discards any
    whose image leaves the set or whose fiber is not a single candidate of
    multiplicity d; the surviving set is the largest one closed under both
    conditions, which is exactly total invariance.
    """
    d = f.degree
    if f.mode == APPROX:
        # a d-fold fiber point splits by roughly eps^(1/d) under float
        # rootfinding, so cluster fibers at that scale, not the simple-root tol
        fiber_tol = max(tol, 64.0 * (2.0**-52) ** (1.0 / d))
    else:
        fiber_tol = tol
    try:
        candidates = _totally_ramified_candidates(f, tol)
        if len(candidates) > 2:
            raise ExactModeRequiredError(
                "more than two totally ramified candidates; numeric "
                "multiplicity classes are unreliable here"
            )
        members = list(candidates)
        fibers: dict[int, PreimageFiber] = {}
        images: dict[int, ProjectivePoint] = {}
        for i, a in enumerate(candidates):
            fibers[i] = preimages(f, a, fiber_tol)
            images[i] = apply_map(f, a)
        index = {id(a): i for i, a in enumerate(candidates)}
        while True:
            kept = []
            for a in members:
                i = index[id(a)]
                if _index_in(members, images[i], CHORDAL_TOL) is None:
                    continue
                fib = fibers[i]
                if len(fib.points) != 1:
                    continue
                y, mult = fib.points[0]
                if mult != d or _index_in(members, y, CHORDAL_TOL) is None:
                    continue
                kept.append(a)
            if len(kept) == len(members):
                break
            members = kept
    except AmbiguousMultiplicityError as exc:
        raise ExactModeRequiredError(
            f"multiplicity ambiguity near an exceptional candidate: {exc}"
        ) from exc

    members.sort(key=_point_key)
    cycles: list[tuple[ProjectivePoint, ...]] = []
    seen: set[int] = set()
    for a in members:
        i = index[id(a)]
        if i in seen:
            continue
        seen.add(i)
        j = _index_in(members, images[i], CHORDAL_TOL)
        partner = members[j]
        if partner.same_point(a, CHORDAL_TOL):
            cycles.append((a,))
        else:
            seen.add(index[id(partner)])
            cycles.append((a, partner))
    certificates = tuple((a, fibers[index[id(a)]]) for a in members)
    growth = []
    for a in members:
        values = tuple(
            kappa_backward_analytic(f, a, k, budget=4 * d + 4, tol=fiber_tol).value
            for k in range(1, 5)
        )
        assert values == tuple(d**k for k in range(1, 5))
        growth.append((a, values))
    note = (
        f"ramification budget sum(mult - 1) = {2 * d - 2}: every exceptional "
        f"point is totally ramified and spends {d - 1} of it, so at most two "
        "points exist and their cycles have period at most two"
    )
    return ExceptionalSetReport(
        tuple(members), tuple(cycles), certificates, tuple(growth), note
    )


def totally_invariant_core(
    f: RationalMap,
    points: list[ProjectivePoint] | tuple[ProjectivePoint, ...],
    m: int,
    tol: float = CHORDAL_TOL,
) -> tuple[ProjectivePoint, ...]:
    """Stabilize a backward-invariant finite set under E -> f^{-m}(E).

    Requires f^{-m}(E) to be contained in E (otherwise the sequence is not
    decreasing and the premise is wrong); iterating then shrinks E until
    the fiber of the result is the result itself.
    """
    if m < 1:
        raise InputError("the backward step count m must be at least 1")
    start: list[ProjectivePoint] = []
    for a in points:
        if _index_in(start, a, tol) is None:
            start.append(a)
    if not start:
        return ()

    def back_m(cur: list[ProjectivePoint]) -> list[ProjectivePoint]:
        for _ in range(m):
            nxt: list[ProjectivePoint] = []
            for a in cur:
                for y, _mult in preimages(f, a).points:
                    if _index_in(nxt, y, tol) is None:
                        nxt.append(y)
            cur = nxt
        return cur

    first = back_m(start)
    for y in sorted(first, key=_point_key):
        if _index_in(start, y, tol) is None:
            raise NotBackwardInvariantError(
                f"f^-{m} of the set leaves the set at {y}", witness=y
            )
    cur = start
    while True:
        nxt = back_m(cur)
        if len(nxt) == len(cur) and all(
            _index_in(cur, y, tol) is not None for y in nxt
        ):
            return tuple(sorted(nxt, key=_point_key))
        cur = nxt


# -- equidistribution diagnostic ---------------------------------------------


@dataclass(frozen=True)
class EquidistributionReport:
    """Spherical-cell histograms of backward orbits and their TV distances.

    pairwise_tv holds (i, j, distance) for final-depth measures of seed
    pairs; consecutive_tv holds (seed index, n, distance) between the
    depth-n and depth-(n+1) measures of one seed.  radial_concentration is
    the final-depth mass fraction within a thin chordal band of |z| = 1.
    """

    seeds: tuple[ProjectivePoint, ...]
    depth: int
    cells: int
    masses: tuple[int, ...]
    radial_concentration: tuple[float, ...]
    pairwise_tv: tuple[tuple[int, int, float], ...]
    consecutive_tv: tuple[tuple[int, int, float], ...]


def _cell_of(x: ProjectivePoint, cells: int) -> tuple[int, int]:
    if x.is_infinity:
        return (0, cells - 1)
    z = x.to_complex()
    theta = math.atan2(z.imag, z.real)
    i = int((theta + math.pi) / (2.0 * math.pi) * cells)
    phi = 2.0 * math.atan(abs(z))
    j = int(phi / math.pi * cells)
    return (min(max(i, 0), cells - 1), min(max(j, 0), cells - 1))


def _tv(a: dict, b: dict, mass_a: int, mass_b: int) -> float:
    total = Fraction(0)
    for key in set(a) | set(b):
        total += abs(Fraction(a.get(key, 0), mass_a) - Fraction(b.get(key, 0), mass_b))
    return float(total / 2)


def equidistribution_report(
    f: RationalMap,
    seeds: list[ProjectivePoint] | tuple[ProjectivePoint, ...],
    depth: int,
    cells: int,
    tol: float = DEFAULT_TOL,
) -> EquidistributionReport:
    """Histogram backward orbits of several seeds on a spherical grid.

    All arithmetic runs in binary64 regardless of the map's mode, so the
    report is reproducible bit for bit across runs and machines.
    """
    if depth < 1:
        raise InputError("depth must be at least 1")
    if cells < 1:
        raise InputError("cells must be at least 1")
    d = f.degree
    if depth * math.log2(d) > 24.0 + 1e-9:
        raise InputError(
            f"fiber-size cap exceeded: depth * log2(degree) = "
            f"{depth * math.log2(d):.2f} > 24"
        )
    fa = f.approx
    seed_points = tuple(s.to_approx() for s in seeds)
    histograms: list[list[dict]] = []
    final_levels = []
    for seed in seed_points:
        level: list[tuple[ProjectivePoint, int]] = [(seed, 1)]
        per_depth: list[dict] = []
        for _n in range(depth):
            nxt: list[tuple[ProjectivePoint, int]] = []
            for pt, mass in level:
                for y, mult in preimages(fa, pt, tol).points:
                    nxt.append((y, mass * mult))
            level = nxt
            hist: dict = {}
            for pt, mass in level:
                key = _cell_of(pt, cells)
                hist[key] = hist.get(key, 0) + mass
            per_depth.append(hist)
        histograms.append(per_depth)
        final_levels.append(level)
    masses = tuple(d**depth for _ in seed_points)
    radial = []
    for level, total in zip(final_levels, masses):
        assert sum(mass for _, mass in level) == total
        inside = sum(
            mass for pt, mass in level if chordal_to_unit_circle(pt) <= RADIAL_BAND
        )
        radial.append(inside / total)
    pairwise = []
    for i in range(len(seed_points)):
        for j in range(i + 1, len(seed_points)):
            pairwise.append(
                (i, j, _tv(histograms[i][-1], histograms[j][-1], d**depth, d**depth))
            )
    consecutive = []
    for i, per_depth in enumerate(histograms):
        for n in range(1, depth):
            consecutive.append(
                (i, n, _tv(per_depth[n - 1], per_depth[n], d**n, d ** (n + 1)))
            )
    return EquidistributionReport(
        seeds=seed_points,
        depth=depth,
        cells=cells,
        masses=masses,
        radial_concentration=tuple(radial),
        pairwise_tv=tuple(pairwise),
        consecutive_tv=tuple(consecutive),
    )
