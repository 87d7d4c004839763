"""Exact growth analysis on finite covering models.

Everything here is tolerance-free: cycle geometric means are kept as
(product, length) pairs, level-set membership is decided by integer
exponentiation, and the certificates attached to results are meant to be
re-checked independently by tests.

The central fact used throughout: kappa_minus(x) equals the maximum
geometric mean over simple cycles from which x is forward-reachable.  A
backward path of length n from x eventually wraps ancestor cycles, so the
DP value kappa_{-n}(x) is squeezed between rate^n / M^k and rate^n * M^k
with k = node_count, which the acceptance suite verifies at n = 256.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .cocycle import (
    CocycleSpec,
    ExplicitSpec,
    ForwardPath,
    MultiplicativeSpec,
)
from .errors import (
    DegenerateInputError,
    InputError,
    UnsupportedModelError,
    UnsupportedSpecError,
    WholeSpaceError,
)
from .model import CoveringModel
from .rates import AlgebraicGrowthRate

# hard stop for the incremental n1 search; reached only for thresholds
# absurdly close to the largest sub-threshold cycle mean
_N1_CAP = 20000


def cycle_rate(model: CoveringModel, spec: MultiplicativeSpec, cycle: tuple[int, ...]) -> AlgebraicGrowthRate:
    total = Fraction(1)
    for i, node in enumerate(cycle):
        total *= spec.weight(node, cycle[(i + 1) % len(cycle)])
    return AlgebraicGrowthRate(total, len(cycle))


def _require_multiplicative(spec: CocycleSpec, what: str) -> MultiplicativeSpec:
    if not isinstance(spec, MultiplicativeSpec):
        raise UnsupportedSpecError(
            f"{what} needs a multiplicative cocycle; the limit may not exist otherwise"
        )
    return spec


# -- kappa_{-n}: exact backward dynamic programming ---------------------------


def kappa_backward_table(
    model: CoveringModel, spec: CocycleSpec, n: int
) -> list[list[Optional[Fraction]]]:
    """table[k][v] = kappa_{-k}(v), or None when v has no length-k backward path."""
    if n < 0:
        raise DegenerateInputError(f"need n >= 0, got {n}")
    size = model.node_count
    table: list[list[Optional[Fraction]]] = [[Fraction(1)] * size]
    if isinstance(spec, MultiplicativeSpec):
        for _ in range(n):
            prev = table[-1]
            row: list[Optional[Fraction]] = [None] * size
            for v in range(size):
                best: Optional[Fraction] = None
                for e in model.in_map[v]:
                    got = prev[e.src]
                    if got is None:
                        continue
                    cand = got * spec.weight(e.src, e.dst)
                    if best is None or cand > best:
                        best = cand
                row[v] = best
            table.append(row)
    else:
        # reach[k][v] = set of start nodes with a length-k path to v
        reach: list[list[set[int]]] = [[{v} for v in range(size)]]
        for _ in range(n):
            prev = reach[-1]
            cur: list[set[int]] = [set() for _ in range(size)]
            for v in range(size):
                for e in model.in_map[v]:
                    cur[v].update(prev[e.src])
            reach.append(cur)
        for k in range(1, n + 1):
            row = [
                max((spec.value(y, k) for y in reach[k][v]), default=None)
                for v in range(size)
            ]
            table.append(row)
    return table


def kappa_backward(model: CoveringModel, spec: CocycleSpec, x: int, n: int) -> Fraction:
    """kappa_{-n}(x): the maximum cocycle value over backward paths into x."""
    value = kappa_backward_table(model, spec, n)[n][x]
    if value is None:
        raise UnsupportedModelError(
            f"node {x} has no backward path of length {n}; "
            "the model was built without the in-degree requirement"
        )
    return value


# -- kappa_minus / kappa_plus --------------------------------------------------


def _best_cycle(
    model: CoveringModel, spec: MultiplicativeSpec, allowed: frozenset[int]
) -> Optional[tuple[AlgebraicGrowthRate, tuple[int, ...]]]:
    """Max-mean simple cycle inside `allowed`; lex-smallest on ties."""
    best: Optional[tuple[AlgebraicGrowthRate, tuple[int, ...]]] = None
    for cycle in model.simple_cycles:
        if not all(v in allowed for v in cycle):
            continue
        rate = cycle_rate(model, spec, cycle)
        if best is None or rate > best[0] or (rate.compare(best[0]) == 0 and cycle < best[1]):
            best = (rate, cycle)
    return best


def kappa_minus_full(
    model: CoveringModel, spec: CocycleSpec, x: int
) -> Optional[tuple[AlgebraicGrowthRate, tuple[int, ...]]]:
    """(rate, achieving ancestor cycle) or None when no cycle reaches x."""
    mspec = _require_multiplicative(spec, "kappa_minus")
    return _best_cycle(model, mspec, model.ancestors_of(x))


def kappa_minus(model: CoveringModel, spec: CocycleSpec, x: int) -> AlgebraicGrowthRate:
    got = kappa_minus_full(model, spec, x)
    if got is None:
        raise UnsupportedModelError(
            f"node {x} has no ancestor cycle; "
            "kappa_minus is undefined on source components"
        )
    return got[0]


def delta_star(model: CoveringModel, spec: CocycleSpec) -> AlgebraicGrowthRate:
    """min over nodes of kappa_minus (nodes without ancestor cycles skipped)."""
    best: Optional[AlgebraicGrowthRate] = None
    for x in range(model.node_count):
        got = kappa_minus_full(model, spec, x)
        if got is not None and (best is None or got[0] < best):
            best = got[0]
    assert best is not None  # out-degree >= 1 forces at least one cycle
    return best


@dataclass(frozen=True)
class ForwardGrowth:
    rate: AlgebraicGrowthRate
    witness: ForwardPath
    cycle: tuple[int, ...]


def forward_max_growth(model: CoveringModel, spec: CocycleSpec, x: int) -> ForwardGrowth:
    """Max cycle mean over cycles reachable from x, with a short witness path.

    The witness ends on the achieving cycle, whose nodes all satisfy
    kappa_minus >= rate, so it lands in the level set of the returned rate
    within node_count steps.
    """
    mspec = _require_multiplicative(spec, "forward_max_growth")
    best = _best_cycle(model, mspec, model.reachable_from({x}))
    assert best is not None  # out-degree >= 1: some cycle is always reachable
    rate, cycle = best
    targets = set(cycle)
    # BFS with deterministic tie-breaking (sorted successors, first parent wins)
    parent: dict[int, Optional[int]] = {x: None}
    frontier = [x]
    found = x if x in targets else None
    while found is None:
        nxt: list[int] = []
        for node in frontier:
            for succ in model.successors(node):
                if succ not in parent:
                    parent[succ] = node
                    nxt.append(succ)
                    if succ in targets and found is None:
                        found = succ
        frontier = nxt
    path = [found]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return ForwardGrowth(rate, ForwardPath(tuple(path)), cycle)


def _orbit_and_cycle(model: CoveringModel, x: int) -> tuple[list[int], int]:
    """Forward orbit of x on a deterministic model: (orbit prefix, cycle start index)."""
    if not model.is_deterministic:
        raise UnsupportedModelError("operation needs a deterministic model (all out-degrees 1)")
    seen: dict[int, int] = {}
    orbit: list[int] = []
    cur = x
    while cur not in seen:
        seen[cur] = len(orbit)
        orbit.append(cur)
        cur = model.step(cur)
    return orbit, seen[cur]


def kappa_plus(model: CoveringModel, spec: CocycleSpec, x: int) -> AlgebraicGrowthRate:
    """lim kappa_n(x)^{1/n} on a deterministic model: the terminal cycle mean."""
    mspec = _require_multiplicative(spec, "kappa_plus")
    orbit, start = _orbit_and_cycle(model, x)
    cycle = tuple(orbit[start:])
    return cycle_rate(model, mspec, cycle)


@dataclass(frozen=True)
class TailLimit:
    kappa: AlgebraicGrowthRate
    l_min: int


def tail_limit(model: CoveringModel, spec: CocycleSpec, x: int) -> TailLimit:
    """Terminal growth constant and the preperiod after which it is attained.

    The constant is verified to be independent of the starting offset l for
    every l up to preperiod + cycle length.
    """
    mspec = _require_multiplicative(spec, "tail_limit")
    orbit, start = _orbit_and_cycle(model, x)
    cycle = tuple(orbit[start:])
    kappa = cycle_rate(model, mspec, cycle)
    cur = x
    for _ in range(start + len(cycle) + 1):
        check = kappa_plus(model, mspec, cur)
        if check.compare(kappa) != 0:
            raise DegenerateInputError(
                f"tail limit not offset-independent at node {cur}: {check} vs {kappa}"
            )
        cur = model.step(cur)
    return TailLimit(kappa, start)


# -- level sets ----------------------------------------------------------------


@dataclass(frozen=True)
class LevelSetCertificate:
    delta: Fraction
    members: frozenset[int]
    invariance_witness: dict[int, tuple[tuple[int, int], tuple[int, int]]]
    orbit_witness: dict[int, tuple[tuple[int, ...], ForwardPath]]
    delta_star: AlgebraicGrowthRate


def level_set(model: CoveringModel, spec: CocycleSpec, delta: Fraction) -> LevelSetCertificate:
    """{x : kappa_minus(x) >= delta} with invariance and orbit certificates."""
    mspec = _require_multiplicative(spec, "level_set")
    delta = Fraction(delta)
    if delta <= 0:
        raise DegenerateInputError("delta must be positive")
    star = delta_star(model, mspec)
    if star.compare_rational(delta) >= 0:
        raise WholeSpaceError(
            f"delta = {delta} is not above delta* = {star}; "
            "the level set would be the whole space",
            delta_star=star,
        )
    per_node = {x: kappa_minus_full(model, mspec, x) for x in range(model.node_count)}
    members = frozenset(
        x for x, got in per_node.items() if got is not None and got[0].compare_rational(delta) >= 0
    )
    image = model.image(members)
    if image != members:
        raise AssertionError(f"invariance failed: image {sorted(image)} vs {sorted(members)}")
    invariance: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}
    for x in sorted(members):
        in_src = min(p for p in model.predecessors(x) if p in members)
        out_dst = min(s for s in model.successors(x) if s in members)
        invariance[x] = ((in_src, x), (x, out_dst))
    # heavy cycles seed a forward BFS; every member is reached within node_count
    heavy: list[tuple[int, ...]] = [
        c
        for c in model.simple_cycles
        if cycle_rate(model, mspec, c).compare_rational(delta) >= 0
    ]
    cycle_of: dict[int, tuple[int, ...]] = {}
    for c in heavy:
        for node in c:
            if node not in cycle_of:
                cycle_of[node] = c
    parent: dict[int, Optional[int]] = {s: None for s in sorted(cycle_of)}
    root_of: dict[int, int] = {s: s for s in cycle_of}
    frontier = sorted(cycle_of)
    while frontier:
        nxt: list[int] = []
        for node in frontier:
            for succ in model.successors(node):
                if succ not in parent:
                    parent[succ] = node
                    root_of[succ] = root_of[node]
                    nxt.append(succ)
        frontier = nxt
    orbit: dict[int, tuple[tuple[int, ...], ForwardPath]] = {}
    for x in sorted(members):
        assert x in parent, f"member {x} unreachable from any heavy cycle"
        path = [x]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()
        orbit[x] = (cycle_of[root_of[x]], ForwardPath(tuple(path)))
    return LevelSetCertificate(delta, members, invariance, orbit, star)


# -- the Sigma construction ------------------------------------------------------


@dataclass(frozen=True)
class SigmaTrace:
    sigma: frozenset[int]
    n1: int
    delta0: Optional[AlgebraicGrowthRate]
    residual: frozenset[int]
    constants: dict


def sigma_construct(model: CoveringModel, spec: CocycleSpec, delta: Fraction) -> SigmaTrace:
    """Forward closure of heavy cycles, with a certified absorption index n1.

    For x outside sigma every length-n backward path decomposes into simple
    cycles of mean <= delta0 (the largest sub-threshold mean) plus at most
    node_count - 1 leftover edges of weight <= M, so
    kappa_{-n}(x) <= M^k * delta0^(n-k) with k = node_count.  n1 is the
    first n where that bound drops below delta^n; membership at n1 is then
    re-certified by the exact DP, and the residual set is empty unless the
    bound argument itself were violated.
    """
    mspec = _require_multiplicative(spec, "sigma_construct")
    delta = Fraction(delta)
    star = delta_star(model, mspec)
    if star.compare_rational(delta) >= 0:
        raise WholeSpaceError(
            f"delta = {delta} is not above delta* = {star}", delta_star=star
        )
    heavy_nodes: set[int] = set()
    delta0: Optional[AlgebraicGrowthRate] = None
    for cycle in model.simple_cycles:
        rate = cycle_rate(model, mspec, cycle)
        if rate.compare_rational(delta) >= 0:
            heavy_nodes.update(cycle)
        elif delta0 is None or rate > delta0:
            delta0 = rate
    sigma = model.reachable_from(heavy_nodes) if heavy_nodes else frozenset()
    k = model.node_count
    M = Fraction(mspec.bound_M)
    if delta0 is None:
        # no sub-threshold cycle: any backward path of length >= k wraps a
        # heavy cycle, so absorption happens by n = k already
        n1 = max(1, k)
    else:
        n1 = None
        p0, L0 = delta0.product, delta0.length
        for n in range(max(1, k), _N1_CAP + 1):
            # M^(k L0) * p0^(n-k) < delta^(n L0), kept in integers via Fractions
            if M ** (k * L0) * p0 ** (n - k) < delta ** (n * L0):
                n1 = n
                break
        if n1 is None:
            raise DegenerateInputError(
                f"absorption index exceeds {_N1_CAP}; delta = {delta} is too close "
                f"to the largest sub-threshold cycle mean {delta0}"
            )
    table = kappa_backward_table(model, mspec, n1)
    bound = delta**n1
    residual = frozenset(
        v
        for v in range(model.node_count)
        if table[n1][v] is not None and table[n1][v] >= bound and v not in sigma
    )
    constants = {
        "M": M,
        "N": model.node_count,
        "m": 1,
        "k": k,
        "delta": delta,
        "delta0": delta0,
    }
    return SigmaTrace(frozenset(sigma), n1, delta0, residual, constants)


def periodic_component_growth(
    model: CoveringModel, spec: CocycleSpec, cycle: list[int] | tuple[int, ...]
) -> AlgebraicGrowthRate:
    """Geometric mean of a genuine directed cycle, hypotheses checked."""
    mspec = _require_multiplicative(spec, "periodic_component_growth")
    cycle = tuple(int(v) for v in cycle)
    if not cycle or len(set(cycle)) != len(cycle):
        raise InputError(f"{cycle} is not a simple cycle (empty or repeated nodes)")
    for i, node in enumerate(cycle):
        nxt = cycle[(i + 1) % len(cycle)]
        if (node, nxt) not in model.weight_map:
            raise InputError(f"{cycle} is not a cycle: missing edge {node}->{nxt}")
    rate = cycle_rate(model, mspec, cycle)
    # constancy along forward images: every rotation sees the same mean
    for shift in range(1, len(cycle)):
        rotated = cycle[shift:] + cycle[:shift]
        if cycle_rate(model, mspec, rotated).compare(rate) != 0:
            raise AssertionError("cycle mean not rotation-invariant")
    # liminf kappa_{-n}^{1/n} >= the cycle mean, via the exact structural value
    for node in cycle:
        if kappa_minus(model, mspec, node).compare(rate) < 0:
            raise AssertionError(f"kappa_minus({node}) fell below its own cycle mean")
    return rate


# -- Example 2.6: oscillating explicit cocycle -----------------------------------


@dataclass(frozen=True, eq=False)
class OscillatingExample:
    model: CoveringModel
    spec: ExplicitSpec
    schedule: tuple[int, ...]
    q: Fraction
    lam: Callable[[int], int]
    variant: str

    NODE_A = 0
    NODE_B = 1


def example_oscillating(schedule: list[int] | tuple[int, ...], variant: str = "blocks") -> OscillatingExample:
    """Two-node model (a with a loop, b -> a) with kappa_n(a) = q^n and
    kappa_n(b) = q^(lambda_n), q a rational stand-in for e.

    In the "blocks" variant lambda grows with slope 1 on even-indexed
    schedule blocks and stays flat on odd ones, so lambda_n/n oscillates and
    kappa_n(b)^{1/n} has no limit once blocks grow geometrically.  The
    "zero" variant (lambda = 0) converges but breaks invariance of the
    limit; "linear" (lambda = n) converges to q.
    """
    schedule = tuple(int(s) for s in schedule)
    if len(schedule) < 4:
        raise InputError(f"schedule needs at least 4 entries, got {len(schedule)}")
    if any(s <= 0 for s in schedule) or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InputError("schedule must be strictly increasing and positive")
    if variant not in ("blocks", "zero", "linear"):
        raise InputError(f"unknown oscillating variant {variant!r}")

    # lambda value at each block boundary, for O(len) queries
    prefix: list[tuple[int, int]] = []  # (boundary n, lambda at boundary)
    lam_val = 0
    prev = 0
    for j, end in enumerate(schedule):
        if j % 2 == 0:
            lam_val += end - prev
        prefix.append((end, lam_val))
        prev = end

    def lam(n: int) -> int:
        if variant == "zero":
            return 0
        if variant == "linear":
            return n
        if n <= 0:
            return 0
        prev_end, prev_lam = 0, 0
        for j, (end, lval) in enumerate(prefix):
            if n <= end:
                if j % 2 == 0:
                    return prev_lam + (n - prev_end)
                return prev_lam
            prev_end, prev_lam = end, lval
        # past the final boundary the alternation simply continues
        j = len(prefix)
        if j % 2 == 0:
            return prev_lam + (n - prev_end)
        return prev_lam

    q = Fraction(math.e).limit_denominator(10**12)
    model = CoveringModel.build(2, [(0, 0, 1), (1, 0, 1)], require_surjective=False)

    def rule(node: int, n: int) -> Fraction:
        if node == OscillatingExample.NODE_A:
            return q**n
        return q ** lam(n)

    spec = ExplicitSpec(rule, q, name=f"oscillating-{variant}")
    return OscillatingExample(model, spec, schedule, q, lam, variant)


@dataclass(frozen=True)
class OscillatingReport:
    variant: str
    n_max: int
    n0: int
    sup_ratio: Fraction
    inf_ratio: Fraction
    gap: Fraction
    rate_ratio: float
    boundary_rates: tuple[tuple[int, int, AlgebraicGrowthRate], ...]
    limit_b: Optional[AlgebraicGrowthRate]
    kappa_a: AlgebraicGrowthRate


def oscillating_report(example: OscillatingExample, n_max: Optional[int] = None) -> OscillatingReport:
    """Measured sup/inf of lambda_n/n and the resulting growth-rate gap.

    sup runs over all 1 <= n <= n_max, inf over n >= the first schedule
    boundary (the early slope-1 segment would otherwise mask the tail).
    rate_ratio is q^gap, the multiplicative spread of kappa_n(b)^{1/n}.
    """
    if n_max is None:
        n_max = example.schedule[-1]
    n0 = example.schedule[0]
    ratios = {n: Fraction(example.lam(n), n) for n in range(1, n_max + 1)}
    sup_ratio = max(ratios.values())
    inf_ratio = min(v for n, v in ratios.items() if n >= n0)
    gap = sup_ratio - inf_ratio
    logq = math.log(example.q.numerator) - math.log(example.q.denominator)
    rate_ratio = math.exp(float(gap) * logq)
    boundaries = []
    for b in example.schedule:
        if b <= n_max:
            lam_b = example.lam(b)
            boundaries.append((b, lam_b, AlgebraicGrowthRate(example.q**lam_b, b)))
    if example.variant == "zero":
        limit_b: Optional[AlgebraicGrowthRate] = AlgebraicGrowthRate(Fraction(1), 1)
    elif example.variant == "linear":
        limit_b = AlgebraicGrowthRate(example.q, 1)
    else:
        limit_b = None  # no limit: that is the point of the example
    kappa_a = AlgebraicGrowthRate(example.q, 1)
    return OscillatingReport(
        example.variant, n_max, n0, sup_ratio, inf_ratio, gap, rate_ratio,
        tuple(boundaries), limit_b, kappa_a,
    )
