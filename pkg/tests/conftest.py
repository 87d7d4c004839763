"""Shared fixtures: the G1 reference model, random model generators, and the
exact-map corpus used across the rational-map tests."""

import random
from fractions import Fraction

import pytest

from cocyclekit import (
    CoveringModel,
    ForwardPath,
    MultiplicativeSpec,
    Poly,
    cocycle_value,
    make_map,
)

# Three nodes, a weight-2 self-loop at 0 and a light 2-cycle {1, 2}.
G1_EDGES = [(0, 0, 2), (1, 0, 1), (2, 1, 3), (1, 2, 1)]


@pytest.fixture
def g1():
    model = CoveringModel.build(3, G1_EDGES)
    return model, MultiplicativeSpec.from_model(model)


def random_model(rng: random.Random, max_nodes: int = 8, max_edges: int = 16) -> CoveringModel:
    """Random covering model: a permutation backbone keeps every in/out degree
    at least 1, extra edges are sprinkled on top.  Weights are integers 1..5."""
    n = rng.randint(1, max_nodes)
    perm = list(range(n))
    rng.shuffle(perm)
    # i -> perm[i] covers every in/out degree; the permutation's cycle
    # decomposition keeps components apart until the extra edges mix them
    edges = {(i, perm[i]) for i in range(n)}
    for _ in range(rng.randint(0, max_edges - n)):
        edges.add((rng.randrange(n), rng.randrange(n)))
    weighted = [(s, d, Fraction(rng.randint(1, 5))) for s, d in sorted(edges)]
    return CoveringModel.build(n, weighted)


def random_deterministic_model(rng: random.Random, max_nodes: int = 8) -> CoveringModel:
    """Random functional graph (every out-degree exactly 1).  Sources are
    allowed, so the surjectivity requirement is waived."""
    n = rng.randint(1, max_nodes)
    edges = [(x, rng.randrange(n), Fraction(rng.randint(1, 5))) for x in range(n)]
    return CoveringModel.build(n, edges, require_surjective=False)


def brute_force_backward(model: CoveringModel, spec, x: int, n: int) -> Fraction:
    """Independent oracle for kappa_{-n}(x): enumerate every backward path."""
    paths = [[x]]
    for _ in range(n):
        paths = [[p.src] + nodes for nodes in paths for p in model.in_map[nodes[0]]]
    return max(cocycle_value(spec, ForwardPath(tuple(nodes))) for nodes in paths)


# -- exact rational-map corpus -------------------------------------------------


def map_z2():
    return make_map(Poly.exact([1, 0, 0]), Poly.exact([1]))


def map_z3():
    return make_map(Poly.exact([1, 0, 0, 0]), Poly.exact([1]))


def map_z2_minus_2():
    return make_map(Poly.exact([1, 0, -2]), Poly.exact([1]))


def map_inv_z2():
    return make_map(Poly.exact([1]), Poly.exact([1, 0, 0]))


def map_lattes_like():
    # (z^2 + 1) / (z^2 - 1): no totally ramified point survives invariance
    return make_map(Poly.exact([1, 0, 1]), Poly.exact([1, 0, -1]))


def map_newton_sqrt2():
    # Newton's method for z^2 - 2: (z^2 + 2) / (2z)
    return make_map(Poly.exact([1, 0, 2]), Poly.exact([2, 0]))


MAP_CORPUS = {
    "z2": map_z2,
    "z3": map_z3,
    "z2_minus_2": map_z2_minus_2,
    "inv_z2": map_inv_z2,
    "lattes_like": map_lattes_like,
    "newton": map_newton_sqrt2,
}
