"""Finite covering models: weighted digraphs standing in for open surjective
self-maps with multivalued forward images.

The defining structural requirements are out-degree >= 1 (forward images
never empty) and in-degree >= 1 (preimages never empty).  The second one can
be relaxed per instance: deterministic examples with a genuine preperiod
need source nodes, and a finite single-valued surjection would be forced
into a permutation otherwise.  Analyses that rely on nonempty backward
fibers check the relaxed flag themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import DegenerateInputError, UnsupportedModelError


class Edge(NamedTuple):
    src: int
    dst: int
    weight: Fraction


def _as_edge(e) -> Edge:
    src, dst, weight = e
    w = Fraction(weight)
    if w <= 0:
        raise DegenerateInputError(f"edge {src}->{dst} has non-positive weight {w}")
    return Edge(int(src), int(dst), w)


@dataclass(frozen=True)
class CoveringModel:
    node_count: int
    edges: tuple[Edge, ...]
    surjective: bool = field(default=True)

    def __post_init__(self):
        if self.node_count < 1:
            raise DegenerateInputError("model needs at least one node")
        object.__setattr__(self, "edges", tuple(_as_edge(e) for e in self.edges))
        seen: set[tuple[int, int]] = set()
        outs = [0] * self.node_count
        ins = [0] * self.node_count
        for e in self.edges:
            for node in (e.src, e.dst):
                if not 0 <= node < self.node_count:
                    raise DegenerateInputError(f"edge {e.src}->{e.dst} references unknown node {node}")
            if (e.src, e.dst) in seen:
                raise DegenerateInputError(f"duplicate edge {e.src}->{e.dst}")
            seen.add((e.src, e.dst))
            outs[e.src] += 1
            ins[e.dst] += 1
        if self.surjective:
            for node, deg in enumerate(ins):
                if deg == 0:
                    raise DegenerateInputError(f"node {node} has in-degree 0")
        for node, deg in enumerate(outs):
            if deg == 0:
                raise DegenerateInputError(f"node {node} has out-degree 0")

    @staticmethod
    def build(node_count: int, edges: Iterable, require_surjective: bool = True) -> "CoveringModel":
        return CoveringModel(node_count, tuple(edges), require_surjective)

    # -- adjacency ---------------------------------------------------------

    @cached_property
    def out_map(self) -> tuple[tuple[Edge, ...], ...]:
        table: list[list[Edge]] = [[] for _ in range(self.node_count)]
        for e in self.edges:
            table[e.src].append(e)
        return tuple(tuple(sorted(es, key=lambda e: e.dst)) for es in table)

    @cached_property
    def in_map(self) -> tuple[tuple[Edge, ...], ...]:
        table: list[list[Edge]] = [[] for _ in range(self.node_count)]
        for e in self.edges:
            table[e.dst].append(e)
        return tuple(tuple(sorted(es, key=lambda e: e.src)) for es in table)

    @cached_property
    def weight_map(self) -> dict[tuple[int, int], Fraction]:
        return {(e.src, e.dst): e.weight for e in self.edges}

    def successors(self, node: int) -> tuple[int, ...]:
        return tuple(e.dst for e in self.out_map[node])

    def predecessors(self, node: int) -> tuple[int, ...]:
        return tuple(e.src for e in self.in_map[node])

    @cached_property
    def is_deterministic(self) -> bool:
        return all(len(es) == 1 for es in self.out_map)

    def step(self, node: int) -> int:
        """Unique successor on deterministic models."""
        es = self.out_map[node]
        if len(es) != 1:
            raise UnsupportedModelError(f"node {node} has out-degree {len(es)}, expected 1")
        return es[0].dst

    @cached_property
    def max_weight(self) -> Fraction:
        return max(e.weight for e in self.edges)

    # -- reachability --------------------------------------------------------

    def reachable_from(self, starts: Iterable[int]) -> frozenset[int]:
        """All nodes reachable from `starts` by forward edges (incl. starts)."""
        seen = set(starts)
        stack = list(seen)
        while stack:
            node = stack.pop()
            for e in self.out_map[node]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    stack.append(e.dst)
        return frozenset(seen)

    def ancestors_of(self, node: int) -> frozenset[int]:
        """All nodes from which `node` is forward-reachable (incl. itself)."""
        seen = {node}
        stack = [node]
        while stack:
            cur = stack.pop()
            for e in self.in_map[cur]:
                if e.src not in seen:
                    seen.add(e.src)
                    stack.append(e.src)
        return frozenset(seen)

    def image(self, nodes: Iterable[int]) -> frozenset[int]:
        """One forward step of the relation applied to a node set."""
        out: set[int] = set()
        for node in nodes:
            for e in self.out_map[node]:
                out.add(e.dst)
        return frozenset(out)

    # -- cycles ---------------------------------------------------------------

    @cached_property
    def simple_cycles(self) -> tuple[tuple[int, ...], ...]:
        """All simple directed cycles, canonically rotated and sorted.

        Johnson-style DFS enumeration; fine at the intended scale (the
        exact engines target models of at most a few dozen nodes).  Each
        cycle is rotated so its smallest node comes first.
        """
        cycles: set[tuple[int, ...]] = set()
        n = self.node_count

        def canonical(path: tuple[int, ...]) -> tuple[int, ...]:
            k = path.index(min(path))
            return path[k:] + path[:k]

        # DFS from each root, only visiting nodes >= root to avoid duplicates
        for root in range(n):
            stack: list[tuple[int, tuple[int, ...]]] = [(root, (root,))]
            while stack:
                node, path = stack.pop()
                for e in self.out_map[node]:
                    nxt = e.dst
                    if nxt == root:
                        cycles.add(canonical(path))
                    elif nxt > root and nxt not in path:
                        stack.append((nxt, path + (nxt,)))
        return tuple(sorted(cycles, key=lambda c: (len(c), c)))

    def cycle_weight(self, cycle: tuple[int, ...]) -> Fraction:
        total = Fraction(1)
        for i, node in enumerate(cycle):
            nxt = cycle[(i + 1) % len(cycle)]
            w = self.weight_map.get((node, nxt))
            if w is None:
                raise DegenerateInputError(f"no edge {node}->{nxt}; not a cycle of this model")
            total *= w
        return total
