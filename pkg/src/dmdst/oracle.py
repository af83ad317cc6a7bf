"""Exact minimum-degree spanning in-tree solver for small instances.

Ground truth for optimality comparisons: a binary search on the degree
bound D wrapped around a depth-first feasibility search that assigns each
vertex a parent among its out-neighbors, keeping parent chains acyclic and
every child count at most D.
"""

from __future__ import annotations

from typing import Iterator

from .graph import Digraph
from .tree import InTree, tree_from_parents

ENUMERATION_LIMIT = 9


class TooLarge(ValueError):
    def __init__(self, n: int, limit: int) -> None:
        super().__init__(f"instance has {n} vertices, oracle limit is {limit}")


def _creates_cycle(parent: list[int], v: int, p: int, sink: int) -> bool:
    """Would assigning parent[v] = p close a cycle among assigned vertices?"""
    cur = p
    while cur != sink and parent[cur] >= 0:
        if cur == v:
            return True
        cur = parent[cur]
    return cur == v


def _feasible(g: Digraph, bound: int) -> list[int] | None:
    """Backtracking search for a spanning in-tree with max degree <= bound.

    Branches on the unassigned vertex with the fewest unsaturated parent
    options; prunes as soon as any unassigned vertex has none left.
    """
    n, sink = g.n, g.sink
    parent = [-1] * n
    load = [0] * n
    unassigned = set(range(n)) - {sink}

    def options(v: int) -> list[int]:
        return [p for p in g.out_edges[v] if load[p] < bound]

    def solve() -> bool:
        if not unassigned:
            return True
        best_v = -1
        best_opts: list[int] = []
        for v in sorted(unassigned):
            opts = options(v)
            if not opts:
                return False
            if best_v < 0 or len(opts) < len(best_opts):
                best_v, best_opts = v, opts
        unassigned.discard(best_v)
        for p in best_opts:
            if load[p] >= bound or _creates_cycle(parent, best_v, p, sink):
                continue
            parent[best_v] = p
            load[p] += 1
            if solve():
                return True
            load[p] -= 1
            parent[best_v] = -1
        unassigned.add(best_v)
        return False

    if solve():
        parent[sink] = -1
        return parent
    return None


def exact_min_degree(g: Digraph, limit: int = 12) -> tuple[int, InTree]:
    """Least achievable max in-degree, with a witness tree.

    Binary search on the bound; each feasibility probe prunes harder than
    a direct minimization would.
    """
    if g.n > limit:
        raise TooLarge(g.n, limit)
    if g.n == 1:
        return 0, InTree(g, [None])
    lo, hi = 1, g.n - 1
    witness: list[int] | None = None
    while lo < hi:
        mid = (lo + hi) // 2
        found = _feasible(g, mid)
        if found is not None:
            witness = found
            hi = mid
        else:
            lo = mid + 1
    if witness is None or max_in_degree(witness, g.n) > lo:
        witness = _feasible(g, lo)
        assert witness is not None, "spanning tree must exist on a valid graph"
    tree = tree_from_parents(g, witness)
    assert not tree.validate(g)
    assert tree.max_deg == lo
    return lo, tree


def max_in_degree(parent: list[int], n: int) -> int:
    counts = [0] * n
    for v in range(n):
        if parent[v] >= 0:
            counts[parent[v]] += 1
    return max(counts)


def enumerate_spanning_intrees(g: Digraph, cap: int = 10 ** 6) -> Iterator[InTree]:
    """Yield every spanning in-tree rooted at the sink, up to cap.

    Depth-first product of parent choices in vertex order, pruning any
    assignment that closes a cycle; the order is deterministic.
    """
    if g.n > ENUMERATION_LIMIT:
        raise TooLarge(g.n, ENUMERATION_LIMIT)
    n, sink = g.n, g.sink
    vertices = [v for v in range(n) if v != sink]
    parent = [-1] * n
    produced = 0

    def rec(idx: int) -> Iterator[InTree]:
        nonlocal produced
        if idx == len(vertices):
            produced += 1
            if produced > cap:
                raise TooLarge(produced, cap)
            yield tree_from_parents(g, parent)
            return
        v = vertices[idx]
        for p in g.out_edges[v]:
            if _creates_cycle(parent, v, p, sink):
                continue
            parent[v] = p
            yield from rec(idx + 1)
            parent[v] = -1

    yield from rec(0)
