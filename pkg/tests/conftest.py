"""Shared corpus fixtures and independent brute-force oracles.

The oracles here deliberately re-derive everything from first principles
(exhaustive path enumeration, subtree intersection, determinant counting)
so the tests never check the library against itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import pytest
from hypothesis import settings

from dmdst import (
    Config,
    Digraph,
    SolveReport,
    exact_min_degree,
    gen_blocker,
    gen_instar,
    gen_path,
    gen_random,
    run_augmenting_search,
    run_local_search,
)
from dmdst.tree import InTree

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")

RANDOM_CORPUS_SIZE = 300


def random_corpus_specs() -> list[tuple[int, int, int]]:
    """(n, extra_edges, seed) triples spanning n in [4, 9], extras in [0, 12]."""
    specs = []
    for seed in range(RANDOM_CORPUS_SIZE):
        n = 4 + seed % 6
        extra = min((seed * 7) % 13, n * (n - 1) - (n - 1))
        specs.append((n, extra, seed))
    return specs


def random_corpus() -> list[Digraph]:
    return [gen_random(n, e, s) for n, e, s in random_corpus_specs()]


@dataclass
class Solved:
    name: str
    g: Digraph
    oracle_delta: int | None
    local: SolveReport
    augment: SolveReport


@pytest.fixture(scope="session")
def corpus_results() -> tuple[list[Solved], float]:
    """Both solvers (practical, traced) plus the exact oracle over the
    random corpus and the fixed families.  Returns (results, seconds)."""
    instances: list[tuple[str, Digraph]] = []
    for n, e, s in random_corpus_specs():
        instances.append((f"random-n{n}-e{e}-s{s}", gen_random(n, e, s)))
    for n in range(3, 10):
        instances.append((f"path-{n}", gen_path(n)))
        instances.append((f"instar-{n}", gen_instar(n)))
    for s in range(20):
        instances.append((f"blocker-s{s}", gen_blocker(3, 2, s)))
    start = time.perf_counter()
    out = []
    for name, g in instances:
        cfg = Config.for_graph(g)
        oracle_delta = exact_min_degree(g)[0] if g.n <= 12 else None
        local = run_local_search(g, cfg, trace=True)
        augment = run_augmenting_search(g, cfg, trace=True)
        out.append(Solved(name, g, oracle_delta, local, augment))
    elapsed = time.perf_counter() - start
    return out, elapsed


# -- independent oracles -----------------------------------------------------


def degree_snapshot(t: InTree) -> list[int]:
    return [t.deg(v) for v in range(t.g.n)]


def brute_improvement_paths(
    t: InTree, g: Digraph, u: int, d: int
) -> list[list[int]]:
    """Every simple path from u that exits subtree(u) at its first outside
    vertex with all non-start degrees <= d-2, by exhaustive DFS."""
    inside = t.subtree(u)
    found: list[list[int]] = []

    def dfs(v: int, path: list[int]) -> None:
        for y in g.out_edges[v]:
            if y in path:
                continue
            if y not in inside:
                if t.deg(y) <= d - 2:
                    found.append(path + [y])
                continue
            if t.deg(y) <= d - 2:
                dfs(y, path + [y])

    dfs(u, [u])
    return found


def brute_first_exits(t: InTree, g: Digraph, u: int) -> set[int]:
    """First-outside vertices over all simple paths from u through subtree(u)."""
    inside = t.subtree(u)
    exits: set[int] = set()

    def dfs(v: int, path: list[int]) -> None:
        for y in g.out_edges[v]:
            if y in path:
                continue
            if y not in inside:
                exits.add(y)
            else:
                dfs(y, path + [y])

    dfs(u, [u])
    return exits


def brute_unrelated(t: InTree, u: int, v: int) -> bool:
    return not (t.subtree(u) & t.subtree(v))


def fraction_det(mat: list[list[Fraction]]) -> Fraction:
    """Exact Gaussian-elimination determinant."""
    mat = [row[:] for row in mat]
    n = len(mat)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            sign = -sign
        pv = mat[col][col]
        result *= pv
        for r in range(col + 1, n):
            f = mat[r][col] / pv
            if f:
                for c in range(col, n):
                    mat[r][c] -= f * mat[col][c]
    return sign * result


def count_intrees_by_determinant(g: Digraph) -> int:
    """Spanning in-trees toward the sink via the directed matrix-tree
    theorem: determinant of the out-degree Laplacian with the sink's row
    and column removed."""
    idx = [v for v in range(g.n) if v != g.sink]
    pos = {v: i for i, v in enumerate(idx)}
    size = len(idx)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for u in idx:
        mat[pos[u]][pos[u]] = Fraction(len(g.out_edges[u]))
        for v in g.out_edges[u]:
            if v != g.sink:
                mat[pos[u]][pos[v]] -= 1
    value = fraction_det(mat)
    assert value.denominator == 1
    return int(value)
