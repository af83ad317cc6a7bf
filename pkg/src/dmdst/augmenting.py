"""Layered augmenting-path search.

Where the plain improvement search gives up as soon as every escape from a
candidate subtree runs into a degree k-1 vertex, this search keeps going:
those blocking vertices become the next level, their children become new
candidate start vertices, and a chain of per-level path segments is
stitched into one multi-segment adjustment that still removes a child from
the degree-k class.  Candidate subtrees are admitted only while their
potential fits under a geometrically shrinking budget, which caps the
total potential the adjustment can add back.

Levels must grow by a (1+epsilon) factor each round; when they stop
growing, the accumulated levels themselves form a blocking certificate.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field

from .certificate import (
    BlockingCertificate,
    EmptyWitness,
    extract_augment_certificate,
)
from .config import Config
from .graph import Digraph
from .local_search import AdjustDelta, StalePath, choose_k
from .report import SolveReport
from .tree import InTree, build_initial_tree


class ValidationFailed(Exception):
    """A reconstructed augmenting path broke one of its invariants."""


@dataclass(frozen=True)
class AugmentingPath:
    """Segments u_i .. v_i chaining blocked escapes down to a low exit.

    Invariants (checked by validate_augmenting_path): consecutive segments
    chain through parents (v_i is the parent of u_{i+1}); all start
    vertices are pairwise unrelated and all segment endpoints distinct;
    the first start hangs under a degree-k vertex, middle endpoints have
    degree exactly k-1, the final endpoint at most k-1; no start subtree
    contains a vertex of degree >= k-2; each segment leaves its start
    subtree exactly at its endpoint.
    """

    k: int
    segments: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FoundEndpoint:
    level: int
    u: int
    exit: int
    path: tuple[int, ...]


@dataclass
class LayeredState:
    k: int
    cfg: Config
    levels_V: list[set[int]] = field(default_factory=list)
    levels_U: list[set[int]] = field(default_factory=list)
    pred: dict[int, tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    def seen_v(self) -> set[int]:
        out: set[int] = set()
        for s in self.levels_V:
            out |= s
        return out


def subtree_potential(t: InTree, u: int, base: float) -> float:
    return float(sum(base ** t.deg(v) for v in t.subtree_iter(u)))


def potential_budget(cfg: Config, i: int, k: int) -> float:
    """Admission budget for a level-i start subtree: shrinks by 1/(1+eps)."""
    c, eps = cfg.base_c, cfg.epsilon
    return 0.9 * eps / (1.0 + eps) ** i * c ** (k - 1)


def eligible_starts(t: InTree, st: LayeredState, i: int, cfg: Config) -> set[int]:
    """Children of level i-1 vertices whose subtrees are clean and cheap.

    Clean: no subtree vertex of degree >= k-2 (so every interior of a
    future segment is automatically low-degree).  Cheap: subtree potential
    within the level's budget.
    """
    k = st.k
    budget = potential_budget(cfg, i, k)
    out: set[int] = set()
    for v in st.levels_V[i - 1]:
        for u in t.children[v]:
            if any(t.deg(w) >= k - 2 for w in t.subtree_iter(u)):
                continue
            if subtree_potential(t, u, cfg.base_c) > budget:
                continue
            out.add(u)
    return out


def exit_set(t: InTree, g: Digraph, u: int, k: int) -> dict[int, tuple[int, ...]]:
    """Every first vertex outside subtree(u) reachable from u, with a
    min-hop interior path to it.

    Requires a clean subtree (no vertex of degree >= k-2), so interior
    vertices need no degree filter.
    """
    inside = t.subtree(u)
    assert all(t.deg(v) <= k - 3 for v in inside), "subtree not clean"
    pred: dict[int, int] = {u: u}
    exits: dict[int, tuple[int, ...]] = {}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.out_edges[x]:
            if y in inside:
                if y not in pred:
                    pred[y] = x
                    queue.append(y)
            elif y not in exits:
                path = [y]
                cur = x
                while cur != u:
                    path.append(cur)
                    cur = pred[cur]
                path.append(u)
                path.reverse()
                exits[y] = tuple(path)
    return exits


def extend_layer(
    t: InTree, g: Digraph, st: LayeredState, i: int, cfg: Config
) -> FoundEndpoint | set[int]:
    """Process level i: either find a terminal exit or assemble V_i.

    Start vertices are scanned in ascending id; the first exit of degree
    <= k-2 ends the search.  Otherwise exits of degree exactly k-1 that
    were never seen before join V_i, remembering which start discovered
    them (first discoverer wins).
    """
    k = st.k
    seen = st.seen_v()
    v_new: set[int] = set()
    for u in sorted(st.levels_U[i - 1]):
        exits = exit_set(t, g, u, k)
        for x, path in exits.items():
            if t.deg(x) <= k - 2:
                return FoundEndpoint(i, u, x, path)
        for x, path in exits.items():
            if t.deg(x) == k - 1 and x not in seen and x not in v_new:
                v_new.add(x)
                st.pred[x] = (u, path)
            elif t.deg(x) == k:
                # Degree-k exits are level 0 by definition; higher ones sit
                # in S_{k+1}.  Both land on the certificate's blocking side.
                assert x in st.levels_V[0]
    return v_new


def reconstruct_path(st: LayeredState, endpoint: FoundEndpoint, t: InTree) -> AugmentingPath:
    """Walk discovery links from the endpoint's level back to level 0."""
    segments = [endpoint.path]
    u = endpoint.u
    for _ in range(endpoint.level - 1):
        v = t.parent[u]
        assert v is not None and v in st.pred, "broken discovery chain"
        u, path = st.pred[v]
        segments.append(path)
    segments.reverse()
    return AugmentingPath(st.k, tuple(segments))


def validate_augmenting_path(
    t: InTree, g: Digraph, p: AugmentingPath, cfg: Config
) -> None:
    """Check every definitional invariant; raise ValidationFailed on any break."""
    k = p.k
    segs = p.segments
    if not segs:
        raise ValidationFailed("no segments")
    starts = [s[0] for s in segs]
    ends = [s[-1] for s in segs]
    l = len(segs)
    for s in segs:
        if len(s) < 2 or len(set(s)) != len(s):
            raise ValidationFailed(f"segment not a simple path: {s}")
        for a, b in zip(s, s[1:]):
            if not g.has_edge(a, b):
                raise ValidationFailed(f"({a}, {b}) is not a graph edge")
    # (i) consecutive segments chain through tree parents
    for i in range(l - 1):
        if t.parent[starts[i + 1]] != ends[i]:
            raise ValidationFailed(
                f"segment {i + 1} start {starts[i + 1]} does not hang under {ends[i]}"
            )
    # (ii) starts pairwise unrelated, endpoints distinct
    for i in range(l):
        for j in range(i + 1, l):
            if not t.unrelated(starts[i], starts[j]):
                raise ValidationFailed(f"starts {starts[i]}, {starts[j]} related")
    if len(set(ends)) != l:
        raise ValidationFailed(f"duplicate endpoints: {ends}")
    # (iii) degree pattern along the chain
    p1 = t.parent[starts[0]]
    if p1 is None or t.deg(p1) != k:
        raise ValidationFailed(f"first start's parent must have degree {k}")
    for i in range(l - 1):
        if t.deg(ends[i]) != k - 1:
            raise ValidationFailed(f"middle endpoint {ends[i]} must have degree {k - 1}")
    if t.deg(ends[-1]) > k - 1:
        raise ValidationFailed(f"final endpoint {ends[-1]} above degree {k - 1}")
    # (iv) clean start subtrees + potential efficiency per level
    subtrees = []
    for i, u in enumerate(starts, start=1):
        sub = t.subtree(u)
        subtrees.append(sub)
        if any(t.deg(w) >= k - 2 for w in sub):
            raise ValidationFailed(f"subtree of {u} contains a degree >= {k - 2} vertex")
        if subtree_potential(t, u, cfg.base_c) > potential_budget(cfg, i, k) + 1e-9:
            raise ValidationFailed(f"subtree of {u} over its potential budget")
    # (v) interiors stay inside their subtree, endpoint is the first outside
    for i, s in enumerate(segs):
        sub = subtrees[i]
        for v in s[:-1]:
            if v not in sub:
                raise ValidationFailed(f"interior {v} outside subtree of {s[0]}")
            if v != s[0] and t.deg(v) >= k - 2:
                raise ValidationFailed(f"interior {v} has degree >= {k - 2}")
        if s[-1] in sub:
            raise ValidationFailed(f"endpoint {s[-1]} inside subtree of {s[0]}")
    # Segments are vertex-disjoint except that the final endpoint may also
    # appear once inside an earlier subtree (it is then low-degree there).
    seen: dict[int, int] = {}
    for i, s in enumerate(segs):
        for v in s:
            if v in seen and not (v == ends[-1] and seen[v] != i):
                raise ValidationFailed(f"vertex {v} appears twice in segments")
            seen.setdefault(v, i)
    final = ends[-1]
    occurrences = sum(s.count(final) for s in segs)
    if occurrences > 2:
        raise ValidationFailed(f"final endpoint {final} appears {occurrences} times")


def apply_augmenting_path(
    t: InTree, p: AugmentingPath, potential_base: float = 2
) -> AdjustDelta:
    """Run the cut-and-append rewrite segment by segment and audit it.

    Requires the final endpoint at degree <= k-2.  Afterwards: the
    degree-k class lost exactly one member, no class above k grew, middle
    endpoints kept their degree, and the final endpoint gained at most two
    children (at most one unless it also sat inside an earlier subtree).
    The recorded potential change uses potential_base (the driver passes
    its running base c).
    """
    k = p.k
    g = t.g
    final = p.segments[-1][-1]
    if t.deg(final) > k - 2:
        raise StalePath(f"final endpoint {final} has degree {t.deg(final)} > {k - 2}")
    before = [t.deg(v) for v in range(g.n)]
    counts_before = t.degree_counts()
    phi_before = t.potential(potential_base)
    first_parent = t.parent[p.segments[0][0]]
    assert first_parent is not None
    for seg in p.segments:
        for a, b in zip(seg, seg[1:]):
            t.cut_and_append(a, b)
    bad = t.validate()
    assert not bad, f"tree invalid after augmenting adjustment: {bad[:3]}"
    counts_after = t.degree_counts()
    assert counts_after.get(k, 0) == counts_before.get(k, 0) - 1, (
        "degree-k class must shrink by exactly one"
    )
    for d in set(counts_before) | set(counts_after):
        if d > k:
            assert counts_after.get(d, 0) <= counts_before.get(d, 0), (
                f"degree class {d} > k grew"
            )
    starts = {s[0] for s in p.segments}
    ends = [s[-1] for s in p.segments]
    on_path = {v for s in p.segments for v in s}
    assert t.deg(first_parent) == before[first_parent] - 1
    for v in ends[:-1]:
        assert t.deg(v) == before[v], f"middle endpoint {v} changed degree"
    assert t.deg(final) <= before[final] + 2
    assert t.deg(final) <= k - 1
    for v in on_path - starts - set(ends):
        assert t.deg(v) <= before[v] + 1, f"interior {v} gained more than one child"
    phi_after = t.potential(potential_base)
    changed = {v: (before[v], t.deg(v)) for v in range(g.n) if t.deg(v) != before[v]}
    return AdjustDelta(k, changed, phi_before, phi_after)


def run_augmenting_search(
    g: Digraph, cfg: Config | None = None, trace: bool = False
) -> SolveReport:
    """Outer loop of the layered search.

    Each round either applies one validated augmenting path (and restarts
    with fresh layers) or stalls with a verified blocking certificate.
    The base-c potential strictly decreases across applied adjustments,
    and the degree-class vector drops lexicographically, so the loop
    terminates.
    """
    cfg = cfg or Config.for_graph(g)
    start = time.perf_counter()
    t = build_initial_tree(g)
    delta_initial = t.max_deg
    c = cfg.base_c
    layer_ceiling = 10.0 / cfg.epsilon * math.log2(max(g.n, 2))
    applications = 0
    rows: list[dict] = [] if trace else None  # type: ignore[assignment]
    certificate: BlockingCertificate | None = None
    exit_reason = "threshold"
    strict_size_bound = cfg.profile == "paper"
    while t.max_deg > cfg.stop_threshold_aug:
        k = choose_k(t, c / 2.0)
        st = LayeredState(k=k, cfg=cfg)
        st.levels_V.append(t.members(k))
        endpoint: FoundEndpoint | None = None
        covered: set[int] = set()
        i = 0
        while True:
            i += 1
            assert i <= layer_ceiling, f"layer count {i} exceeded ceiling"
            st.levels_U.append(eligible_starts(t, st, i, cfg))
            for u in st.levels_U[-1]:
                sub = t.subtree(u)
                assert not (covered & sub), "start vertices must stay unrelated"
                covered |= sub
            if strict_size_bound and k > 2 * c * c / cfg.epsilon ** 2:
                floor = (k - 2 - c * c / cfg.epsilon) * len(st.levels_V[i - 1])
                assert len(st.levels_U[-1]) >= floor
            result = extend_layer(t, g, st, i, cfg)
            if isinstance(result, FoundEndpoint):
                endpoint = result
                break
            st.levels_V.append(result)
            grown = sum(len(s) for s in st.levels_V)
            previous = grown - len(result)
            if grown < (1.0 + cfg.epsilon) * previous:
                break
        if endpoint is None:
            exit_reason = "stalled"
            try:
                certificate = extract_augment_certificate(t, g, st)
            except EmptyWitness:
                certificate = None
            if rows is not None:
                rows.append(
                    {"k": k, "layers": i, "applied": False, "phi": t.potential(c)}
                )
            break
        path = reconstruct_path(st, endpoint, t)
        validate_augmenting_path(t, g, path, cfg)
        delta = apply_augmenting_path(t, path, potential_base=c)
        applications += 1
        assert delta.phi_after < delta.phi_before, (
            "base-c potential must strictly decrease"
        )
        if rows is not None:
            rows.append(
                {
                    "k": k,
                    "layers": i,
                    "applied": True,
                    "segments": len(path.segments),
                    "phi": delta.phi_before,
                    "drop": delta.phi_drop,
                }
            )
    wall_ms = (time.perf_counter() - start) * 1000.0
    proved = cfg.profile == "paper" and (
        exit_reason == "threshold" or certificate is not None
    )
    return SolveReport(
        algorithm="augment",
        profile=cfg.profile,
        n=g.n,
        m=g.m,
        delta_initial=delta_initial,
        delta_final=t.max_deg,
        lower_bound=certificate.bound if certificate else None,
        certificate=certificate,
        iterations=applications,
        potential_trace=None,
        layers_trace=rows,
        parent=t.parents_signed(),
        wall_time_ms=wall_ms,
        config=cfg.to_dict(),
        guarantee="proved" if proved else "heuristic",
        exit_reason=exit_reason,
    )
