"""Mutable spanning in-tree with O(1)-amortized degree bookkeeping.

The tree is rooted at the graph's sink; every other vertex stores its
parent.  deg(v) is the number of children of v (its tree in-degree), and a
degree histogram keeps the member set of every degree class so the
potential function and degree-class scans are cheap.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator

from .graph import Digraph


class TreeError(Exception):
    pass


class CutSink(TreeError):
    """Attempt to reattach the sink, which has no parent."""


class NotAnEdge(TreeError):
    """Attempt to attach a vertex below a non-out-neighbor."""


class EmptyDegreeClass(TreeError):
    """unrelated_children asked for a degree class with no members."""


class InTree:
    """Spanning in-tree over a Digraph, mutated by cut-and-append steps.

    A single solver run owns one tree; nothing here is shared or
    thread-safe.  Sequences of cut_and_append calls may pass through
    transient non-tree states (parent cycles); callers assert validity at
    the end of each complete adjustment.
    """

    __slots__ = ("g", "parent", "children", "_members", "max_deg")

    def __init__(self, g: Digraph, parent: list[int | None]) -> None:
        if len(parent) != g.n:
            raise TreeError(f"parent array length {len(parent)} != n={g.n}")
        self.g = g
        self.parent: list[int | None] = list(parent)
        self.children: list[list[int]] = [[] for _ in range(g.n)]
        for v in range(g.n):
            p = self.parent[v]
            if p is not None:
                self.children[p].append(v)
        self._members: dict[int, set[int]] = {}
        for v in range(g.n):
            self._members.setdefault(len(self.children[v]), set()).add(v)
        self.max_deg = max(len(c) for c in self.children)

    # -- degree bookkeeping ------------------------------------------------

    def deg(self, v: int) -> int:
        return len(self.children[v])

    def members(self, d: int) -> set[int]:
        """The set N_d of vertices with degree exactly d (a live copy)."""
        return set(self._members.get(d, ()))

    def degree_counts(self) -> dict[int, int]:
        return {d: len(s) for d, s in sorted(self._members.items()) if s}

    def vertices_with_deg_at_least(self, d: int) -> set[int]:
        """The set S_d, derived from the histogram member lists."""
        out: set[int] = set()
        for dd, s in self._members.items():
            if dd >= d:
                out |= s
        return out

    def _move_class(self, v: int, old: int, new: int) -> None:
        self._members[old].discard(v)
        self._members.setdefault(new, set()).add(v)
        if new > self.max_deg:
            self.max_deg = new
        elif old == self.max_deg:
            while self.max_deg > 0 and not self._members.get(self.max_deg):
                self.max_deg -= 1

    # -- mutation ----------------------------------------------------------

    def cut_and_append(self, v: int, new_parent: int) -> None:
        """Cut v off its parent and append it right below new_parent."""
        if v == self.g.sink:
            raise CutSink(f"cannot reattach sink {v}")
        if not self.g.has_edge(v, new_parent):
            raise NotAnEdge(f"({v}, {new_parent}) is not a graph edge")
        old = self.parent[v]
        if old == new_parent:
            return
        assert old is not None
        self.children[old].remove(v)
        self._move_class(old, len(self.children[old]) + 1, len(self.children[old]))
        self.parent[v] = new_parent
        self.children[new_parent].append(v)
        self._move_class(
            new_parent, len(self.children[new_parent]) - 1, len(self.children[new_parent])
        )

    # -- queries -----------------------------------------------------------

    def subtree(self, u: int) -> set[int]:
        """All vertices whose parent chain passes through u, including u."""
        out = {u}
        stack = [u]
        while stack:
            for c in self.children[stack.pop()]:
                if c not in out:
                    out.add(c)
                    stack.append(c)
        return out

    def subtree_iter(self, u: int) -> Iterator[int]:
        """Deterministic depth-first walk of subtree(u)."""
        seen = {u}
        stack = [u]
        while stack:
            v = stack.pop()
            yield v
            for c in reversed(self.children[v]):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)

    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff a is v or an ancestor of v (i.e. v is inside subtree(a))."""
        steps = 0
        cur: int | None = v
        while cur is not None and steps <= self.g.n:
            if cur == a:
                return True
            cur = self.parent[cur]
            steps += 1
        return False

    def unrelated(self, u: int, v: int) -> bool:
        """True iff subtree(u) and subtree(v) are disjoint."""
        return not self.is_ancestor(u, v) and not self.is_ancestor(v, u)

    def depths(self) -> list[int]:
        depth = [-1] * self.g.n
        depth[self.g.sink] = 0
        queue = deque([self.g.sink])
        while queue:
            v = queue.popleft()
            for c in self.children[v]:
                if depth[c] < 0:
                    depth[c] = depth[v] + 1
                    queue.append(c)
        return depth

    def unrelated_children(self, d: int) -> set[int]:
        """A large set of pairwise-unrelated vertices with parents of degree d.

        Members of the degree class are folded in by increasing depth; each
        step evicts the at most one current pick lying on the new member's
        root path, then adds all its children.  The result always reaches
        the (d-1)*|N_d| + 1 size floor, which is asserted rather than
        assumed.
        """
        members = self._members.get(d, set())
        if not members:
            raise EmptyDegreeClass(f"no vertices of degree {d}")
        depth = self.depths()
        picks: set[int] = set()
        for u in sorted(members, key=lambda v: (depth[v], v)):
            blockers = [w for w in picks if self.is_ancestor(w, u)]
            assert len(blockers) <= 1, "pairwise-unrelated set had two ancestors"
            for w in blockers:
                picks.discard(w)
            picks.update(self.children[u])
        floor = (d - 1) * len(members) + 1
        assert len(picks) >= floor, f"|W|={len(picks)} below floor {floor} at d={d}"
        return picks

    def potential(self, base) -> int | float | Fraction:
        """Sum of base**deg(v) over all vertices, from the histogram."""
        if isinstance(base, (int, Fraction)):
            return sum((base ** d) * len(s) for d, s in self._members.items() if s)
        return float(sum((base ** d) * len(s) for d, s in self._members.items() if s))

    def parents_signed(self) -> list[int]:
        """Parent array with -1 at the sink (the serialized form)."""
        return [-1 if p is None else p for p in self.parent]

    def copy(self) -> "InTree":
        return InTree(self.g, self.parent)

    # -- validation ----------------------------------------------------------

    def validate(self, g: Digraph | None = None) -> list[str]:
        """All invariant violations against g (empty list means valid)."""
        g = g or self.g
        bad: list[str] = []
        n = g.n
        if len(self.parent) != n:
            return [f"ShapeMismatch: parent array has {len(self.parent)} entries for n={n}"]
        for v in range(n):
            p = self.parent[v]
            if v == g.sink:
                if p is not None:
                    bad.append(f"SinkHasParent: sink {v} has parent {p}")
                continue
            if p is None:
                bad.append(f"MissingParent: vertex {v} has no parent")
            elif not 0 <= p < n:
                bad.append(f"ParentOutOfRange: vertex {v} -> {p}")
            elif not g.has_edge(v, p):
                bad.append(f"NotAnEdge: tree edge ({v}, {p}) missing from graph")
        # Parent chains must reach the sink without repeating a vertex.
        state = [0] * n  # 0 unseen, 1 on current walk, 2 settled
        state[g.sink] = 2
        for v in range(n):
            if state[v]:
                continue
            walk = []
            cur: int | None = v
            while cur is not None and state[cur] == 0:
                state[cur] = 1
                walk.append(cur)
                cur = self.parent[cur] if 0 <= cur < n else None
            if cur is None or state[cur] == 1:
                bad.append(f"CycleDetected: parent walk from {v} never reaches sink")
                for w in walk:
                    state[w] = 2
            else:
                for w in walk:
                    state[w] = 2
        for v in range(n):
            for c in self.children[v]:
                if self.parent[c] != v:
                    bad.append(f"ChildrenMismatch: {c} listed under {v}")
            if len(set(self.children[v])) != len(self.children[v]):
                bad.append(f"ChildrenMismatch: duplicates under {v}")
        total = 0
        for d, s in self._members.items():
            total += len(s)
            for v in s:
                if len(self.children[v]) != d:
                    bad.append(f"HistogramMismatch: {v} filed under degree {d}")
        if total != n:
            bad.append(f"HistogramMismatch: {total} vertices filed, expected {n}")
        actual_max = max(len(c) for c in self.children)
        if self.max_deg != actual_max:
            bad.append(f"MaxDegMismatch: cached {self.max_deg}, actual {actual_max}")
        return bad


def build_initial_tree(g: Digraph) -> InTree:
    """Breadth-first spanning tree from the sink over reversed edges.

    Deterministic given the graph's edge order; parent(v) is v's BFS
    predecessor, so the tree is as shallow as the graph allows.
    """
    parent: list[int | None] = [None] * g.n
    seen = [False] * g.n
    seen[g.sink] = True
    queue = deque([g.sink])
    while queue:
        v = queue.popleft()
        for u in g.rev_edges[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                queue.append(u)
    missing = [v for v in range(g.n) if not seen[v]]
    if missing:
        raise TreeError(f"graph invariant broken: {missing} cannot reach sink")
    return InTree(g, parent)


def tree_from_parents(g: Digraph, parents: Iterable[int]) -> InTree:
    """Build an InTree from a signed parent array (-1 at the sink)."""
    arr: list[int | None] = []
    for v, p in enumerate(parents):
        arr.append(None if p < 0 else p)
    return InTree(g, arr)
