"""Canonical labelling of small graphs.

Colour refinement followed by individualisation with backtracking.  The
canonical labelling is the one whose permuted adjacency matrix is
lexicographically maximal among the leaves of the search tree.  Automorphisms
found at equivalent leaves prune the tree in two ways: children in the same
orbit of the path stabiliser are skipped, and finding a leaf equivalent to the
best one abandons the whole subtree back to the common ancestor.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .graph import Graph, to_graph6


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                a = adj[v]
                key = tuple((a & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                for key in sorted(groups):
                    out.append(groups[key])
        if not split:
            return out
        cells = out


def _initial_cells(n: int, colors: Sequence | None) -> list[list[int]]:
    if colors is None:
        return [list(range(n))] if n else []
    groups: dict = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    return [groups[c] for c in sorted(groups)]


class _Abort(Exception):
    def __init__(self, depth: int):
        self.depth = depth


class _Search:
    def __init__(self, adj, n: int):
        self.adj = adj
        self.n = n
        self.best = None
        self.best_lab = None
        self.best_path = None
        self.autos: list[tuple[int, ...]] = []

    def rows(self, lab):
        n = self.n
        pos = [0] * n
        for i, v in enumerate(lab):
            pos[v] = n - 1 - i
        out = []
        adj = self.adj
        for v in lab:
            r = 0
            a = adj[v]
            while a:
                low = a & -a
                r |= 1 << pos[low.bit_length() - 1]
                a ^= low
            out.append(r)
        return tuple(out)

    def leaf(self, cells, path):
        lab = [c[0] for c in cells]
        rows = self.rows(lab)
        if self.best is None or rows > self.best:
            self.best, self.best_lab, self.best_path = rows, lab, list(path)
        elif rows == self.best:
            gamma = [0] * self.n
            for a, b in zip(self.best_lab, lab):
                gamma[a] = b
            self.autos.append(tuple(gamma))
            common = 0
            for a, b in zip(self.best_path, path):
                if a != b:
                    break
                common += 1
            raise _Abort(common)

    def orbit_rep(self, path) -> dict[int, int]:
        """Union-find parent map of orbits under automorphisms fixing ``path``."""
        parent: dict[int, int] = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for g in self.autos:
            if all(g[p] == p for p in path):
                for x in range(self.n):
                    a, b = find(x), find(g[x])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return {x: find(x) for x in range(self.n)} if parent else {}

    def run(self, cells, path):
        cells = _refine(self.adj, cells)
        if len(cells) == self.n:
            self.leaf(cells, path)
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = sorted(cells[t])
        depth = len(path)
        explored_roots: set[int] = set()
        n_autos = -1
        orbit: dict[int, int] = {}
        for v in target:
            if explored_roots:
                if n_autos != len(self.autos):
                    orbit = self.orbit_rep(path)
                    n_autos = len(self.autos)
                if orbit.get(v, v) in {orbit.get(u, u) for u in explored_roots}:
                    continue
            explored_roots.add(v)
            rest = [w for w in cells[t] if w != v]
            child = cells[:t] + [[v], rest] + cells[t + 1:]
            path.append(v)
            try:
                self.run(child, path)
            except _Abort as stop:
                if stop.depth < depth:
                    raise
            finally:
                path.pop()


def canonical_labeling(g: Graph, colors: Sequence | None = None):
    """Return ``(lab, rows, autos)``.

    ``lab[i]`` is the vertex placed at canonical position ``i``; ``rows`` is the
    canonical adjacency matrix (row ``i`` has bit ``n-1-j`` set for an edge to
    position ``j``); ``autos`` are automorphisms found during the search.
    """
    n = g.n
    if n == 0:
        return [], (), []
    s = _Search(g.adj, n)
    try:
        s.run(_initial_cells(n, colors), [])
    except _Abort:  # pragma: no cover - aborts never escape the root
        pass
    return s.best_lab, s.best, s.autos


def canonical_graph(g: Graph, colors: Sequence | None = None) -> tuple[Graph, list[int]]:
    lab, _, _ = canonical_labeling(g, colors)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm), lab


def canonical_form(g: Graph, colors: Sequence | None = None) -> str:
    """graph6 string of the canonically relabelled graph.

    With ``colors`` the sorted colour sequence is prefixed, so coloured forms
    only compare equal for colour-preserving isomorphisms.
    """
    cg, lab = canonical_graph(g, colors)
    code = to_graph6(cg)
    if colors is None:
        return code
    return ",".join(str(colors[v]) for v in lab) + ":" + code


def orbits(n: int, generators: Iterable[Sequence[int]]) -> list[int]:
    """Orbit representative (smallest element) of every vertex."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


class DedupStore:
    """Insert-if-absent set of canonical forms, safe for concurrent producers.

    ``sorted()`` gives the deterministic merged enumeration (lexicographic by
    form).  Per-worker stores can be combined with ``merge``.
    """

    def __init__(self, forms: Iterable[str] = ()):
        self._lock = threading.Lock()
        self._forms: set[str] = set(forms)

    def insert(self, form: str) -> bool:
        with self._lock:
            if form in self._forms:
                return False
            self._forms.add(form)
            return True

    def insert_graph(self, g: Graph) -> bool:
        return self.insert(canonical_form(g))

    def merge(self, other: "DedupStore") -> int:
        added = 0
        for f in other.sorted():
            added += self.insert(f)
        return added

    def __contains__(self, form: str) -> bool:
        return form in self._forms

    def __len__(self) -> int:
        return len(self._forms)

    def sorted(self) -> list[str]:
        with self._lock:
            return sorted(self._forms)


def dedup_store() -> DedupStore:
    return DedupStore()
