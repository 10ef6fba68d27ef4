"""Isomorph-free generation of connected graphs and of filtered blocks.

Generation is by vertex addition with a canonical construction path.  A
connected graph ``G`` on ``n`` vertices has a canonical deletion vertex: among
its non-cut vertices of smallest degree, the one with the largest canonical
position.  ``G`` is accepted from parent ``P`` only when ``G`` minus that
vertex is isomorphic to ``P``; isomorphic children of the same parent are
removed with a per-parent set.  Every isomorphism class therefore appears
exactly once and parents can be processed independently (sharding).

Deleting a minimum-degree vertex lowers the minimum degree by at most one, so
connected graphs with minimum degree ``d`` only need parents of minimum degree
``d - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .canon import canonical_form, canonical_labeling
from .graph import (
    CapacityError,
    Graph,
    GraphError,
    _count,
    _cut_vertices,
    from_graph6,
    is_clique,
    to_graph6,
)

MAX_INTERNAL_N = 11


@dataclass(frozen=True)
class BlockFilterConfig:
    n: int
    require_block: bool = True
    forbid_free_vertices: bool = True
    forbid_degree_le_2: bool = True
    k: int | None = None
    min_edges: int | None = None
    max_edges: int | None = None

    def __post_init__(self):
        structural = self.forbid_free_vertices or self.forbid_degree_le_2
        if structural and self.n < 3:
            raise ValueError("structural filters need n >= 3")

    @classmethod
    def unfiltered(cls, n: int, **kw) -> "BlockFilterConfig":
        return cls(n, forbid_free_vertices=False, forbid_degree_le_2=False, **kw)

    @classmethod
    def table1(cls, n: int, **kw) -> "BlockFilterConfig":
        """Structural filters plus the loosest upper edge bound over 4 <= k <= n-1.

        This is the combination that reproduces the published filtered-block
        counts (79, 1716, 61408 for n = 7, 8, 9).
        """
        cap = table1_max_edges(n)
        if cap is not None:
            kw["max_edges"] = cap if kw.get("max_edges") is None else min(cap, kw["max_edges"])
        return cls(n, **kw)

    def edge_range(self) -> tuple[int, int]:
        lo, hi = 0, self.n * (self.n - 1) // 2
        if self.k is not None:
            blo, bhi = edge_bounds(self.n, self.k)
            lo, hi = max(lo, blo), min(hi, bhi)
        if self.min_edges is not None:
            lo = max(lo, self.min_edges)
        if self.max_edges is not None:
            hi = min(hi, self.max_edges)
        return lo, hi

    def min_degree(self) -> int:
        if self.forbid_degree_le_2:
            return 3
        if self.require_block and self.n >= 3:
            return 2
        return 1 if self.n >= 2 else 0


def edge_bounds(n: int, k: int) -> tuple[int, int]:
    """Edge-count window for blocks that can carry ``k`` whiskers without a good cut vertex."""
    if not 4 <= k <= n - 3:
        raise ValueError(f"edge bounds need 4 <= k <= n-3, got n={n}, k={k}")
    return -(-3 * n // 2), _upper_edge_bound(n, k)


def _upper_edge_bound(n: int, k: int) -> int:
    # (n-1)^2/2 - (k/2)(n - floor((n+k)/2)), kept in halves to stay integral
    return ((n - 1) ** 2 - k * (n - (n + k) // 2)) // 2


def table1_max_edges(n: int) -> int | None:
    if n < 5:
        return None
    return max(_upper_edge_bound(n, k) for k in range(4, n))


def passes_block_filters(b: Graph, cfg: BlockFilterConfig) -> tuple[bool, str | None]:
    n = b.n
    adj = b.adj
    if cfg.require_block:
        if n == 0 or _count(adj, b.full) != 1 or _cut_vertices(adj, b.full):
            return False, "not a block"
    if cfg.forbid_degree_le_2 and any(a.bit_count() <= 2 for a in adj):
        return False, "vertex of degree <= 2"
    if cfg.forbid_free_vertices and any(is_clique(adj, a) for a in adj):
        return False, "free vertex"
    lo, hi = cfg.edge_range()
    m = b.num_edges()
    if not lo <= m <= hi:
        return False, f"edge count {m} outside [{lo}, {hi}]"
    return True, None


def _deletion_vertex(adj, n: int, lab: list[int], cut: int) -> int:
    cand = [v for v in range(n) if not cut >> v & 1]
    dmin = min(adj[v].bit_count() for v in cand)
    pos = {v: i for i, v in enumerate(lab)}
    return max((v for v in cand if adj[v].bit_count() == dmin), key=pos.__getitem__)


def _children(parent: Graph, parent_form: str, min_degree: int,
              edge_lo: int, edge_hi: int, leaf_ok=None) -> list[tuple[int, str, Graph]]:
    """Accepted children of ``parent`` as ``(edges, form, graph)``."""
    p = parent.n
    n = p + 1
    u = p
    padj = parent.adj
    pdeg = [a.bit_count() for a in padj]
    pedges = sum(pdeg) // 2
    seen: set[str] = set()
    out = []
    for size in range(max(1, min_degree), p + 1):
        m = pedges + size
        if m < edge_lo:
            continue
        if m > edge_hi:
            break
        for nb in combinations(range(p), size):
            nmask = 0
            for w in nb:
                nmask |= 1 << w
            # new vertex is never a cut vertex (parent is connected); it must have
            # the smallest degree among non-cut vertices, checked after cut vertices
            ok = True
            for w in range(p):
                d = pdeg[w] + (nmask >> w & 1)
                if d < min_degree:
                    ok = False
                    break
            if not ok:
                continue
            adj = tuple([a | (1 << u) if nmask >> i & 1 else a for i, a in enumerate(padj)] + [nmask])
            full = (1 << n) - 1
            cut = _cut_vertices(adj, full)
            if any(not cut >> w & 1 and adj[w].bit_count() < size for w in range(p)):
                continue
            g = Graph.__new__(Graph)
            object.__setattr__(g, "n", n)
            object.__setattr__(g, "adj", adj)
            if leaf_ok is not None and not leaf_ok(g, cut):
                continue
            lab, rows, autos = canonical_labeling(g)
            dv = _deletion_vertex(adj, n, lab, cut)
            if dv != u:
                # cheap invariant before the second canonical labelling
                sub_deg = sorted((adj[w] & ~(1 << dv)).bit_count() for w in range(n) if w != dv)
                if sub_deg != sorted(pdeg):
                    continue
                sub, _ = g.delete(1 << dv)
                if canonical_form(sub) != parent_form:
                    continue
            form = canonical_form(g)
            if form in seen:
                continue
            seen.add(form)
            out.append((m, form, g))
    return out


@lru_cache(maxsize=None)
def _connected_level(n: int, min_degree: int) -> tuple[tuple[str, Graph], ...]:
    """All connected graphs on ``n`` vertices with minimum degree >= ``min_degree``,
    as (canonical form, canonical graph) sorted by (edges, form)."""
    if n == 1:
        return (("@", Graph(1, (0,))),) if min_degree <= 0 else ()
    if min_degree >= n:
        return ()
    parents = _connected_level(n - 1, max(min_degree - 1, 0))
    out = []
    for form, pg in parents:
        out.extend(_children(pg, form, min_degree, 0, n * (n - 1) // 2))
    out.sort(key=lambda t: (t[0], t[1]))
    return tuple((f, _canon_graph(f)) for _, f, _ in out)


def _canon_graph(form: str) -> Graph:
    return from_graph6(form)


def generate_connected(n: int, min_degree: int = 0) -> Iterator[Graph]:
    """One representative per class of connected graphs on ``n`` vertices."""
    if n > 10:
        raise CapacityError(f"internal connected-graph generation supports n <= 10, got {n}")
    for _, g in _connected_level(n, min_degree):
        yield g


def _block_leaf(cfg: BlockFilterConfig):
    def ok(g: Graph, cut: int) -> bool:
        if cfg.require_block and cut:
            return False
        adj = g.adj
        if cfg.forbid_free_vertices and any(is_clique(adj, a) for a in adj):
            return False
        return True
    return ok


def block_parents(cfg: BlockFilterConfig) -> tuple[tuple[str, Graph], ...]:
    n = cfg.n
    if n > MAX_INTERNAL_N:
        raise CapacityError(f"internal block generation supports n <= {MAX_INTERNAL_N}, got {n}")
    return _connected_level(n - 1, max(cfg.min_degree() - 1, 0))


def generate_blocks(n: int, cfg: BlockFilterConfig | None = None,
                    shards: int = 1, shard_index: int = 0) -> Iterator[Graph]:
    """Filtered blocks on ``n`` vertices, one per isomorphism class.

    Order: ascending edge count, then canonical form.  With ``shards > 1``
    only parents ``i`` with ``i % shards == shard_index`` are expanded; the
    shards partition the output.
    """
    cfg = cfg or BlockFilterConfig(n)
    if cfg.n != n:
        raise ValueError("config is for a different n")
    if not 0 <= shard_index < shards:
        raise ValueError(f"shard index {shard_index} out of range for {shards} shards")
    lo, hi = cfg.edge_range()
    if n <= 2:
        small = Graph.complete(n) if n else None
        if small is not None and n >= 1 and shard_index == 0 and lo <= small.num_edges() <= hi:
            if passes_block_filters(small, cfg)[0]:
                yield small
        return
    leaf = _block_leaf(cfg)
    found = []
    for i, (form, pg) in enumerate(block_parents(cfg)):
        if i % shards != shard_index:
            continue
        for m, f, g in _children(pg, form, cfg.min_degree(), lo, hi, leaf):
            found.append((m, f))
    found.sort()
    for _, f in found:
        g = from_graph6(f)
        assert passes_block_filters(g, cfg)[0]
        yield g


def ingest_graph6(lines: Iterable[str], cfg: BlockFilterConfig | None = None,
                  stats: dict | None = None) -> Iterator[Graph]:
    """Decode graph6 lines, keep those passing the filters, drop isomorphs."""
    seen: set[str] = set()
    if stats is not None:
        stats.setdefault("read", 0)
        stats.setdefault("filtered_out", 0)
        stats.setdefault("duplicates", 0)
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            g = from_graph6(line)
        except (GraphError, CapacityError) as e:
            raise GraphError(f"line {lineno}: {e}") from None
        if stats is not None:
            stats["read"] += 1
        if cfg is not None:
            if cfg.n != g.n or not passes_block_filters(g, cfg)[0]:
                if stats is not None:
                    stats["filtered_out"] += 1
                continue
        form = canonical_form(g)
        if form in seen:
            if stats is not None:
                stats["duplicates"] += 1
            continue
        seen.add(form)
        yield g


@lru_cache(maxsize=8)
def filtered_blocks(cfg: BlockFilterConfig) -> tuple[str, ...]:
    """Canonical graph6 forms of ``generate_blocks(cfg.n, cfg)``, cached per config."""
    # emitted graphs are already canonical, so their graph6 is the form
    return tuple(to_graph6(g) for g in generate_blocks(cfg.n, cfg))
