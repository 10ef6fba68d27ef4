"""Exhaustive search over blocks with whiskers.

For fixed ``n`` (block size) and ``k`` (number of whiskers), every filtered
block is paired with every admissible ``k``-subset of its vertices.  Pairs
that survive the necessary conditions are deduplicated up to isomorphism and
then tested: the run is successful when every accessible candidate has a good
cut vertex.

A block with whiskers determines its block (delete the leaves), so candidates
coming from non-isomorphic blocks are never isomorphic.  Every per-block
count is therefore additive, which makes sharding and worker pools exact.
"""

from __future__ import annotations

import logging
import multiprocessing
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple

from .blockgen import BlockFilterConfig, edge_bounds, filtered_blocks, table1_max_edges
from .canon import DedupStore, canonical_form
from .cutsets import (
    DEFAULT_BUDGET,
    cut_sets_with_k,
    enumerate_cut_sets_bruteforce,
    unmixed_cut_set_scan,
)
from .graph import (
    BlockWithWhiskers,
    CapacityError,
    Graph,
    _count,
    _cut_vertices,
    add_whiskers,
    bits,
    from_graph6,
    is_block,
    is_clique,
    to_graph6,
)
from .properties import (
    SCHEMA,
    PropertyReport,
    _good_direct,
    implication_report,
    stuck_cut_sets,
)

__all__ = [
    "BlockWithWhiskers",
    "FILTERS",
    "FilterLedger",
    "SearchConfig",
    "SearchResult",
    "SearchStats",
    "ShardUnit",
    "Survivor",
    "candidate_passes",
    "dismissal_screen",
    "dispatch_reason",
    "run_search",
    "run_unfiltered",
    "shard_plan",
]

log = logging.getLogger(__name__)

FILTERS = (
    "free-vertex",
    "degree-2",
    "edge-bounds",
    "line5",
    "line6",
    "line8",
    "line10-cover",
    "line10-connected",
    "line10-kT",
    "line12",
)

# candidate-level rejection text -> filter name
REASONS = {
    "neighbourhood bound at a whiskered vertex": "line8",
    "N_B(S) ≠ V(B)": "line10-cover",
    "B - S disconnected": "line10-connected",
    "|S ∩ T| ≠ k_T": "line10-kT",
    "k = 4 and B[S] is a block": "line12",
    "k ≠ 4 and B[S] is complete": "line12",
}

TABLE_KEYS = (
    "Filtered blocks",
    "Blocks with whiskers with J_B unmixed",
    "Accessible blocks with whiskers",
)


def dispatch_reason(n: int, k: int) -> str | None:
    """Why (n, k) needs no search, or None when 4 <= k <= n-3."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k <= 3:
        return "k <= 3: a block with at most three whiskers always has a good cut vertex"
    if k >= n - 2:
        return "k >= n-2: a block with at most two unwhiskered vertices always has a good cut vertex"
    return None


@dataclass(frozen=True)
class SearchConfig:
    disabled: frozenset = frozenset()
    min_edges: int | None = None
    max_edges: int | None = None
    shards: int = 1
    shard_index: int = 0
    shard_mode: str = "index"
    jobs: int = 1
    reports: bool = True
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        unknown = set(self.disabled) - set(FILTERS)
        if unknown:
            raise ValueError(f"unknown filters: {sorted(unknown)}")
        object.__setattr__(self, "disabled", frozenset(self.disabled))
        if self.shards < 1 or not 0 <= self.shard_index < self.shards:
            raise ValueError(f"shard index {self.shard_index} out of range for {self.shards} shards")
        if self.shard_mode not in ("index", "edges"):
            raise ValueError(f"unknown shard mode {self.shard_mode!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def on(self, name: str) -> bool:
        return name not in self.disabled

    def block_config(self, n: int) -> BlockFilterConfig:
        cap = table1_max_edges(n) if self.on("edge-bounds") else None
        hi = self.max_edges
        if cap is not None:
            hi = cap if hi is None else min(hi, cap)
        return BlockFilterConfig(
            n,
            forbid_free_vertices=self.on("free-vertex"),
            forbid_degree_le_2=self.on("degree-2"),
            min_edges=self.min_edges,
            max_edges=hi,
        )


@dataclass
class SearchStats:
    n: int
    k: int
    blocks_seen: int = 0
    blocks_in_edge_window: int = 0
    blocks_passing_line5: int = 0
    candidates_enumerated: int = 0
    candidates_surviving_lines8_12: int = 0
    distinct_candidates: int = 0
    unmixed_candidates: int = 0
    accessible_candidates: int = 0
    survivors_without_good_cut_vertex: int = 0
    rejections: dict = field(default_factory=lambda: {f: 0 for f in FILTERS})

    def merge(self, other: "SearchStats") -> None:
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("cannot merge stats of different (n, k)")
        for name in self._counters():
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for f, c in other.rejections.items():
            self.rejections[f] = self.rejections.get(f, 0) + c

    @staticmethod
    def _counters() -> tuple[str, ...]:
        return ("blocks_seen", "blocks_in_edge_window", "blocks_passing_line5",
                "candidates_enumerated", "candidates_surviving_lines8_12",
                "distinct_candidates", "unmixed_candidates", "accessible_candidates",
                "survivors_without_good_cut_vertex")

    @property
    def verdict(self) -> bool:
        return self.survivors_without_good_cut_vertex == 0

    def to_json(self) -> dict:
        out: dict = {"schema": SCHEMA, "n": self.n, "k": self.k}
        out[TABLE_KEYS[0]] = self.blocks_seen
        out[TABLE_KEYS[1]] = self.unmixed_candidates
        out[TABLE_KEYS[2]] = self.accessible_candidates
        for name in self._counters():
            out[name] = getattr(self, name)
        out["rejections"] = {f: self.rejections.get(f, 0) for f in FILTERS}
        out["verdict"] = self.verdict
        return out

    @classmethod
    def from_json(cls, d: dict) -> "SearchStats":
        st = cls(d["n"], d["k"])
        for name in cls._counters():
            setattr(st, name, d[name])
        st.rejections = dict(d["rejections"])
        return st


class Survivor(NamedTuple):
    bw: BlockWithWhiskers
    form: str
    good: int
    report: PropertyReport | None

    @property
    def counterexample(self) -> bool:
        return self.good == 0


@dataclass
class SearchResult:
    verdict: bool
    stats: SearchStats
    survivors: list
    inspected: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.verdict, self.stats, self.survivors))


class ShardUnit(NamedTuple):
    edge_range: tuple[int, int]
    shard_index: int


# -- per-candidate conditions -------------------------------------------------

def _line8_ok(adj, n: int, s: int) -> bool:
    for v in bits(s):
        r = (adj[v] & s).bit_count() + 1
        if adj[v].bit_count() > (n + r) // 2 - 2:
            return False
    return True


def candidate_passes(b: Graph, s: int, k: int, ktable: Iterable[tuple[int, int]],
                     disabled: frozenset = frozenset()) -> tuple[bool, str | None]:
    """Necessary conditions for ``b`` with whiskers on ``s`` to be accessible
    without a good cut vertex.  Returns (passes, first failing reason)."""
    adj = b.adj
    n = b.n
    full = b.full
    if s.bit_count() != k:
        raise ValueError("whisker set size differs from k")
    if "line10-cover" not in disabled:
        cover = 0
        for v in bits(s):
            cover |= adj[v]
        if cover != full:
            return False, "N_B(S) ≠ V(B)"
    if "line8" not in disabled and not _line8_ok(adj, n, s):
        return False, "neighbourhood bound at a whiskered vertex"
    if "line10-connected" not in disabled and _count(adj, full & ~s) != 1:
        return False, "B - S disconnected"
    if "line10-kT" not in disabled:
        for t, kt in ktable:
            if (s & t).bit_count() != kt:
                return False, "|S ∩ T| ≠ k_T"
    if "line12" not in disabled:
        if k == 4:
            if _count(adj, s) == 1 and not _cut_vertices(adj, s):
                return False, "k = 4 and B[S] is a block"
        elif is_clique(adj, s):
            return False, "k ≠ 4 and B[S] is complete"
    return True, None


# -- dismissal conditions for accessible blocks with whiskers -----------------

SCREEN_REASONS = (
    "free vertex",
    "degree <= 2",
    "k <= 3",
    "neighbourhood bound",
    "k = 4 block-induced",
    "k >= n-2",
    "none",
)


def screen_conditions(bw: BlockWithWhiskers) -> list[str]:
    """Every dismissal condition that holds for ``bw``, in screen order."""
    b = bw.base
    adj = b.adj
    n, k, s = bw.n, bw.k, bw.whiskered
    out = []
    if any(is_clique(adj, a) for a in adj):
        out.append(SCREEN_REASONS[0])
    if any(a.bit_count() <= 2 for a in adj):
        out.append(SCREEN_REASONS[1])
    if k <= 3:
        out.append(SCREEN_REASONS[2])
    for v in bits(s):
        r = (adj[v] & s).bit_count() + 1
        if adj[v].bit_count() >= (n + r) // 2 - 1:
            out.append(SCREEN_REASONS[3])
            break
    if k == 4 and is_block(b.induced(s)[0]):
        out.append(SCREEN_REASONS[4])
    if k >= n - 2:
        out.append(SCREEN_REASONS[5])
    return out


def dismissal_screen(bw: BlockWithWhiskers) -> str:
    """First condition that guarantees a good cut vertex for an accessible
    ``bw``, or "none"."""
    hits = screen_conditions(bw)
    return hits[0] if hits else SCREEN_REASONS[6]


class FilterLedger:
    """Dismissal reason per graph (canonical form), first match only."""

    def __init__(self):
        self.entries: dict[str, str] = {}

    def record(self, bw: BlockWithWhiskers) -> str:
        form = canonical_form(bw.full)
        reason = self.entries.get(form)
        if reason is None:
            reason = dismissal_screen(bw)
            self.entries[form] = reason
        return reason

    def counts(self) -> dict[str, int]:
        out = {r: 0 for r in SCREEN_REASONS}
        for r in self.entries.values():
            out[r] += 1
        return out


# -- block stream and sharding ------------------------------------------------

def _check_nk(n: int, k: int) -> None:
    if not 4 <= k <= n - 3:
        raise ValueError(f"search needs 4 <= k <= n-3, got n={n}, k={k}")


def shard_plan(n: int, k: int, cfg: SearchConfig) -> list[ShardUnit]:
    """Work units covering the block stream for (n, k).

    ``index`` mode: one unit per shard over the whole edge window, block
    ``i`` of the stream going to shard ``i mod shards``.  ``edges`` mode: one
    unit per edge count, edge count ``m`` going to shard ``(m - lo) mod shards``.
    """
    _check_nk(n, k)
    lo, hi = cfg.block_config(n).edge_range()
    if cfg.shard_mode == "index":
        return [ShardUnit((lo, hi), i) for i in range(cfg.shards)]
    return [ShardUnit((m, m), (m - lo) % cfg.shards) for m in range(lo, hi + 1)]


def _unit_blocks(n: int, cfg: SearchConfig, unit: ShardUnit) -> list[str]:
    forms = filtered_blocks(cfg.block_config(n))
    lo, hi = unit.edge_range
    out = []
    for i, f in enumerate(forms):
        if cfg.shard_mode == "index" and i % cfg.shards != unit.shard_index:
            continue
        g = from_graph6(f)
        if lo <= g.num_edges() <= hi:
            out.append(f)
    return out


def _my_blocks(n: int, k: int, cfg: SearchConfig) -> list[str]:
    mine = [u for u in shard_plan(n, k, cfg) if u.shard_index == cfg.shard_index]
    out = []
    for u in mine:
        out.extend(_unit_blocks(n, cfg, u))
    return out


# -- per-block work -----------------------------------------------------------

@lru_cache(maxsize=1 << 17)
def _ktable(form: str, budget: int) -> tuple[tuple[int, int], ...]:
    """(T, k_T) for the nonempty cut sets of a block; reused across k."""
    return tuple(cut_sets_with_k(from_graph6(form), budget))


def _attach(e: CapacityError, g: Graph) -> CapacityError:
    err = CapacityError(f"{e} [graph6 {to_graph6(g)}]")
    err.graph = g
    return err


def _process_block(args) -> tuple[SearchStats, list[tuple[str, str, int]]]:
    form, n, k, cfg = args
    st = SearchStats(n, k)
    st.blocks_seen = 1
    b = from_graph6(form)
    adj = b.adj
    m = b.num_edges()
    elo, ehi = edge_bounds(n, k)
    if cfg.on("edge-bounds") and not elo <= m <= ehi:
        st.rejections["edge-bounds"] += 1
        return st, []
    st.blocks_in_edge_window = 1
    try:
        ktable = _ktable(form, cfg.budget) if cfg.on("line5") or cfg.on("line10-kT") else ()
        if cfg.on("line5") and any(not 1 <= kt <= k for _, kt in ktable):
            st.rejections["line5"] += 1
            return st, []
        if not cfg.on("line10-kT"):
            ktable = ()
    except CapacityError as e:
        raise _attach(e, b) from None
    st.blocks_passing_line5 = 1
    if cfg.on("line6"):
        pool = [v for v in range(n) if adj[v].bit_count() <= (n + k) // 2 - 2]
    else:
        pool = list(range(n))
    seen: set[str] = set()
    out = []
    for combo in combinations(pool, k):
        s = 0
        for v in combo:
            s |= 1 << v
        st.candidates_enumerated += 1
        ok, reason = candidate_passes(b, s, k, ktable, cfg.disabled)
        if not ok:
            st.rejections[REASONS[reason]] += 1
            continue
        st.candidates_surviving_lines8_12 += 1
        bar = canonical_form(add_whiskers(b, s).full)
        if bar in seen:
            continue
        seen.add(bar)
        out.append((bar, form, s))
    if cfg.on("line6"):
        st.rejections["line6"] += _comb(n, k) - _comb(len(pool), k)
    return st, out


def _comb(a: int, b: int) -> int:
    from math import comb
    return comb(a, b) if 0 <= b <= a else 0


# -- driver -------------------------------------------------------------------

def _map_blocks(tasks: list, jobs: int):
    if jobs == 1 or len(tasks) < 2:
        return map(_process_block, tasks)
    ctx = multiprocessing.get_context("fork")
    pool = ctx.Pool(jobs)
    try:
        # imap keeps task order, so the reduction is deterministic
        return list(pool.imap(_process_block, tasks, chunksize=max(1, len(tasks) // (jobs * 16))))
    finally:
        pool.close()
        pool.join()


def run_search(n: int, k: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Run the pipeline for blocks on ``n`` vertices with ``k`` whiskers.

    Verdict is True iff every accessible candidate has a good cut vertex.
    Unmixed-but-not-accessible candidates are kept in ``inspected``.
    """
    cfg = cfg or SearchConfig()
    _check_nk(n, k)
    blocks = _my_blocks(n, k, cfg)
    stats = SearchStats(n, k)
    store = DedupStore()
    cands = []
    for st, found in _map_blocks([(f, n, k, cfg) for f in blocks], cfg.jobs):
        stats.merge(st)
        for bar, form, s in found:
            if store.insert(bar):
                cands.append((bar, form, s))
            else:
                log.warning("isomorphic candidates from different blocks: %s", bar)
    stats.distinct_candidates = len(cands)
    cands.sort()
    survivors, inspected = [], []
    for bar, form, s in cands:
        bw = add_whiskers(from_graph6(form), s)
        g = bw.full
        try:
            scan = unmixed_cut_set_scan(g, cfg.budget)
            if not scan.unmixed:
                continue
            stats.unmixed_candidates += 1
            accessible = not stuck_cut_sets(scan.family)
            report = implication_report(g, budget=cfg.budget) if cfg.reports else None
            if not accessible:
                inspected.append(Survivor(bw, bar, _good_direct(g, cfg.budget), report))
                continue
            stats.accessible_candidates += 1
            good = _good_direct(g, cfg.budget)
        except CapacityError as e:
            raise _attach(e, g) from None
        if not good:
            stats.survivors_without_good_cut_vertex += 1
            log.warning("candidate without a good cut vertex: %s", bar)
        survivors.append(Survivor(bw, bar, good, report))
    return SearchResult(stats.verdict, stats, survivors, inspected)


# -- definition-level reference pipeline --------------------------------------

def _definition_properties(g: Graph) -> tuple[bool, bool, int]:
    """(unmixed, accessible, good cut vertices) from brute-force cut sets.

    Good cut vertices are only computed for accessible graphs (0 otherwise).
    """
    fam = enumerate_cut_sets_bruteforce(g)
    c0 = _count(g.adj, g.full)
    unmixed = all(r.components == r.size + c0 for r in fam)
    accessible = unmixed and not stuck_cut_sets(fam)
    good = 0
    if not accessible:
        return unmixed, accessible, good
    for v in bits(_cut_vertices(g.adj, g.full)):
        sub, _ = g.delete(1 << v)
        f = enumerate_cut_sets_bruteforce(sub)
        c = _count(sub.adj, sub.full)
        if all(r.components == r.size + c for r in f):
            good |= 1 << v
    return unmixed, accessible, good


@dataclass
class UnfilteredResult:
    verdict: bool
    distinct: int
    unmixed: list
    accessible: list
    without_good: list


def run_unfiltered(n: int, k: int) -> UnfilteredResult:
    """Every k-subset of every block on n vertices, tested from the definitions."""
    cfg = BlockFilterConfig.unfiltered(n)
    seen: set[str] = set()
    unmixed, accessible, bad = [], [], []
    for form in filtered_blocks(cfg):
        b = from_graph6(form)
        for combo in combinations(range(n), k):
            s = 0
            for v in combo:
                s |= 1 << v
            g = add_whiskers(b, s).full
            bar = canonical_form(g)
            if bar in seen:
                continue
            seen.add(bar)
            u, a, good = _definition_properties(g)
            if u:
                unmixed.append(bar)
            if a:
                accessible.append(bar)
                if not good:
                    bad.append(bar)
    return UnfilteredResult(not bad, len(seen), sorted(unmixed), sorted(accessible), sorted(bad))
