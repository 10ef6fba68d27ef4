"""Cut sets of small graphs.

A set ``S`` is a cut set when it is empty or when every ``i`` in ``S`` merges
at least two components of ``G - S`` when added back, i.e.
``c(S) > c(S - {i})``.  Cut sets never contain a free vertex (a free vertex
touches at most one component of the rest), so every sweep below runs over
subsets of the non-free vertices only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .graph import CapacityError, Graph, _count, bits, is_clique

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class CutSetRecord:
    mask: int
    components: int
    k_value: int | None = None

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def vertices(self) -> list[int]:
        return list(bits(self.mask))


class CutSetFamily:
    """The collection C(G), sorted by (cardinality, mask)."""

    def __init__(self, records):
        self.records = sorted(records, key=lambda r: (r.mask.bit_count(), r.mask))
        self._by_mask = {r.mask: r for r in self.records}
        if len(self._by_mask) != len(self.records):
            raise ValueError("duplicate cut sets")

    def __iter__(self) -> Iterator[CutSetRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, mask: int) -> bool:
        return mask in self._by_mask

    def __getitem__(self, mask: int) -> CutSetRecord:
        return self._by_mask[mask]

    def masks(self) -> list[int]:
        return [r.mask for r in self.records]

    def __repr__(self) -> str:
        return f"CutSetFamily({[sorted(v + 1 for v in r.vertices()) for r in self.records]})"


def is_cut_set(g: Graph, s: int) -> bool:
    if s == 0:
        return True
    alive = g.full & ~s
    c = _count(g.adj, alive)
    for i in bits(s):
        if _count(g.adj, alive | (1 << i)) >= c:
            return False
    return True


def _non_free(g: Graph) -> list[int]:
    return [v for v in range(g.n) if not is_clique(g.adj, g.adj[v])]


def _sweep(g: Graph, budget: int) -> Iterator[tuple[int, int, bool]]:
    """Yield ``(S, c(S), is_cut_set)`` for every subset of non-free vertices,
    in increasing cardinality and increasing mask order within a cardinality."""
    pool = _non_free(g)
    if len(pool) > 62 or (1 << len(pool)) > budget:
        raise CapacityError(
            f"cut-set sweep over {len(pool)} non-free vertices exceeds budget {budget}")
    adj = g.adj
    full = g.full
    counts = {0: _count(adj, full)}
    yield 0, counts[0], True
    for size in range(1, len(pool) + 1):
        layer = []
        for combo in combinations(pool, size):
            s = 0
            for v in combo:
                s |= 1 << v
            layer.append(s)
        layer.sort()
        for s in layer:
            c = _count(adj, full & ~s)
            counts[s] = c
            cut = True
            for i in bits(s):
                if counts[s & ~(1 << i)] >= c:
                    cut = False
                    break
            yield s, c, cut


def enumerate_cut_sets(g: Graph, budget: int = DEFAULT_BUDGET) -> CutSetFamily:
    return CutSetFamily(CutSetRecord(s, c) for s, c, cut in _sweep(g, budget) if cut)


def enumerate_cut_sets_bruteforce(g: Graph) -> CutSetFamily:
    """Definition-level enumeration over all 2^n subsets (test oracle)."""
    out = []
    for s in range(1 << g.n):
        if is_cut_set(g, s):
            out.append(CutSetRecord(s, _count(g.adj, g.full & ~s)))
    return CutSetFamily(out)


def expand_cut_sets(g: Graph) -> CutSetFamily:
    """Grow cut sets from the empty set by adding cut vertices of ``G - S``.

    Complete only for connected graphs whose binomial edge ideal is unmixed.
    """
    from .graph import _cut_vertices

    full = g.full
    c0 = _count(g.adj, full)
    found = {0: c0}
    layer = [0]
    while layer:
        nxt = set()
        for s in layer:
            for v in bits(_cut_vertices(g.adj, full & ~s)):
                t = s | (1 << v)
                if t not in found:
                    nxt.add(t)
        for t in nxt:
            found[t] = _count(g.adj, full & ~t)
        layer = sorted(nxt)
    return CutSetFamily(CutSetRecord(s, c) for s, c in found.items())


@dataclass
class UnmixedScan:
    unmixed: bool
    components: int
    witness: int | None = None
    witness_components: int | None = None
    family: CutSetFamily | None = None

    def reason(self) -> str | None:
        if self.unmixed:
            return None
        s = self.witness
        return (f"c(S)={self.witness_components} but |S|+c={s.bit_count() + self.components} "
                f"for S={sorted(v + 1 for v in bits(s))}")


def unmixed_cut_set_scan(g: Graph, budget: int = DEFAULT_BUDGET) -> UnmixedScan:
    """Check c(S) = |S| + c for every cut set, stopping at the first violation.

    For connected graphs any set with c(S) >= |S| + 2 is also reported as soon
    as it is met, cut set or not (unmixed connected graphs have none).
    """
    c0 = _count(g.adj, g.full)
    connected = c0 == 1
    records = []
    for s, c, cut in _sweep(g, budget):
        size = s.bit_count()
        if connected and c >= size + 2:
            return UnmixedScan(False, c0, s, c)
        if cut:
            if c != size + c0:
                return UnmixedScan(False, c0, s, c)
            records.append(CutSetRecord(s, c))
    return UnmixedScan(True, c0, family=CutSetFamily(records))


def cut_sets_with_k(b: Graph, budget: int = DEFAULT_BUDGET) -> list[tuple[int, int]]:
    """Nonempty cut sets ``T`` of a block with ``k_T = |T| + 1 - c(T)``."""
    return [(r.mask, r.mask.bit_count() + 1 - r.components)
            for r in enumerate_cut_sets(b, budget) if r.mask]
