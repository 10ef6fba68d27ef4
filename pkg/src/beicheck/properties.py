"""Unmixedness, accessibility, good cut vertices and strong unmixedness.

These are the combinatorially decidable ends of the implication chain

    strongly unmixed => Cohen-Macaulay => (S2) => accessible

(accessibility includes unmixedness).  Witnesses are kept in the labels of
the input graph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .canon import canonical_form
from .cutsets import DEFAULT_BUDGET, CutSetFamily, enumerate_cut_sets, unmixed_cut_set_scan
from .graph import Graph, bits, components_complete, count_components, cut_vertices, mask_of, saturate

log = logging.getLogger(__name__)

SCHEMA = 1
DEFAULT_MEMO_LIMIT = 10 ** 6


class RecursionBudgetExceeded(RuntimeError):
    pass


def _one_based(mask: int) -> list[int]:
    return [v + 1 for v in bits(mask)]


def is_unmixed(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[bool, int | None]:
    scan = unmixed_cut_set_scan(g, budget)
    return scan.unmixed, scan.witness


def stuck_cut_sets(family: CutSetFamily) -> list[int]:
    """Nonempty cut sets with no element whose removal leaves a cut set."""
    out = []
    for r in family:
        s = r.mask
        if s and not any((s & ~(1 << i)) in family for i in bits(s)):
            out.append(s)
    return out


def is_accessible(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[bool, int | None]:
    """Returns (accessible, stuck set).  A non-unmixed graph is not accessible
    and has no stuck-set witness."""
    scan = unmixed_cut_set_scan(g, budget)
    if not scan.unmixed:
        return False, None
    stuck = stuck_cut_sets(scan.family)
    if stuck:
        return False, stuck[0]
    return True, None


def _good_direct(g: Graph, budget: int) -> int:
    good = 0
    for v in bits(cut_vertices(g)):
        sub, _ = g.delete(1 << v)
        if unmixed_cut_set_scan(sub, budget).unmixed:
            good |= 1 << v
    return good


def _good_by_neighbourhoods(g: Graph, budget: int) -> int:
    """Neighbourhood-containment criterion for connected unmixed graphs.

    ``v`` is good iff no cut set of ``G - v`` contains all the neighbours of
    ``v`` inside one of the two components of ``G - v``.
    """
    good = 0
    for v in bits(cut_vertices(g)):
        c, comps = count_components(g, 1 << v)
        if c != 2:
            log.warning("cut vertex %d of an unmixed graph leaves %d components", v + 1, c)
            raise AssertionError("unmixed connected graph with a cut vertex splitting into "
                                 f"{c} components")
        sub, old = g.delete(1 << v)
        new_of = {w: i for i, w in enumerate(old)}
        nbs = [mask_of(new_of[w] for w in bits(g.adj[v] & comp)) for comp in comps]
        fam = enumerate_cut_sets(sub, budget)
        if not any(r.mask & nb == nb for r in fam for nb in nbs):
            good |= 1 << v
    return good


def good_cut_vertices(g: Graph, method: str = "direct", budget: int = DEFAULT_BUDGET) -> int:
    """Cut vertices ``v`` with ``G - v`` unmixed, as a vertex mask.

    ``method="criterion"`` uses the neighbourhood criterion, valid for
    connected graphs that are themselves unmixed.
    """
    if method == "direct":
        return _good_direct(g, budget)
    if method == "criterion":
        if not g.is_connected() or not unmixed_cut_set_scan(g, budget).unmixed:
            raise ValueError("the criterion needs a connected unmixed graph")
        return _good_by_neighbourhoods(g, budget)
    raise ValueError(f"unknown method {method!r}")


class StrongUnmixedSolver:
    """Memoised strong-unmixedness recursion.

    Uses the two-call recursion: ``G`` is strongly unmixed iff its components
    are complete, or it is unmixed and some cut vertex ``v`` has both ``G - v``
    and ``G_v - v`` strongly unmixed.  The memo is keyed by canonical form.
    """

    def __init__(self, memo: dict | None = None, limit: int = DEFAULT_MEMO_LIMIT,
                 budget: int = DEFAULT_BUDGET):
        self.memo = {} if memo is None else memo
        self.limit = limit
        self.budget = budget

    def _order(self, g: Graph) -> list[int]:
        good = _good_direct(g, self.budget)
        rest = cut_vertices(g) & ~good
        return list(bits(good)) + list(bits(rest))

    def decide(self, g: Graph) -> bool:
        if components_complete(g):
            return True
        key = canonical_form(g)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = False
        if unmixed_cut_set_scan(g, self.budget).unmixed:
            for v in self._order(g):
                if self._branch(g, v):
                    result = True
                    break
        if len(self.memo) >= self.limit:
            raise RecursionBudgetExceeded(f"memo reached {self.limit} entries")
        self.memo[key] = result
        return result

    def _branch(self, g: Graph, v: int) -> bool:
        minus, _ = g.delete(1 << v)
        if not self.decide(minus):
            return False
        sat, _ = saturate(g, v).delete(1 << v)
        return self.decide(sat)

    def trace(self, g: Graph, labels: list[int] | None = None) -> list[int]:
        """Chosen cut vertices in preorder, in the labels of the top graph."""
        labels = list(range(g.n)) if labels is None else labels
        if components_complete(g):
            return []
        for v in self._order(g):
            if self._branch(g, v):
                minus, old = g.delete(1 << v)
                sat, _ = saturate(g, v).delete(1 << v)
                sub_labels = [labels[w] for w in old]
                return [labels[v]] + self.trace(minus, sub_labels) + self.trace(sat, sub_labels)
        raise ValueError("graph is not strongly unmixed")


def is_strongly_unmixed(g: Graph, memo: dict | None = None,
                        limit: int = DEFAULT_MEMO_LIMIT) -> tuple[bool, list[int] | None]:
    solver = StrongUnmixedSolver(memo, limit)
    if not solver.decide(g):
        return False, None
    return True, solver.trace(g)


def strongly_unmixed_by_definition(g: Graph, v: int | None = None, _memo=None) -> bool:
    """Three-condition recursion (G - v, G_v and G_v - v); slow reference.

    With ``v`` given only that cut vertex is tried at the top level.
    """
    memo = {} if _memo is None else _memo
    if components_complete(g):
        return True
    key = canonical_form(g)
    if v is None and key in memo:
        return memo[key]
    result = False
    if unmixed_cut_set_scan(g).unmixed:
        choices = [v] if v is not None else list(bits(cut_vertices(g)))
        for w in choices:
            gw = saturate(g, w)
            minus, _ = g.delete(1 << w)
            sat_minus, _ = gw.delete(1 << w)
            if (strongly_unmixed_by_definition(minus, _memo=memo)
                    and strongly_unmixed_by_definition(gw, _memo=memo)
                    and strongly_unmixed_by_definition(sat_minus, _memo=memo)):
                result = True
                break
    if v is None:
        memo[key] = result
    return result


@dataclass
class PropertyReport:
    n: int
    unmixed: bool | None = None
    unmixed_witness: int | None = None
    accessible: bool | None = None
    stuck_set: int | None = None
    good_cut_vertices: int | None = None
    strongly_unmixed: bool | None = None
    strong_trace: list[int] | None = None
    counterexample_candidate: bool = False
    notes: list[str] = field(default_factory=list)

    def check_ladder(self) -> None:
        if self.accessible and self.unmixed is False:
            raise AssertionError("accessible graph reported as not unmixed")
        if self.strongly_unmixed and self.accessible is False:
            raise AssertionError("strongly unmixed graph reported as not accessible")

    def to_json(self) -> dict:
        out: dict = {"schema": SCHEMA, "vertices": self.n}
        if self.unmixed is not None:
            out["unmixed"] = {"value": self.unmixed,
                              "witness": None if self.unmixed_witness is None
                              else _one_based(self.unmixed_witness)}
        if self.accessible is not None:
            out["accessible"] = {"value": self.accessible,
                                 "stuck_set": None if self.stuck_set is None
                                 else _one_based(self.stuck_set)}
        if self.good_cut_vertices is not None:
            out["good_cut_vertices"] = _one_based(self.good_cut_vertices)
        if self.strongly_unmixed is not None:
            out["strongly_unmixed"] = {"value": self.strongly_unmixed,
                                       "trace": None if self.strong_trace is None
                                       else [v + 1 for v in self.strong_trace]}
        out["counterexample_candidate"] = self.counterexample_candidate
        if self.notes:
            out["notes"] = list(self.notes)
        return out


ALL_PROPS = ("unmixed", "accessible", "good-cut-vertices", "strongly-unmixed")


def implication_report(g: Graph, props=ALL_PROPS, memo: dict | None = None,
                       budget: int = DEFAULT_BUDGET) -> PropertyReport:
    props = set(ALL_PROPS if "all" in props else props)
    rep = PropertyReport(g.n)
    scan = unmixed_cut_set_scan(g, budget)
    if "unmixed" in props or "accessible" in props:
        rep.unmixed = scan.unmixed
        rep.unmixed_witness = scan.witness
    if "accessible" in props:
        if scan.unmixed:
            stuck = stuck_cut_sets(scan.family)
            rep.accessible = not stuck
            rep.stuck_set = stuck[0] if stuck else None
        else:
            rep.accessible = False
    if "good-cut-vertices" in props:
        rep.good_cut_vertices = _good_direct(g, budget)
    if "strongly-unmixed" in props:
        rep.strongly_unmixed, rep.strong_trace = is_strongly_unmixed(g, memo)
    if rep.strongly_unmixed and rep.unmixed is False:
        raise AssertionError("strongly unmixed graph reported as not unmixed")
    rep.check_ladder()
    if rep.accessible and rep.strongly_unmixed is False:
        rep.counterexample_candidate = True
        rep.notes.append("CONJECTURE COUNTEREXAMPLE CANDIDATE: accessible but not strongly unmixed")
    return rep
