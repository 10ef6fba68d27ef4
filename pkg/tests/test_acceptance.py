"""Acceptance criteria, one test and one summary line each.

All counts are compared exactly (tolerance 0).  Row n=10 of the block table
runs only when BEICHECK_STRETCH=1 is set; it is far outside pure-Python
desk scale.
"""

import json
import os
import random
import time

import pytest

from beicheck.blockgen import BlockFilterConfig, filtered_blocks, generate_connected
from beicheck.canon import canonical_form
from beicheck.cli import load_fixture, main
from beicheck.cutsets import enumerate_cut_sets, enumerate_cut_sets_bruteforce, is_cut_set
from beicheck.graph import count_components
from beicheck.properties import (
    good_cut_vertices,
    is_accessible,
    is_strongly_unmixed,
    is_unmixed,
)
from beicheck.search import FILTERS, SearchConfig, run_search, run_unfiltered

from conftest import m1, one_based, random_graph, record_criterion

TOLERANCE = 0  # every count below is an exact integer match

# block table rows: filtered blocks, then (unmixed, accessible) per k = 4, 5, ...
TABLE = {
    7: (79, [(0, None)]),
    8: (1716, [(0, None), (0, None)]),
    9: (61408, [(0, 0), (2, 2), (2, 1)]),
    10: (4054291, [(0, 0), (6, 2), (9, 5), (25, 24)]),
}


def _row(n):
    start = time.time()
    blocks = len(filtered_blocks(BlockFilterConfig.table1(n)))
    expected_blocks, per_k = TABLE[n]
    got, verdicts = [], []
    for i, _ in enumerate(per_k):
        r = run_search(n, 4 + i, SearchConfig(reports=False))
        got.append((r.stats.unmixed_candidates, r.stats.accessible_candidates))
        verdicts.append(r.verdict)
        assert r.stats.blocks_seen == blocks
    ok_blocks = abs(blocks - expected_blocks) <= TOLERANCE
    ok_counts = all(abs(g[0] - e[0]) <= TOLERANCE and (e[1] is None or abs(g[1] - e[1]) <= TOLERANCE)
                    for g, e in zip(got, per_k))
    detail = (f"n={n} blocks {blocks} (expected {expected_blocks}); "
              f"(unmixed, accessible) per k from 4: {got} (expected {per_k}); "
              f"verdicts {verdicts}; {time.time() - start:.0f}s")
    return ok_blocks and ok_counts and all(verdicts), detail


def test_criterion_1_row7():
    ok, detail = _row(7)
    record_criterion(1, ok, detail)
    assert ok


def test_criterion_2_row8():
    ok, detail = _row(8)
    record_criterion(2, ok, detail)
    assert ok


def test_criterion_3_row9():
    ok, detail = _row(9)
    record_criterion(3, ok, detail)
    assert ok, detail


@pytest.mark.skipif(os.environ.get("BEICHECK_STRETCH") != "1",
                    reason="n=10 row is opt-in (BEICHECK_STRETCH=1)")
def test_criterion_4_row10_stretch():
    ok, detail = _row(10)
    record_criterion(4, ok, detail)
    assert ok, detail


def test_criterion_4_marker():
    if os.environ.get("BEICHECK_STRETCH") != "1":
        record_criterion(4, None, "n=10 row not run (set BEICHECK_STRETCH=1); not gating")


def _witness_is_cut_set(g, v, witness):
    sub, old = g.delete(m1(v))
    new_of = {w: i for i, w in enumerate(old)}
    s = sum(1 << new_of[w - 1] for w in witness)
    _, comps = count_components(g, m1(v))
    contains = any(g.adj[v - 1] & comp & ~m1(*witness) == 0 for comp in comps)
    return is_cut_set(sub, s), contains


def test_criterion_5_fixtures():
    notes, ok = [], True

    g = load_fixture("fig2")
    acc, stuck = is_accessible(g)
    subsets_rejected = all(not is_cut_set(g, stuck & ~(1 << v)) for v in range(g.n) if stuck >> v & 1)
    c = is_unmixed(g)[0] and not acc and one_based(stuck) == [3, 4, 6, 7] and subsets_rejected
    notes.append(f"fig2 {'ok' if c else 'bad'}")
    ok &= c

    g = load_fixture("fig1")
    good = one_based(good_cut_vertices(g))
    w = [_witness_is_cut_set(g, 4, (1, 3, 5, 8)), _witness_is_cut_set(g, 8, (1, 4, 7, 9))]
    c = good == [1]
    notes.append(f"fig1 good {good}")
    ok &= c
    c = all(cut and contains for cut, contains in w)
    notes.append(f"fig1 witness sets (cut set, contains neighbourhood) {w}")
    ok &= c

    g = load_fixture("fig3")
    c = is_accessible(g)[0] and good_cut_vertices(g) & 1 and is_strongly_unmixed(g)[0]
    notes.append(f"fig3 {'ok' if c else 'bad'}")
    ok &= bool(c)

    g = load_fixture("fig4")
    u, wit = is_unmixed(g)
    acc = is_accessible(g)[0]
    c = u and not acc
    notes.append(f"fig4 unmixed={u} (witness {one_based(wit or 0)}) accessible={acc}")
    ok &= c

    record_criterion(5, ok, "; ".join(notes))
    assert ok, notes


def test_criterion_6_verify(capsys):
    start = time.time()
    code = main(["verify", "--max-vertices", "8"])
    d = json.loads(capsys.readouterr().out)
    ok = code == 0 and d["counterexample_candidates"] == [] and d["totals"]["graphs"] == 12113
    record_criterion(6, ok, f"connected graphs <= 8 vertices: {d['totals']}, "
                            f"counterexamples {len(d['counterexample_candidates'])}; "
                            f"{time.time() - start:.0f}s")
    assert ok


def test_criterion_7_oracles():
    rng = random.Random(20240607)
    notes = []

    # (a) cut-set enumeration against the brute-force subset filter
    bad_a = 0
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        fast = sorted((r.mask, r.components) for r in enumerate_cut_sets(g))
        slow = sorted((r.mask, r.components) for r in enumerate_cut_sets_bruteforce(g))
        bad_a += fast != slow
    notes.append(f"(a) {bad_a} mismatches")

    # (b) filtered pipeline against the filter-free, definition-level one on
    # every block with 7 vertices (the only n <= 7 with a nontrivial k)
    filtered = run_search(7, 4)
    nofilter = run_search(7, 4, SearchConfig(disabled=frozenset(FILTERS), reports=False))
    ref = run_unfiltered(7, 4)
    pipeline_acc = sorted(s.form for s in nofilter.survivors)
    pipeline_bad = sorted(s.form for s in nofilter.survivors if s.counterexample)
    filt_bad = sorted(s.form for s in filtered.survivors if s.counterexample)
    filt_acc = {s.form for s in filtered.survivors}
    bad_b = (pipeline_acc != sorted(ref.accessible)) + (pipeline_bad != sorted(ref.without_good)) \
        + (filt_bad != sorted(ref.without_good)) + (not filt_acc <= set(ref.accessible)) \
        + (filtered.verdict != ref.verdict)
    notes.append(f"(b) {bad_b} mismatches ({len(ref.accessible)} accessible, "
                 f"{len(ref.without_good)} without good cut vertex)")

    # (c) both good-cut-vertex methods on unmixed connected graphs
    bad_c = tested = 0
    graphs = [g for n in range(1, 8) for g in generate_connected(n)]
    graphs += [random_graph(rng, rng.randint(8, 11), rng.uniform(0.25, 0.7)) for _ in range(300)]
    for g in graphs:
        if not g.is_connected() or not is_unmixed(g)[0]:
            continue
        tested += 1
        bad_c += good_cut_vertices(g, "direct") != good_cut_vertices(g, "criterion")
    notes.append(f"(c) {bad_c} mismatches on {tested} graphs")

    # (d) canonical form is invariant under relabelling
    bad_d = 0
    for _ in range(1000):
        g = random_graph(rng, rng.randint(1, 12), rng.random())
        perm = list(range(g.n))
        rng.shuffle(perm)
        bad_d += canonical_form(g) != canonical_form(g.relabel(perm))
    notes.append(f"(d) {bad_d} mismatches")

    ok = bad_a == bad_b == bad_c == bad_d == 0
    record_criterion(7, ok, "; ".join(notes))
    assert ok, notes


def test_criterion_8_determinism(tmp_path, capsys):
    outs = []
    for jobs in (1, 8):
        surv = tmp_path / f"surv{jobs}.g6"
        code = main(["search", "--n", "9", "--k", "5", "--jobs", str(jobs), "--survivors-out", str(surv)])
        outs.append((code, capsys.readouterr().out, sorted(surv.read_text().split())))
    (c1, s1, v1), (c8, s8, v8) = outs
    ok = c1 == c8 == 0 and s1 == s8 and v1 == v8
    record_criterion(8, ok, f"stats byte-identical={s1 == s8}, survivors identical={v1 == v8} ({len(v1)})")
    assert ok
