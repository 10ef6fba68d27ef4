"""Command-line frontend.

Exit codes: 0 verified / true, 2 counterexample candidate, 1 operational error.
Vertex numbers in all output are 1-based.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import platform
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__
from .blockgen import BlockFilterConfig, generate_blocks, generate_connected, ingest_graph6
from .canon import canonical_form
from .cutsets import unmixed_cut_set_scan
from .graph import CapacityError, Graph, GraphError, bits, from_edge_list, from_graph6, parse_graph, to_edge_list, to_graph6
from .properties import ALL_PROPS, SCHEMA, StrongUnmixedSolver, implication_report, stuck_cut_sets
from .search import FILTERS, SearchConfig, SearchStats, dismissal_screen, dispatch_reason, run_search

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2

FIXTURES = ("fig1", "fig2", "fig3", "fig4")

# stated properties of the shipped example graphs (1-based vertex sets)
FIXTURE_CLAIMS = {
    "fig1": {"unmixed": True, "good_cut_vertices": [1]},
    "fig2": {"unmixed": True, "accessible": False, "stuck_set": [3, 4, 6, 7]},
    "fig3": {"accessible": True, "good_contains": 1, "strongly_unmixed": True},
    "fig4": {"unmixed": True, "accessible": False},
}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _err(msg: str) -> None:
    print(f"beicheck: error: {msg}", file=sys.stderr)


class _Inputs:
    """Reads inputs once and remembers their sha256 for the manifest."""

    def __init__(self):
        self.hashes: dict[str, str] = {}

    def read(self, path: str) -> str:
        if path == "-":
            text = sys.stdin.read()
        else:
            text = Path(path).read_text()
        self.hashes[path] = hashlib.sha256(text.encode()).hexdigest()
        return text


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise GraphError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files("beicheck.fixtures").joinpath(f"{name}.edges").read_text()


def load_fixture(name: str) -> Graph:
    return from_edge_list(fixture_text(name))


def _manifest_path(args) -> Path | None:
    if getattr(args, "no_manifest", False):
        return None
    # only explicit paths: concurrent runs must not share an implicit file
    p = args.manifest or os.environ.get("BEICHECK_MANIFEST")
    return Path(p) if p else None


def _write_manifest(args, inputs: _Inputs, start: float, stats, verdict, code: int) -> None:
    path = _manifest_path(args)
    if path is None:
        return
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest", "no_manifest")}
    rec = {
        "schema": SCHEMA,
        "command": args.command,
        "parameters": params,
        "start": time.strftime("%Y-%m-%dT%H:%M:%S%z", time.localtime(start)),
        "end": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "versions": {"beicheck": __version__, "python": platform.python_version()},
        "inputs": inputs.hashes,
        "stats": stats,
        "verdict": verdict,
        "exit_code": code,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a") as fh:
            fh.write(json.dumps(rec, default=str) + "\n")
    except OSError as e:
        _err(f"could not append manifest {path}: {e}")


# -- check ---------------------------------------------------------------------

def cmd_check(args, inputs: _Inputs):
    if args.fixture:
        g = load_fixture(args.fixture)
    else:
        text = inputs.read(args.input)
        if args.format == "graph6":
            lines = [ln for ln in text.splitlines() if ln.strip()]
            if len(lines) != 1:
                raise GraphError(f"expected one graph6 line, got {len(lines)}")
            g = from_graph6(lines[0].strip())
        elif args.format == "edges":
            g = from_edge_list(text)
        else:
            g = parse_graph(text)
    props = args.props or ["all"]
    rep = implication_report(g, props)
    out = rep.to_json()
    sys.stdout.write(_dump(out))
    code = EXIT_COUNTEREXAMPLE if rep.counterexample_candidate else EXIT_OK
    return code, out, not rep.counterexample_candidate


# -- search ----------------------------------------------------------------------

def _survivor_json(s) -> dict:
    bw = s.bw
    d = s.report.to_json() if s.report is not None else {"schema": SCHEMA, "vertices": bw.full.n}
    d["graph6"] = to_graph6(bw.full)
    d["canonical"] = s.form
    d["block_vertices"] = bw.n
    d["whiskered"] = [v + 1 for v in bits(bw.whiskered)]
    d["good_cut_vertices"] = [v + 1 for v in bits(s.good)]
    d["dismissal"] = dismissal_screen(bw)
    d["edge_list"] = to_edge_list(bw.full)
    return d


def _config_json(cfg: SearchConfig) -> dict:
    # jobs is left out on purpose: output must not depend on it
    return {
        "disabled": sorted(cfg.disabled),
        "min_edges": cfg.min_edges,
        "max_edges": cfg.max_edges,
        "shards": cfg.shards,
        "shard_index": cfg.shard_index,
        "shard_mode": cfg.shard_mode,
    }


def cmd_search(args, inputs: _Inputs):
    reason = dispatch_reason(args.n, args.k)
    if reason is not None:
        out = {"schema": SCHEMA, "n": args.n, "k": args.k, "verdict": True, "reason": reason}
        sys.stdout.write(_dump(out))
        return EXIT_OK, out, True
    disabled = set()
    for name in args.no_filter or []:
        disabled.update(FILTERS if name == "all" else [name])
    jobs = args.jobs or int(os.environ.get("BEICHECK_JOBS", "1"))
    cfg = SearchConfig(disabled=frozenset(disabled), min_edges=args.min_edges, max_edges=args.max_edges,
                       shards=args.shards, shard_index=args.shard_index, shard_mode=args.shard_mode,
                       jobs=jobs, reports=not args.no_reports)
    res = run_search(args.n, args.k, cfg)
    stats = res.stats.to_json()
    stats["config"] = _config_json(cfg)
    text = _dump(stats)
    if args.stats_out:
        Path(args.stats_out).write_text(text)
    sys.stdout.write(text)
    if args.survivors_out:
        p = Path(args.survivors_out)
        p.write_text("".join(s.form + "\n" for s in res.survivors))
        Path(str(p) + ".json").write_text(_dump([_survivor_json(s) for s in res.survivors]))
    if args.inspected_out:
        Path(args.inspected_out).write_text(_dump([_survivor_json(s) for s in res.inspected]))
    for s in res.survivors:
        if s.counterexample:
            print(f"COUNTEREXAMPLE CANDIDATE {s.form}", file=sys.stderr)
    code = EXIT_OK if res.verdict else EXIT_COUNTEREXAMPLE
    return code, stats, res.verdict


def cmd_merge(args, inputs: _Inputs):
    merged = None
    configs = []
    for path in args.stats:
        d = json.loads(inputs.read(path))
        st = SearchStats.from_json(d)
        configs.append(d.get("config", {}))
        if merged is None:
            merged = st
        else:
            merged.merge(st)
    shards = {c.get("shards") for c in configs}
    idx = sorted(c.get("shard_index") for c in configs)
    if len(shards) == 1 and None not in shards and idx != list(range(next(iter(shards)))):
        _err(f"warning: shard indices {idx} do not cover {next(iter(shards))} shards")
    out = merged.to_json()
    text = _dump(out)
    if args.stats_out:
        Path(args.stats_out).write_text(text)
    sys.stdout.write(text)
    if args.survivors:
        forms = set()
        for path in args.survivors:
            forms.update(ln.strip() for ln in inputs.read(path).splitlines() if ln.strip())
        dest = Path(args.survivors_out) if args.survivors_out else None
        body = "".join(f + "\n" for f in sorted(forms))
        if dest:
            dest.write_text(body)
        else:
            sys.stderr.write(body)
    code = EXIT_OK if merged.verdict else EXIT_COUNTEREXAMPLE
    return code, out, merged.verdict


# -- verify ------------------------------------------------------------------------

def _verify_graphs(graphs, solver: StrongUnmixedSolver, tally: dict, bad: list) -> None:
    for g in graphs:
        n = g.n
        row = tally.setdefault(str(n), {"graphs": 0, "unmixed": 0, "accessible": 0, "strongly_unmixed": 0})
        row["graphs"] += 1
        scan = unmixed_cut_set_scan(g)
        if not scan.unmixed:
            continue
        row["unmixed"] += 1
        if stuck_cut_sets(scan.family):
            continue
        row["accessible"] += 1
        if solver.decide(g):
            row["strongly_unmixed"] += 1
        else:
            bad.append(to_graph6(g))


def cmd_verify(args, inputs: _Inputs):
    solver = StrongUnmixedSolver()
    tally: dict = {}
    bad: list[str] = []
    if args.input:
        text = inputs.read(args.input)
        graphs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                graphs.append(from_graph6(line))
            except (GraphError, CapacityError) as e:
                raise GraphError(f"line {lineno}: {e}") from None
        _verify_graphs(graphs, solver, tally, bad)
    else:
        if args.max_vertices > 9:
            raise CapacityError("internal generation for verify supports --max-vertices <= 9; "
                                "pass a graph6 stream with --input for larger graphs")
        for n in range(1, args.max_vertices + 1):
            _verify_graphs(generate_connected(n), solver, tally, bad)
    totals = {key: sum(r[key] for r in tally.values())
              for key in ("graphs", "unmixed", "accessible", "strongly_unmixed")}
    out = {"schema": SCHEMA, "by_vertices": tally, "totals": totals,
           "counterexample_candidates": bad, "verdict": not bad}
    sys.stdout.write(_dump(out))
    return (EXIT_COUNTEREXAMPLE if bad else EXIT_OK), out, not bad


# -- gen-blocks --------------------------------------------------------------------

def cmd_gen_blocks(args, inputs: _Inputs):
    if args.filtered:
        cfg = BlockFilterConfig.table1(args.n, min_edges=args.min_edges, max_edges=args.max_edges)
    else:
        cfg = BlockFilterConfig.unfiltered(args.n, min_edges=args.min_edges, max_edges=args.max_edges)
    ingest = {}
    if args.input:
        stream = ingest_graph6(inputs.read(args.input).splitlines(), cfg, ingest)
    else:
        stream = generate_blocks(args.n, cfg, args.shards, args.shard_index)
    count = 0
    fh = open(args.graph6_out, "w") if args.graph6_out else sys.stdout
    try:
        for g in stream:
            fh.write(canonical_form(g) + "\n")
            count += 1
    finally:
        if fh is not sys.stdout:
            fh.close()
    if args.graph6_out:
        print(f"{count} blocks written to {args.graph6_out}", file=sys.stderr)
    out = {"blocks": count, **ingest}
    return EXIT_OK, out, True


# -- fixtures ----------------------------------------------------------------------

def _check_claims(name: str, g: Graph) -> list[str]:
    claims = FIXTURE_CLAIMS[name]
    rep = implication_report(g, ["all"]).to_json()
    problems = []
    if "unmixed" in claims and rep["unmixed"]["value"] != claims["unmixed"]:
        problems.append(f"unmixed is {rep['unmixed']['value']} (witness {rep['unmixed']['witness']})")
    if "accessible" in claims and rep["accessible"]["value"] != claims["accessible"]:
        problems.append(f"accessible is {rep['accessible']['value']}")
    if "stuck_set" in claims and rep["accessible"]["stuck_set"] != claims["stuck_set"]:
        problems.append(f"stuck set is {rep['accessible']['stuck_set']}")
    if "good_cut_vertices" in claims and rep["good_cut_vertices"] != claims["good_cut_vertices"]:
        problems.append(f"good cut vertices are {rep['good_cut_vertices']}")
    if "good_contains" in claims and claims["good_contains"] not in rep["good_cut_vertices"]:
        problems.append(f"vertex {claims['good_contains']} is not a good cut vertex")
    if "strongly_unmixed" in claims and rep["strongly_unmixed"]["value"] != claims["strongly_unmixed"]:
        problems.append(f"strongly unmixed is {rep['strongly_unmixed']['value']}")
    return problems


def cmd_fixtures(args, inputs: _Inputs):
    if args.action == "list":
        for name in FIXTURES:
            desc = fixture_text(name).splitlines()[0].lstrip("# ")
            print(f"{name}\t{desc}")
        return EXIT_OK, None, True
    if args.action == "show":
        if not args.name:
            raise GraphError("fixtures show needs a fixture name")
        text = fixture_text(args.name)
        sys.stdout.write(to_graph6(from_edge_list(text)) + "\n" if args.format == "graph6" else text)
        return EXIT_OK, None, True
    names = [args.name] if args.name else list(FIXTURES)
    result = {}
    for name in names:
        if name not in FIXTURES:
            raise GraphError(f"unknown fixture {name!r}")
        result[name] = _check_claims(name, load_fixture(name))
    ok = not any(result.values())
    for name, problems in result.items():
        print(f"{name}: {'ok' if not problems else 'MISMATCH: ' + '; '.join(problems)}")
    return (EXIT_OK if ok else EXIT_ERROR), result, ok


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beicheck",
                                description="Combinatorial checks on binomial edge ideals of graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--manifest", help="append a JSON line describing this run to PATH "
                                      "(default $BEICHECK_MANIFEST; none when unset)")
    p.add_argument("--no-manifest", action="store_true", help="do not record this run")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="property report for one graph")
    c.add_argument("input", nargs="?", default="-", help="edge list or graph6 file, '-' for stdin")
    c.add_argument("--fixture", choices=FIXTURES, help="use a shipped example graph instead of input")
    c.add_argument("--format", choices=("auto", "graph6", "edges"), default="auto")
    c.add_argument("--props", nargs="+", choices=ALL_PROPS + ("all",), metavar="PROP",
                   help=f"any of {', '.join(ALL_PROPS)}, all (default all)")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="exhaustive search over blocks with whiskers")
    s.add_argument("--n", type=int, required=True, help="number of block vertices")
    s.add_argument("--k", type=int, required=True, help="number of whiskers")
    s.add_argument("--min-edges", type=int)
    s.add_argument("--max-edges", type=int)
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--shard-index", type=int, default=0)
    s.add_argument("--shard-mode", choices=("index", "edges"), default="index")
    s.add_argument("--jobs", type=int, help="worker processes (default $BEICHECK_JOBS or 1)")
    s.add_argument("--no-filter", action="append", choices=FILTERS + ("all",), metavar="NAME",
                   help=f"disable a pruning filter (repeatable): {', '.join(FILTERS)}, all")
    s.add_argument("--no-reports", action="store_true", help="skip full property reports of survivors")
    s.add_argument("--stats-out", help="also write the stats JSON here")
    s.add_argument("--survivors-out", help="graph6 of accessible candidates; PATH.json gets the reports")
    s.add_argument("--inspected-out", help="JSON reports of unmixed but not accessible candidates")
    s.set_defaults(func=cmd_search)

    m = sub.add_parser("merge", help="combine stats (and survivors) of sharded search runs")
    m.add_argument("stats", nargs="+", help="stats JSON files")
    m.add_argument("--survivors", nargs="*", help="survivor graph6 files")
    m.add_argument("--stats-out")
    m.add_argument("--survivors-out")
    m.set_defaults(func=cmd_merge)

    v = sub.add_parser("verify", help="accessible => strongly unmixed over all small connected graphs")
    v.add_argument("--max-vertices", type=int, default=7)
    v.add_argument("--input", help="graph6 stream to check instead ('-' for stdin)")
    v.set_defaults(func=cmd_verify)

    gb = sub.add_parser("gen-blocks", help="non-isomorphic blocks as graph6")
    gb.add_argument("--n", type=int, required=True)
    gb.add_argument("--filtered", action="store_true",
                    help="no free vertices, no degree <= 2 vertices, edge bound for 4 <= k <= n-1")
    gb.add_argument("--min-edges", type=int)
    gb.add_argument("--max-edges", type=int)
    gb.add_argument("--shards", type=int, default=1)
    gb.add_argument("--shard-index", type=int, default=0)
    gb.add_argument("--input", help="filter and deduplicate a graph6 stream instead of generating")
    gb.add_argument("--graph6-out", help="write here instead of stdout")
    gb.set_defaults(func=cmd_gen_blocks)

    f = sub.add_parser("fixtures", help="shipped example graphs")
    f.add_argument("action", choices=("list", "show", "validate"))
    f.add_argument("name", nargs="?")
    f.add_argument("--format", choices=("edges", "graph6"), default="edges")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors; 2 is reserved for counterexamples
        return EXIT_ERROR if e.code == 2 else (e.code or EXIT_OK)
    inputs = _Inputs()
    start = time.time()
    stats, verdict = None, None
    try:
        code, stats, verdict = args.func(args, inputs)
    except (GraphError, ValueError, OSError) as e:
        _err(str(e))
        code = EXIT_ERROR
    except CapacityError as e:
        _err(f"capacity: {e}")
        code = EXIT_ERROR
    except BrokenPipeError:
        code = EXIT_OK
    _write_manifest(args, inputs, start, stats, verdict, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
