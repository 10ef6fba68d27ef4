import json
import subprocess
import sys

import pytest

from beicheck.cli import main
from beicheck.graph import from_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_fixture(capsys):
    code, out, _ = run(capsys, "check", "--fixture", "fig2")
    d = json.loads(out)
    assert code == 0
    assert d["schema"] == 1
    assert d["unmixed"]["value"] is True and d["accessible"]["value"] is False
    assert d["accessible"]["stuck_set"] == [3, 4, 6, 7]


def test_check_good_cut_vertices(capsys):
    code, out, _ = run(capsys, "check", "--fixture", "fig1", "--props", "good-cut-vertices")
    assert code == 0 and json.loads(out)["good_cut_vertices"] == [1]


def test_check_stdin_graph6():
    p = subprocess.run([sys.executable, "-m", "beicheck", "check", "-"], input="Bw\n",
                       capture_output=True, text=True)
    d = json.loads(p.stdout)
    assert p.returncode == 0
    assert d["unmixed"]["value"] and d["accessible"]["value"] and d["strongly_unmixed"]["value"]


def test_check_file_edges(tmp_path, capsys):
    f = tmp_path / "p3.edges"
    f.write_text("3 2\n1 2\n2 3\n")
    code, out, _ = run(capsys, "check", str(f), "--format", "edges")
    assert code == 0 and json.loads(out)["good_cut_vertices"] == [2]


@pytest.mark.parametrize("text,fmt,msg", [
    ("3 2\n1 2\n2 x\n", "edges", "line 3"),
    ("B!\n", "graph6", "position 1"),
])
def test_check_parse_errors(tmp_path, capsys, text, fmt, msg):
    f = tmp_path / "bad"
    f.write_text(text)
    code, _, err = run(capsys, "check", str(f), "--format", fmt)
    assert code == 1 and msg in err


def test_usage_error_is_operational(capsys):
    assert main(["search", "--n", "7"]) == 1
    assert main(["no-such-command"]) == 1
    capsys.readouterr()


def test_search_trivial_k(capsys):
    code, out, _ = run(capsys, "search", "--n", "9", "--k", "3")
    d = json.loads(out)
    assert code == 0 and d["verdict"] is True and d["reason"].startswith("k <= 3")


def test_search_invalid(capsys):
    code, _, err = run(capsys, "search", "--n", "9", "--k", "12")
    assert code == 1 and "error" in err
    code, _, _ = run(capsys, "search", "--n", "7", "--k", "4", "--shards", "2", "--shard-index", "2")
    assert code == 1


def test_search_n7_outputs(tmp_path, capsys):
    stats = tmp_path / "s.json"
    surv = tmp_path / "surv.g6"
    code, out, _ = run(capsys, "search", "--n", "7", "--k", "4",
                       "--stats-out", str(stats), "--survivors-out", str(surv))
    d = json.loads(out)
    assert code == 0
    assert d["Filtered blocks"] == 79 and d["unmixed_candidates"] == 0 and d["verdict"] is True
    assert stats.read_text() == out
    assert surv.read_text() == ""
    assert json.loads((tmp_path / "surv.g6.json").read_text()) == []


def test_search_byte_identical_across_jobs(capsys):
    _, a, _ = run(capsys, "search", "--n", "8", "--k", "4", "--jobs", "1")
    _, b, _ = run(capsys, "search", "--n", "8", "--k", "4", "--jobs", "3")
    assert a == b


def test_search_no_filter_survivors(tmp_path, capsys):
    surv = tmp_path / "s.g6"
    code, out, _ = run(capsys, "search", "--n", "7", "--k", "4", "--no-filter", "all",
                       "--min-edges", "16", "--survivors-out", str(surv), "--no-reports")
    d = json.loads(out)
    lines = surv.read_text().split()
    assert code == 0 and len(lines) == d["accessible_candidates"] > 0
    reports = json.loads((tmp_path / "s.g6.json").read_text())
    for line, rep in zip(lines, reports):
        g = from_graph6(line)
        assert rep["canonical"] == line and g.n == 11
        assert rep["good_cut_vertices"] and len(rep["whiskered"]) == 4


def test_merge_edge_shards(tmp_path, capsys):
    _, direct, _ = run(capsys, "search", "--n", "7", "--k", "4", "--no-filter", "all",
                       "--min-edges", "15", "--no-reports")
    files, survs = [], []
    for i in range(2):
        f, s = tmp_path / f"s{i}.json", tmp_path / f"v{i}.g6"
        code, _, _ = run(capsys, "search", "--n", "7", "--k", "4", "--no-filter", "all",
                         "--min-edges", "15", "--no-reports", "--shards", "2",
                         "--shard-index", str(i), "--shard-mode", "edges",
                         "--stats-out", str(f), "--survivors-out", str(s))
        assert code == 0
        files.append(str(f))
        survs.append(str(s))
    out_s = tmp_path / "all.g6"
    code, merged, _ = run(capsys, "merge", *files, "--survivors", *survs, "--survivors-out", str(out_s))
    d, m = json.loads(direct), json.loads(merged)
    del d["config"]
    assert code == 0 and m == d
    assert len(out_s.read_text().split()) == d["accessible_candidates"]


def test_merge_warns_on_missing_shard(tmp_path, capsys):
    f = tmp_path / "s0.json"
    run(capsys, "search", "--n", "7", "--k", "4", "--shards", "2", "--stats-out", str(f))
    code, _, err = run(capsys, "merge", str(f))
    assert code == 0 and "do not cover" in err


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-vertices", "5")
    d = json.loads(out)
    assert code == 0 and d["counterexample_candidates"] == []
    assert d["totals"]["graphs"] == 1 + 1 + 2 + 6 + 21
    assert d["totals"]["accessible"] == d["totals"]["strongly_unmixed"]


def test_verify_capacity(capsys):
    code, _, err = run(capsys, "verify", "--max-vertices", "10")
    assert code == 1 and "capacity" in err


def test_verify_whiskered_four_vertex_blocks(tmp_path, capsys):
    # C4, diamond and K4, each with a whisker on every vertex
    from beicheck.graph import Graph, add_whiskers, to_graph6
    blocks = [Graph.cycle(4), Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
              Graph.complete(4)]
    f = tmp_path / "w.g6"
    f.write_text("".join(to_graph6(add_whiskers(b, 0b1111).full) + "\n" for b in blocks))
    code, out, _ = run(capsys, "verify", "--input", str(f))
    d = json.loads(out)
    assert code == 0
    assert d["totals"] == {"graphs": 3, "unmixed": 1, "accessible": 1, "strongly_unmixed": 1}


def test_gen_blocks_counts(capsys):
    for n, count in ((3, 1), (4, 3)):
        code, out, _ = run(capsys, "gen-blocks", "--n", str(n))
        assert code == 0 and len(out.split()) == count
    code, out, _ = run(capsys, "gen-blocks", "--n", "7", "--filtered")
    assert len(out.split()) == 79


def test_gen_blocks_shards_and_file(tmp_path, capsys):
    parts = []
    for i in range(3):
        _, out, _ = run(capsys, "gen-blocks", "--n", "6", "--shards", "3", "--shard-index", str(i))
        parts += out.split()
    _, whole, _ = run(capsys, "gen-blocks", "--n", "6")
    assert sorted(parts) == sorted(whole.split()) and len(parts) == 56
    f = tmp_path / "b.g6"
    _, _, err = run(capsys, "gen-blocks", "--n", "6", "--graph6-out", str(f))
    assert f.read_text().split() == whole.split() and "56 blocks" in err


def test_gen_blocks_ingest(tmp_path, capsys):
    f = tmp_path / "in.g6"
    f.write_text("C]\nCx\nC^\nC~\n")
    code, out, _ = run(capsys, "gen-blocks", "--n", "4", "--input", str(f))
    assert code == 0 and len(out.split()) == 3


def test_fixtures_commands(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and [ln.split("\t")[0] for ln in out.splitlines()] == ["fig1", "fig2", "fig3", "fig4"]
    code, out, _ = run(capsys, "fixtures", "show", "fig2", "--format", "graph6")
    assert code == 0 and from_graph6(out.strip()).n == 12
    code, out, _ = run(capsys, "fixtures", "validate", "fig3")
    assert code == 0 and out.strip() == "fig3: ok"


def test_manifest(tmp_path, capsys, monkeypatch):
    m = tmp_path / "runs.jsonl"
    run(capsys, "--manifest", str(m), "gen-blocks", "--n", "4")
    monkeypatch.setenv("BEICHECK_MANIFEST", str(m))
    run(capsys, "check", "--fixture", "fig3")
    run(capsys, "--no-manifest", "check", "--fixture", "fig3")
    recs = [json.loads(ln) for ln in m.read_text().splitlines()]
    assert [r["command"] for r in recs] == ["gen-blocks", "check"]
    assert recs[0]["stats"] == {"blocks": 3} and recs[1]["verdict"] is True
    assert {"start", "end", "versions", "inputs", "exit_code"} <= set(recs[0])
