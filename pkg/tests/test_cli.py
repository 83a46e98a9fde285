import csv
import io
import json
import struct

import pytest

from rangequery.bench import HEADER, rows_to_csv, run_bench
from rangequery.cli import main
from rangequery.core import MalformedQuery, ParseError, VersionMismatch
from rangequery.formats import (ALL_KINDS, LIST_KINDS, TREE_KINDS, build_index, dump_snapshot, format_tree,
                                load_snapshot, parse_list, parse_queries, parse_tree)
from rangequery.fuzz import run_fuzz
from rangequery.instances import make_tree, random_list, uniform_ranges

T1_FILE = "7 1\n1 0 3\n2 1 1\n3 1 5\n4 2 5\n5 2 1\n6 3 5\n7 6 3\n"


@pytest.fixture
def files(tmp_path, l1):
    lst = tmp_path / "l1.txt"
    lst.write_text("".join(f"{x}\n" for x in l1))
    tree = tmp_path / "t1.txt"
    tree.write_text(T1_FILE)
    return tmp_path, lst, tree


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestFormats:
    def test_tree_round_trip(self, t1):
        tree = parse_tree(T1_FILE)
        assert list(tree.parent) == list(t1.parent) and list(tree.labels) == list(t1.labels)
        assert format_tree(tree) == T1_FILE

    @pytest.mark.parametrize("text", ["", "3 1\n1 0 5\n", "2 1\n1 0 1\n2 9 1\n", "x y\n"])
    def test_bad_tree_files(self, text):
        with pytest.raises(ParseError):
            parse_tree(text)

    def test_bad_list_file(self):
        with pytest.raises(ParseError):
            parse_list("1\nfoo\n")

    @pytest.mark.parametrize("line", ["0 5", "5 2", "1", "1 2 3", "a b", "1 12"])
    def test_malformed_queries(self, line):
        with pytest.raises(MalformedQuery):
            list(parse_queries(line, 11, tree=False))

    def test_snapshot_header(self, l1):
        blob = dump_snapshot(build_index("mode-tradeoff", l1))
        assert blob[:4] == b"RQK1"
        assert struct.unpack_from("<I", blob, 4)[0] == 1
        bumped = blob[:4] + struct.pack("<I", 2) + blob[8:]
        with pytest.raises(VersionMismatch):
            load_snapshot(bumped)
        with pytest.raises(ParseError):
            load_snapshot(b"XXXX" + blob[4:])

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_snapshot_round_trip(self, kind):
        if kind in TREE_KINDS:
            data = make_tree("random", 120, 4)
            queries = [(u % data.n, v % data.n) for u, v in uniform_ranges(data.n, 1000, 5)]
        else:
            data = random_list(150, 4)
            queries = uniform_ranges(150, 1000, 5)
        index = build_index(kind, data)
        loaded = load_snapshot(dump_snapshot(index))
        assert [tuple(loaded.query(a, b)) for a, b in queries] == [tuple(index.query(a, b)) for a, b in queries]


class TestCommands:
    def test_build_and_query_list(self, capsys, files):
        tmp, lst, _ = files
        snap = tmp / "l1.snap"
        assert run(capsys, "build", lst, "--kind", "mode-tradeoff", "--epsilon", "0.5", "--out", snap)[0] == 0
        queries = tmp / "q.txt"
        queries.write_text("2 10\n6 6\n")
        code, out, _ = run(capsys, "query", snap, queries)
        assert code == 0
        first, second = [line.split("\t") for line in out.splitlines()]
        assert first[1] == "2"
        assert second[:2] == ["9", "1"]

    def test_malformed_query_exit(self, capsys, files):
        tmp, lst, _ = files
        snap = tmp / "l1.snap"
        run(capsys, "build", lst, "--kind", "median-block", "--blocks", "3", "--out", snap)
        (tmp / "bad.txt").write_text("0 5\n")
        code, _, err = run(capsys, "query", snap, tmp / "bad.txt")
        assert code == 2 and "MalformedQuery" in err

    def test_bad_params_exit(self, capsys, files):
        tmp, lst, _ = files
        code, _, err = run(capsys, "build", lst, "--kind", "mode-tradeoff", "--epsilon", "0.9", "--out", tmp / "x")
        assert code == 2 and "epsilon" in err

    def test_usage_error_exit(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["build"])
        assert exc.value.code == 2

    def test_missing_file_exit(self, capsys, tmp_path):
        code, _, _ = run(capsys, "query", tmp_path / "nope.snap")
        assert code == 2

    @pytest.mark.parametrize("kind", TREE_KINDS)
    def test_tree_snapshot(self, capsys, files, kind):
        tmp, _, tree = files
        snap = tmp / "t.snap"
        assert run(capsys, "build", tree, "--kind", kind, "--out", snap)[0] == 0
        (tmp / "q.txt").write_text("4 7\n4 5\n6 6\n")
        _, out, _ = run(capsys, "query", snap, tmp / "q.txt")
        rows = [line.split("\t")[:2] for line in out.splitlines()]
        if kind == "median-tree":
            assert rows == [["5", "4"], ["1", "2"], ["5", "1"]]
        else:
            assert rows == [["5", "3"], ["1", "2"], ["5", "1"]]

    def test_gen(self, capsys, tmp_path):
        assert run(capsys, "gen", "--kind", "zipf", "--n", 50, "--seed", 3, "--out", tmp_path / "a.txt")[0] == 0
        assert len(parse_list((tmp_path / "a.txt").read_text())) == 50
        _, out, _ = run(capsys, "gen", "--kind", "star", "--n", 9, "--seed", 1)
        assert parse_tree(out).n == 9

    def test_fuzz_pass_and_deterministic(self, capsys, tmp_path):
        argv = ["fuzz", "--kind", "all", "--sizes", "1,2,7,30", "--seeds", "2", "--out", tmp_path / "r.json"]
        code, first, _ = run(capsys, *argv)
        assert code == 0 and first.endswith("PASS\n")
        assert run(capsys, *argv)[1] == first
        assert not (tmp_path / "r.json").exists()

    def test_fuzz_mutation_finds_bug(self, capsys, tmp_path):
        repro = tmp_path / "r.json"
        code, out, _ = run(capsys, "fuzz", "--kind", "mode-tradeoff", "--sizes", "40", "--mutate", "--out", repro)
        assert code == 1 and out.endswith("FAIL\n")
        found = json.loads(repro.read_text())
        assert found["kind"] == "mode-tradeoff"
        assert len(found["instance"]) <= 40
        i, j = found["query"]
        items = found["instance"][i - 1:j]
        assert found["expected"][1] == max(items.count(x) for x in items) != found["got"][1]

    def test_fuzz_degenerate_sizes(self):
        assert run_fuzz(ALL_KINDS, [1], seeds=4).passed

    def test_bench_empty_grid(self, capsys):
        code, out, _ = run(capsys, "bench")
        assert code == 0 and out == ",".join(HEADER) + "\n"

    def test_bench_rows(self, capsys, tmp_path):
        path = tmp_path / "b.csv"
        code, _, _ = run(capsys, "bench", "--kind", "mode-constant,median-tree", "--n", "64,256",
                         "--queries", 50, "--out", path)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(path.read_text())))
        assert [(r["kind"], r["n"]) for r in rows] == [("mode-constant", "64"), ("mode-constant", "256"),
                                                       ("median-tree", "64"), ("median-tree", "256")]
        assert rows[0]["probes_ratio"] == "" and float(rows[1]["probes_ratio"]) == 1.0
        assert all(int(r["words"]) > 0 for r in rows)

    def test_bench_rows_reproducible_counters(self):
        a = run_bench(["median-block"], [100, 200], queries=30, seed=2)
        b = run_bench(["median-block"], [100, 200], queries=30, seed=2)
        assert [(r.words, r.mean_probes) for r in a] == [(r.words, r.mean_probes) for r in b]
        assert rows_to_csv([]).strip() == ",".join(HEADER)
