import json
import os

import numpy as np
import pytest

from infinitewalk.cli import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    read_graph_dir,
    run,
    write_graph_dir,
)
from infinitewalk.synthetic import sbm_labeled

K3_EDGES = "0 1\n1 2\n2 0\n"


@pytest.fixture
def k3_dir(tmp_path):
    edges = tmp_path / "k3.edges"
    edges.write_text(K3_EDGES)
    out = tmp_path / "graph"
    assert run(["preprocess", "--edges", str(edges), "--out", str(out)]) == EXIT_OK
    return str(out)


@pytest.fixture
def sbm_dir(tmp_path):
    data = sbm_labeled([12, 12], p_in=0.6, p_out=0.1, seed=3)
    edges = tmp_path / "sbm.edges"
    labels = tmp_path / "sbm.labels"
    g = data.graph
    lines = [
        f"{g.name_of(u)} {g.name_of(v)} {w}"
        for u, v, w in zip(g.edge_u, g.edge_v, g.edge_w)
    ]
    edges.write_text("\n".join(lines) + "\n")
    labels.write_text(
        "\n".join(
            f"{g.name_of(i)} {next(iter(s))}" for i, s in enumerate(data.labels)
        )
        + "\n"
    )
    out = tmp_path / "sbm_graph"
    status = run(
        ["preprocess", "--edges", str(edges), "--labels", str(labels),
         "--out", str(out)]
    )
    assert status == EXIT_OK
    return str(out), str(labels)


class TestPreprocess:
    def test_k3_stats(self, k3_dir):
        stats = json.load(open(os.path.join(k3_dir, "stats.json")))
        assert stats["n"] == 3
        assert stats["volume"] == 6.0
        assert stats["num_edges"] == 3

    def test_round_trip(self, k3_dir):
        g = read_graph_dir(k3_dir)
        assert g.n == 3
        assert np.array_equal(g.degree, [2, 2, 2])
        assert g.node_names == ("0", "1", "2")

    def test_manifest_written(self, k3_dir):
        manifest = json.load(open(os.path.join(k3_dir, "manifest.json")))
        assert manifest["command"] == "preprocess"
        assert "argv" in manifest

    def test_bipartite_input_exits_3(self, tmp_path):
        edges = tmp_path / "bad.edges"
        edges.write_text("0 1\n")
        status = run(
            ["preprocess", "--edges", str(edges), "--out", str(tmp_path / "g")]
        )
        assert status == EXIT_VALIDATION

    def test_largest_component_extracted(self, tmp_path):
        edges = tmp_path / "two.edges"
        edges.write_text("0 1\n1 2\n2 0\n8 9\n")
        out = tmp_path / "g"
        assert run(["preprocess", "--edges", str(edges), "--out", str(out)]) == EXIT_OK
        stats = json.load(open(out / "stats.json"))
        assert stats["n"] == 3


class TestSpectrum:
    def test_k3_spectrum_csv(self, k3_dir, tmp_path):
        out = tmp_path / "spec.csv"
        assert run(["spectrum", "--graph", k3_dir, "--out", str(out)]) == EXIT_OK
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "index,eigenvalue"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        np.testing.assert_allclose(values, [1.0, -0.5, -0.5], atol=1e-10)


class TestPmiCompare:
    def test_report_fields(self, k3_dir, tmp_path):
        out = tmp_path / "cmp.json"
        status = run(
            ["pmi-compare", "--graph", k3_dir, "--T", "10", "--ramp", "r1",
             "--out", str(out)]
        )
        assert status == EXIT_OK
        report = json.loads(out.read_text())
        assert report["T"] == 10
        assert report["ramp"] == "R1"
        assert report["relative_frobenius_error"] >= 0.0


class TestPmiEmpirical:
    def test_matrix_and_deviation_written(self, k3_dir, tmp_path):
        out = tmp_path / "emp.bin"
        status = run(
            ["pmi-empirical", "--graph", k3_dir, "--T", "1", "--gamma", "200",
             "--len", "50", "--seed", "1", "--out", str(out)]
        )
        assert status == EXIT_OK
        values = np.frombuffer(out.read_bytes()).reshape(3, 3)
        np.testing.assert_array_equal(values, values.T)
        deviation = json.loads((tmp_path / "emp.bin.deviation.json").read_text())
        assert deviation["max_abs_deviation_unramped"] < 0.5


class TestEmbedAndEvaluate:
    def test_pipeline_produces_report(self, sbm_dir, tmp_path):
        graph_dir, labels = sbm_dir
        emb = tmp_path / "emb.txt"
        status = run(
            ["embed", "--graph", graph_dir, "--method", "infinitewalk",
             "--T", "10", "--d", "8", "--out", str(emb)]
        )
        assert status == EXIT_OK
        report = tmp_path / "eval.csv"
        status = run(
            ["evaluate", "--embedding", str(emb), "--labels", labels,
             "--ratios", "0.5", "--repeats", "2", "--seed", "0",
             "--out", str(report)]
        )
        assert status == EXIT_OK
        lines = report.read_text().strip().split("\n")
        assert len(lines) == 2
        micro = float(lines[1].split(",")[3])
        assert 0.0 <= micro <= 1.0

    def test_binlap_embedding_shape(self, sbm_dir, tmp_path):
        graph_dir, _ = sbm_dir
        emb = tmp_path / "emb.txt"
        status = run(
            ["embed", "--graph", graph_dir, "--method", "binlap", "--q", "0.9",
             "--d", "4", "--out", str(emb)]
        )
        assert status == EXIT_OK
        rows = emb.read_text().strip().split("\n")
        g = read_graph_dir(graph_dir)
        assert len(rows) == g.n
        assert all(len(r.split()) == 5 for r in rows)

    def test_bad_method_is_usage_error(self, k3_dir, tmp_path):
        status = run(
            ["embed", "--graph", k3_dir, "--method", "bogus", "--out",
             str(tmp_path / "e")]
        )
        assert status == EXIT_USAGE


class TestReplay:
    def test_replay_is_bit_identical(self, sbm_dir, tmp_path):
        graph_dir, _ = sbm_dir
        emb = tmp_path / "emb.txt"
        argv = ["embed", "--graph", graph_dir, "--method", "infinitewalk",
                "--T", "5", "--d", "6", "--out", str(emb)]
        assert run(argv) == EXIT_OK
        first = emb.read_bytes()
        manifest = str(emb) + ".manifest.json"
        assert run(["replay", "--manifest", manifest]) == EXIT_OK
        assert emb.read_bytes() == first


def test_write_read_graph_dir_round_trip(tmp_path):
    from infinitewalk.graph import build_graph

    g = build_graph(
        3, [(0, 1, 1.5), (1, 2, 2.25), (0, 2, 0.125)], node_names=("a", "b", "c")
    )
    write_graph_dir(str(tmp_path / "g"), g)
    back = read_graph_dir(str(tmp_path / "g"))
    assert back.node_names == ("a", "b", "c")
    np.testing.assert_array_equal(back.degree, g.degree)
    np.testing.assert_array_equal(back.edge_w, g.edge_w)
