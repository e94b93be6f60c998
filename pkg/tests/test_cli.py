import json

import pytest

from graphbraid import graph_text, h_tree, p_graph, subdivided_y, parse_graph
from graphbraid.cli import main


@pytest.fixture
def p_file(tmp_path):
    path = tmp_path / "p.graph"
    path.write_text(graph_text(p_graph()))
    return str(path)


@pytest.fixture
def y_file(tmp_path):
    path = tmp_path / "y.graph"
    path.write_text(graph_text(subdivided_y()))
    return str(path)


@pytest.fixture
def h_file(tmp_path):
    path = tmp_path / "h.graph"
    path.write_text(graph_text(h_tree()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestCheck:
    def test_pass_gives_zero(self, capsys, p_file):
        code, report = run(capsys, "check", "-g", p_file, "-n", "3")
        assert code == 0
        assert report["payload"]["passes"] is True

    def test_original_fails_with_violation(self, capsys, p_file):
        code, report = run(
            capsys, "check", "-g", p_file, "-n", "3", "--criterion", "original"
        )
        assert code == 1
        violations = report["payload"]["violations"]
        assert violations[0]["condition"] == "A'"

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        code = main(["check", "-g", str(tmp_path / "nope.graph"), "-n", "3"])
        assert code == 2

    def test_parse_error_reports_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.graph"
        bad.write_text("v 0\nq 1\n")
        code = main(["check", "-g", str(bad), "-n", "3"])
        assert code == 2
        assert "line 2" in capsys.readouterr().err

    def test_usage_error(self):
        assert main(["check", "-g"]) == 2


class TestBuild:
    def test_y_graph_payload(self, capsys, y_file):
        code, report = run(capsys, "build", "-g", y_file, "-n", "3")
        assert code == 0
        payload = report["payload"]
        assert payload["maximal_cell_vector"] == [6, 6, 4]
        assert payload["f_vector"] == [35, 60, 27, 4]
        assert payload["euler"] == -2
        assert payload["components"] == 1

    def test_p_graph_euler(self, capsys, p_file):
        _, report = run(capsys, "build", "-g", p_file, "-n", "3")
        assert report["payload"]["euler"] == -2

    def test_empty_complex_is_fine(self, capsys, tmp_path):
        f = tmp_path / "k2.graph"
        f.write_text("v 0\nv 1\ne 0 0 1\n")
        code, report = run(capsys, "build", "-g", str(f), "-n", "3")
        assert code == 0
        assert report["payload"]["f_vector"] == []

    def test_cap_exceeded(self, capsys, y_file):
        code, report = run(
            capsys, "build", "-g", y_file, "-n", "3", "--cell-cap", "10"
        )
        assert code == 1
        assert "cap" in report["payload"]["error"]

    def test_cells_and_boundaries_flags(self, capsys, p_file):
        _, report = run(
            capsys, "build", "-g", p_file, "-n", "2", "--cells", "--boundaries"
        )
        payload = report["payload"]
        assert len(payload["cells"]) == len(payload["f_vector"])
        assert len(payload["boundaries"]) == len(payload["f_vector"]) - 1


class TestHomology:
    def test_p_graph(self, capsys, p_file):
        code, report = run(capsys, "homology", "-g", p_file, "-n", "3")
        assert code == 0
        assert report["payload"]["betti"] == [1, 3, 0, 0]
        assert report["payload"]["torsion"] == [[], [], [], []]

    def test_ordered_example_is_connected(self, capsys, y_file):
        _, report = run(
            capsys, "homology", "-g", y_file, "-n", "3", "--labeling", "ordered"
        )
        assert report["payload"]["betti"][0] == 1


class TestWitness:
    def test_case2_h_tree(self, capsys, h_file):
        code, report = run(
            capsys, "witness", "-g", h_file, "-n", "3", "--kind", "case2",
            "--path", "0,1",
        )
        assert code == 0
        payload = report["payload"]
        assert payload["moves"] == 12
        assert payload["path"]["loop"] is True
        assert payload["valid"] is True
        assert "surrogate" in payload["homology"]["note"]

    def test_rotation_default_cycle(self, capsys, p_file):
        code, report = run(
            capsys, "witness", "-g", p_file, "-n", "2", "--kind", "rotation"
        )
        assert code == 0
        payload = report["payload"]
        assert payload["path"]["loop"] is True
        assert payload["homology"]["is_boundary"] is False

    def test_rotation_too_short(self, capsys, tmp_path):
        f = tmp_path / "tri.graph"
        f.write_text("v 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\ne 2 2 0\n")
        code, report = run(
            capsys, "witness", "-g", str(f), "-n", "3", "--kind", "rotation"
        )
        assert code == 1
        assert "cannot rotate" in report["payload"]["error"]

    def test_case1_reports_subdivided_graph(self, capsys, p_file):
        code, report = run(
            capsys, "witness", "-g", p_file, "-n", "4", "--kind", "case1",
            "--path", "0,5",
        )
        assert code == 0
        payload = report["payload"]
        sub = parse_graph(payload["subdivided_graph"])
        assert sub.num_vertices == 8
        assert payload["path"]["loop"] is True


class TestPhi:
    def test_case_two_placement(self, capsys, tmp_path, p_file):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps([{"vertex": 4}, {"edge": 5, "t": "1/2"}, {"vertex": 2}])
        )
        code, report = run(
            capsys, "phi", "-g", p_file, "--config", str(cfg)
        )
        assert code == 0
        assert report["payload"]["standard_vertex"] == [0, 4, 1]
        arcs = [
            c for c in report["payload"]["combinatorics"] if c["kind"] == "arc"
        ]
        assert {a["overcrowding"] for a in arcs} == {-2, 1}

    def test_token_on_cut_is_failure(self, capsys, tmp_path, p_file):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps([{"edge": 4, "t": "1/4"}, {"vertex": 2}]))
        code, report = run(capsys, "phi", "-g", p_file, "--config", str(cfg))
        assert code == 1
        assert "token 0" in report["payload"]["error"]

    def test_standard_input_is_fixed(self, capsys, tmp_path, p_file):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps([{"vertex": 0}, {"vertex": 4}, {"vertex": 1}]))
        code, report = run(capsys, "phi", "-g", p_file, "--config", str(cfg))
        assert code == 0
        assert report["payload"]["standard_vertex"] == [0, 4, 1]


class TestSubdivide:
    def test_triangle_for_four_tokens(self, capsys, tmp_path):
        f = tmp_path / "tri.graph"
        f.write_text("v 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\ne 2 2 0\n")
        out = tmp_path / "out.graph"
        code, report = run(
            capsys, "subdivide", "-g", str(f), "-n", "4", "--out", str(out)
        )
        assert code == 0
        G = parse_graph(out.read_text())
        assert G.num_vertices == 5  # girth raised from 3 to 5

    def test_unchanged_flag(self, capsys, p_file):
        _, report = run(capsys, "subdivide", "-g", p_file, "-n", "3")
        assert report["payload"]["unchanged"] is True


class TestReports:
    def test_payload_deterministic(self, capsys, y_file):
        _, first = run(capsys, "homology", "-g", y_file, "-n", "3")
        _, second = run(capsys, "homology", "-g", y_file, "-n", "3")
        assert first["payload"] == second["payload"]
        assert first["input"] == second["input"]

    def test_json_out_matches_stdout(self, capsys, p_file, tmp_path):
        out = tmp_path / "report.json"
        code, report = run(
            capsys, "check", "-g", p_file, "-n", "3", "--json", str(out)
        )
        assert code == 0
        assert json.loads(out.read_text()) == report
