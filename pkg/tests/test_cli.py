"""Command-line surface: exit codes, JSON records and human output."""

import json
import logging

import pytest

from treesplit.cli import EXIT_ERROR, EXIT_NOT_SPLITTABLE, EXIT_SPLIT, main
from treesplit.config import settings
from treesplit.schemas import BenchSummaryRow, CheckRecord, ResultRecord
from treesplit.treefile import read_tree


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out.strip()
    return code, out


class TestSplit:
    def test_balanced_failure_improved(self, capsys, balanced_failure_file):
        code, out = run_json(capsys, "split", str(balanced_failure_file), "--epsilon", "0.05")
        record = ResultRecord.model_validate_json(out)
        assert code == EXIT_NOT_SPLITTABLE
        assert record.verdict == "not_splittable"
        assert record.witness == 2
        assert record.start == 2
        assert record.iterations == 1
        assert record.total == "4.70"
        assert record.epsilon == "0.05"

    @pytest.mark.parametrize("method", ["descent", "literal", "oracle"])
    def test_every_method_not_splittable(self, capsys, balanced_failure_file, method):
        code, out = run_json(capsys, "split", str(balanced_failure_file), "--epsilon", "0.05", "--method", method)
        assert code == EXIT_NOT_SPLITTABLE
        assert ResultRecord.model_validate_json(out).witness == 2

    def test_pair_splits(self, capsys, pair_file):
        code, out = run_json(capsys, "split", str(pair_file), "--epsilon", "0")
        record = ResultRecord.model_validate_json(out)
        assert code == EXIT_SPLIT
        assert record.edge == (0, 1)
        assert record.side_weights == ("5", "5")

    def test_oracle_iterations(self, capsys, pair_file):
        _, out = run_json(capsys, "split", str(pair_file), "--method", "oracle")
        assert ResultRecord.model_validate_json(out).iterations == 1

    def test_trace(self, capsys, balanced_failure_file):
        code, out = run_json(
            capsys, "split", str(balanced_failure_file), "--epsilon", "0.05",
            "--start", "3", "--method", "literal", "--trace",
        )
        record = ResultRecord.model_validate_json(out)
        assert code == EXIT_NOT_SPLITTABLE
        assert [(t.vertex, t.outcome) for t in record.trace] == [(3, "descend"), (2, "not_splittable")]
        assert record.trace[0].anchor == 2
        assert record.trace[0].component_weight == "3.10"

    def test_human_output(self, capsys, balanced_failure_file):
        code = main(["split", str(balanced_failure_file), "--epsilon", "0.05", "--start", "3", "--trace"])
        out = capsys.readouterr().out
        assert code == EXIT_NOT_SPLITTABLE
        assert "witness vertex 2" in out
        assert "below 2.30" in out
        assert "descend to 2" in out

    def test_random_start_seeded(self, capsys, balanced_failure_file):
        _, a = run_json(capsys, "split", str(balanced_failure_file), "--epsilon", "0.05", "--start", "random", "--seed", "4")
        _, b = run_json(capsys, "split", str(balanced_failure_file), "--epsilon", "0.05", "--start", "random", "--seed", "4")
        assert ResultRecord.model_validate_json(a).start == ResultRecord.model_validate_json(b).start

    @pytest.mark.parametrize(
        "extra",
        [["--epsilon", "0.001"], ["--epsilon", "-1"], ["--start", "99"]],
    )
    def test_errors(self, capsys, balanced_failure_file, extra):
        assert main(["split", str(balanced_failure_file), *extra]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["split", str(tmp_path / "absent.tree")]) == EXIT_ERROR

    def test_parse_error(self, tmp_path):
        path = tmp_path / "bad.tree"
        path.write_text("tree 2 scale=2\nv 0 0.055\nv 1 1\ne 0 1\n", encoding="utf-8")
        assert main(["split", str(path)]) == EXIT_ERROR

    def test_invalid_utf8_tree(self, capsys, tmp_path):
        path = tmp_path / "binary.tree"
        path.write_bytes(b"tree 2 scale=0\nv 0 5\nv 1 \xff\ne 0 1\n")
        assert main(["split", str(path)]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_bad_start_is_usage_error(self, pair_file):
        with pytest.raises(SystemExit) as exc:
            main(["split", str(pair_file), "--start", "middle"])
        assert exc.value.code == EXIT_ERROR


class TestCheck:
    def test_cut_edge(self, capsys, pair_file):
        code, out = run_json(capsys, "check", str(pair_file), "--edge", "1", "0")
        record = CheckRecord.model_validate_json(out)
        assert code == EXIT_SPLIT
        assert record.cut_edge
        assert record.edge == (0, 1)

    def test_not_cut_edge(self, capsys, balanced_failure_file):
        code, out = run_json(capsys, "check", str(balanced_failure_file), "--epsilon", "0.05", "--edge", "2", "3")
        record = CheckRecord.model_validate_json(out)
        assert code == EXIT_NOT_SPLITTABLE
        assert record.side_weights == ("3.10", "1.60")

    def test_missing_edge(self, balanced_failure_file):
        assert main(["check", str(balanced_failure_file), "--edge", "0", "5"]) == EXIT_ERROR


class TestGen:
    def test_prufer_to_file(self, tmp_path):
        path = tmp_path / "gen.tree"
        code = main(["gen", "--kind", "prufer", "--n", "30", "--weights", "uniform:0:50", "--seed", "2", "--output", str(path)])
        assert code == EXIT_SPLIT
        t = read_tree(path)
        assert t.vertex_count == 30
        assert all(0 <= w <= 50 for w in t.weights)

    def test_logs_weight_spec(self, caplog, tmp_path):
        caplog.set_level(logging.INFO, logger="treesplit.cli")
        path = tmp_path / "gen.tree"
        assert main(["gen", "--kind", "prufer", "--n", "8", "--weights", "uniform:2:9", "--output", str(path)]) == EXIT_SPLIT
        assert "(uniform:2:9)" in caplog.text

    def test_grid_to_stdout(self, capsys):
        assert main(["gen", "--kind", "grid", "--width", "4", "--height", "3", "--scale", "1", "--weights", "const:5"]) == EXIT_SPLIT
        out = capsys.readouterr().out
        assert out.startswith("tree 12 scale=1\n")
        assert "v 0 0.5\n" in out

    def test_deterministic(self, capsys):
        main(["gen", "--kind", "prufer", "--n", "20", "--seed", "5"])
        a = capsys.readouterr().out
        main(["gen", "--kind", "prufer", "--n", "20", "--seed", "5"])
        assert capsys.readouterr().out == a

    @pytest.mark.parametrize(
        "argv",
        [
            ["--kind", "prufer"],
            ["--kind", "prufer", "--n", "0"],
            ["--kind", "grid", "--width", "0"],
            ["--kind", "prufer", "--n", "5", "--weights", "gauss:1"],
        ],
    )
    def test_errors(self, argv):
        assert main(["gen", *argv]) == EXIT_ERROR


class TestBench:
    def test_json_summary(self, capsys, tmp_path):
        rows = tmp_path / "rows.csv"
        code, out = run_json(
            capsys, "bench", "--kind", "prufer", "--n", "30", "--trials", "3",
            "--epsilon-fraction", "0.05", "--no-store", "--rows", str(rows),
        )
        assert code == EXIT_SPLIT
        summary = [BenchSummaryRow.model_validate_json(line) for line in out.splitlines()]
        assert {s.method for s in summary} == {"descent", "literal", "baseline"}
        assert rows.exists()

    def test_human_table(self, capsys, balanced_failure_file):
        code = main([
            "bench", "--tree", str(balanced_failure_file), "--epsilon", "0.05",
            "--methods", "descent,baseline", "--starts", "improved", "--no-store",
        ])
        assert code == EXIT_SPLIT
        assert "not_splittable" in capsys.readouterr().out

    def test_invalid_method(self):
        assert main(["bench", "--kind", "prufer", "--methods", "descent,bogus", "--no-store"]) == EXIT_ERROR

    def test_bad_rows_suffix(self, tmp_path):
        argv = ["bench", "--kind", "prufer", "--n", "10", "--no-store", "--rows", str(tmp_path / "rows.txt")]
        assert main(argv) == EXIT_ERROR

    def test_epsilon_options_exclusive(self):
        with pytest.raises(SystemExit):
            main(["bench", "--kind", "prufer", "--epsilon", "0", "--epsilon-fraction", "0.1"])


class TestVerify:
    def test_records_hold(self, capsys, tmp_path, balanced_failure_file):
        lines = []
        for start in ("improved", "3"):
            _, out = run_json(capsys, "split", str(balanced_failure_file), "--epsilon", "0.05", "--start", start)
            lines.append(out)
        records = tmp_path / "records.jsonl"
        records.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert main(["verify", str(balanced_failure_file), str(records)]) == EXIT_SPLIT
        assert capsys.readouterr().out.count(": ok") == 2

    def test_tampered_witness(self, capsys, tmp_path, balanced_failure_file):
        _, out = run_json(capsys, "split", str(balanced_failure_file), "--epsilon", "0.05")
        record = json.loads(out)
        record["witness"] = 3
        path = tmp_path / "record.json"
        path.write_text(json.dumps(record), encoding="utf-8")
        assert main(["verify", str(balanced_failure_file), str(path)]) == EXIT_ERROR
        assert "FAILED" in capsys.readouterr().out

    def test_tampered_edge(self, capsys, tmp_path, pair_file):
        _, out = run_json(capsys, "split", str(pair_file))
        record = json.loads(out)
        record["side_weights"] = ["4", "6"]
        path = tmp_path / "record.json"
        path.write_text(json.dumps(record), encoding="utf-8")
        assert main(["verify", str(pair_file), str(path)]) == EXIT_ERROR

    def test_invalid_utf8_record(self, tmp_path, pair_file):
        path = tmp_path / "record.json"
        path.write_bytes(b"{\"verdict\": \"\xff\"}\n")
        assert main(["verify", str(pair_file), str(path)]) == EXIT_ERROR

    def test_not_a_record(self, tmp_path, pair_file):
        path = tmp_path / "record.json"
        path.write_text('{"verdict": "maybe"}\n', encoding="utf-8")
        assert main(["verify", str(pair_file), str(path)]) == EXIT_ERROR


class TestStore:
    def test_stats_and_clear(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setattr(settings, "store_dir", str(tmp_path / "store"))
        assert main(["bench", "--kind", "prufer", "--n", "10", "--methods", "descent", "--starts", "improved"]) == EXIT_SPLIT
        capsys.readouterr()
        assert main(["store", "stats"]) == EXIT_SPLIT
        assert json.loads(capsys.readouterr().out)["file_count"] == 1
        assert main(["store", "clear"]) == EXIT_SPLIT
        assert json.loads(capsys.readouterr().out) == {"deleted": 1}
