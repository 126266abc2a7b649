"""End-to-end CLI behavior: verbs, formats, exit codes, stdin/file input."""

import csv
import io
import json
import sys

import pytest

from ferrers.cli import main
from ferrers.graphs import BipartiteGraph, parse_graph

HEX_TEXT = "3 3\n0 1\n1 2\n0 2\n"
K22_TEXT = "2 2\n0 1\n0 1\n"


@pytest.fixture
def hexfile(tmp_path):
    p = tmp_path / "hex.txt"
    p.write_text(HEX_TEXT)
    return str(p)


def feed(monkeypatch, text):
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))


class TestBasicVerbs:
    def test_tau_plain(self, hexfile, capsys):
        assert main(["tau", hexfile, "--format", "plain"]) == 0
        assert capsys.readouterr().out == "6\n"

    def test_tau_json_default(self, hexfile, capsys):
        assert main(["tau", hexfile]) == 0
        assert json.loads(capsys.readouterr().out) == {"tau": 6}

    def test_tau_csv(self, hexfile, capsys):
        assert main(["tau", hexfile, "--format", "csv"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows == [["tau"], ["6"]]

    def test_tau_from_stdin(self, monkeypatch, capsys):
        feed(monkeypatch, K22_TEXT)
        assert main(["tau", "--format", "plain"]) == 0
        assert capsys.readouterr().out == "4\n"

    def test_invariant_exact_fraction(self, hexfile, capsys):
        assert main(["invariant", hexfile, "--format", "plain"]) == 0
        assert capsys.readouterr().out == "64/9\n"

    def test_invariant_json(self, hexfile, capsys):
        main(["invariant", hexfile])
        assert json.loads(capsys.readouterr().out) == {"F": "64/9"}

    def test_biadj_flag(self, tmp_path, capsys):
        p = tmp_path / "biadj.txt"
        p.write_text("11\n11\n")
        assert main(["tau", str(p), "--biadj", "--format", "plain"]) == 0
        assert capsys.readouterr().out == "4\n"

    def test_biadj_header_autodetected(self, monkeypatch, capsys):
        feed(monkeypatch, "biadj\n11\n11\n")
        assert main(["tau", "--format", "plain"]) == 0
        assert capsys.readouterr().out == "4\n"


class TestCheck:
    def test_record_fields(self, hexfile, capsys):
        assert main(["check", hexfile]) == 0
        rec = json.loads(capsys.readouterr().out)
        assert set(rec) == {
            "graph",
            "tau",
            "F",
            "inequality_ok",
            "equality",
            "ferrers",
            "reduction_ok",
            "majorizes",
        }
        assert rec["tau"] == 6 and rec["F"] == "64/9"
        assert rec["inequality_ok"] is True and rec["equality"] is False

    def test_plain_lines(self, hexfile, capsys):
        assert main(["check", hexfile, "--format", "plain"]) == 0
        out = capsys.readouterr().out
        assert "tau: 6" in out and "ferrers: false" in out

    def test_fault_inject_fails_with_exit_one(self, monkeypatch, capsys):
        feed(monkeypatch, K22_TEXT)
        assert main(["check", "--fault-inject"]) == 1
        rec = json.loads(capsys.readouterr().out)
        assert rec["tau"] == 5
        assert rec["inequality_ok"] is False


class TestSpectralVerbs:
    def test_spectrum_keys(self, hexfile, capsys):
        assert main(["spectrum", hexfile]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert set(rep) == {
            "lambda",
            "a_sorted",
            "partial_gaps",
            "defect_sums",
            "trace_gap",
            "majorizes",
        }
        assert rep["lambda"][0] == pytest.approx(3.0, abs=1e-9)
        assert rep["defect_sums"] == ["1/1", "1/2"]
        assert rep["majorizes"] is True

    def test_majorize_is_an_alias(self, hexfile, capsys):
        main(["spectrum", hexfile])
        first = capsys.readouterr().out
        main(["majorize", hexfile])
        assert capsys.readouterr().out == first

    def test_tol_accepted(self, hexfile):
        assert main(["spectrum", hexfile, "--tol", "1e-6"]) == 0


class TestOverlap:
    def test_frozen_pair(self, capsys):
        assert main(["overlap", "0,1", "1,2", "3"]) == 0
        assert json.loads(capsys.readouterr().out) == {"trace": "5/4", "defect": "1/4"}

    def test_plain_two_lines(self, capsys):
        main(["overlap", "0,1", "1,2", "3", "--format", "plain"])
        assert capsys.readouterr().out == "trace: 5/4\ndefect: 1/4\n"

    def test_out_of_range_is_input_error(self, capsys):
        assert main(["overlap", "0,5", "1", "3"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_empty_field_is_input_error(self):
        assert main(["overlap", "0,", "1", "3"]) == 2


class TestStaircaseVerbs:
    def test_gen_round_trips_through_detect(self, monkeypatch, capsys):
        assert main(["ferrers-gen", "3,2,1", "--format", "plain"]) == 0
        text = capsys.readouterr().out
        g = parse_graph(text)
        assert g == BipartiteGraph(3, 3, (0b111, 0b011, 0b001))
        feed(monkeypatch, text)
        assert main(["ferrers-detect", "--format", "plain"]) == 0
        assert capsys.readouterr().out == "true\n"

    def test_detect_rejects_hexagon(self, hexfile, capsys):
        main(["ferrers-detect", hexfile, "--format", "plain"])
        assert capsys.readouterr().out == "false\n"

    def test_gen_rejects_increasing_heights(self, capsys):
        assert main(["ferrers-gen", "1,2"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_gen_rejects_garbage(self):
        assert main(["ferrers-gen", "a,b"]) == 2


class TestEnumerate:
    def test_plain_blocks_reparse(self, capsys):
        assert main(["enumerate", "2", "2", "--format", "plain"]) == 0
        blocks = [b for b in capsys.readouterr().out.split("\n\n") if b.strip()]
        graphs = [parse_graph(b + "\n") for b in blocks]
        assert len(graphs) == 5
        assert len({g.nbrs for g in graphs}) == 5

    def test_json_lines(self, capsys):
        main(["enumerate", "2", "2"])
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 5
        for line in lines:
            parse_graph(json.loads(line)["graph"])

    def test_dedupe(self, capsys):
        main(["enumerate", "2", "2", "--dedupe"])
        assert len(capsys.readouterr().out.splitlines()) == 2

    def test_cap_exceeded_is_input_error(self, capsys):
        assert main(["enumerate", "5", "5"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_cap_flag_and_env(self, monkeypatch, capsys):
        monkeypatch.setenv("FERRERS_CAP", "3")
        assert main(["enumerate", "2", "2"]) == 2
        capsys.readouterr()
        assert main(["enumerate", "2", "2", "--cap", "4"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 5


class TestVerify:
    def test_summary_json(self, capsys):
        assert main(["verify", "2", "2"]) == 0
        lines = capsys.readouterr().out.splitlines()
        summary = json.loads(lines[-1])
        assert summary["dims"] == [2, 2]
        assert summary["graphs_checked"] == 8
        assert summary["violations"] == 0
        assert summary["equality_cases"] == summary["ferrers_count"] == 8
        # json mode streams one record per graph ahead of the summary
        records = [json.loads(line) for line in lines[:-1]]
        assert len(records) == 8
        assert all(r["inequality_ok"] is True for r in records)

    def test_plain_summary_only(self, capsys):
        assert main(["verify", "2", "2", "--format", "plain"]) == 0
        out = capsys.readouterr().out
        assert "graphs_checked: 8" in out
        assert "tau" not in out  # no per-graph records outside json mode

    def test_csv_summary(self, capsys):
        assert main(["verify", "1", "2", "--format", "csv"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0][0] == "dims"
        assert rows[1][0] == "1;2"

    def test_workers_flag(self, capsys):
        assert main(["verify", "2", "2", "--workers", "2", "--format", "plain"]) == 0
        assert "graphs_checked: 8" in capsys.readouterr().out

    def test_fault_inject_exits_one(self, capsys):
        assert main(["verify", "1", "1", "--fault-inject"]) == 1
        assert "theorem check failed:" in capsys.readouterr().err

    def test_cap_exceeded(self, capsys):
        assert main(["verify", "5", "5"]) == 2


class TestCorollaryVerb:
    def test_unit_weights(self, tmp_path, capsys):
        p = tmp_path / "weighted.txt"
        p.write_text(HEX_TEXT + "1 1 1 1 1 1\n")
        assert main(["corollary", str(p), "--format", "plain"]) == 0
        assert capsys.readouterr().out == "true\n"

    def test_fractional_weights_from_stdin(self, monkeypatch, capsys):
        feed(monkeypatch, K22_TEXT + "1/2 2 3 1/7\n")
        assert main(["corollary"]) == 0
        assert json.loads(capsys.readouterr().out) == {"ok": True}

    def test_biadj_graph_section(self, monkeypatch, capsys):
        feed(monkeypatch, "11\n11\n1 1 1 1\n")
        assert main(["corollary", "--biadj"]) == 0
        assert json.loads(capsys.readouterr().out) == {"ok": True}

    def test_missing_weights_line(self, monkeypatch, capsys):
        feed(monkeypatch, "1 1\n0\n")
        # the single graph line is taken as weights and the rest fails to parse
        assert main(["corollary"]) == 2

    def test_negative_weight(self, monkeypatch, capsys):
        feed(monkeypatch, K22_TEXT + "1 1 -1 1\n")
        assert main(["corollary"]) == 2
        assert "error:" in capsys.readouterr().err


class TestErrorPaths:
    def test_unknown_verb(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_no_verb(self):
        assert main([]) == 2

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0

    def test_malformed_graph(self, monkeypatch, capsys):
        feed(monkeypatch, "2 2\n0 3\n0 1\n")
        assert main(["tau"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["tau", str(tmp_path / "nope.txt")]) == 2

    def test_disconnected_graph_for_spectrum(self, monkeypatch, capsys):
        feed(monkeypatch, "2 2\n0\n1\n")
        assert main(["spectrum"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_seed_flag_accepted(self, hexfile):
        assert main(["tau", hexfile, "--seed", "7"]) == 0
