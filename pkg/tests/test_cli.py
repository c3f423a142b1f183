from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from sgp.cli import dump_report, main


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def run_json(argv):
    code, text = run(argv + ["--json"])
    return code, json.loads(text)


def strip_timing(doc):
    return {k: v for k, v in doc.items() if k != "timing_ms"}


class TestInfo:
    def test_two_three(self):
        code, doc = run_json(["info", "--gens", "2,3"])
        assert code == 0
        assert doc["values"]["frobenius"] == 1
        assert doc["values"]["genus"] == 1
        assert doc["values"]["symmetric"] is True
        assert list(doc) == ["command", "params", "checks", "values", "timing_ms", "schema_version"]

    def test_betti(self):
        code, doc = run_json(["info", "--gens", "7,8,17,18", "--betti", "--apery"])
        assert code == 0
        assert doc["values"]["presentation_cardinality"] == 5
        assert doc["values"]["apery"] == [0, 8, 16, 17, 18, 26, 34]

    def test_non_minimal_notice(self):
        code, text = run(["info", "--gens", "5,9,10,14"])
        assert code == 0
        assert "not minimal" in text and "[5, 9]" in text

    def test_gens_file(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("7\n8\n\n17\n18\n")
        code, doc = run_json(["info", "--gens-file", str(f)])
        assert code == 0 and doc["values"]["frobenius"] == 27

    @pytest.mark.parametrize("argv", [["info", "--gens", "a,b"], ["info", "--gens", "4,6"], ["info"],
                                      ["info", "--gens", "0,3"]])
    def test_invalid(self, argv):
        assert run(argv)[0] == 2

    def test_argparse_error_exit_2(self):
        with pytest.raises(SystemExit) as info:
            main(["family", "verify", "--family", "nope"])
        assert info.value.code == 2


class TestOtherQueries:
    def test_apery(self):
        code, doc = run_json(["apery", "--gens", "8,9,22,23"])
        assert code == 0
        assert set(doc["values"]["entries"]) == {0, 9, 18, 27, 36, 45, 22, 23}
        assert run(["apery", "--gens", "8,9,22,23", "--a", "10"])[0] == 2

    def test_betti(self):
        code, doc = run_json(["betti", "--gens", "2,3"])
        assert doc["values"]["betti"] == [{"element": 6, "components": 2, "witness": [[0, 2], [3, 0]]}]
        assert doc["values"]["presentation_cardinality"] == 1


class TestFamilyVerify:
    def test_sym_s(self):
        code, doc = run_json(["family", "verify", "--family", "sym-s", "--e", "4", "--q", "1", "--d", "1"])
        assert code == 0
        assert all(c["pass"] for c in doc["checks"])
        assert doc["values"]["mu"] == 5

    def test_sym_t_odd_e(self):
        assert run(["family", "verify", "--family", "sym-t", "--e", "5", "--q", "2", "--d", "1"])[0] == 2

    def test_missing_param(self):
        assert run(["family", "verify", "--family", "sym-t", "--e", "4"])[0] == 2

    def test_unbounded_ideal(self):
        code, doc = run_json(["family", "verify", "--family", "unbounded", "--n", "5", "--e", "4", "--q", "0", "--ideal"])
        assert code == 0
        assert doc["values"]["mu"] == 12
        names = {c["name"] for c in doc["checks"] if c["pass"]}
        assert {"reduced_set_generates", "reduced_set_minimal", "colength_equals_n^2+2n"} <= names

    def test_csv(self):
        code, text = run(["family", "verify", "--family", "bresinsky", "--q2", "4", "--csv"])
        assert code == 0
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["name", "pass", "witness"]
        assert all(r[1] == "true" for r in rows[1:])

    def test_failed_check_exits_1(self, monkeypatch):
        import sgp.families as fam

        monkeypatch.setattr(fam, "frobenius_closed_form", lambda p: -5)
        assert run(["family", "verify", "--family", "sym-s", "--e", "4", "--q", "1", "--d", "1"])[0] == 1

    def test_contract_violation_exits_1(self, monkeypatch):
        import sgp.families as fam

        # 70 = 2 * 35, so the constructor's minimality assertion trips
        monkeypatch.setattr(fam, "unbounded_raw", lambda p: [35, 36, 70])
        assert run(["scan", "--family", "unbounded", "--n", "5", "--e", "4", "--q", "0"])[0] == 1


class TestScan:
    def test_unbounded_csv(self, tmp_path):
        path = tmp_path / "scan.csv"
        code, _ = run(["scan", "--family", "unbounded", "--n", "5..7", "--e", "4..4", "--q", "0", "--csv", str(path)])
        assert code == 0
        raw = path.read_bytes()
        assert not raw.startswith(b"\xef\xbb\xbf") and b"\r\n" not in raw
        rows = list(csv.DictReader(io.StringIO(raw.decode("utf-8"))))
        assert list(rows[0]) == ["n", "e", "q", "d", "mu", "frobenius", "genus", "symmetric", "status"]
        assert [r["mu"] for r in rows] == ["12", "14", "16"]
        assert [r["n"] for r in rows] == ["5", "6", "7"]

    def test_sym_s(self, tmp_path):
        path = tmp_path / "s.csv"
        code, doc = run_json(["scan", "--family", "sym-s", "--e", "4..6", "--q", "1..2", "--d", "1..3",
                              "--csv", str(path)])
        assert code == 0
        rows = list(csv.DictReader(path.open(encoding="utf-8")))
        ok = [r for r in rows if r["status"] == "ok"]
        assert ok and all(r["symmetric"] == "true" for r in ok)
        assert all(int(r["mu"]) == int(r["e"]) * (int(r["e"]) - 1) // 2 - 1 for r in ok)
        assert {r["status"] for r in rows} <= {"ok", "invalid"}

    def test_bresinsky(self):
        code, doc = run_json(["scan", "--family", "bresinsky", "--q2", "4..8"])
        assert code == 0
        mus = [r["mu"] for r in doc["values"]["rows"] if r["status"] == "ok"]
        assert mus == sorted(set(mus)) and len(mus) == 3

    def test_unwritable(self, tmp_path):
        bad = tmp_path / "missing" / "x.csv"
        assert run(["scan", "--family", "unbounded", "--n", "5", "--e", "4", "--q", "0", "--csv", str(bad)])[0] == 2

    def test_budget_flag_and_env(self, monkeypatch):
        monkeypatch.setenv("SGP_BUDGET", "1")
        code, doc = run_json(["scan", "--family", "unbounded", "--n", "5", "--e", "4", "--q", "0"])
        assert doc["values"]["rows"][0]["status"] == "budget_exceeded"
        code, doc = run_json(["scan", "--family", "unbounded", "--n", "5", "--e", "4", "--q", "0", "--budget", "1000"])
        assert doc["values"]["rows"][0]["status"] == "ok"

    def test_jobs_deterministic(self, tmp_path):
        docs = []
        for jobs in ("1", "4"):
            path = tmp_path / f"j{jobs}.csv"
            code, doc = run_json(["scan", "--family", "sym-s", "--e", "4..5", "--q", "1..2", "--d", "1..3",
                                  "--jobs", jobs, "--csv", str(path)])
            docs.append((path.read_bytes(), strip_timing(doc)))
        assert docs[0][0] == docs[1][0]
        docs[0][1]["params"].pop("jobs", None)
        docs[1][1]["params"].pop("jobs", None)
        assert docs[0][1] == docs[1][1]

    def test_bad_range(self):
        assert run(["scan", "--family", "unbounded", "--n", "7..5", "--e", "4", "--q", "0"])[0] == 2


class TestReportFormat:
    def test_round_trip(self):
        code, text = run(["ideal", "check", "--n", "5", "--json"])
        assert code == 0
        doc = json.loads(text)
        assert dump_report(json.loads(dump_report(doc))) == dump_report(doc)
        assert doc["schema_version"] == 1

    def test_deterministic_modulo_timing(self):
        a = run_json(["family", "verify", "--family", "sym-t", "--e", "4", "--q", "2", "--d", "1"])[1]
        b = run_json(["family", "verify", "--family", "sym-t", "--e", "4", "--q", "2", "--d", "1"])[1]
        assert strip_timing(a) == strip_timing(b)
        assert dump_report(strip_timing(a)) == dump_report(strip_timing(b))

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "sgp", "info", "--gens", "2,3", "--json"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["values"]["frobenius"] == 1
