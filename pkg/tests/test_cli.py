from __future__ import annotations

import io
import json
import sys

import pytest

from critlab.catalog import catalog
from critlab.cli import EXIT_FAIL, EXIT_INCOMPLETE, EXIT_PASS, EXIT_USAGE, main
from critlab.graph6 import to_graph6


def run(argv, stdin: str | None = None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


# gen ------------------------------------------------------------------------------


def test_gen_writes_family(tmp_path):
    code, out, _ = run(["gen", "--family", "4ore", "--max-n", "7", "--out", str(tmp_path / "f")])
    assert code == EXIT_PASS
    assert rows(out)[0]["members"] == 2
    lines = (tmp_path / "f" / "members.g6").read_text().split()
    assert lines[0] == "C~" and len(lines) == 2
    prov = json.loads((tmp_path / "f" / "provenance.json").read_text())
    assert prov["family"] == "kOre(4)" and prov["complete"]


def test_gen_class_b(tmp_path):
    code, out, _ = run(["gen", "--family", "classb", "--max-n", "8", "--out", str(tmp_path)])
    assert code == EXIT_PASS and rows(out)[0]["counts"] == {"8": 1}


def test_gen_base_case(tmp_path):
    code, out, _ = run(["gen", "--family", "4ore", "--max-n", "4", "--out", str(tmp_path)])
    assert code == EXIT_PASS and rows(out)[0]["members"] == 1


def test_gen_unknown_family(tmp_path):
    code, _, err = run(["gen", "--family", "petersen", "--max-n", "8", "--out", str(tmp_path)])
    assert code == EXIT_USAGE and "unknown family" in err


# check -------------------------------------------------------------------------------


def test_check_potential_named():
    code, out, _ = run(["check", "potential", "--named", "T8"])
    assert code == EXIT_PASS
    row = rows(out)[0]
    assert {k: row[k] for k in ("v", "e", "T3", "p", "KY", "class")} == {
        "v": 8, "e": 13, "T3": 2, "p": -1, "KY": 1, "class": "ClassB"}


def test_check_critical_from_stdin(monkeypatch):
    text = to_graph6(catalog("MoserSpindle")) + "\n" + to_graph6(catalog("C5")) + "\n"
    code, out, _ = run(["check", "critical"], stdin=text, monkeypatch=monkeypatch)
    assert code == EXIT_PASS
    a, b = rows(out)
    assert a["critical"] is True and a["source"] == "<stdin>:1"
    assert b["critical"] is False and "colouring" in b


def test_check_reports_bad_line_and_continues(monkeypatch):
    text = "C~\nnot graph6!\nBw\n"
    code, out, err = run(["check", "packing", "-"], stdin=text, monkeypatch=monkeypatch)
    assert code == EXIT_USAGE
    assert "<stdin>: line 2:" in err
    assert [r["T3"] for r in rows(out)] == [1, 1]


def test_check_packing_lists_triangles():
    code, out, _ = run(["check", "packing", "--named", "MoserSpindle"])
    row = rows(out)[0]
    assert code == EXIT_PASS and row["T3"] == 2 and len(row["triangles"]) == 2


def test_check_kites_and_tsv():
    code, out, _ = run(["check", "kites", "--named", "MoserSpindle", "--format", "tsv"])
    assert code == EXIT_PASS
    header, line = out.splitlines()
    cols = dict(zip(header.split("\t"), line.split("\t")))
    assert len(json.loads(cols["kites"])) == 2


def test_check_discharge_from_file(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(to_graph6(catalog("Grotzsch")) + "\n")
    code, out, _ = run(["check", "discharge", str(p)])
    row = rows(out)[0]
    assert code == EXIT_PASS
    assert row["ledger"]["vertices"][10]["charges"]["step3"] == "65/18"
    assert row["audit"]["conservation"] is True


def test_check_discharge_rejects_low_degree():
    code, out, err = run(["check", "discharge", "--named", "C5"])
    assert code == EXIT_USAGE and "minimum degree" in err and "error" in rows(out)[0]


def test_check_missing_file():
    code, _, err = run(["check", "packing", "/nonexistent/file.g6"])
    assert code == EXIT_USAGE and "not found" in err


# verify -----------------------------------------------------------------------------


def test_verify_selected_lemmas():
    code, out, _ = run(["verify", "K4e", "kyClassB", "--max-n", "11", "--jobs", "1"])
    assert code == EXIT_PASS
    assert [r["lemma"] for r in rows(out)] == ["K4e", "kyClassB"]
    assert all(r["verdict"] == "pass" for r in rows(out))


def test_verify_k4e_small_universe():
    code, out, _ = run(["verify", "K4e", "--max-n", "10", "--jobs", "1"])
    r = rows(out)[0]
    assert code == EXIT_PASS and r["verdict"] == "pass" and r["count"] > 0


def test_verify_density_corpus_file(tmp_path):
    p = tmp_path / "grotzsch.g6"
    p.write_text(to_graph6(catalog("Grotzsch")) + "\n")
    code, out, _ = run(["verify", "density", "--corpus", str(p)])
    assert code == EXIT_PASS and rows(out)[0]["count"] == 1


def test_check_critical_c5_is_false():
    code, out, _ = run(["check", "critical", "--named", "C5", "--k", "4"])
    assert code == EXIT_PASS and rows(out)[0]["critical"] is False


def test_verify_mutation_fails():
    code, out, _ = run(["verify", "K4e", "--mutation", "K4e:three-kites", "--jobs", "1"])
    r = rows(out)[0]
    assert code == EXIT_FAIL and r["verdict"] == "fail" and "witness" in r


def test_verify_budget_incomplete():
    code, out, _ = run(["verify", "deletingavertex", "--budget", "0", "--jobs", "1"])
    assert code == EXIT_INCOMPLETE and rows(out)[0]["complete"] is False


def test_verify_unknown_ids():
    assert run(["verify", "nosuchlemma"])[0] == EXIT_USAGE
    assert run(["verify", "K4e", "--mutation", "nope"])[0] == EXIT_USAGE


def test_verify_density_on_corpus(monkeypatch):
    text = to_graph6(catalog("Grotzsch")) + "\n" + to_graph6(catalog("MoserSpindle")) + "\n"
    code, out, _ = run(["verify", "density", "--corpus", "-"], stdin=text, monkeypatch=monkeypatch)
    r = rows(out)[0]
    assert code == EXIT_PASS and r["count"] == 1
    assert r["info"]["conjecture_holds"] is True
    assert r["info"]["rejected"] == [[2, "not triangle-free"]]


def test_verify_main_theorem_default_corpus():
    code, out, _ = run(["verify", "maintheorem", "--max-n", "7"])
    r = rows(out)[0]
    assert code == EXIT_PASS and r["count"] == 4


# report and usage ---------------------------------------------------------------------


def test_report_writes_artifacts(tmp_path):
    code, out, _ = run(["report", "--out", str(tmp_path), "--max-n", "10"])
    assert code == EXIT_PASS
    names = {p.name for p in tmp_path.iterdir()}
    assert {"families.tsv", "grotzsch_charges.tsv", "summary.json", "potential_by_order.png",
            "grotzsch_charges.png"} <= names
    assert (tmp_path / "potential_by_order.png").read_bytes()[:4] == b"\x89PNG"


def test_usage_errors():
    assert run([])[0] == EXIT_USAGE
    assert run(["check", "nothing"])[0] == EXIT_USAGE


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_PASS


@pytest.mark.parametrize("cmd", ["gen", "check", "verify", "report"])
def test_subcommand_help(cmd, capsys):
    assert main([cmd, "--help"]) == EXIT_PASS
