from __future__ import annotations

import json

import pytest

from critlab.catalog import catalog
from critlab.graph6 import to_graph6
from critlab.verify import (
    MUTANTS,
    REGISTRY,
    Corpus,
    Limits,
    critical_graphs,
    replay,
    triangle_free_critical,
    verify_all,
    verify_density,
    verify_lemma,
    verify_main_theorem,
)

LEMMA_IDS = {
    "deletingavertex", "deletingaclique", "cliqueboundinequality", "kkbound", "onecliquecharacterization",
    "K4e", "splittinglemma", "deletingatriangle", "foundational4Ore", "split3triangle", "oreArithmetic",
    "kyClassB", "foundationalB", "t8splits", "easyhom", "counting", "potentialExtension", "gallaiCycle",
}

SMALL = Limits(ore_max=10, b_max=11, ore5_max=9, crit_max=7)


def test_registry_is_complete():
    assert set(REGISTRY) == LEMMA_IDS
    for lemma_id, lemma in REGISTRY.items():
        assert lemma.id == lemma_id and lemma.statement


@pytest.fixture(scope="module")
def small_verdicts():
    return {v.lemma: v for v in verify_all(SMALL)}


@pytest.mark.parametrize("lemma_id", sorted(LEMMA_IDS))
def test_each_lemma_passes(small_verdicts, lemma_id):
    v = small_verdicts[lemma_id]
    assert v.passed and v.complete and v.count > 0, v.to_line()


def test_verdicts_are_deterministic(small_verdicts):
    again = verify_lemma("split3triangle", SMALL)
    assert again.to_json() == small_verdicts["split3triangle"].to_json()


def test_parallel_run_matches_serial(small_verdicts):
    par = verify_lemma("easyhom", SMALL, jobs=2)
    assert par.to_json() == small_verdicts["easyhom"].to_json()


def test_verdict_line_is_json(small_verdicts):
    doc = json.loads(small_verdicts["K4e"].to_line())
    assert doc["verdict"] == "pass" and "witness" not in doc
    assert doc["count"] == small_verdicts["K4e"].count


@pytest.mark.parametrize("mutation", sorted(MUTANTS))
def test_mutants_fail_with_replayable_witness(mutation):
    target = MUTANTS[mutation][0]
    v = verify_lemma(target, mutation=mutation)
    assert v.verdict == "fail" and v.witness is not None
    assert v.lemma == mutation
    assert replay(v.witness) is False
    # the unmutated statement holds on the same instance
    assert replay({**v.witness, "mutation": None}) is True


def test_mutation_must_match_lemma():
    with pytest.raises(ValueError):
        verify_lemma("counting", mutation="K4e:three-kites")


def test_unknown_lemma():
    with pytest.raises(KeyError):
        verify_lemma("nosuchlemma")


def test_budget_marks_incomplete():
    v = verify_lemma("deletingavertex", SMALL, budget=1)
    assert not v.complete and v.universe["subjects"] == 1


def test_limits_capped():
    assert Limits.capped(None) == Limits()
    assert Limits.capped(9) == Limits(9, 9, 9, 8)


# corpora --------------------------------------------------------------------------


def test_corpus_admission_rechecks_predicates(ore4):
    gs = [catalog("Grotzsch"), catalog("MoserSpindle"), catalog("C5")]
    c = Corpus.admit("mixed", gs, ("4-critical", "triangle-free"))
    assert c.graphs == [catalog("Grotzsch")]
    assert c.rejected == [(2, "not triangle-free"), (3, "not 4-critical")]


def test_corpus_from_lines_reports_line_numbers():
    lines = [to_graph6(catalog("Grotzsch")) + "\n", "garbage!\n", "\n", to_graph6(catalog("K4")) + "\n"]
    c = Corpus.from_lines("t", lines, ("4-critical", "triangle-free"))
    assert len(c.graphs) == 1
    assert [ln for ln, _ in c.rejected] == [2, 4]


def test_corpus_from_file(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(to_graph6(catalog("T8")) + "\n")
    c = Corpus.from_file(p, ("4-critical",))
    assert c.name == "g.g6" and c.provenance.startswith("external:") and len(c.graphs) == 1


def test_main_theorem_on_small_critical_graphs():
    gs = [g for n in range(4, 9) for g in critical_graphs(n)]
    v = verify_main_theorem(Corpus.admit("critical<=8", gs, ("4-critical",)))
    assert v.passed and v.count == 9
    assert v.info["classes"] == {"ClassB": 1, "FourOreT2": 1, "K4": 1, "Other": 5, "W5": 1}


def test_main_theorem_up_to_seven_vertices():
    gs = [g for n in range(4, 8) for g in critical_graphs(n)]
    v = verify_main_theorem(Corpus.admit("critical<=7", gs, ("4-critical",)))
    assert v.passed and v.info["classes"] == {"FourOreT2": 1, "K4": 1, "W5": 1, "Other": 1}


def test_main_theorem_on_families(ore4, classb):
    assert verify_main_theorem(Corpus("ore", ore4.graphs())).passed
    v = verify_main_theorem(Corpus("b", classb.graphs()))
    assert v.passed and v.info["classes"] == {"ClassB": 6}


def test_density_on_grotzsch():
    v = verify_density(Corpus.admit("g", [catalog("Grotzsch")], ("4-critical", "triangle-free")))
    assert v.passed and v.info["conjecture_holds"]
    assert v.info["conjecture_tight"] == [to_graph6(catalog("Grotzsch"))]


def test_density_rejects_ore_members(ore4):
    v = verify_density(Corpus.admit("ore", ore4.graphs(10), ("4-critical", "triangle-free")))
    assert v.count == 0 and len(v.info["rejected"]) == 6


def test_density_failure_reports_witness():
    v = verify_density(Corpus("raw", [catalog("C5")]))
    assert not v.passed and v.witness["graph6"] == to_graph6(catalog("C5"))


def test_no_small_triangle_free_critical_graphs():
    assert triangle_free_critical(9) == []
