import io
import json

import pytest

from cli.commands import run
from gadgets.figures import fig4_a, fig4_as
from measures.sample import Sample
from utils.documents import AutomatonDocument, SampleDocument, dump_document, load_automaton, load_sample


def _invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(arg) for arg in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, document):
        path = tmp_path / name
        path.write_text(dump_document(document), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def fig3_files(fig3, write):
    return [write(f"a{i + 1}.json", AutomatonDocument.from_automaton(a)) for i, a in enumerate(fig3)]


# ===== analysis commands =====

def test_estimate_reference_value():
    code, out, _ = _invoke("estimate", "--sigma", 2, "--length", 1, "--lam", "1/2", "--epsilon", "1/2")
    assert code == 0
    assert out.strip() == "sample size = 12"


def test_json_reports():
    code, out, _ = _invoke("estimate", "--sigma", 2, "--length", 1, "--lam", "1/2", "--epsilon", "1/2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["format"] == "limavg/1"
    assert data["command"] == "estimate"
    assert data["result"] == {"sample_size": 12}


def test_eval_of_a_lasso(toggle, write):
    path = write("toggle.json", AutomatonDocument.from_automaton(toggle))
    assert _invoke("eval", "-a", path, "--period", "a")[1].strip() == "value = 1"
    assert _invoke("eval", "-a", path, "--prefix", "b", "--period", "a")[1].strip() == "value = 0"


def test_expect_with_decimals(fig3_files):
    code, out, _ = _invoke("expect", "-a", fig3_files[0], "--decimal", 3)
    assert code == 0
    assert out.strip() == "E(A | ε) = 1/2 (~0.500)"


def test_expect_estimate_is_reproducible(fig3_files):
    first = _invoke("expect", "-a", fig3_files[0], "--word", "c", "--estimate", 5, "--seed", 4, "--json")
    second = _invoke("expect", "-a", fig3_files[0], "--word", "c", "--estimate", 5, "--seed", 4, "--json")
    assert first == second
    assert json.loads(first[1])["result"]["estimate"] == "1"
    assert _invoke("expect", "-a", fig3_files[0], "--word", "c", "--estimate", 5, "--seed", 4)[1].strip() == "estimate = 1 (seed 4)"


def test_distance_lists_every_pair(fig3_files):
    code, out, _ = _invoke("distance", "-a", fig3_files[0], "-b", fig3_files[1])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[-1] == "total = 1/6"


def test_equiv_exit_codes(fig3_files):
    code, out, _ = _invoke("equiv", "-a", fig3_files[0], "-b", fig3_files[1])
    assert code == 3
    assert "counterexample: a (E(A | u) = 0, E(B | u) = 1/4)" in out
    code, out, _ = _invoke("equiv", "-a", fig3_files[0], "-b", fig3_files[1], "--epsilon", "1/4")
    assert code == 0
    assert out.strip() == "within 1/4 (distance 1/6)"
    assert _invoke("equiv", "-a", fig3_files[0], "-b", fig3_files[0])[0] == 0


def test_rigid_exit_codes(write):
    a = write("fig4a.json", AutomatonDocument.from_automaton(fig4_a(2)))
    small = write("fig4as.json", AutomatonDocument.from_automaton(fig4_as()))
    assert _invoke("rigid", "-a", a, "-b", small, "--epsilon", "1/4")[0] == 0
    code, out, _ = _invoke("rigid", "-a", a, "-b", small, "--epsilon", "1/5")
    assert code == 3
    assert "no" in out.splitlines()[0]


def test_minimize_outcomes(fig3_files, tmp_path):
    code, out, _ = _invoke("minimize", "-a", fig3_files[0], "--max-states", 2, "--epsilon", "1/4")
    assert (code, out.strip()) == (3, "none")
    assert _invoke("minimize", "-a", fig3_files[0], "--max-states", 3, "--epsilon", 0, "--budget", 5)[0] == 4
    target = tmp_path / "minimal.json"
    assert _invoke("minimize", "-a", fig3_files[0], "-o", target)[0] == 0
    assert load_automaton(str(target)).state_count == 4


# ===== learning =====

def test_learn_writes_the_trace_and_the_automaton(fig3_files, tmp_path):
    trace, output = tmp_path / "trace.jsonl", tmp_path / "learned.json"
    code, out, err = _invoke("learn", "-a", fig3_files[1], "--trace", trace, "-o", output)
    assert code == 0
    assert json.loads(out)["states"] == 3
    assert err == ""
    entries = [json.loads(line) for line in trace.read_text(encoding="utf-8").splitlines()]
    assert [e["query"] for e in entries if "query" in e][-1] == "consistency"
    assert load_automaton(str(output)).state_count == 3


def test_learn_stats_go_to_stderr(fig3_files, tmp_path):
    code, out, err = _invoke("learn", "-a", fig3_files[1], "--stats")
    assert code == 0
    learned = tmp_path / "learned.json"
    learned.write_text(out, encoding="utf-8")
    assert load_automaton(str(learned)).state_count == 3
    stats = dict(line.split(": ", 1) for line in err.splitlines())
    assert stats["states"] == "3"
    assert int(stats["expectation_queries"]) > 0
    assert int(stats["rounds"]) >= 0


def test_learn_graph_and_usage():
    code, out, _ = _invoke("learn", "--graph")
    assert code == 0
    assert "process_counterexample" in out
    code, _, err = _invoke("learn")
    assert code == 1
    assert "--automaton" in err


# ===== samples and fitting =====

def test_sample_is_seeded(fig3_files, tmp_path):
    first, second = tmp_path / "s1.json", tmp_path / "s2.json"
    for path in (first, second):
        code, _, _ = _invoke("sample", "-a", fig3_files[0], "--kind", "E", "--count", 5, "--seed", 9, "-o", path)
        assert code == 0
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")
    assert load_sample(str(first)).kind.value == "E"


def test_fit_and_check(fig3_files, write, tmp_path):
    sample = Sample.e_sample(load_automaton(fig3_files[0]).alphabet, [("a", 0), ("b", "1/2"), ("c", 1)])
    path = write("sample.json", SampleDocument.from_sample(sample))
    fitted = tmp_path / "fitted.json"
    assert _invoke("fit", "-s", path, "-o", fitted)[0] == 0
    assert _invoke("fit", "-s", path, "--check", fitted)[1].strip() == "fits"
    code, out, _ = _invoke("fit", "-s", path, "--check", fig3_files[1])
    assert code == 3
    assert out.startswith("2 violation(s)")
    assert _invoke("fit", "-s", path, "--max-states", 1)[0] == 3
    code, out, _ = _invoke("fit", "-s", path, "--max-states", 3, "--jobs", 2, "--json")
    assert code == 0
    assert json.loads(out)["result"]["outcome"] == "found"


# ===== gadgets and experiments =====

def test_gadget_an(tmp_path):
    code, out, _ = _invoke("gadget", "an", "--n", 2, "--json")
    assert code == 0
    assert json.loads(out)["result"]["states"] == 6


def test_gadget_sat0_samples(tmp_path):
    cnf = tmp_path / "formula.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 0\n", encoding="utf-8")
    code, out, _ = _invoke("gadget", "sat0-u", "--cnf", cnf)
    assert code == 0
    assert out.strip() == "12 examples over 8 letters; fit bound 2 states"
    code, out, _ = _invoke("gadget", "canonical", "--cnf", cnf, "--variant", "E", "--json")
    assert code == 0
    assert json.loads(out)["result"]["valuation"] == [False, True]


def test_gadget_vector_cover(tmp_path):
    edges = tmp_path / "c5.edges"
    edges.write_text("0 1\n1 2\n2 3\n3 4\n4 0\n", encoding="utf-8")
    vectors = tmp_path / "vectors.json"
    code, out, _ = _invoke("gadget", "vcover", "--graph", edges, "--k", 2, "-o", vectors)
    assert (code, out.strip()) == (0, "5 vectors, k = 2")
    code, out, _ = _invoke("gadget", "bkmp", "--variant", "appendixB", "--vectors", vectors, "--json")
    assert code == 0
    assert json.loads(out)["result"]["states"] == 9


def test_gadget_needs_its_input_file():
    assert _invoke("gadget", "bkmp")[0] == 1


def test_experiment_report():
    code, out, _ = _invoke("experiment", "--n", 2, "--kind", "E", "--target", 8, "--trials", 3, "--seed", 1, "--json")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["trials"] == 3
    assert "per_trial" not in result
    assert json.loads(out)["seed"] == 1
    code, out, _ = _invoke("experiment", "--n", 2, "--kind", "E", "--target", 8, "--trials", 3, "--seed", 1)
    assert "seed = 1" in out.splitlines()


# ===== errors =====

def test_usage_errors_exit_with_one():
    assert _invoke("nonsense")[0] == 1
    assert _invoke("estimate", "--sigma", 2)[0] == 1
    assert _invoke("equiv", "-a", "x", "-b", "y", "--epsilon", "1.5")[0] == 1


def test_input_errors_exit_with_two(tmp_path):
    code, _, err = _invoke("expect", "-a", tmp_path / "missing.json")
    assert code == 2
    assert err.startswith("error:")
    code, _, _ = _invoke("estimate", "--sigma", 1, "--length", 1, "--lam", "1/2", "--epsilon", "1/2")
    assert code == 2


def test_help_exits_cleanly():
    assert _invoke("--help")[0] == 0


def test_hidden_and_tree_flags(fig3_files, tmp_path):
    code, out, _ = _invoke("learn", "--hidden", fig3_files[0])
    assert code == 0
    assert json.loads(out)["states"] == 4
    sample = tmp_path / "sample.json"
    _invoke("sample", "-a", fig3_files[0], "--kind", "E", "--count", 4, "-o", sample)
    assert _invoke("fit", "-s", sample, "--tree", "--max-states", 1)[0] == 0
