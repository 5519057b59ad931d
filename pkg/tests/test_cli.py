import json
import subprocess
import sys

import pytest

from curvelab import corpus, gf
from curvelab.cli import SearchConfig, canonical_count, exhaustive_coeffs, main, run_search
from curvelab.curve import curve_from_text
from curvelab.mpoly import parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_examples_list(capsys):
    code, out, _ = run(capsys, "examples", "--list")
    assert code == 0
    names = [line.split()[0] for line in out.strip().splitlines()]
    assert names == corpus.names() and len(names) == 6


def test_examples_json_round_trip(capsys):
    code, out, _ = run(capsys, "examples", "sextic-f4", "--json", "--samples", "10")
    assert code == 0
    d = json.loads(out)
    assert d["counts"]["N1"] == 14 and d["expectations"]["mismatches"] == []
    K = gf.build_field(d["field"]["p"], d["field"]["s"])
    assert parse_poly(d["curve"]["text"], K) == corpus.get("sextic-f4").curve().F


def test_analyze_text_and_exit_ok(capsys):
    code, out, _ = run(capsys, "analyze", "--p", "2", "--s", "2", "--curve", "x^3 + y^3 + z^3", "--samples", "10")
    assert code == 0
    assert "N1" in out and "main1" in out


def test_analyze_affine(capsys):
    code, out, _ = run(capsys, "analyze", "--p", "5", "--affine", "--curve", "y - x^2", "--json", "--samples", "10")
    assert code == 0
    d = json.loads(out)
    assert d["counts"]["N1"] == 6 and d["frobenius"]["fnc"] is False


@pytest.mark.parametrize("argv", [
    ["analyze", "--p", "4", "--curve", "x+y+z"],
    ["analyze", "--p", "5", "--curve", "x^2 + y"],
    ["analyze", "--p", "5", "--curve", "x + * y"],
    ["analyze", "--p", "5"],
    ["examples", "no-such-curve"],
    ["search", "--p", "5"],
    ["verify-corpus", "--corpus", "/nonexistent/corpus.json"],
])
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("curvelab: error:")


def write_corpus(tmp_path, entries):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(entries))
    return str(path)


def test_verify_corpus_pass_and_corrupted(capsys, tmp_path):
    good = [{"name": "h2", "p": 2, "s": 2, "text": "x^3 + y^3 + z^3", "expected": {"N1": 9, "fnc": True}}]
    code, out, _ = run(capsys, "verify-corpus", "--corpus", write_corpus(tmp_path, good), "--samples", "10")
    assert code == 0 and out.startswith("PASS")
    bad = [dict(good[0], expected={"N1": 10, "fnc": True})]
    code, out, _ = run(capsys, "verify-corpus", "--corpus", write_corpus(tmp_path, bad), "--json", "--samples", "10")
    assert code == 2
    d = json.loads(out)
    assert d["ok"] is False and d["entries"][0]["mismatches"]
    code, _, err = run(capsys, "verify-corpus", "--corpus", write_corpus(tmp_path, [{"p": 2}]))
    assert code == 1 and "malformed" in err


def test_analyze_deterministic_across_workers(capsys):
    argv = ["examples", "hermitian-q3", "--json", "--samples", "12", "--seed", "4"]
    _, one, _ = run(capsys, *argv, "--workers", "1")
    _, four, _ = run(capsys, *argv, "--workers", "4")
    assert one == four


def test_dot_output(capsys, tmp_path):
    path = tmp_path / "trees.dot"
    code, _, _ = run(capsys, "examples", "sextic-f4", "--samples", "8", "--dot", str(path))
    assert code == 0
    text = path.read_text()
    assert text.count("digraph") == 7


def search_lines(capsys, *argv):
    code, out, _ = run(capsys, "search", *argv)
    lines = out.strip().splitlines()
    return code, [json.loads(x) for x in lines[:-1]], json.loads(lines[-1])["summary"]


def test_search_random_deterministic(capsys):
    argv = ["--p", "2", "--s", "2", "--degree", "3", "--count", "300", "--seed", "11"]
    code, a, sa = search_lines(capsys, *argv, "--workers", "1")
    _, b, sb = search_lines(capsys, *argv, "--workers", "3")
    assert code == 0
    assert a == b and sa == sb
    assert sa["examined"] == 300 and sa["matches"] == len(a)
    assert all(rec["fnc"] for rec in a)
    assert "workers" not in sa["config"]


def test_search_small_degree_pruned(capsys):
    code, recs, summary = search_lines(capsys, "--p", "3", "--s", "2", "--degree", "2")
    assert code == 0 and recs == [] and summary["pruned"] is True


def test_search_exhaustive_finds_fermat_cubic(capsys):
    code, recs, summary = search_lines(capsys, "--p", "2", "--s", "2", "--degree", "3", "--mode", "exhaustive",
                                       "--limit", "12")
    assert code == 0 and summary["matches"] == 12
    fermat = parse_poly("x^3 + y^3 + z^3", gf.build_field(2, 2))
    texts = [parse_poly(r["curve"], gf.build_field(2, 2)) for r in recs]
    assert fermat in texts
    # no cone or line-factor candidates survive
    assert all(r["irreducible_certified"] for r in recs)


def test_exhaustive_indexing_is_canonical():
    q, n = 3, 3
    seen = {tuple(exhaustive_coeffs(i, n, q)) for i in range(canonical_count(q, n))}
    assert len(seen) == (q**n - 1) // (q - 1)
    for c in seen:
        assert next(x for x in c if x) == 1


def test_run_search_library_api():
    out = []
    cfg = SearchConfig(2, 2, 3, "random", samples=50, seed=2)
    summary = run_search(cfg, emit=out.append)
    assert summary["matches"] == len(out)
    for line in out:
        rec = json.loads(line)
        C = curve_from_text(rec["curve"], 2, 2)
        assert C.d == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "curvelab", "examples", "--list"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "hermitian-q2" in proc.stdout
