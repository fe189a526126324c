import json
import subprocess
import sys

import pytest

from latticeforge import cli
from latticeforge.verify import Check


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return [json.loads(line) for line in text.splitlines()]


class TestCount:
    def test_tamari_intervals(self, capsys):
        code, out, _ = run(capsys, "count", "tamari-intervals", "5")
        assert code == 0
        assert rows(out) == [{"object": "tamari-intervals", "n": 5, "count": 399}]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "count", "tamari-intervals", "5", "--format", "csv")
        assert code == 0 and out.splitlines() == ["object,n,count", "tamari-intervals,5,399"]

    def test_enumeration_agrees_with_formula(self, capsys):
        _, formula, _ = run(capsys, "count", "tamari-intervals", "4")
        _, brute, _ = run(capsys, "count", "tamari-intervals", "4", "--enumerate")
        assert rows(formula)[0]["count"] == rows(brute)[0]["count"] == 68

    @pytest.mark.parametrize(
        "argv,value",
        [
            (["m-intervals", "2", "3"], 58),
            (["permutrees", "NNDN"], 18),
            (["s-trees", "--s", "0,2,3"], 24),
        ],
    )
    def test_other_objects(self, capsys, argv, value):
        code, out, _ = run(capsys, "count", *argv)
        assert code == 0 and rows(out)[0]["count"] == value

    def test_enumeration_cap(self, capsys):
        code, out, err = run(capsys, "count", "tamari-intervals", "9", "--enumerate")
        assert code == 1 and not out and "cap" in err


class TestTransforms:
    def test_beta_on_single_node(self, capsys):
        code, out, _ = run(capsys, "invol", "beta", '{"n": 1, "inc": [], "dec": []}')
        assert code == 0
        assert rows(out) == [{"input": {"n": 1, "inc": [], "dec": []}, "output": {"n": 1, "inc": [], "dec": []}}]

    def test_psi_on_size_two(self, capsys):
        code, out, _ = run(capsys, "invol", "psi", "--n", "2")
        assert code == 0
        pairs = rows(out)
        assert len(pairs) == 3
        back = {json.dumps(r["output"], sort_keys=True): r["input"] for r in pairs}
        for r in pairs:
            assert back[json.dumps(r["input"], sort_keys=True)] == r["output"]

    def test_interval_to_trees(self, capsys):
        code, out, _ = run(capsys, "map", "interval-to-trees", '{"n": 2, "inc": [[1, 2]], "dec": []}')
        assert code == 0 and rows(out) == [{"lower": "(())", "upper": "(())"}]

    def test_zeta_inverse(self, capsys):
        code, out, _ = run(capsys, "map", "zeta-inverse", "0120")
        assert code == 0 and rows(out) == [{"input": [0, 1, 2, 0], "output": [0, 0, 0, 1]}]

    def test_bad_interval(self, capsys):
        code, out, err = run(capsys, "invol", "beta", '{"n": 3, "inc": [[1, 3]], "dec": []}')
        assert code == 1 and not out and err.startswith("latticeforge: error:")


class TestHasse:
    def test_weak_json(self, capsys):
        code, out, _ = run(capsys, "hasse", "weak", "--n", "2")
        assert code == 0 and rows(out) == [{"node": "12", "covers": ["21"]}, {"node": "21", "covers": []}]

    def test_tamari_dot(self, capsys):
        code, out, _ = run(capsys, "hasse", "tamari", "--n", "3", "--format", "dot")
        assert code == 0
        assert out.startswith("digraph tamari {") and out.rstrip().endswith("}")
        assert out.count("->") == 5

    def test_weak_csv(self, capsys):
        code, out, _ = run(capsys, "hasse", "weak", "--n", "3", "--format", "csv")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "source,target" and len(lines) == 1 + 6

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, "hasse", "permutree", "--decoration", "NBUN", "--format", "dot")
        _, second, _ = run(capsys, "hasse", "permutree", "--decoration", "NBUN", "--format", "dot")
        assert first == second and first.startswith("digraph")

    def test_size_cap(self, capsys):
        code, out, err = run(capsys, "hasse", "weak", "--n", "9")
        assert code == 1 and not out and "cap" in err

    def test_dot_only_for_hasse(self, capsys):
        code, _, err = run(capsys, "count", "tamari-intervals", "3", "--format", "dot")
        assert code == 1 and "dot" in err


class TestQt:
    def test_schur(self, capsys):
        code, out, _ = run(capsys, "qt", "schur", "--n", "3")
        assert code == 0 and rows(out)[0]["schur"] == {"3,0": 1, "1,1": 1}

    def test_distribution(self, capsys):
        code, out, _ = run(capsys, "qt", "distribution", "2,1")
        assert code == 0 and rows(out)[0]["polynomial"] == "q^3 + q^2*t + q*t^2 + q*t + t^3"

    def test_bad_partition(self, capsys):
        code, _, err = run(capsys, "qt", "distribution", "1,2")
        assert code == 1 and "partition" in err


class TestVerify:
    def test_rise_contact(self, capsys):
        code, out, _ = run(capsys, "verify", "rise-contact", "--n", "5")
        assert code == 0
        assert all(r["ok"] for r in rows(out))
        assert rows(out)[-1]["check"] == "summary"

    def test_failure_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "run_suite", lambda name, opts: [Check("forced", False, "x")])
        code, out, _ = run(capsys, "verify", "zeta")
        assert code == 2 and rows(out)[-1]["ok"] is False

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "nope")
        assert code == 1 and "invalid choice" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "count.json"
    code, out, _ = run(capsys, "count", "tamari-intervals", "3", "--out", str(target))
    assert code == 0 and not out
    assert json.loads(target.read_text())["count"] == 13


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "latticeforge", "count", "triangular", "6"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 7
