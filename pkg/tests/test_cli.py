import io
import json
from pathlib import Path

import pytest

from powerdiam.cli import parse_group_spec, run
from powerdiam.errors import ParseError

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"

# name -> argv; output is compared byte for byte with golden/<name>.<ext>
CASES = {
    "diam_s4": ["diam", "S4"],
    "diam_z1": ["diam", "Z1"],
    "diam_s5": ["diam", "S5"],
    "diam_file_genset": ["diam", "S4", "--genset", "file:fixtures/s4_three.txt"],
    "diam_text": ["diam", "Z12xZ2", "--format", "text"],
    "rank_s4": ["rank", "S4"],
    "rank_power_d4": ["rank", "D4", "--power", "2"],
    "express_bfs": ["express", "S4", "--element", "(1 3)"],
    "express_family_sn": ["express", "S5", "--element", "(1 3)(2 5)", "--method", "family"],
    "express_family_dn": ["express", "D3", "--n", "2", "--element", "((1 2 3), (2 3))",
                          "--method", "family"],
    "express_power_bfs": ["express", "S4", "--n", "2", "--genset", "coprime",
                          "--element", "((1 2), (1 2 3 4))"],
    "power_diam_coprime": ["power-diam", "S4", "--n", "2", "--genset", "coprime"],
    "power_diam_canonical": ["power-diam", "Z6", "--n", "3", "--genset", "canonical"],
    "bounds_s4": ["bounds", "S4", "--n", "2"],
    "bounds_z12xz2": ["bounds", "Z12xZ2", "--n", "2"],
    "check_weak_d5": ["check-weak", "D5", "--n", "2"],
    "check_weak_z4": ["check-weak", "Z4", "--n", "2"],
    "check_weak_file": ["check-weak", "file:fixtures/klein.txt", "--n", "2"],
    "check_weak_text": ["check-weak", "S4", "--n", "2", "--format", "text"],
    "check_strong_z2": ["check-strong", "Z2", "--n", "2"],
    "check_strong_sampled": ["check-strong", "S3", "--n", "2", "--samples", "40", "--seed", "7"],
    "check_strong_abelian_formula": ["check-strong", "Z4xZ2", "--n", "2"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def golden_path(name):
    ext = "txt" if "--format" in CASES[name] else "json"
    return GOLDEN / f"{name}.{ext}"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, monkeypatch):
    monkeypatch.chdir(HERE)
    code, out, err = invoke(CASES[name])
    assert code == 0, err
    assert out == golden_path(name).read_text()


def test_table_golden(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = invoke(["table", "S3", "--out", "s3.csv"])
    assert code == 0
    assert out == (GOLDEN / "table_s3.json").read_text()
    assert (tmp_path / "s3.csv").read_text() == (GOLDEN / "table_s3.csv").read_text()
    code, out, _ = invoke(["table", "D3", "--n", "2", "--genset", "coprime", "--out", "d3.csv"])
    assert code == 0
    rows = (tmp_path / "d3.csv").read_text().splitlines()
    assert rows[0] == "element,length,word" and len(rows) == 37


def test_spec_examples():
    code, out, _ = invoke(["diam", "S4"])
    d = json.loads(out)
    assert (d["diam"], d["genset"]) == (7, "A' = {a',b}")
    assert json.loads(invoke(["diam", "Z1"])[1])["diam"] == 0
    d = json.loads(invoke(["check-weak", "D5", "--n", "2"])[1])
    assert (d["verdict"], d["bound"]) == ("verified-witness", 16)


@pytest.mark.parametrize("argv", [
    ["check-weak", "S4", "--n", "2"],
    ["diam", "S5"],
    ["check-strong", "S3", "--n", "2", "--samples", "30", "--seed", "3"],
])
def test_byte_identical_across_runs_and_threads(argv):
    outs = {invoke(argv + ["--threads", str(t)])[1] for t in (1, 1, 4)}
    assert len(outs) == 1


def test_exit_codes_and_errors(monkeypatch):
    monkeypatch.chdir(HERE)
    code, _, err = invoke(["diam", "Q4"])
    assert code == 1 and "position 0" in err
    code, _, err = invoke(["diam", "S4", "--max-states", "10"])
    assert code == 1 and "--max-states" in err
    code, _, err = invoke(["check-strong", "S3", "--n", "2"])
    assert code == 1 and "--samples" in err
    code, _, err = invoke(["rank", "S4", "--max-subsets", "3"])
    assert code == 1 and "--max-subsets" in err
    code, _, err = invoke(["diam", "file:fixtures/bad_repeat.txt"])
    assert code == 1 and "position" in err
    code, _, err = invoke(["diam", "S4", "--genset", "file:fixtures/s4_4cycle.txt"])
    assert code == 1 and "generate" in err
    code, _, err = invoke(["express", "S4", "--element", "(1 9)"])
    assert code == 1 and "position" in err
    code, _, err = invoke(["nosuch", "S4"])
    assert code == 1 and "usage" in err
    code, _, _ = invoke(["diam"])
    assert code == 1


def test_counterexample_exit_code(monkeypatch):
    from powerdiam import conjecture
    monkeypatch.setattr(conjecture, "strong_conjecture_bound", lambda *a: 1)
    code, out, _ = invoke(["check-strong", "Z2", "--n", "2"])
    assert code == 2 and json.loads(out)["verdict"] == "COUNTEREXAMPLE"


@pytest.mark.parametrize("text,kind,params", [
    ("S4", "S", (4,)), ("D10", "D", (10,)), ("A5", "A", (5,)), ("Z7", "Z", (7,)),
    ("Z12xZ2", "Z", (12, 2)), ("Z2xZ2xZ2", "Z", (2, 2, 2)),
])
def test_parse_group_spec(text, kind, params):
    spec = parse_group_spec(text)
    assert (spec.kind, spec.params) == (kind, params)


@pytest.mark.parametrize("text,position", [
    ("", 0), ("Q8", 0), ("S", 1), ("S4x", 2), ("Z2xZ", 4), ("Z2xS3", 2), ("S0", 1), ("file:", 5),
])
def test_parse_group_spec_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_group_spec(text)
    assert info.value.position == position


@pytest.mark.parametrize("spec,order", [("S1", 1), ("S2", 2), ("S5", 120), ("D6", 12), ("A4", 12),
                                        ("A5", 60), ("Z1", 1), ("Z2xZ3", 6)])
def test_group_orders(spec, order):
    d = json.loads(invoke(["rank", spec])[1])
    assert d["order"] == order
