import json
import shutil
import subprocess

import numpy as np
import pytest

from finmetric import (
    DistanceMatrix,
    decode_natural,
    densify,
    discrete_metric,
    encode_natural,
    extend_metric,
    family_member,
    perturb,
    sample_pseudometric,
    sup_distance,
    to_canonical,
)
from finmetric.cli import matrix_to_csv, matrix_to_json, parse_matrix_csv, parse_matrix_json, run


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def csv_out(capsys):
    return parse_matrix_csv(capsys.readouterr().out)


def test_validate_discrete_metric(write, capsys):
    path = write("d.csv", matrix_to_csv(discrete_metric(3)))
    assert run(["validate", path, "--metric"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["is_metric"] is True and report["violations"] == []


def test_validate_triangle_violation(write, capsys):
    path = write("bad.csv", "0,1,3\n1,0,1\n3,1,0\n")
    assert run(["validate", path]) == 2
    report = json.loads(capsys.readouterr().out)
    assert report["violations"] == [{"kind": "triangle", "indices": [1, 2, 3], "magnitude": 1.0}]


def test_validate_metric_flag_and_pretty(write, capsys):
    path = write("z.json", json.dumps({"n": 2, "labels": ["a", "b"], "matrix": [[0, 0], [0, 0]]}))
    assert run(["validate", path]) == 0
    capsys.readouterr()
    assert run(["validate", path, "--metric", "--pretty"]) == 2
    assert "is not a metric" in capsys.readouterr().out


def test_validate_tolerance(write, capsys):
    path = write("t.csv", "0,1,2.0000000001\n1,0,1\n2.0000000001,1,0\n")
    assert run(["validate", path]) == 2
    assert run(["validate", path, "--tolerance", "1e-9"]) == 0


def test_encode_decode_roundtrip(write, capsys):
    d = sample_pseudometric(5, seed=8)
    path = write("d.csv", matrix_to_csv(d))
    assert run(["encode", path]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert len(doc["closed"]) == 9
    coords = write("q.json", out)
    assert run(["decode", coords]) == 0
    back = csv_out(capsys)
    assert sup_distance(back, d) <= 1e-9
    decoded = write("back.csv", matrix_to_csv(back))
    assert run(["distance", path, decoded]) == 0
    assert json.loads(capsys.readouterr().out)["sup_distance"] <= 1e-9


def test_encode_natural_matches_library(write, capsys):
    d = sample_pseudometric(4, seed=1)
    path = write("d.csv", matrix_to_csv(d))
    assert run(["encode", path, "--natural"]) == 0
    doc = json.loads(capsys.readouterr().out)
    c = encode_natural(d)
    assert doc["levels"] == [{"s": lv.s, "u": list(lv.u)} for lv in c.levels]
    coords = write("c.json", json.dumps(doc))
    assert run(["decode", coords, "--format", "json"]) == 0
    m, _ = parse_matrix_json(capsys.readouterr().out)
    assert m == decode_natural(c)
    q = to_canonical(c)
    assert run(["encode", path]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 4, "closed": list(q.closed), "half_open": q.half_open}


def test_densify_matches_library(write, capsys):
    d = sample_pseudometric(5, seed=4)
    path = write("d.csv", matrix_to_csv(d))
    assert run(["densify", path, "--epsilon", "0.25"]) == 0
    assert csv_out(capsys) == densify(d, 0.25)
    base = write("b.csv", matrix_to_csv(discrete_metric(5, 0.1)))
    assert run(["densify", path, "--epsilon", "0.25", "--base", base]) == 0
    assert csv_out(capsys) == densify(d, 0.25, discrete_metric(5, 0.1))


def test_extend_matches_library(write, capsys):
    e = write("e.csv", "0,1\n1,0\n")
    target = write("t.csv", matrix_to_csv(discrete_metric(4)))
    assert run(["extend", "--subset", e, "--indices", "1,3", "--n", "4", "--target", target,
                "--cap", "1", "--floor", "0.01"]) == 0
    expected = extend_metric([[0, 1], [1, 0]], 4, [0, 2], discrete_metric(4), 1.0, 0.01)
    assert csv_out(capsys) == expected


def test_perturb_matches_library(write, capsys):
    d = sample_pseudometric(4, seed=6)
    path = write("d.csv", matrix_to_csv(d))
    assert run(["perturb", path, "--pair", "1,2", "--epsilon", "0.5"]) == 0
    assert csv_out(capsys) == perturb(d, 0, 1, 0.5)


def test_family(write, capsys):
    assert run(["family", "--bits", "0110"]) == 0
    assert csv_out(capsys) == family_member("0110")
    sel = write("sel.txt", "01\n11\n10\n00\n")
    assert run(["family", "--separation", sel]) == 0
    assert json.loads(capsys.readouterr().out) == {"count": 4, "separation": 1.0, "singleton": False}
    single = write("one.txt", "0101\n")
    assert run(["family", "--separation", single]) == 0
    assert json.loads(capsys.readouterr().out)["singleton"] is True


def test_sample_is_deterministic(capsys):
    assert run(["sample", "--n", "5", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert run(["sample", "--n", "5", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first
    assert parse_matrix_csv(first) == sample_pseudometric(5, 3)
    assert run(["sample", "--n", "5", "--seed", "3", "--metric"]) == 0
    assert csv_out(capsys) == sample_pseudometric(5, 3, metric_only=True)


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 1),
        (["nonsense"], 1),
        (["densify"], 1),
        (["family"], 1),
        (["perturb", "{d}", "--pair", "1", "--epsilon", "1"], 1),
        (["validate", "{missing}"], 3),
        (["validate", "{nan}"], 3),
        (["validate", "{ragged}"], 3),
        (["validate", "{badjson}"], 3),
        (["densify", "{d}", "--epsilon", "0"], 4),
        (["perturb", "{d}", "--pair", "1,1", "--epsilon", "1"], 4),
        (["encode", "{bad}"], 4),
        (["family", "--bits", "012"], 4),
    ],
)
def test_exit_codes(argv, code, write, tmp_path, capsys):
    paths = {
        "d": write("d.csv", "0,1\n1,0\n"),
        "missing": str(tmp_path / "nope.csv"),
        "nan": write("nan.csv", "0,nan\nnan,0\n"),
        "ragged": write("ragged.csv", "0,1\n1\n"),
        "badjson": write("bad.json", "{not json"),
        "bad": write("bad.csv", "0,1,3\n1,0,1\n3,1,0\n"),
    }
    assert run([a.format(**paths) for a in argv]) == code
    if code:
        assert capsys.readouterr().err


def test_csv_json_roundtrip_exact():
    rng = np.random.default_rng(0)
    raw = rng.uniform(0, 10, size=(6, 6))
    m = sample_pseudometric(6, 12)
    for values in (m, raw):
        dm = DistanceMatrix(values)
        assert parse_matrix_csv(matrix_to_csv(dm)) == dm
        back, labels = parse_matrix_json(matrix_to_json(dm, list("abcdef")))
        assert back == dm and labels == list("abcdef")


@pytest.mark.skipif(shutil.which("finmetric") is None, reason="console script not installed")
def test_console_script(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1,3\n1,0,1\n3,1,0\n")
    proc = subprocess.run(["finmetric", "validate", str(path)], capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["violations"][0]["indices"] == [1, 2, 3]
