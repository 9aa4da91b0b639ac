import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exceptional_euler import io as IO
from exceptional_euler.cli import main
from exceptional_euler.config import ConfigError, RunConfig, Tolerances


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("group, n, d, cplx", [("g2", 14, 7, False), ("f4", 52, 27, False), ("e6", 78, 27, True)])
def test_algebra_export(tmp_path, group, n, d, cplx):
    path = tmp_path / f"{group}.json"
    assert main(["algebra", "--group", group, "--output", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["schema"] == "exceptional-euler/algebra" and doc["version"] == 1
    assert doc["generators"]["shape"] == [n, d, d]
    assert doc["complex"] is cplx
    assert doc["killing"]["shape"] == [n, n]
    text = path.read_text()
    assert IO.dumps(IO.loads(text)) == text


def test_generators_survive_the_round_trip(tmp_path):
    from exceptional_euler.derivations import g2_golden
    path = tmp_path / "g2.json"
    main(["algebra", "--group", "g2", "--output", str(path)])
    G = IO.read_array(json.loads(path.read_text())["generators"])
    assert np.array_equal(G, g2_golden().generators)


@pytest.mark.parametrize("argv", [["volume", "--group", "su2"], ["volume", "--group", "g2", "--schedule", "euler_so4"]])
def test_volume_reports_multiplicity_one(capsys, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert "multiplicity m   1.000000000000" in out and "PASS" in out


def test_volume_json(tmp_path):
    path = tmp_path / "v.json"
    assert main(["volume", "--group", "e6", "--output", str(path)]) == 0
    doc = json.loads(path.read_text())
    ref = math.sqrt(3) * 2**17 * math.pi**42 / (3**10 * 5**5 * 7**3 * 11)
    assert abs(doc["quadrature_volume"] / ref - 1) < 1e-8


def test_non_integer_covering_exits_2(capsys, monkeypatch):
    from exceptional_euler import euler as E
    s = E.schedule_su2().with_ranges(x3=(0, 3 * math.pi))
    from exceptional_euler import groups
    spec = groups.CATALOG["su2"]
    monkeypatch.setitem(spec.schedules, "default", lambda: s)
    code, _, err = _run(capsys, "volume", "--group", "su2")
    assert code == 2 and "non-integer" in err


@pytest.mark.parametrize("argv", [
    ["volume", "--group", "g2", "--schedule", "iwasawa"],
    ["volume", "--group", "g2_split"],
    ["volume", "--group", "nope"],
    ["sample", "--group", "g2", "-n", "0"],
    ["verify", "--only", "nope"],
    ["algebra", "--format", "csv"],
    [],
])
def test_usage_errors_exit_64(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == 64


def test_sample_is_deterministic_and_orthogonal(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["sample", "--group", "g2", "-n", "50", "--seed", "7", "--output", str(a)])
    main(["sample", "--group", "g2", "-n", "50", "--seed", "7", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    for s in doc["samples"]:
        g = IO.read_array(s["matrix"])
        assert np.abs(g @ g.T - np.eye(7)).max() < 1e-10
        assert abs(np.linalg.det(g) - 1) < 1e-10


def test_sample_csv(capsys):
    code, out, _ = _run(capsys, "sample", "--group", "su2", "-n", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4 and lines[0].startswith("index,g1_1_re")


def test_roots_csv(capsys):
    code, out, _ = _run(capsys, "roots", "--group", "g2", "--format", "csv")
    rows = [l.split(",") for l in out.strip().splitlines()]
    assert code == 0 and rows[0] == ["kind", "index", "c1", "c2"]
    assert sum(r[0] == "root" for r in rows) == 12
    assert [r[2:] for r in rows if r[0] == "cartan"] == [["2", "-1"], ["-3", "2"]]


def test_metric_with_ricci(tmp_path):
    path = tmp_path / "m.json"
    assert main(["metric", "--group", "g2_split", "--schedule", "iwasawa", "--points", "2", "--ricci",
                 "--output", str(path)]) == 0
    doc = json.loads(path.read_text())
    for s in doc["samples"]:
        g, ric = IO.read_array(s["g"]), IO.read_array(s["ricci"])
        assert np.allclose(ric, -8 * g, atol=1e-5 * np.abs(g).max())


def test_output_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("EXCEPTIONAL_EULER_OUT", str(tmp_path))
    assert main(["roots", "--group", "su3"]) == 0
    assert (tmp_path / "roots_su3_default.json").exists()


def test_verify_subset_and_tolerance(capsys):
    code, out, _ = _run(capsys, "verify", "--only", "roots,f_function", "--tolerance", "1e-6")
    assert code == 0
    assert "[PASS] roots" in out and "[PASS] f_function" in out and "derivations" not in out
    assert "'volume_rel': 1e-06" in out


def test_run_config_rejects_bad_pairs():
    with pytest.raises(ConfigError):
        RunConfig(group="f4", schedule="euler_su3")
    with pytest.raises(ConfigError):
        RunConfig(group="g2", schedule="iwasawa")
    assert RunConfig(group="g2_split", schedule="iwasawa").schedule == "iwasawa"


def test_tolerances_only_loosen():
    t = Tolerances().loosened(1e-6)
    assert t.volume_rel == 1e-6 and t.einstein_spread == 1e-3 and t.sigmas == 3.0


def test_non_finite_numbers_rejected():
    with pytest.raises(IO.NonFiniteOutput):
        IO.dumps({"x": float("nan")})
    with pytest.raises(IO.NonFiniteOutput):
        IO.dumps([1.0, math.inf])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), max_size=20))
def test_json_round_trip_is_byte_identical(xs):
    text = IO.dumps(IO.document("t", {"xs": xs, "nested": [{"a": x} for x in xs[:3]]}))
    again = IO.dumps(IO.loads(text))
    assert again == text
    assert [float(v) for v in IO.loads(text)["xs"]] == [0.0 if x == 0 else x for x in xs]
