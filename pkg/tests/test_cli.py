import io
import json
from contextlib import redirect_stdout

import pytest

from hilbertgeom import cli


def run(argv, payload=None, monkeypatch=None):
    if payload is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(payload if isinstance(payload, str) else json.dumps(payload)))
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.run(argv)
    return code, buf.getvalue()


ORTH = {"cone": {"type": "orthant", "dim": 2}}


def test_dist_example(monkeypatch):
    code, out = run(["dist"], {"space": ORTH, "x": [2, 1], "y": [1, 1]}, monkeypatch)
    assert code == 0
    assert out == '{"d_H": 0.6931471805599453}\n'


def test_extreme_points_flag():
    code, out = run(["extreme-points", "--n", "3"])
    assert code == 0
    assert json.loads(out)["count"] == 6


def test_compose_with_inverse_gives_identity(monkeypatch):
    h = {"eps": -1, "theta": [1, 2, 0], "g": [1, 2, 4]}
    code, out = run(["iso-invert"], {"K": {"n": 3}, "isometry": h}, monkeypatch)
    inv = json.loads(out)
    code, out = run(["iso-compose"], {"K": {"n": 3}, "h2": inv, "h1": h}, monkeypatch)
    res = json.loads(out)
    assert code == 0
    assert res["eps"] == 1 and res["theta"] == [0, 1, 2]
    assert res["g"] == pytest.approx([1.0, 1.0, 1.0], rel=1e-12)


def test_domain_error_exit_code(monkeypatch):
    code, out = run(["dist"], {"space": ORTH, "x": [1, 0], "y": [1, 1]}, monkeypatch)
    assert code == 1
    err = json.loads(out)["error"]
    assert err["kind"] == "NotInterior" and err["detail"]


def test_malformed_json_exit_code(monkeypatch):
    code, out = run(["dist"], "{not json", monkeypatch)
    assert code == 2
    assert "error" in json.loads(out)


def test_missing_field_exit_code(monkeypatch):
    code, out = run(["dist"], {"space": ORTH, "x": [1, 1]}, monkeypatch)
    assert code == 2


def test_missing_file_exit_code(tmp_path):
    code, _ = run(["dist", "--input", str(tmp_path / "nope.json")])
    assert code == 2


def test_unknown_subcommand_prints_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_output_file_and_tolerance(tmp_path, monkeypatch):
    target = tmp_path / "out.json"
    payload = {"space": {"cone": {"type": "lorentz", "dim": 3}},
               "oracle": {"family": "boost", "rapidity": 0.3}}
    code, out = run(["reconstruct", "--output", str(target), "--tolerance", "1e-30"], payload, monkeypatch)
    assert code == 0 and out == ""
    res = json.loads(target.read_text())
    assert res["within_tolerance"] is False
    assert len(res["T"]) == 3


def test_seeded_output_is_deterministic(monkeypatch):
    payload = {"K": {"n": 4}, "log_matrix": [[0, 0, 0, 0], [-0.75, 0.25, 0.25, 0.25],
                                             [0.25, -0.75, 0.25, 0.25], [0.25, 0.25, -0.75, 0.25]],
               "log_offset": [0.1, 0.2, -0.3, 0.0]}
    outs = {run(["recover", "--seed", "5"], payload, monkeypatch)[1] for _ in range(2)}
    assert len(outs) == 1


def test_unknown_oracle_family(monkeypatch):
    payload = {"space": {"cone": {"type": "lorentz", "dim": 3}}, "oracle": {"family": "shear"}}
    code, _ = run(["reconstruct"], payload, monkeypatch)
    assert code == 2


@pytest.mark.parametrize("command,payload,key", [
    ("tdist", {"space": ORTH, "x": [2, 2], "y": [1, 1]}, "d_T"),
    ("norm", {"space": {"cone": {"type": "orthant", "dim": 3}}, "x": [1, -2, 0]}, "norm"),
    ("body-dist", {"body": {"ball": {"radius": 1.0}}, "p": [0, 0], "q": [0.5, 0]}, "delta_H"),
    ("sdist", {"K": {"n": 2}, "p": [2, 1], "q": [1, 1]}, "d_H"),
    ("midpoint", {"K": {"n": 2}, "p": [1, 1], "q": [1, 3]}, "found"),
])
def test_other_commands(monkeypatch, command, payload, key):
    code, out = run([command], payload, monkeypatch)
    assert code == 0
    assert key in json.loads(out)
