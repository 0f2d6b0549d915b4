import json
import subprocess
import sys

import pytest

from su3bethe.cli import main, run


def _ok(argv):
    payload, status, _ = run(argv)
    assert status == 0, payload
    assert payload["schema"] == 1
    for k in ("command", "inputs", "mode", "seed", "results", "residuals", "runtime_ms"):
        assert k in payload
    return payload


def test_solve_two_sites():
    p = _ok(["solve", "--N", "2", "--a", "1", "--b", "0"])
    (st,) = p["results"]["states"]
    assert abs(st["u"][0][0] + 0.5) < 1e-12 and abs(st["u"][0][1]) < 1e-12
    assert st["residual"] < 1e-12


def test_verify_lemma3():
    p = _ok(["verify", "--suite", "lemma3", "--trials", "200", "--seed", "7", "--max-m", "3"])
    assert p["results"]["summary"] == {"lemma3": "200/200"}


def test_verify_oracle():
    p = _ok(["verify", "--suite", "oracle", "--a", "2", "--b", "2", "--trials", "50"])
    assert p["results"]["summary"] == {"oracle": "50/50"}


def test_verify_orthogonality():
    p = _ok(["verify", "--suite", "orthogonality", "--kappa", "1"])
    assert p["results"]["ok"]


def test_verify_is_reproducible():
    a = _ok(["verify", "--suite", "zcoeff", "--trials", "5", "--seed", "3"])
    b = _ok(["verify", "--suite", "zcoeff", "--trials", "5", "--seed", "3"])
    a.pop("runtime_ms"), b.pop("runtime_ms")
    for p in (a, b):
        for r in p["results"]["suites"]:
            r.pop("runtime_ms")
    assert a == b


def test_replay_single_trial():
    p = _ok(["verify", "--suite", "lemma1", "--trial-seed", "99"])
    assert p["results"]["summary"] == {"lemma1": "1/1"}


def test_sp_exact_and_float():
    p = _ok(["sp", "--a", "2", "--b", "1", "--seed", "3"])
    assert p["results"]["equal"] is True
    q = _ok(["sp", "--a", "2", "--b", "1", "--seed", "3", "--mode", "float"])
    assert q["residuals"]["rel_diff"] < 1e-10


def test_zcoeff_and_norm():
    assert _ok(["zcoeff", "--a", "2", "--b", "1"])["results"]["equal"]
    assert _ok(["norm", "--a", "2", "--b", "1"])["results"]["ok"]
    assert _ok(["norm", "--N", "3", "--a", "1", "--b", "0"])["results"]["states"]


def test_ff_matches_ed():
    p = _ok(["ff", "--N", "4", "--a", "2", "--b", "1", "--site", "2"])
    assert p["results"]["ok"]


def test_ff_non_dominant_sector_is_structured_error():
    payload, status, _ = run(["ff", "--N", "4", "--a", "1", "--b", "1", "--site", "2"])
    assert status != 0
    assert payload["error"]["kind"] == "size"


def test_spectrum_contains_bethe_values():
    p = _ok(["spectrum", "--N", "3", "--sector", "1,1,1", "--w", "0.3"])
    assert p["results"]["bethe"]
    assert p["residuals"]["max_rel"] < 1e-9


@pytest.mark.parametrize("argv,kind", [
    (["bogus"], "usage"),
    (["solve", "--N", "3"], "usage"),
    (["verify", "--suite", "orthogonality", "--kappa", "2"], "size"),
    (["solve", "--N", "2", "--a", "2", "--b", "0"], "size"),
])
def test_errors(argv, kind):
    payload, status, _ = run(argv)
    assert status == 2
    assert payload["error"]["kind"] == kind


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["zcoeff", "--a", "1", "--b", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "zcoeff"
    assert capsys.readouterr().out == ""


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "su3bethe", "zcoeff", "--a", "1", "--b", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["results"]["equal"] is True
