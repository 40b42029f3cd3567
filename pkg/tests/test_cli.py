import json
import subprocess
import sys

import pytest

from airytrace.cli import RunConfig, main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_field_info(capsys):
    rc, out, _ = run(capsys, "field-info", "--degree", "3")
    assert rc == 0 and json.loads(out)["modulus"] == "0xb"
    rc, out, _ = run(capsys, "--field-poly", "0x25", "field-info", "--format", "text")
    assert rc == 0 and "degree: 5" in out


def test_reducible_modulus_exits_nonzero(capsys):
    rc, _, err = run(capsys, "--field-poly", "0x5", "verify-paper", "--only", "13")
    assert rc == 2 and "reducible" in err
    rc, _, err = run(capsys, "trace", "--n", "1", "--field-poly", "0xf")
    assert rc == 2


def test_trace_formats(capsys):
    rc, out, _ = run(capsys, "trace", "--n", "2", "--f", "monomial", "--degree", "7", "--t", "1",
                     "--format", "text")
    assert rc == 0 and "(-7+2i)/2" in out and "over (1+i)^2" in out
    rc, out, _ = run(capsys, "trace", "--n", "1", "--degree", "3", "--t", "all", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "t,value,rational,abs2" and len(lines) == 9
    rc, out, _ = run(capsys, "trace", "--n", "1", "--r", "5", "--degree", "15", "--t", "1")
    assert json.loads(out)["traces"][0]["rational"] == "14"


def test_census_and_checkpoint(capsys, tmp_path):
    rc, out, _ = run(capsys, "census", "--n", "1", "--r", "5", "--degree", "18")
    js = json.loads(out)
    assert rc == 0 and {e["value"]: e["mult"] for e in js["entries"]}["14"] == 9
    assert js["m22"]["decimal"].startswith("3.99963378766551080898593515752")
    ck = tmp_path / "c.jsonl"
    rc, out, _ = run(capsys, "--threads", "2", "--checkpoint", str(ck), "census", "--n", "1",
                     "--degree", "8", "--method", "naive", "--format", "csv")
    assert rc == 0 and ck.exists() and out.startswith("value,mult")


def test_moments_ppd_kernel(capsys):
    rc, out, _ = run(capsys, "moments", "m4-check", "--format", "text")
    assert rc == 0 and "7684" in out and "contradiction confirmed" in out
    rc, out, _ = run(capsys, "ppd", "check", "--family", "suzuki", "--n", "7")
    js = json.loads(out)
    assert rc == 0 and js["ppd"]["P21"]["ell"] == 113 and js["checks"]["interval_agrees"]
    rc, out, _ = run(capsys, "ppd", "ree", "--n-max", "99", "--report", "json")
    assert rc == 0 and json.loads(out)["failures"] == []
    rc, out, _ = run(capsys, "kernel", "--n", "2", "--degree", "10")
    js = json.loads(out)
    assert rc == 0 and js["size"] == 16 and js["abs_trace0_sq"] == 16


def test_verify_ledger_deterministic(capsys):
    outs = []
    for threads in ("1", "1"):
        rc, out, _ = run(capsys, "--threads", threads, "verify-paper", "--only", "3,5,12,13")
        assert rc == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert all(c["ok"] for c in json.loads(outs[0])["checks"])


def test_run_config_guards():
    with pytest.raises(ValueError):
        RunConfig("x", threads=0)
    with pytest.raises(ValueError):
        RunConfig("x", fmt="xml")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "airytrace", "field-info", "--degree", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and '"modulus": "0x3"' in r.stdout
