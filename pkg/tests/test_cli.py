import json
import os

import pytest

from holonomy_forge.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


SPEC_FULL_N0 = {"family": "hol1_n0", "n": 0}
SPEC_LAMBDA = {"family": "hol_m_u_lambda", "n": 1, "m": 1, "lambda": "1"}


def test_algebra_build(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", SPEC_FULL_N0)
    assert main(["algebra", "build", spec]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 0 and data["dim"] == 3
    assert len(data["basis"]) == 3
    assert all(entry["seven_tuple"] is not None for entry in data["basis"])


def test_algebra_bracket_table(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", SPEC_FULL_N0)
    assert main(["algebra", "bracket-table", spec]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 3


def test_malformed_json_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["algebra", "build", str(p)]) == 2
    err = capsys.readouterr().err
    assert "malformed JSON" in err


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["algebra", "build", str(tmp_path / "nope.json")]) == 2


def test_constraint_violation_exit_2_names_constraint(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", {
        "family": "hol_n_u_psi_k_l", "n": 2, "k": 1, "l": 2,
        "u": [{"B": [["0", "0"], ["0", "0"]], "C": [["1", "0"], ["0", "0"]]}],
        "psi": [["0", "1", "0", "1"]],
    })
    assert main(["algebra", "build", spec]) == 2
    err = capsys.readouterr().err
    assert "z(u) >= n+l-2k" in err


def test_berger_and_wirr_commands(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", SPEC_FULL_N0)
    assert main(["berger", "check", spec]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["berger"] is True and data["dim_R"] == 5
    assert main(["wirr", "check", spec, "--probes", "32", "--seed", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "WeaklyIrreducible"


def test_wirr_on_standard_subalgebra(tmp_path, capsys):
    # N1 at n=1 is not weakly irreducible; a witness is emitted
    path = write(tmp_path, "n1.json", {"n": 1, "standard": ["N1"]})
    assert main(["wirr", "check", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "NotWeaklyIrreducible"
    assert data["witness"]["dim"] == 3
    path = write(tmp_path, "sod.json", {"n": 2, "standard": [{"tag": "sod", "lo": 1, "hi": 2}]})
    assert main(["berger", "check", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim_R"] == 0


def test_wirr_witness_output(tmp_path, capsys):
    alg = {
        "n": 0,
        "basis": [[["1", "0", "0", "0"], ["0", "1", "0", "0"],
                   ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]]],
    }
    path = write(tmp_path, "alg.json", alg)
    assert main(["wirr", "check", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "NotWeaklyIrreducible"
    assert data["witness"]["dim"] > 0


def test_metric_and_holonomy_pipeline(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", SPEC_LAMBDA)
    out_metric = str(tmp_path / "metric.json")
    assert main(["metric", "build", spec, "--out", out_metric]) == 0
    assert main(["holonomy", "compute", out_metric]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["relation"] == "equal"
    assert data["stabilized"] is True


def test_holonomy_flat_metric(tmp_path, capsys):
    from holonomy_forge import jsonio
    from holonomy_forge.metrics import flat_metric

    path = tmp_path / "flat.json"
    path.write_text(jsonio.dumps(jsonio.metric_to_json(flat_metric(1))))
    assert main(["holonomy", "compute", str(path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 0


def test_byte_identical_reruns(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", SPEC_LAMBDA)
    out1 = str(tmp_path / "a.json")
    out2 = str(tmp_path / "b.json")
    assert main(["algebra", "build", spec, "--out", out1]) == 0
    assert main(["algebra", "build", spec, "--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()
    assert main(["wirr", "check", spec, "--out", out1]) == 0
    assert main(["wirr", "check", spec, "--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_holonomy_cache_env(tmp_path, capsys, monkeypatch):
    spec = write(tmp_path, "spec.json", SPEC_LAMBDA)
    out_metric = str(tmp_path / "metric.json")
    assert main(["metric", "build", spec, "--out", out_metric]) == 0
    cache = tmp_path / "cache"
    monkeypatch.setenv("HOLONOMY_FORGE_CACHE", str(cache))
    assert main(["holonomy", "compute", out_metric]) == 0
    first = capsys.readouterr().out
    assert any(f.startswith("holonomy-") for f in os.listdir(cache))
    assert main(["holonomy", "compute", out_metric]) == 0
    assert capsys.readouterr().out == first


def test_verify_campaign_pass_and_fail(tmp_path, capsys):
    good = write(tmp_path, "good.json", {"cases": [
        {"id": "ok", "family": SPEC_FULL_N0,
         "expect": {"dim": 3, "berger": True, "holonomy": "equal"}},
    ]})
    assert main(["verify", good]) == 0
    out = capsys.readouterr().out
    assert "[PASS] ok" in out
    bad = write(tmp_path, "bad.json", {"cases": [
        {"id": "mismatch", "family": SPEC_FULL_N0, "expect": {"dim": 4}},
    ]})
    assert main(["verify", bad]) == 1
    assert "[FAIL] mismatch" in capsys.readouterr().out


def test_verify_campaign_certificates(tmp_path, capsys):
    camp = write(tmp_path, "c.json", {"cases": [
        {"id": "z", "family": SPEC_FULL_N0, "expect": {"dim": 3}},
    ]})
    outdir = tmp_path / "certs"
    assert main(["verify", camp, "--out-dir", str(outdir)]) == 0
    cert = json.loads((outdir / "z.json").read_text())
    assert cert["pass"] is True and cert["tool_version"]


def test_verify_rejects_duplicate_ids(tmp_path, capsys):
    camp = write(tmp_path, "c.json", {"cases": [
        {"id": "a", "family": SPEC_FULL_N0, "expect": {}},
        {"id": "a", "family": SPEC_FULL_N0, "expect": {}},
    ]})
    assert main(["verify", camp]) == 2


def test_verify_parallel_jobs(tmp_path, capsys):
    camp = write(tmp_path, "c.json", {"cases": [
        {"id": "one", "family": SPEC_FULL_N0, "expect": {"dim": 3, "holonomy": "equal"}},
        {"id": "two", "family": SPEC_LAMBDA, "expect": {"dim": 4, "holonomy": "equal"}},
    ]})
    assert main(["verify", camp, "--jobs", "2"]) == 0
    out = capsys.readouterr().out
    # ordering is by case id, not completion order
    assert out.index("[PASS] one") < out.index("[PASS] two")


def test_structurally_broken_input_exit_2(tmp_path, capsys):
    p = write(tmp_path, "bad.json", {"n": 1, "g": "nope"})
    assert main(["holonomy", "compute", str(p)]) == 2


def test_bundled_n0_campaign_passes(capsys):
    import holonomy_forge

    path = os.path.join(os.path.dirname(holonomy_forge.__file__),
                        "campaigns", "n0_table1.json")
    assert os.path.exists(path)
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 6


def test_bundled_table2_campaign_exists():
    import json as _json

    import holonomy_forge

    path = os.path.join(os.path.dirname(holonomy_forge.__file__),
                        "campaigns", "table2_n1_n2.json")
    cases = _json.load(open(path))["cases"]
    assert len(cases) == 5
    assert all(c["expect"]["holonomy"] == "equal" for c in cases)
