import json
import subprocess
import sys

import pytest

from gnc.cli import main, run


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "xyz": write(tmp_path, "xyz.json", {"ambient": 3, "facets": [[1, 2], [2, 3], [1, 3]], "boundary": {}}),
        "bad": write(tmp_path, "bad.json", {"ambient": 4, "facets": [[1, 2], [2, 3], [3, 4]],
                                            "boundary": {"1": "1", "4": "1"}}),
        "cone": write(tmp_path, "cone.json", {"ambient": 4, "facets": [[1, 2, 4], [2, 3, 4], [1, 3, 4]],
                                              "boundary": {"4": "1"}}),
        "cone0": write(tmp_path, "cone0.json", {"ambient": 4, "facets": [[1, 2, 4], [2, 3, 4], [1, 3, 4]]}),
        "broken": write(tmp_path, "broken.json", "{not json"),
        "extra": write(tmp_path, "extra.json", {"ambient": 2, "facets": [[1, 2]], "colour": "red"}),
        "offcore": write(tmp_path, "offcore.json", {"ambient": 3, "facets": [[1, 2], [2, 3], [1, 3]],
                                                    "boundary": {"1": "1/2"}}),
    }


def test_validate_ok(files):
    code, report = run(["validate", files["xyz"]])
    assert code == 0 and report["status"] == "ok"
    assert report["results"]["core"] == [] and report["results"]["ell"] == "0"
    assert report["model"]["facets"] == [[1, 2], [1, 3], [2, 3]]


def test_validate_non_gnc_has_witness(files):
    code, report = run(["validate", files["bad"]])
    assert code == 1 and report["axiom"] == "b"
    assert report["witness"] == {"face": [1], "facet": [1, 2]}


def test_axiom_c_witness_is_one_based(files):
    code, report = run(["validate", files["offcore"]])
    assert code == 1 and report["axiom"] == "c" and report["witness"]["index"] == 1


@pytest.mark.parametrize("name", ["broken", "extra"])
def test_malformed_files(files, name):
    code, report = run(["validate", files[name]])
    assert code == 1 and report["status"] == "invalid" and report["message"]


def test_missing_file_and_bad_arguments(files, tmp_path):
    assert run(["validate", str(tmp_path / "none.json")])[0] == 1
    assert run(["cohomology", files["xyz"]])[0] == 1
    assert run(["frobnicate", files["xyz"]])[0] == 1


def test_cohomology_and_euler(files):
    assert run(["cohomology", "--twist", "0", files["xyz"]])[1]["results"]["dims"] == [1, 1]
    assert run(["cohomology", "--twist", "-1", files["cone"]])[1]["results"]["dims"] == [0, 0, 1]
    assert run(["euler", "--twist", "2", files["xyz"]])[1]["results"]["euler"] == 6


def test_centers_lcs_chain_sing(files):
    assert run(["centers", files["xyz"]])[1]["results"]["lc_centers"] == [[], [1], [2], [3], [1, 2], [1, 3], [2, 3]]
    chain = run(["lcs-chain", files["xyz"]])[1]["results"]["chain"]
    assert [c["facets"] for c in chain] == [[[1, 2], [1, 3], [2, 3]], [[1], [2], [3]], [[]]]
    assert run(["lcs", files["xyz"]])[1]["results"]["lcs"]["facets"] == [[1], [2], [3]]
    assert run(["sing", files["cone"]])[1]["results"]["sing"]["facets"] == [[1, 4], [2, 4], [3, 4]]


def test_resolve_and_adjunction(files):
    res = run(["resolve", "--level", "1", "--mode", "strict_ordered", files["xyz"]])[1]["results"]
    assert sorted(c["intersection"] for c in res["components"]) == [[1], [2], [3]]
    code, report = run(["adjunction", "--level", "2", files["cone"]])
    assert code == 0 and report["results"]["degrees"] == ["0"]


def test_injectivity(files):
    code, report = run(["check-injectivity", "--twist", "0", "--divisor", "0,0,0,1", files["cone"]])
    assert code == 0
    q0 = report["results"]["verdicts"][0]
    assert (q0["source_dim"], q0["target_dim"], q0["injective"]) == (1, 4, True)
    code, report = run(["check-injectivity", "--twist", "0", "--generic-degree", "1", "--seed", "3", files["xyz"]])
    assert code == 0
    res = report["results"]
    assert res["seeds"] == [3, 4, 5] and res["seeds_agree"]
    assert res["verdicts"][1]["injective"] is False
    assert not any(res["hypotheses"].values())
    assert run(["check-injectivity", "--twist", "0", "--divisor", "1,2", files["cone"]])[0] == 1


def test_vanishing_and_ideal_sequence(files):
    code, report = run(["check-vanishing", "--from", "0", "--to", "3", files["cone0"]])
    assert code == 0 and report["results"]["passed"]
    code, report = run(["ideal-seq", "--centers", "1,2", "--dmax", "4", files["xyz"]])
    assert code == 0 and report["results"]["Z_meet_Y"] == [[1], [2]]
    assert run(["ideal-seq", "--centers", "1,2,3", "--dmax", "4", files["xyz"]])[0] == 1


def test_report_is_deterministic(files, capsys, monkeypatch):
    monkeypatch.setenv("GNC_SEED", "11")
    assert main(["report", files["cone"]]) == 0
    first = capsys.readouterr().out
    assert main(["report", files["cone"]]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["results"]["passed"]


def test_bad_seed_env(files, monkeypatch):
    monkeypatch.setenv("GNC_SEED", "many")
    assert run(["report", files["xyz"]])[0] == 1


def test_module_entry_point(files):
    out = subprocess.run([sys.executable, "-m", "gnc", "validate", files["bad"]], capture_output=True, text=True)
    assert out.returncode == 1 and json.loads(out.stdout)["axiom"] == "b"
