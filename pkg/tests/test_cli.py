import json
import os
import subprocess
import sys

import pytest

from stein_obstruct.cli import SCHEMA, run
from stein_obstruct.fillability import Verdict


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv)
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert json.loads(json.dumps(doc)) == doc
    return code, doc


def test_homology_json(capsys):
    code, doc = call_json(capsys, "homology", "--rank", "1", "--w2", "1")
    assert code == 0
    assert doc["verified_homology"] == [0] * 6
    assert doc["truncated_indices"] == [6]


def test_homology_text(capsys):
    code, out, _ = call(capsys, "--format", "text", "homology", "--rank", "2", "--w2", "01", "--top", "5")
    assert code == 0 and "top index 5" in out


def test_omega7(capsys):
    code, doc = call_json(capsys, "omega7", "--rank", "1", "--w2", "0")
    assert code == 0
    assert doc["report"]["e3_61"] == 0 and doc["report"]["trivial"]


def test_sweep_independent_of_jobs_and_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("STEIN_OBSTRUCT_CACHE", raising=False)
    _, serial = call_json(capsys, "sweep", "--max-rank", "3")
    _, parallel = call_json(capsys, "sweep", "--max-rank", "3", "--jobs", "2")
    _, cached = call_json(capsys, "--cache-dir", str(tmp_path), "sweep", "--max-rank", "3")
    _, warm = call_json(capsys, "--cache-dir", str(tmp_path), "sweep", "--max-rank", "3", "--jobs", "2")
    assert serial == parallel == cached == warm
    assert serial["count"] == 14 and serial["all_h3_zero"]
    assert any(tmp_path.iterdir())


def test_env_cache_takes_precedence(capsys, tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("STEIN_OBSTRUCT_CACHE", str(env_dir))
    call_json(capsys, "--cache-dir", str(flag_dir), "homology", "--rank", "1", "--w2", "1")
    assert env_dir.exists() and not flag_dir.exists()


def test_classify_seven(capsys):
    code, doc = call_json(capsys, "classify", "seven", "--b2", "2", "--c1", "3,-4")
    assert code == 0
    assert doc["descriptor"]["c1_mod2"] == [1, 0]
    assert doc["verdict"]["status"] == "Fillable"
    code, doc = call_json(capsys, "classify", "seven", "--b2", "0")
    assert doc["verdict"]["status"] == "Fillable"


def test_classify_sphere(capsys):
    code, doc = call_json(capsys, "classify", "sphere", "--q", "7", "--cokerj")
    assert code == 0 and doc["verdict"]["status"] == "NotFillable"
    v = Verdict.from_dict(doc["verdict"])
    assert v.as_dict() == doc["verdict"]
    code, doc = call_json(capsys, "classify", "sphere", "--q", "9", "--cokerj")
    assert doc["verdict"]["description"] == "C_9 ∈ {0, Z_2}"


def test_obstructions(capsys, tmp_path):
    f = tmp_path / "s1s6.json"
    f.write_text(json.dumps({"q": 3, "chern_top_products": [[[3], 2]]}))
    code, doc = call_json(capsys, "obstructions", str(f))
    assert code == 1 and doc["verdict"]["status"] == "NotFillable"
    f.write_text(json.dumps({"q": 3}))
    code, doc = call_json(capsys, "obstructions", str(f))
    assert code == 0 and doc["verdict"]["status"] == "NoObstructionFound"


def test_obstructions_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"q": 2, "u_nonzero_degrees": [5]}'))
    code, doc = call_json(capsys, "obstructions", "-")
    assert code == 1 and doc["violations"][0]["degrees"] == [5]


def test_malformed_json(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{\n  "q": 3,\n  "aspherical": tru\n}\n')
    code, out, err = call(capsys, "obstructions", str(f))
    assert code == 2 and out == ""
    assert "bad.json:3:" in err and '"aspherical": tru' in err


def test_propagate(capsys, tmp_path):
    f = tmp_path / "flags.json"
    f.write_text(json.dumps({"flags": {"A": True}}))
    code, doc = call_json(capsys, "subcritical", "propagate", str(f))
    assert code == 0 and doc["flags"]["E"] is True
    f.write_text(json.dumps({"A": True, "E": False}))
    code, doc = call_json(capsys, "subcritical", "propagate", str(f))
    assert code == 1 and not doc["consistent"]
    f.write_text(json.dumps({"E": False}))
    code, doc = call_json(capsys, "subcritical", "propagate", str(f), "--genus-positive")
    assert doc["genus_positive"] and doc["flags"]["C"] is False


def test_normal_form(capsys):
    code, out, _ = call(capsys, "--format", "text", "subcritical", "normal-form", "--dim", "7", "--spin", "-r", "1", "-s", "2")
    assert code == 0 and out.strip() == "(S⁵×S²)♯₂(S⁴×S³)"
    code, out, err = call(capsys, "subcritical", "normal-form", "--dim", "6")
    assert code == 2 and "BadDimension" in err


def test_kunneth(capsys):
    code, doc = call_json(capsys, "kunneth", "--rank", "2", "--w2-last", "1")
    assert code == 0 and doc["report"]["ok"]


def test_samelson(capsys):
    code, doc = call_json(capsys, "samelson", "--samples", "20", "--seed", "4")
    assert code == 0 and doc["report"]["discrepancies"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["homology", "--rank", "2", "--w2", "1"],
        ["homology", "--rank", "1", "--w2", "2"],
        ["homology", "--rank", "1", "--w2", "1", "--top", "3"],
        ["classify", "seven", "--b2", "2", "--c1", "1"],
        ["classify", "seven", "--b2", "1", "--c1", "x"],
        ["classify", "sphere", "--q", "5", "--bp", "--cokerj"],
        ["sweep", "--max-rank", "17"],
        ["kunneth", "--rank", "1", "--w2-last", "0"],
        ["obstructions", "/nonexistent.json"],
        ["nosuchcommand"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and err


def test_selftest(capsys):
    code, out, _ = call(capsys, "--format", "text", "selftest")
    assert code == 0
    assert out.count("[PASS]") == 12


def test_module_entry_point_pure_backend():
    env = dict(os.environ, STEIN_OBSTRUCT_PURE="1")
    proc = subprocess.run(
        [sys.executable, "-c", "import stein_obstruct.linalg as l; print(l.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert proc.stdout.strip() == "python"
    proc = subprocess.run(
        [sys.executable, "-m", "stein_obstruct", "classify", "sphere", "--q", "7", "--cokerj"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"]["status"] == "NotFillable"
