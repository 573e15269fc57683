import json
import subprocess
import sys
from pathlib import Path

import pytest

from ncgkit.cli import execute

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
INP = CORPUS / "inputs"


def run(*argv):
    return execute([str(a) for a in argv])


def test_help():
    code, out, _ = run("--help")
    assert code == 0 and "toeplitz" in out
    for sub in ("hh", "hc", "hp", "pair", "fredholm", "star", "psido", "hopf", "toeplitz", "corpus"):
        assert run(sub, "--help")[0] == 0


def test_console_script():
    p = subprocess.run([sys.executable, "-m", "ncgkit.cli", "toeplitz", "index", "z^3"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "-3"


def test_hc_json():
    code, out, _ = run("hc", INP / "m2.json", "--deg", "2", "--json")
    assert code == 0 and json.loads(out)["dim"] == 1


def test_global_flags_either_side():
    a = run("--json", "hc", INP / "m2.json", "--deg", "0")
    b = run("hc", INP / "m2.json", "--deg", "0", "--json")
    assert a == b and a[0] == 0


def test_toeplitz_text():
    assert run("toeplitz", "index", "z^3") == (0, "-3\n", "")


def test_radul_negative_window():
    code, out, _ = run("psido", "radul", INP / "zd.json", INP / "z_inv.json", "--window", "-6:4", "--json")
    assert code == 0 and json.loads(out)["radul"] == "-1/2"


def test_pairings():
    code, out, _ = run("pair", "--cocycle", INP / "winding.json", "--class", INP / "u_z2.json", "--json")
    assert code == 0 and json.loads(out)["pairing"] == "-2"


def test_exit_codes(tmp_path):
    assert run("toeplitz", "index", "1 + z")[0] == 1
    assert run("hc", tmp_path / "missing.json", "--deg", "0")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("hc", INP / "m2.json", "--deg", "x")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "structure": [[0, 0, 5, "1"]], "unit": ["1", "0"]}')
    code, _, err = run("hc", bad, "--deg", "0")
    assert code == 1 and err
    nonunital = tmp_path / "nu.json"
    nonunital.write_text(json.dumps({"dim": 2, "unit": ["0", "1"], "structure": [
        [0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"], [1, 1, 1, "1"]]}))
    assert run("hc", nonunital, "--deg", "0")[0] == 1


def test_selftest_seeded():
    a = run("selftest", "--trials", "10", "--seed", "3", "--json")
    assert a[0] == 0 and a == run("--seed", "3", "selftest", "--trials", "10", "--json")
    assert json.loads(a[1])["failures"] == []


def test_corpus_deterministic():
    one = run("corpus", "run", "--dir", CORPUS, "--threads", "1", "--json")
    four = run("corpus", "run", "--dir", CORPUS, "--threads", "4", "--json")
    assert one[0] == 0 and one == four
    rep = json.loads(one[1])
    assert rep["failed"] == [] and rep["passed"] == rep["total"] >= 40
