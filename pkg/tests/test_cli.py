import json
import subprocess
import sys

import pytest

from qskew.cli import main
from qskew.derivations import weight_derivation
from qskew.exprio import dumps, loads, save
from qskew.model import U, delta
from qskew.ore import OrePresentation


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def run_json(capsys, *argv):
    status, out, err = run(capsys, "--format", "json", *argv)
    return status, json.loads(out)


def test_normalize(capsys):
    assert run(capsys, "normalize", "X4*X1")[:2] == (0, "q*X1*X4 - q*X2\n")


def test_normalize_json(capsys):
    status, doc = run_json(capsys, "normalize", "Delta2")
    assert status == 0 and loads(json.dumps(doc)) == delta(2)
    # --format is also accepted after the subcommand
    status, out, _ = run(capsys, "normalize", "X1", "--format", "json")
    assert loads(out) == U.gen(1)


def test_qcommute(capsys):
    assert run(capsys, "qcommute", "e1", "Delta1")[:2] == (0, "1\n")
    assert run(capsys, "qcommute", "e1", "e2")[:2] == (0, "none\n")
    assert run(capsys, "qcommute", "0", "e2")[0] == 1


def test_mul_and_commutator(capsys):
    status, out, _ = run(capsys, "mul", "e1", "e3")
    assert status == 0 and out == "X1*X6\n"
    assert run(capsys, "commutator", "e1", "e3")[1] == "0\n"


def test_weight_and_degree(capsys):
    assert run(capsys, "weight", "Delta2")[1] == "(1, 2, 1)\n"
    assert run(capsys, "weight", "X1 + X4")[1] == "none\n"
    assert run(capsys, "degree", "1 + X1")[1] == "1\n"
    assert run(capsys, "degree", "--top", "1 + X1")[1] == "X1\n"
    assert run(capsys, "weight", "0")[0] == 1


def test_delta_and_center(capsys):
    assert run(capsys, "delta", "2", "--level", "4")[1] == "T2*T5\n"
    status, doc = run_json(capsys, "center-basis")
    assert status == 0
    assert sorted(map(tuple, doc["exponents"])) == [(0, 1, 0, 0, 1, 0), (1, 0, 1, 1, 0, 1)]


def test_embed_membership(capsys):
    assert run(capsys, "embed", "Delta2")[1] == "T2*T5\n"
    assert run(capsys, "membership", "T4^-1", "--level", "7")[:2] == (0, "not in A_7\n")
    assert run(capsys, "membership", "T2 T5", "--level", "7")[1] == "X2*X5 - q*X3*X4\n"
    assert run(capsys, "to-basis", "X2", "--level", "5")[0] == 0


def test_normal(capsys):
    status, out, _ = run(capsys, "normal", "Delta1^2 Delta2")
    assert status == 0 and out.startswith("Delta1^2")
    assert run(capsys, "normal", "e1")[1] == "not normal\n"


def test_automorphism(capsys):
    assert run(capsys, "automorphism", "apply", "--eta", "e1")[1] == "X6\n"
    status, out, _ = run(capsys, "automorphism", "apply", "--lambdas", "2,q,1", "e2")
    assert out == "q*X4\n"
    ok = run(capsys, "automorphism", "verify", "--e1", "e3", "--e2", "e2", "--e3", "e1")
    assert ok[:2] == (0, "true\n")
    bad = run(capsys, "automorphism", "verify", "--e1", "e1", "--e2", "e2", "--e3", "e2")
    assert bad[:2] == (0, "false\n")


def test_decompose_derivation(capsys):
    status, out, _ = run(capsys, "decompose-derivation", "--e1", "e1", "--e2", "0", "--e3", "0")
    assert status == 0
    assert out == "x = 0\nmu1 = 1\nmu4 = 0\nmu6 = 0\n"
    status, doc = run_json(capsys, "derivation", "decompose", "--e1", "0", "--e2", "e2",
                           "--e3", "0")
    assert status == 0 and doc["kind"] == "decomposition"


def test_derivation_subcommands(capsys, tmp_path):
    d4 = ["--e1", "0", "--e2", "e2", "--e3", "0"]
    assert run(capsys, "derivation", "check", *d4)[1] == "true\n"
    assert run(capsys, "derivation", "check", "--e1", "e2", "--e2", "0", "--e3", "0")[1] == "false\n"
    assert run(capsys, "derivation", "apply", *d4, "Delta2")[1] == "2*X2*X5 - 2*q*X3*X4\n"
    assert run(capsys, "derivation", "z2", *d4)[1] == "2\n"
    status, out, _ = run(capsys, "derivation", "extend", "--e1", "e1", "--e2", "0", "--e3", "0")
    assert status == 0 and out.splitlines()[0] == "D(T1) = T1"
    # ill-formed derivations are computation errors
    status, out, err = run(capsys, "derivation", "apply", "--e1", "e2", "--e2", "0",
                           "--e3", "0", "X1")
    assert status == 1 and "IllFormedDerivation" in err
    # derivations round-trip through --file
    path = tmp_path / "d4.json"
    path.write_text(dumps(save(weight_derivation(4))))
    assert run(capsys, "derivation", "z2", "--file", str(path))[1] == "2\n"


def test_file_arguments(capsys, tmp_path):
    path = tmp_path / "d2.json"
    path.write_text(dumps(save(delta(2))))
    assert run(capsys, "embed", f"@{path}")[1] == "T2*T5\n"
    assert run(capsys, "embed", f"@{tmp_path / 'missing.json'}")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": 1, "kind": "element", "basis": "W", "terms": []}')
    status, out, err = run(capsys, "embed", f"@{bad}")
    assert status == 1 and "$.basis" in err


def test_exit_codes(capsys):
    assert run(capsys, "normalize", "X1 +")[0] == 2
    assert run(capsys, "normalize", "X9")[0] == 2
    assert run(capsys, "normalize", "T4^-1")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["delta", "4"])
    assert info.value.code == 2
    capsys.readouterr()


def test_json_error_document(capsys):
    status, out, _ = run(capsys, "--format", "json", "normalize", "T4^-1")
    assert status == 1
    doc = json.loads(out)
    assert doc["kind"] == "error" and doc["error"] == "ContextViolation"


def test_verify_suite_only_serre(capsys):
    status, doc = run_json(capsys, "verify-suite", "--only", "serre")
    assert status == 0
    assert [c["id"] for c in doc["checks"]] == ["serre.commute", "serre.cubic"]
    assert doc["status"] == "pass"
    assert run(capsys, "verify-suite", "--only", "nothing")[0] == 2


def test_verify_suite_corrupted_presentation(capsys, tmp_path):
    lam = dict(U.lambdas)
    lam[(4, 1)] = 2
    path = tmp_path / "bad.json"
    path.write_text(dumps(save(OrePresentation(6, lam, U.corrections))))
    status, doc = run_json(capsys, "verify-suite", "--only", "presentation.confluence",
                           "--presentation", str(path))
    assert status == 1 and doc["status"] == "fail"
    (check,) = doc["checks"]
    assert check["status"] == "fail" and check["witness"].startswith("triple (")


def test_verify_suite_deterministic(capsys):
    argv = ("verify-suite", "--only", "embed", "automorphism", "--embed-pairs", "20")
    a = run(capsys, "--format", "json", *argv)
    b = run(capsys, "--format", "json", *argv)
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qskew", "normalize", "X4*X1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout == "q*X1*X4 - q*X2\n"
