import json
import subprocess
import sys

import pytest

from icl import groebner as gb_mod
from icl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_closure_command(capsys):
    code, out, _ = run(capsys, "closure", "--ring", "x,y/Q", "--ideal", "x^2,y^2")
    assert code == 0
    assert out.strip() == "x^2, x*y, y^2"


def test_itoh_command_json(capsys):
    code, out, _ = run(capsys, "verify", "itoh", "--exponents", "2,3", "--nmax", "4", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "PASS"
    assert doc["result"]["verdict"] == "PASS"
    assert [d["n"] for d in doc["result"]["details"]] == [0, 1, 2, 3, 4]


def test_member_command(capsys):
    code, out, _ = run(capsys, "member", "--ring", "x,y/Q", "--ideal", "x^2,y^2", "--f", "x*y")
    assert (code, out.strip()) == (0, "false")
    code, out, _ = run(capsys, "member", "--ideal", "x^2,y^2", "--f", "x^2*y + y^3")
    assert (code, out.strip()) == (0, "true")


def test_explicit_group_matches_bare_op(capsys):
    bare = run(capsys, "colength", "--ideal", "x^2,x*y,y^2", "--json")
    grouped = run(capsys, "ideal", "colength", "--ideal", "x^2,x*y,y^2", "--json")
    assert bare == grouped
    assert json.loads(bare[1])["result"] == {"colength": 3}


@pytest.mark.parametrize("argv,text", [
    (["gb", "--ring", "y,x/Q", "--order", "lex", "--ideal", "x^2-y,y^2"], "-x^2 + y\nx^4"),
    (["poly", "gcd", "--f", "x^2-y^2", "x+y"], "x + y"),
    (["closure", "--monomial", "3,0;0,2"], "x^3, x^2*y, y^2"),
    (["module", "order", "--module", '[["x","0"],["y","0"],["0","1"]]'], "1"),
])
def test_other_commands(capsys, argv, text):
    code, out, _ = run(capsys, *argv)
    assert (code, out.strip()) == (0, text)


def test_inconclusive_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "radical", "--ideal", "x^2,x*y,y^2", "--values", "1,2,1")
    assert code == 2
    assert "INCONCLUSIVE" in out


def test_fail_exit_code(capsys, monkeypatch):
    from icl import verify
    real = verify.monomial_closure_power
    monkeypatch.setattr(verify, "monomial_closure_power", lambda MI, n: MI if n == 1 else real(MI, n))
    code, out, _ = run(capsys, "verify", "itoh", "--exponents", "2,2", "--nmax", "2", "--json")
    assert code == 1
    assert json.loads(out)["status"] == "FAIL"


@pytest.mark.parametrize("argv,kind", [
    (["closure", "--ideal", "x^2"], "NotMPrimary"),
    (["nonsense"], "UsageError"),
    (["member", "--ideal", "x^2", "--f", "z"], "UnknownVariable"),
    (["base-points", "--ideal", "x^2+y^2,y^3"], "NonRationalBasePoint"),
    (["run", "/nonexistent/problem.json"], "Error"),
])
def test_errors_exit_three(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 3
    assert out == ""
    assert err.startswith("icl: error: ") and kind in err


def test_prime_field_ring(capsys):
    code, out, _ = run(capsys, "base-points", "--ring", "x,y/Fp:5", "--ideal", "x^2+y^2,y^3")
    assert code == 0
    assert "t=2" in out and "t=3" in out


DETERMINISM = [
    ["closure", "--ideal", "x^3,y^2", "--json"],
    ["module", "bourbaki", "--module", '[["x","0"],["y","0"],["0","x"],["0","y"]]', "--json", "--seed", "5"],
    ["verify", "specialize", "--ideal", "x^2,y^3", "--json", "--seed", "3"],
    ["verify", "product", "--count", "3", "--json", "--seed", "2"],
    ["generic", "--ideal", "x^2,x*y,y^2", "--json", "--seed", "11"],
]


@pytest.mark.parametrize("argv", DETERMINISM)
def test_json_is_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    doc = json.loads(first[1])
    assert set(doc) == {"command", "ring", "seed", "status", "result"}


def test_seed_changes_random_choices(capsys):
    argv = ["module", "bourbaki", "--module", '[["x","0"],["y","0"],["0","x"],["0","y"]]', "--json"]
    a = json.loads(run(capsys, *argv, "--seed", "1")[1])
    b = json.loads(run(capsys, *argv, "--seed", "2")[1])
    assert a["result"]["specialization"] != b["result"]["specialization"]
    assert a["result"]["ideal"] == b["result"]["ideal"]


def test_cache_does_not_change_output(capsys, tmp_path):
    gb_mod._CACHE.clear()
    argv = ["gb", "--ideal", "x^3+y^4,x^2*y", "--json"]
    plain = run(capsys, *argv)
    gb_mod._CACHE.clear()
    cold = run(capsys, *argv, "--cache", str(tmp_path))
    gb_mod._CACHE.clear()
    warm = run(capsys, *argv, "--cache", str(tmp_path))
    assert plain == cold == warm
    assert any(tmp_path.iterdir())


def test_trace_goes_to_stderr():
    # a fresh interpreter, so the logging setup is not shadowed by pytest's handlers
    argv = [sys.executable, "-m", "icl.cli", "closure", "--ideal", "x^3,y^2", "--trace", "--json"]
    proc = subprocess.run(argv, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    json.loads(proc.stdout)
    assert "running ideal closure" in proc.stderr


def test_run_problem_file(capsys, tmp_path):
    problem = {
        "ring": {"vars": ["x", "y"], "field": "Q"},
        "objects": {
            "I": {"gens": ["x^2", "y^2"]},
            "M": {"monomial_gens": [[3, 0], [0, 2]]},
            "E": {"columns": [["x", "0"], ["y", "0"], ["0", "1"]]},
        },
        "tasks": [
            {"op": "closure", "target": "I"},
            {"op": "is-closed", "target": "M"},
            {"op": "module order", "target": "E"},
            {"op": "multiplicity", "target": "I", "seeds": [4]},
        ],
    }
    path = tmp_path / "p.json"
    path.write_text(json.dumps(problem))
    code, out, _ = run(capsys, "run", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    tasks = doc["result"]["tasks"]
    assert [t["op"] for t in tasks] == ["ideal closure", "ideal is-closed", "module order", "ideal multiplicity"]
    assert tasks[0]["result"]["generators"] == ["x^2", "x*y", "y^2"]
    assert tasks[1]["result"]["value"] is False
    assert tasks[2]["result"] == {"order": 1}
    assert run(capsys, "run", str(path), "--json")[1] == out
