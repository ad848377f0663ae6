import io
import json
import subprocess
import sys

import pytest

from zelevinsky.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_poset_text_and_dot():
    code, text = run("poset", "[1]+[0]")
    assert code == 0
    assert len(text.splitlines()) == 2
    code, dot = run("poset", "[2]+[1]+[0]", "--dot")
    assert code == 0 and dot.startswith("digraph")
    assert dot.count("[label=") == 4 and dot.count("->") == 4


def test_poset_json_and_empty():
    code, text = run("poset", "[1]+[0]", "--json")
    js = json.loads(text)
    assert len(js["elements"]) == 2 and js["covers"] == [[0, 1]]
    code, text = run("poset", "")
    assert code == 0 and len(text.splitlines()) == 1


def test_mult_formats():
    code, text = run("mult", "[1]+[0]", "--format", "json")
    assert code == 0 and json.loads(text)["matrix"] == [[1, 1], [0, 1]]
    code, text = run("mult", "[1]+[0]", "--csv")
    assert text.splitlines()[1] == "[1]+[0],1,1"
    code, text = run("mult", "[1]+[0]")
    assert text.splitlines()[0].split()[-2:] == ["1", "1"]


def test_mult_packet_contains_two():
    code, text = run("mult", "[0,1]+[0,1]", "--json")
    assert any(2 in row for row in json.loads(text)["matrix"])
    code, text = run("mult", "[0,1]+[0,1]", "--json", "--lower-set")
    assert json.loads(text)["matrix"] == [[1]]


def test_mult_normalization():
    _, labelled = run("mult", "rho(7,2):[0,1]", "--json")
    _, plain = run("mult", "[0,1]", "--json")
    assert json.loads(labelled)["matrix"] == json.loads(plain)["matrix"]


def test_mult_q_check_and_primes():
    code, text = run("mult", "[1]+[1]+[0]+[0]", "--json", "--q-check", "4,9", "--primes", "2,3,5,7,11")
    js = json.loads(text)
    assert code == 0
    assert js["q_check"]["4"]["agree"] and js["q_check"]["9"]["agree"]
    assert js["fibre_check"]["mismatches"] == []


def test_mult_q_check_undecided_is_not_an_error():
    code, text = run("mult", "[4]+[3]+[2]+[1]+[0]", "--json", "--q-check", "4", "--lower-set")
    js = json.loads(text)
    assert code == 0
    assert js["q_check"]["4"]["undecided_rows"] == len(js["elements"])


def test_langlands_and_param():
    code, text = run("langlands", "[0,1]+[0,1]")
    js = json.loads(text)
    assert [b["midpoint"] for b in js["blocks"]] == ["1/2"]
    code, text = run("langlands", "[0]")
    assert len(json.loads(text)["blocks"]) == 1
    code, text = run("param", "[2]+[1]+[0]")
    v = json.loads(text)["vogan"]
    assert (v["dimV"], v["dimH"]) == (2, 3)
    assert v["blocks"][0]["phi"] == {"0": 1, "1": 1, "2": 1}


def test_hecke_and_relations():
    code, text = run("hecke", "[1]+[0]")
    assert code == 0 and json.loads(text)["dimension"] == 2
    code, text = run("relations", "2")
    assert code == 0 and all(line.startswith("PASS") for line in text.splitlines())


def test_exit_codes(capsys):
    assert run("mult", "[0,1")[0] == 2
    assert "position 4" in capsys.readouterr().err
    assert run("poset", "[5]+[4]+[3]+[2]+[1]+[0]", "--max-poset", "10")[0] == 3
    assert run("hecke", "[5]+[4]+[3]+[2]+[1]+[0]")[0] == 3
    assert run("hecke", "[0]+[1/2]")[0] == 1


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["mult", "[0]", "--bogus"])
    assert exc.value.code == 2


def test_file_input(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("[1]+[0]\n")
    assert run("mult", str(p), "--json")[1] == run("mult", "[1]+[0]", "--json")[1]
    assert run("mult", "--file", str(p), "--json")[1] == run("mult", "[1]+[0]", "--json")[1]


def test_env_precedence(monkeypatch):
    monkeypatch.setenv("ZELEVINSKY_MAX_POSET", "1")
    assert run("poset", "[1]+[0]")[0] == 3
    assert run("poset", "[1]+[0]", "--max-poset", "5")[0] == 0


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "zelevinsky.cli", "mult", "[2]+[1]+[1]+[0]", "--json", "--threads", "2",
           "--q-check", "4"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["q_check"]["4"]["agree"]
