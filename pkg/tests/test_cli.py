import io
import json
import subprocess
import sys

import pytest

from kfq.cli import EXIT_DOMAIN, EXIT_LIMIT, EXIT_OK, request_argv, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    lines = [json.loads(x) for x in out.getvalue().splitlines() if x.startswith("{")]
    return code, lines, out.getvalue()


@pytest.mark.parametrize("argv,coeffs", [
    (["short", "--cartan", "C2", "--lambda", "0,1", "--mu", "0,0"], [0, 1]),
    (["short", "--cartan", "C2", "--lambda", "0,1", "--mu", "-2,2"], [-1, 1]),
    (["gkf", "--cartan", "A2", "--lambda", "1,1", "--mu", "0,0", "--psi", "height:2"], [0, 1]),
    (["lusztig", "--cartan", "A2", "--lambda", "1,1", "--mu", "0,0"], [0, 1, 1]),
])
def test_polynomial_commands(argv, coeffs):
    code, [doc], _ = call(*argv)
    assert code == EXIT_OK
    assert doc["coeffs"] == coeffs
    assert doc["truncation"] is None
    assert doc["request"]["command"] == argv[0]


def test_verify_main_theorem():
    code, [doc], _ = call("verify", "--suite", "main-theorem", "--cartan", "C2",
                          "--mu-box", "3", "--lambda-cap", "8")
    assert code == EXIT_OK
    assert doc["pass"] is True and doc["checked"] > 0
    assert doc["details"]["cap"] == 8


def test_verify_single_identity():
    code, [doc], _ = call("verify", "--suite", "kato", "--cartan", "C2", "--lambda", "1,1",
                          "--param", "form=q")
    assert code == EXIT_OK
    assert doc["identity"] == "kato" and doc["pass"] and doc["residual"] == {}


def test_verify_catalogue_streams_one_line_per_identity():
    code, lines, _ = call("verify", "--suite", "catalogue", "--cartan", "C2")
    assert code == EXIT_OK
    assert len(lines) > 100
    assert all(set(d) >= {"identity", "params", "pass", "residual", "truncation"} for d in lines)
    assert all(d["pass"] for d in lines)


@pytest.mark.parametrize("argv", [
    ["hl", "--cartan", "C2", "--lambda", "0,1"],
    ["eseries", "--cartan", "C2", "--truncation", "4"],
    ["branch", "--cartan", "G2", "--lambda", "1,0"],
    ["weights", "--cartan", "B3", "--lambda", "0,0,1"],
    ["tensor", "--cartan", "A2", "--lambda", "1,0", "--mu", "0,1"],
    ["gkf", "--cartan", "C2", "--lambda", "1,1", "--mu", "-1,1", "--psi", "short"],
    ["verify", "--suite", "rho-l", "--cartan", "C2", "--mu-box", "2"],
])
def test_round_trip_is_byte_identical(argv):
    out1 = io.StringIO()
    assert run(argv, out=out1) == EXIT_OK
    req = json.loads(out1.getvalue().splitlines()[0])["request"]
    out2 = io.StringIO()
    assert run(request_argv(req), out=out2) == EXIT_OK
    assert out1.getvalue() == out2.getvalue()


def test_payloads():
    _, [doc], _ = call("hl", "--cartan", "C2", "--lambda", "0,1")
    assert doc["character"] == {"0,0": [0, -1], "0,1": [1]}
    _, [doc], _ = call("tensor", "--cartan", "A2", "--lambda", "1,0", "--mu", "0,1")
    assert doc["decomposition"] == {"0,0": [1], "1,1": [1]}
    _, [doc], _ = call("eseries", "--cartan", "C2", "--truncation", "4")
    assert doc["truncation"] == 4 and doc["terms"]["0,1"] == [0, 1]
    _, [doc], _ = call("weights", "--cartan", "G2", "--lambda", "1,0")
    assert sum(doc["multiplicities"].values()) == 7


@pytest.mark.parametrize("argv,code", [
    (["short", "--cartan", "X2", "--lambda", "0,1", "--mu", "0,0"], EXIT_DOMAIN),
    (["short", "--cartan", "C2", "--lambda", "0,1,0", "--mu", "0,0"], EXIT_DOMAIN),
    (["short", "--cartan", "C2", "--lambda", "a,1", "--mu", "0,0"], EXIT_DOMAIN),
    (["short", "--cartan", "C2", "--lambda", "-1,1", "--mu", "0,0"], EXIT_DOMAIN),
    (["short", "--cartan", "C2", "--lambda", "0,1"], EXIT_DOMAIN),
    (["gkf", "--cartan", "A2", "--lambda", "1,1", "--mu", "0,0", "--psi", "bogus"], EXIT_DOMAIN),
    (["verify", "--suite", "nope", "--cartan", "C2"], EXIT_DOMAIN),
    (["verify", "--suite", "hl-at-1", "--cartan", "A2", "--lambda", "1,0"], EXIT_DOMAIN),
    (["frobnicate"], EXIT_DOMAIN),
    (["short", "--cartan", "C2", "--lambda", "0,1", "--mu", "0,0", "--truncation", "-1"], EXIT_DOMAIN),
    (["gkf", "--cartan", "B3", "--lambda", "0,0,1", "--mu", "0,0,1", "--weyl-limit", "10"], EXIT_LIMIT),
    (["short", "--cartan", "E8", "--lambda", "0,0,0,0,0,0,0,0", "--mu", "0,0,0,0,0,0,0,0"], EXIT_LIMIT),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, out=io.StringIO()) == code
    err = json.loads(capsys.readouterr().err)
    assert err["exit"] == code and err["message"]


def test_weyl_limit_env(monkeypatch):
    monkeypatch.setenv("KFQ_WEYL_LIMIT", "5")
    from kfq.rootsys import build_root_system
    from kfq.weyl import WeylGroup, WeylLimitError
    with pytest.raises(WeylLimitError):
        WeylGroup(build_root_system("A2"))


def test_text_format():
    code, _, text = call("short", "--cartan", "C2", "--lambda", "0,1", "--mu", "-2,2",
                         "--format", "text")
    assert code == EXIT_OK
    assert "coeffs: [-1, 1]" in text


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "kfq.cli", "short", "--cartan", "C2",
                          "--lambda", "0,1", "--mu", "0,0"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["coeffs"] == [0, 1]
