import io
import json
import subprocess
import sys

import pytest

from mpalkit.cli import Config, decimal_string, run
from mpalkit.errors import MpalError
from fractions import Fraction


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_cf_eval_golden():
    code, out, _ = call("cf", "eval", "1,1,1", "--digits", "5")
    assert code == 0
    assert out == "3/2\n~ 1.50000\n"


def test_cf_eval_json():
    code, out, _ = call("cf", "eval", "4,1,2,2", "--json")
    assert code == 0
    assert json.loads(out) == {
        "word": [4, 1, 2, 2],
        "p": "33",
        "q": "7",
        "decimal": "4.71428571428571428571",
    }


def test_cf_simplify():
    assert call("cf", "simplify", "2,1,1,1,0,2,1")[:2] == (0, "2,1,1,3,1\n")
    code, out, _ = call("cf", "simplify", "2,1,1,2,2,1,0,2,1", "--json")
    assert json.loads(out)["word"] == [2, 1, 1, 2, 2, 3, 1]


def test_mpal_check():
    code, out, _ = call("mpal", "check", "2,1,1,3,1", "--m", "2")
    assert code == 0
    assert out == "2-palindrome: 2*9 = 18 = p_3\n"
    code, out, _ = call("mpal", "check", "2,1,1,3,1", "--m", "1")
    assert code == 1
    code, out, _ = call("mpal", "check", "6,3", "--m", "1", "--scan-m", "4", "--json")
    assert code == 1
    assert json.loads(out)["scan_m"] == {"max": 4, "found": [2]}


def test_mpal_density():
    code, out, _ = call("mpal", "density", "--stream", "periodic:|6,3", "--m", "2", "--depth", "12", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["prefix_lengths"] == [2, 4, 6, 8, 10, 12]
    assert data["density_estimate"] == "5/6"
    code, out, _ = call("mpal", "density", "--stream", "periodic:|5", "--m", "2", "--depth", "50")
    assert code == 0 and "unavailable" in out


def test_gen():
    assert call("gen", "st_number", "--len", "12")[1] == "2,1,1,3,1,2,1,2,1,1,3,1\n"
    assert call("gen", "fib", "--params", "m=2,r=1,s=2", "--len", "6")[1] == "2,1,4,2,2,1\n"
    code, out, _ = call("gen", "periodic", "--params", "2|1,1,2,2,3", "--len", "4", "--json")
    assert json.loads(out)["word"] == [2, 1, 1, 2]


def test_quad_solve_golden():
    code, out, _ = call("quad", "solve", "2|1,1,2,2,3", "--digits", "6")
    assert code == 0
    assert out == (
        "word: 2|1,1,2,2,3\n"
        "value: (7+sqrt(577))/12 ~ 2.585068\n"
        "P=7 D=577 Q=12\n"
        "6x^2-7x-22=0, reduced=false\n"
        "conjugate: (7-sqrt(577))/12 ~ -1.418402\n"
    )


def test_quad_burger():
    code, out, _ = call("quad", "burger", "1,1,2,2,3", "--max-repeat", "2")
    assert code == 1 and out.startswith("verdict: none")
    code, out, _ = call("quad", "burger", "2,1", "--json")
    assert code == 0
    assert json.loads(out)["parts"] == [[2], [1]]


def test_audit_commands():
    code, out, _ = call("audit", "schmidt", "--stream", "periodic:|6,3", "--m", "2", "--w", "8/5", "--depth", "20", "--json")
    data = json.loads(out)
    assert code == 0 and data["all_schmidt"] and data["i0"] == 3
    code, out, _ = call("audit", "stammer", "--stream", "periodic:|3,7", "--depth", "100", "--max-period", "4", "--offset-ratio", "1", "--top", "1")
    assert code == 0 and "w=50" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["cf", "eval", "3,0"], 3),
        (["cf", "eval", "1,x"], 2),
        (["cf"], 2),
        (["mpal", "check", "2,1", "--m", "0"], 2),
        (["mpal", "check", "2,0,1", "--m", "1"], 3),
        (["audit", "schmidt", "--stream", "st_number", "--m", "2", "--w", "3/2"], 3),
        (["audit", "schmidt", "--stream", "nope", "--m", "2"], 3),
        (["frobnicate"], 2),
    ],
)
def test_error_exit_codes(argv, code, capsys):
    got, _, err = call(*argv)
    assert got == code
    captured = capsys.readouterr().err + err
    assert captured.count("\n") == 1


def test_decimal_string():
    assert decimal_string(Fraction(2, 3), 4) == "0.6667"
    assert decimal_string(Fraction(-1, 8), 2) == "-0.13"
    assert decimal_string(Fraction(5, 2), 0) == "3"


def test_config_validation():
    assert Config().max_repeat == 2
    with pytest.raises(MpalError):
        Config(depth=0)
    with pytest.raises(MpalError):
        Config(output="xml")


def test_repeated_invocations_are_byte_identical():
    argv = [sys.executable, "-m", "mpalkit", "audit", "schmidt", "--stream", "st_number", "--m", "2", "--depth", "60", "--json"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
