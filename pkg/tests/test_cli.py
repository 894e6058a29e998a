import json
import shlex
from pathlib import Path

import pytest
from click.testing import CliRunner

from akproj.cli import main

GOLDEN = Path(__file__).parent / "golden"
CASES = [line.split("\t") for line in (GOLDEN / "cases.txt").read_text().splitlines() if line.strip()]


def run(args):
    return CliRunner().invoke(main, shlex.split(args) if isinstance(args, str) else args)


@pytest.mark.parametrize("name,args", CASES, ids=[c[0] for c in CASES])
def test_golden(name, args):
    r = run(args)
    assert r.exit_code == 0, r.output
    assert r.output == (GOLDEN / f"{name}.out").read_text()
    assert run(args).output == r.output


def test_p1_methods_agree():
    out = json.loads(run("p1 --space BSU --param 7 --prime 13 --class c2 --method both").output)
    assert out["payload"]["methods_agree"] is True
    assert {"monomial": "c7^2", "coefficient": 6} in out["payload"]["terms"]
    assert out["citations"]


def test_pretty():
    r = run("p1 --space BSU --param 3 --prime 5 --class c2 --pretty")
    assert r.output.strip() == "2*c3^2 + 2*c2^3"


def test_verdict_payload():
    out = json.loads(run("verdict --pair SO_even --param 5 --prime 11 --k 2").output)
    assert out["payload"]["status"] == "unknown"
    assert out["payload"]["gap"] == [10, 13]


def test_cells_clearance_failure():
    out = json.loads(run("cells --pair Spin8_G2 --k 2 --prime 7").output)
    assert out["payload"]["clear"] is False
    assert out["payload"]["failing"] == [16, 20]


@pytest.mark.parametrize("args", [
    "p1 --space BSU --param 3 --prime 9 --class c2",
    "p1 --space BSU --param 3 --prime 2 --class c2",
    "p1 --space BSU --param 3 --prime 5 --class c9",
    "verdict --pair E6_F4 --prime 3 --k 2",
    "verdict --pair SU_Sp --param 1 --prime 5 --k 2",
])
def test_invalid_input_exit_2(args):
    r = run(args)
    assert r.exit_code == 2
    assert json.loads(r.output)["status"] == "invalid"


def test_usage_error_exit_2():
    assert run("p1 --space BSU --prime 5 --class c2").exit_code == 2


def test_verify_small_suite():
    r = run("verify --suite oracle --grid small")
    assert r.exit_code == 0
    assert all(line.startswith("PASS") for line in r.output.splitlines())


def test_verify_json():
    r = run("verify --suite cells --grid small --json")
    data = json.loads(r.output)
    assert data["results"] and all(x["passed"] for x in data["results"])
