import io
import json
import subprocess
import sys

import pytest

from relweyl import cli
from relweyl.errors import UnsupportedType
from relweyl.theorems import DEFAULT_TYPES, VerificationReport


def run(argv):
    buf = io.StringIO()
    code = cli.main(argv, stdout=buf)
    return code, buf.getvalue()


def test_parse_relative():
    cfg = cli.parse_args(["relative", "--type", "A3", "--J", "1,3"])
    assert (cfg.command, cfg.types, cfg.J) == ("relative", ["A3"], [(1, 3)])


def test_parse_verify():
    cfg = cli.parse_args(["verify", "--type", "A2", "--J", "all", "--primes", "2,3,5"])
    assert cfg.types == ["A2"] and cfg.J == "all" and cfg.primes == (2, 3, 5)
    default = cli.parse_args(["verify"])
    assert default.types == list(DEFAULT_TYPES) and default.J == "all"


def test_parse_unsupported():
    with pytest.raises(UnsupportedType):
        cli.parse_args(["roots", "--type", "Z9"])


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["roots"], ["relative", "--type", "A3", "--J", "x"],
    ["relative", "--type", "A3", "--J", "4"], ["relative", "--type", "A3", "--J", "all"],
    ["verify", "--claims", "nonsense"], ["verify", "--jobs", "0"],
    ["roots", "--type", "A2", "--output", "xml"], ["verify", "--primes", "two"],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_unsupported_exit_code(capsys):
    assert cli.main(["roots", "--type", "Z9"]) == 3


def test_roots():
    code, out = run(["roots", "--type", "A2"])
    d = json.loads(out)
    assert code == 0
    assert d["cartan_matrix"] == [[2, -1], [-1, 2]]
    assert d["positive_roots"] == [[1, 0], [0, 1], [1, 1]]
    assert d["weyl_order"] == 6


def test_weyl():
    code, out = run(["weyl", "--type", "G2"])
    d = json.loads(out)
    assert code == 0 and d["order"] == 12 and d["fundamental_degrees"] == [2, 6]


def test_relative_sl4():
    code, out = run(["relative", "--type", "A3", "--J", "1,3"])
    d = json.loads(out)
    assert code == 0
    assert d["relative_order"] == 2 and d["parabolic_order"] == 4 and d["normalizer_order"] == 8
    assert d["elements"] == [[], [2, 1, 3, 2]]
    assert d["length_in_W"] == [0, 4] and d["length_in_relative"] == [0, 1]
    assert d["semidirect"] is True


def test_epsilon_a1():
    code, out = run(["epsilon", "--type", "A1", "--J", ""])
    d = json.loads(out)
    assert code == 0
    assert d["elements"] == [{"word": [], "epsilon": "1/1"}, {"word": [1], "epsilon": "-1/1"}]


def test_characters_sl4():
    code, out = run(["characters", "--type", "A3", "--J", "1,3", "--output", "json"])
    d = json.loads(out)
    assert code == 0 and d["dims"] == [1, 1, 2, 1, 1]


@pytest.mark.parametrize("argv", [
    ["roots", "--type", "B3"], ["weyl", "--type", "A3"], ["relative", "--type", "A3", "--J", "1,3"],
    ["characters", "--type", "B2", "--J", "1"], ["epsilon", "--type", "G2", "--J", "2"],
    ["verify", "--type", "A2", "--no-timings"],
])
def test_json_round_trip(argv):
    code, out = run(argv)
    assert code == 0
    for line in out.splitlines():
        assert cli.dumps(json.loads(line)) == line


def test_verify_sl4():
    code, out = run(["verify", "--type", "A3", "--J", "1,3"])
    reps = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    claims = {r["claim_id"] for r in reps}
    assert {"duality_twist", "faithfulness", "main_theorem", "sl4_example"} <= claims
    assert all(r["status"] in ("pass", "info") for r in reps)
    assert all("wall_s" in r["timings"] for r in reps)


def test_verify_tsv_and_pretty():
    code, out = run(["verify", "--type", "A1", "--output", "tsv"])
    lines = out.splitlines()
    assert code == 0 and lines[0].split("\t")[0] == "claim_id"
    code, out = run(["verify", "--type", "A1", "--output", "pretty"])
    assert code == 0 and out.rstrip().endswith("0 failed")
    code, out = run(["roots", "--type", "A1", "--output", "tsv"])
    assert "weyl_order\t2" in out.splitlines()


def test_verify_failure_exit_code(monkeypatch):
    bad = VerificationReport("duality_twist", "A1", [], "fail", [{"w": [1]}])
    monkeypatch.setattr(cli, "run_suite", lambda cfg: [bad])
    code, out = run(["verify", "--type", "A1"])
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def test_out_file(tmp_path):
    target = tmp_path / "eps.json"
    code, out = run(["epsilon", "--type", "A1", "--J", "", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["type"] == "A1"


def test_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "dir" / "x.json"
    assert cli.main(["roots", "--type", "A1", "--out", str(target)]) == 4


def test_too_large_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("RELWEYL_MAX_ORDER", "10")
    from relweyl.weyl_group import weyl_group
    weyl_group.cache_clear()
    try:
        assert cli.main(["weyl", "--type", "B3"]) == 2
    finally:
        weyl_group.cache_clear()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relweyl.cli", "roots", "--type", "A1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["num_positive"] == 1
