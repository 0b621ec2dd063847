import csv
import json
import shutil
import subprocess

import pytest

from sumprod.cli import fmt_value, main
from sumprod.config import ConfigError, parse_config
from sumprod.sets import ResidueSet, bilinear_solution_count, load_set, write_set

KK_CONFIG = """\
[field]
p = 101

[generator]
kinds = random

[ensemble]
sizes = 8
trials = 100
seed = 7

[checkers]
names = katz_koester

[output]
csv = kk.csv
summary = kk_summary.jsonl
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt_value():
    assert fmt_value(10**30) == str(10**30)
    assert fmt_value(1 / 3) == "0.333333333333"
    assert fmt_value(2.0) == "2"
    assert fmt_value(True) == "1"


def test_gen_set_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "gen-set", "--p", "7", "--kind", "subgroup", "--size", "3")
    assert code == 0 and out == "# p=7\n1\n2\n4\n"
    path = tmp_path / "A.set"
    code, _, err = run(capsys, "gen-set", "--p", "101", "--kind", "arithmetic_progression",
                       "--size", "5", "--start", "0", "--step", "1", "--out", str(path))
    assert code == 0 and err == ""
    assert load_set(path).elements == (0, 1, 2, 3, 4)


def test_gen_set_deterministic(tmp_path, capsys):
    outs = []
    for name in ("a.set", "b.set"):
        path = tmp_path / name
        assert run(capsys, "--seed", "5", "gen-set", "--p", "2003", "--kind", "random",
                   "--size", "30", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_gen_set_errors(capsys):
    code, _, err = run(capsys, "gen-set", "--p", "7", "--kind", "subgroup", "--size", "4")
    assert code == 2 and "does not divide" in err
    code, _, err = run(capsys, "gen-set", "--p", "7", "--kind", "random", "--size", "9",
                       "--seed", "1")
    assert code == 2 and "size" in err


@pytest.fixture
def set_files(tmp_path):
    A = ResidueSet(101, [0, 1, 2])
    B = ResidueSet(101, [3, 5, 17, 40])
    C = ResidueSet(101, [1, 2, 9])
    paths = []
    for name, s in zip("ABC", (A, B, C)):
        write_set(s, tmp_path / f"{name}.set")
        paths.append(str(tmp_path / f"{name}.set"))
    return (A, B, C), paths


def test_compute_energy(set_files, capsys):
    _, (a, _, _) = set_files
    code, out, _ = run(capsys, "compute", "energy", a, a)
    assert code == 0 and out == "19\n"


def test_compute_incidences(set_files, capsys):
    (A, B, C), paths = set_files
    code, out, _ = run(capsys, "compute", "incidences", *paths)
    assert int(out) == bilinear_solution_count(A, B, C)
    code, out, _ = run(capsys, "compute", "bilinear", *paths)
    assert int(out) == bilinear_solution_count(A, B, C)


def test_compute_hole(capsys):
    code, out, _ = run(capsys, "compute", "hole", "--p", "7", "--g", "3", "--a", "1", "--N", "6")
    assert code == 0 and out == "2\n"


def test_compute_set_ops(set_files, capsys):
    _, (a, b, c) = set_files
    code, out, _ = run(capsys, "compute", "sumset", a, a)
    assert out == "# p=101\n0\n1\n2\n3\n4\n"
    code, out, _ = run(capsys, "compute", "nfold", a, "--n", "3")
    assert out.splitlines()[1:] == [str(i) for i in range(7)]
    code, out, _ = run(capsys, "compute", "a-plus-bc", a, b, c)
    assert code == 0 and out.startswith("# p=101")
    code, out, _ = run(capsys, "compute", "rep", a, a, "--law", "difference")
    rows = list(csv.DictReader(out.splitlines()))
    assert {r["s"]: r["r"] for r in rows}["0"] == "3"
    code, out, _ = run(capsys, "compute", "energy-moment", a, "--k", "1.5")
    assert out.strip() == fmt_value(3**1.5 + 2 * 2**1.5 + 2)


def test_compute_errors(set_files, tmp_path, capsys):
    _, (a, b, _) = set_files
    other = tmp_path / "other.set"
    write_set(ResidueSet(7, [1]), other)
    code, _, err = run(capsys, "compute", "sumset", a, str(other))
    assert code == 2 and "F_7" in err
    bad = tmp_path / "bad.set"
    bad.write_text("# p=101\n5\n3\n")
    code, _, err = run(capsys, "compute", "energy", str(bad))
    assert code == 2 and "sorted" in err
    zero = tmp_path / "zero.set"
    write_set(ResidueSet(101, [0]), zero)
    code, _, err = run(capsys, "compute", "ratio", a, str(zero))
    assert code == 2
    code, _, err = run(capsys, "compute", "energy-moment", a, "--kind", "multiplicative")
    assert code == 2 and "0" in err


def test_incidence_command(set_files, tmp_path, capsys):
    (A, B, C), paths = set_files
    dump = tmp_path / "arr.csv"
    code, out, _ = run(capsys, "--format", "jsonl", "incidence", *paths, "--dump", str(dump))
    rec = json.loads(out)
    assert rec["incidences"] == rec["bilinear"] == bilinear_solution_count(A, B, C)
    assert rec["k_points"] == 4
    assert dump.exists()


def test_klein_verify(tmp_path, capsys):
    out_csv = tmp_path / "k.csv"
    code, out, err = run(capsys, "klein-verify", "--p", "3", "--out", str(out_csv))
    assert code == 0
    assert out.splitlines()[1].endswith(",1")
    assert len(out_csv.read_text().splitlines()) == 1601
    assert "klein sweep" in err


def test_expsum_command(capsys):
    code, out, _ = run(capsys, "expsum", "double", "--p", "1009", "--X", "60", "--Y", "60",
                       "--a", "3")
    rows = list(csv.DictReader(out.splitlines()))
    assert rows[0]["claim"] == "double_sum" and float(rows[0]["ratio"]) > 0
    code, _, err = run(capsys, "expsum", "double", "--p", "1009", "--X", "1008", "--Y", "1008")
    assert code == 2 and "exceeds p" in err


def test_verify_katz_koester(tmp_path, capsys):
    cfg = tmp_path / "kk.ini"
    cfg.write_text(KK_CONFIG)
    code, out, err = run(capsys, "verify", str(cfg))
    assert code == 0 and out == ""
    first = (tmp_path / "kk.csv").read_bytes()
    summary = (tmp_path / "kk_summary.jsonl").read_bytes()
    rows = list(csv.DictReader(first.decode().splitlines()))
    assert sum(r["claim"] == "katz_koester" for r in rows) == 100
    assert all(r["holds"] == "1" for r in rows)
    # timestamps on stderr only; data files are reproducible
    assert "katz_koester" in err
    assert run(capsys, "verify", str(cfg))[0] == 0
    assert (tmp_path / "kk.csv").read_bytes() == first
    assert (tmp_path / "kk_summary.jsonl").read_bytes() == summary


def test_verify_constants_control_exit(tmp_path, capsys):
    text = KK_CONFIG.replace("katz_koester", "sumprod").replace("sizes = 8", "sizes = 20")
    cfg = tmp_path / "sp.ini"
    cfg.write_text(text)
    assert run(capsys, "verify", str(cfg))[0] == 0
    cfg.write_text(text + "\n[assert]\nsumprod = 1000\n")
    assert run(capsys, "verify", str(cfg))[0] == 1
    cfg.write_text(text + "\n[assert]\nsumprod = 0.01\n")
    assert run(capsys, "verify", str(cfg))[0] == 0


def test_verify_jsonl(tmp_path, capsys):
    cfg = tmp_path / "kk.ini"
    cfg.write_text(KK_CONFIG.replace("trials = 100", "trials = 2"))
    code, out, _ = run(capsys, "--format", "jsonl", "verify", str(cfg), "--out", "-")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 2 * 3 and records[0]["checker_id"] == "katz_koester"


def test_config_typo_named(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text(KK_CONFIG.replace("trials", "trails"))
    code, _, err = run(capsys, "verify", str(cfg))
    assert code == 2 and "trails" in err


@pytest.mark.parametrize("mutation,needle", [
    (("seed = 7\n", ""), "seed"),
    (("[output]", "[outputs]"), "outputs"),
    (("names = katz_koester", "names = katz"), "katz"),
    (("kinds = random", "kinds = uniform"), "uniform"),
    (("p = 101", "p = 100"), "prime"),
    (("[field]\np = 101\n", ""), "field"),
])
def test_config_errors(mutation, needle):
    old, new = mutation
    with pytest.raises(ConfigError, match=needle):
        parse_config(KK_CONFIG.replace(old, new))


def test_config_seedless_subgroup_ok():
    text = KK_CONFIG.replace("seed = 7\n", "").replace("kinds = random", "kinds = subgroup")
    assert parse_config(text).ensemble.seed == 0


def test_config_assert_keys():
    cfg = parse_config(KK_CONFIG + "[assert]\nkatz_koester.shift_overlap = 1\n")
    assert cfg.constants == {"katz_koester.shift_overlap": 1.0}
    with pytest.raises(ConfigError, match="bogus"):
        parse_config(KK_CONFIG + "[assert]\nbogus = 1\n")


@pytest.mark.skipif(shutil.which("sumprod") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["sumprod", "compute", "hole", "--p", "7", "--g", "3", "--N", "6"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "2\n"
