import io
import os
import subprocess
import sys

import pytest

from packtriple.cli import constructive_pack, run
from packtriple.core import is_packing
from packtriple.fileformat import format_triple, parse_packing, parse_triple_file
from packtriple.generators import be_bad_pair_triple, family_triple, kk_exception, sharpness_family


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, t):
    p = tmp_path / name
    p.write_text(format_triple(t))
    return str(p)


def test_solve_bad_pair_brute(tmp_path):
    code, out, _ = cli("solve", write(tmp_path, "b1.triple", be_bad_pair_triple(1)), "--method", "brute")
    assert (code, out) == (1, "no-packing\n")


def test_gen_then_solve(tmp_path):
    path = str(tmp_path / "a.triple")
    assert cli("gen", "--family", "FIG2A", "--n", "5", "-o", path)[0] == 0
    code, out, _ = cli("solve", path)
    assert (code, out) == (1, "no-packing\n")


def test_check_empty_n4(tmp_path):
    p = tmp_path / "e.triple"
    p.write_text("triple 4\n")
    code, out, _ = cli("check", str(p))
    assert code == 0
    lines = out.splitlines()
    assert [line.split()[0] for line in lines] == ["ss_product", "lemma7", "cor8", "be"]
    assert all("predicted=must_pack" in line for line in lines)


def test_check_n1_has_cor8_placeholder(tmp_path):
    p = tmp_path / "one.triple"
    p.write_text("triple 1\n")
    out = cli("check", str(p))[1].splitlines()
    assert out[2] == "cor8 hypothesis=- exception=- predicted=no_prediction"


@pytest.mark.parametrize("method", ["brute", "backtrack", "constructive"])
def test_solve_witness(tmp_path, method):
    t = sharpness_family("FIG2D", 5, m=3, mp=2)
    code, out, _ = cli("solve", write(tmp_path, "d.triple", t), "--method", method)
    assert code == 0
    assert is_packing(t, parse_packing(out))


def test_constructive_dispatch():
    assert constructive_pack(parse_triple_file("triple 4\n"))[0] == "ss_product"
    t = parse_triple_file("triple 6\ng1 0 1\ng1 0 2\ng1 0 3\ng2 0 1\ng2 0 2\ng3 0 0\n")
    assert constructive_pack(t)[0] == "lemma7"
    t = sharpness_family("FIG2E", 6, k=4)
    t = parse_triple_file(format_triple(t).replace("g3 0 5\n", ""))
    assert constructive_pack(t)[0] == "be"
    assert constructive_pack(be_bad_pair_triple(2)) == ("backtrack", None)


def test_gen_stdout_round_trip():
    code, out, _ = cli("gen", "--family", "kk_bipartite", "--n", "6")
    assert code == 0 and parse_triple_file(out) == kk_exception("bipartite", 6)


@pytest.mark.parametrize("argv", [
    ["gen", "--family", "FIG2E", "--n", "5", "--k", "9"],
    ["gen", "--family", "FIG2C"],
    ["gen", "--family", "NOPE", "--n", "4"],
    ["solve", "missing.triple"],
    ["verify", "--theorem", "be", "--n", "6"],
    ["verify", "--theorem", "be", "--n", "4", "--caps", "1,2"],
    ["verify", "--theorem", "be", "--n", "4", "--samples", "0"],
    ["verify", "--theorem", "be", "--n", "4", "--exhaustive", "--samples", "3"],
    ["verify", "--theorem", "be", "--n", "4", "--workers", "0"],
    ["verify", "--theorem", "cor8", "--n", "1"],
    [],
])
def test_errors_exit_2(argv, capsys):
    assert cli(*argv)[0] == 2


def test_parse_error_message(tmp_path):
    p = tmp_path / "bad.triple"
    p.write_text("triple 2\ng1 0 0\n")
    code, _, err = cli("solve", str(p))
    assert code == 2 and "line 2" in err and "self-loop" in err


def test_verify_summary_and_block():
    code, out, _ = cli("verify", "--theorem", "cor8", "--n", "2", "--summary")
    assert (code, out) == (0, "theorem=cor8 n=2 checked=22 counterexamples=0\n")
    code, out, _ = cli("verify", "--theorem", "lemma7", "--n", "3", "--samples", "50", "--seed", "3",
                       "--workers", "2", "--constructive")
    assert code == 0 and "mode: sample count=50 seed=3" in out


def test_verify_caps_flag():
    code, out, _ = cli("verify", "--theorem", "ss_product", "--n", "4", "--max-edge-sum", "6",
                       "--caps", "1,2,0")
    assert code == 0 and "degree_caps: 1,2,0" in out and "kk_clique=12" in out


def test_badpairs(tmp_path):
    code, out, _ = cli("badpairs", "-o", str(tmp_path / "bp"))
    assert code == 0
    files = sorted(os.listdir(tmp_path / "bp"))
    assert len(files) == 7
    for i, name in enumerate(files, start=1):
        t = parse_triple_file((tmp_path / "bp" / name).read_text())
        assert t == be_bad_pair_triple(i) and t.e3 == 0


CORPUS = [
    ("BE1", {}), ("BE2", {}), ("BE3", {}), ("BE4", {}), ("BE5", {}), ("BE6", {}),
    ("FIG2A", dict(n=4)), ("FIG2B", dict(n=5)), ("FIG2C", dict(n=6)),
    ("FIG2D", dict(n=6, m=2, mp=3)), ("FIG2D", dict(n=6, m=4, mp=5)), ("FIG2E", dict(n=7, k=5)),
    ("KK_BIPARTITE", dict(n=6)), ("KK_CLIQUE", dict(n=8)),
]


@pytest.mark.parametrize("tag, kw", CORPUS)
def test_brute_and_backtrack_agree_on_corpus(tmp_path, tag, kw):
    path = write(tmp_path, "c.triple", family_triple(tag, **kw))
    assert cli("solve", path, "--method", "brute")[0] == cli("solve", path, "--method", "backtrack")[0]


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "b.triple", be_bad_pair_triple(1))
    r = subprocess.run([sys.executable, "-m", "packtriple", "solve", path, "--method", "brute"],
                       capture_output=True, text=True)
    assert r.returncode == 1 and r.stdout == "no-packing\n"
