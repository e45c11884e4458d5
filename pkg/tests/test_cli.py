import pytest

from irslab import ball, emit_sgr, psi_oracle
from irslab.cli import main
from irslab.encoding import SubshiftSpace
from irslab.actions import FiniteAction

INDEX2_TEXT = """\
schreier r=2
root A
A s1 B
B s1 A
A s2 A
B s2 B
"""

SUBSHIFT_TEXT = """\
alphabet 2
points 2
perm s1: (0 1)
perm s2: id
label 0 1
label 1 2
basepoint 0
"""


@pytest.fixture
def index2_file(tmp_path):
    path = tmp_path / "index2.sgr"
    path.write_text(INDEX2_TEXT)
    return str(path)


@pytest.fixture
def subshift_file(tmp_path):
    path = tmp_path / "period2.sub"
    path.write_text(SUBSHIFT_TEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ball_trivial(capsys):
    code, out, _ = run(capsys, "ball", "--base", "trivial", "--radius", "1")
    assert code == 0
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body[0] == "schreier r=2"
    assert body[1] == "root e"
    tokens = {l.split()[1] for l in body if l.startswith("boundary")}
    assert tokens == {"s1", "s1^-1", "s2", "s2^-1"}


def test_ball_header_echoes_config(capsys):
    code, out, _ = run(capsys, "ball", "--base", "trivial", "--radius", "1",
                       "--seed", "7")
    assert code == 0
    head = out.splitlines()[0]
    assert head.startswith("# irslab ball")
    assert "seed=7" in head


def test_ball_edgelist(capsys):
    code, out, _ = run(capsys, "ball", "--base", "trivial", "--radius", "1",
                       "--format", "edgelist")
    assert code == 0
    assert "e s1 label=s1" in out


def test_unknown_flag_exits_1(capsys):
    code, _, _ = run(capsys, "ball", "--nonsense")
    assert code == 1


def test_unknown_subcommand_exits_1(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_metric(capsys, index2_file):
    code, out, _ = run(capsys, "metric", "--base", "trivial",
                       "--other", f"file:{index2_file}", "--max-radius", "5")
    assert code == 0
    assert "d = 1/1" in out
    code, out, _ = run(capsys, "metric", "--base", "trivial",
                       "--other", "trivial", "--max-radius", "5")
    assert "d = 0 (<= 1/7)" in out


def test_fingerprint(capsys, index2_file):
    code, out, _ = run(capsys, "fingerprint", "--base", f"file:{index2_file}",
                       "--radius", "2")
    assert code == 0
    words = [l for l in out.splitlines() if not l.startswith("#")]
    assert words[0] == "e"
    assert "s2" in words and "s1*s1" in words
    assert len(words) == 7


def test_aut(capsys, index2_file):
    code, out, _ = run(capsys, "aut", "--graph", index2_file)
    assert code == 0
    assert out.strip() == "2"


def test_sample_normalizer_deterministic(capsys, index2_file):
    args = ("sample-normalizer", "--base", f"file:{index2_file}",
            "--p", "1/2", "--seed", "3", "--radius", "2")
    code, out1, _ = run(capsys, *args)
    assert code == 0
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    assert "schreier r=2" in out1


def test_sample_poulsen(capsys):
    code, out, _ = run(capsys, "sample-poulsen", "--base", "trivial",
                       "--p", "1/5", "--seed", "1", "--radius", "2")
    assert code == 0
    assert "root p(|e)" in out


def test_enumerate_normalizer_invariance(capsys, index2_file):
    code, out, _ = run(capsys, "enumerate-normalizer",
                       "--base", f"file:{index2_file}", "--p", "1/2",
                       "--check-invariance", "--radius", "2")
    assert code == 0
    assert "exact invariance: PASS" in out
    assert "total 1" in out


def test_enumerate_requires_exact_p(capsys, index2_file):
    code, _, err = run(capsys, "enumerate-normalizer",
                       "--base", f"file:{index2_file}", "--p", "nope")
    assert code == 1


def test_encode_decode_roundtrip(capsys, tmp_path, subshift_file):
    out_path = str(tmp_path / "encoded.sgr")
    code, _, _ = run(capsys, "encode", "--subshift", subshift_file,
                     "--radius", "8", "--out", out_path)
    assert code == 0
    code, out, _ = run(capsys, "decode", "--graph", out_path, "--radius", "4")
    assert code == 0
    assert "x(e) = 1" in out
    assert "x(s1) = 2" in out


def test_decode_not_encoding_exits_1(capsys, tmp_path):
    path = tmp_path / "plain.sgr"
    from irslab import CayleyOracle

    path.write_text(emit_sgr(ball(CayleyOracle(2), 6)))
    code, _, err = run(capsys, "decode", "--graph", str(path), "--radius", "4")
    assert code == 1
    assert "error" in err


def test_check_equivariance(capsys, subshift_file):
    code, out, _ = run(capsys, "check-equivariance", "--subshift",
                       subshift_file, "--trials", "20")
    assert code == 0
    assert "PASS" in out


def test_upsilon_roundtrip(capsys, tmp_path, subshift_file):
    # conjugated encoding comes back into the encoded set
    space = SubshiftSpace(FiniteAction(2, ((1, 0), (0, 1))), (1, 2), 2)
    from irslab import conjugate

    moved = conjugate(psi_oracle(space.point(0)), (-1,))
    path = tmp_path / "moved.sgr"
    path.write_text(emit_sgr(ball(moved, 12)))
    code, out, _ = run(capsys, "upsilon", "--graph", str(path),
                       "--subshift", subshift_file, "--radius", "3")
    assert code == 0
    assert "translate" in out


def test_upsilon_not_in_Y_exits_1(capsys, tmp_path, subshift_file):
    from irslab import CayleyOracle

    path = tmp_path / "plain.sgr"
    path.write_text(emit_sgr(ball(CayleyOracle(2), 10)))
    code, _, err = run(capsys, "upsilon", "--graph", str(path),
                       "--subshift", subshift_file, "--radius", "3")
    assert code == 1


def test_lambda(capsys, subshift_file):
    code, out, _ = run(capsys, "lambda", "--subshift", subshift_file)
    assert code == 0
    assert "conjugation invariance: PASS" in out


def test_stab_law_cli(capsys, tmp_path):
    path = tmp_path / "act.txt"
    path.write_text("points 2\nperm s1: (0 1)\nperm s2: id\n")
    code, out, _ = run(capsys, "stab-law", "--action", str(path))
    assert code == 0
    assert "atoms 1 total 1" in out


def test_tnf_cli(capsys, tmp_path):
    path = tmp_path / "act.txt"
    path.write_text("points 3\nperm s1: (0 1)\nperm s2: (1 2)\n")
    code, out, _ = run(capsys, "tnf-check", "--action", str(path))
    assert code == 0
    assert "totally-nonfree: true" in out


def test_first_return_cli(capsys, tmp_path):
    path = tmp_path / "act.txt"
    path.write_text("points 5\nperm s1: (0 1 2 3 4)\nperm s2: id\n")
    code, out, _ = run(capsys, "first-return", "--action", str(path),
                       "--gen", "1", "--subset", "0,2")
    assert code == 0
    assert "0 -> 2" in out and "2 -> 0" in out


def test_estimate_cli_deterministic(capsys):
    args = ("estimate", "--sampler", "poulsen:trivial", "--p", "1/10",
            "--fingerprint", "e", "--radius", "2", "--samples", "50",
            "--seed", "9")
    code, out1, _ = run(capsys, *args)
    assert code == 0
    assert "seed 9" in out1
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_invariance_cli_pass_and_fail(capsys):
    code, out, _ = run(capsys, "invariance", "--sampler", "normalizer:trivial",
                       "--p", "1/2", "--radius", "1", "--samples", "2000",
                       "--seed", "2")
    assert code == 0
    assert "PASS" in out
    code, out, _ = run(capsys, "invariance", "--sampler",
                       "biased-normalizer:trivial", "--p", "1/2",
                       "--radius", "1", "--samples", "2000", "--seed", "2",
                       "--z-threshold", "6")
    assert code == 3
    assert "FAIL" in out


def test_sweep_cli(capsys):
    code, out, _ = run(capsys, "sweep", "--base", "trivial",
                       "--construction", "poulsen", "--p-list", "0.2,0.1",
                       "--fingerprint", "e", "--radius", "2",
                       "--samples", "100")
    assert code == 0
    assert "estimate" in out


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "ball", "--base", "trivial", "--radius", "9",
                       "--budget", "10")
    assert code == 2
    assert "budget" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "aut", "--graph", "/nonexistent/g.sgr")
    assert code == 1
