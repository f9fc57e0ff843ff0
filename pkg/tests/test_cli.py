import subprocess
import sys

import pytest

from conftest import EXAMPLES
from triadcalc.cli import main
from triadcalc.formats import load_triad

I_DIR = EXAMPLES / "I"
TRIAD = str(I_DIR / "I.triad")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_closure(capsys):
    assert run(capsys, "closure", "--file", TRIAD, "--side", "P", "--set", "0P,2P") == (0, "0P,1P,2P\n", "")


def test_orth_of_empty_set(capsys):
    code, out, _ = run(capsys, "orth", "--file", TRIAD, "--side", "P", "--set", "")
    assert (code, out) == (0, "0N,1N,2N\n")
    code, out, _ = run(capsys, "orth", "--file", TRIAD, "--side", "P", "--set", "0P,1P")
    assert out == "∅\n"


def test_regular_verdicts_and_exit_codes(capsys):
    code, out, _ = run(capsys, "regular", "--triad", TRIAD, "--functional", str(I_DIR / "natural.fnl"))
    assert (code, out) == (0, "regular: true\n")
    code, out, _ = run(capsys, "regular", "--functional", str(I_DIR / "sharp.fnl"))
    assert code == 1 and out == "regular: false  witness: (0P, 1N, →)\n"


def test_classify_flat(capsys):
    code, out, _ = run(capsys, "classify", "--triad", TRIAD, "--functional", str(I_DIR / "flat.fnl"))
    assert code == 0
    assert "continuous(P): false  witness: {1P}⊥⊥" in out.splitlines()
    assert "continuous(N): true" in out.splitlines()
    assert out.splitlines()[-1].startswith("regular: false")


def test_classify_tsv(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "classify", "--functional", str(I_DIR / "sharp.fnl"))
    lines = out.splitlines()
    assert lines[0] == "property\tside\tvalue\twitness"
    assert "continuous\tP\ttrue\t" in lines


def test_closed_sets_text_and_tsv(capsys):
    code, out, _ = run(capsys, "closed-sets", "--file", TRIAD, "--side", "P")
    assert out.splitlines() == ["∅", "0P", "1P", "2P", "0P,1P,2P"]
    code, out, _ = run(capsys, "closed-sets", "--file", TRIAD, "--format", "tsv")
    lines = out.splitlines()
    assert lines[0] == "side\tset\tcardinality"
    assert "N\t0N,1N,2N\t3" in lines and len(lines) == 11


def test_boolean_queries(capsys):
    assert run(capsys, "specializes", "--file", TRIAD, "--a", "1P", "--b", "1P")[0] == 0
    assert run(capsys, "specializes", "--file", TRIAD, "--a", "0P", "--b", "1P")[0] == 1
    code, out, _ = run(capsys, "consequence", "--file", TRIAD, "--set", "0P,2P", "--target", "1P")
    assert (code, out) == (0, "consequence: true\n")
    assert run(capsys, "consequence", "--file", TRIAD, "--set", "0P", "--target", "1P")[0] == 1
    code, out, _ = run(capsys, "consequence", "--file", TRIAD, "--set", "0N,2N")
    assert out == "0N,1N,2N\n"


def test_entailment_verify(capsys):
    code, out, _ = run(capsys, "entailment-verify", "--file", TRIAD)
    assert code == 0 and out.count("PASS") == 16 and "FAIL" not in out


def test_ludics_subtriad_round_trips(capsys, tmp_path):
    out_file = tmp_path / "world.triad"
    code, out, _ = run(capsys, "ludics", "subtriad", "--sig", str(EXAMPLES / "ludics" / "sig.txt"),
                       "--max-nodes", "3", "--out", str(out_file))
    assert code == 0 and "9 positives, 13 negatives" in out
    t = load_triad(out_file)
    assert "daimon" in t.positives
    code, out, _ = run(capsys, "closed-sets", "--file", str(out_file), "--side", "N")
    assert code == 0 and out.splitlines()[0] == "∅"


def test_ludics_check(capsys):
    code, out, _ = run(capsys, "ludics-check", "--sig", "a/0,b/1", "--max-nodes", "3",
                       "--functional", str(EXAMPLES / "ludics" / "g.design"))
    assert code == 0 and "FAIL" not in out and "associativity" in out


def test_game_lift(capsys, tmp_path):
    code, out, _ = run(capsys, "game-lift", "--map", str(EXAMPLES / "games" / "swap.map"))
    assert code == 0 and out.startswith("linear: true\nregular: true\n")
    (tmp_path / "I.game").write_text((I_DIR / "I.triad").read_text().replace("triad", "game", 1)
                                     .replace("positives", "strategies").replace("negatives", "costrategies")
                                     .replace("orthogonal", "related"))
    (tmp_path / "sharp.map").write_text((I_DIR / "sharp.fnl").read_text()
                                        .replace("functional sharp over I.triad", "map sharp over I.game"))
    code, out, _ = run(capsys, "game-lift", "--map", str(tmp_path / "sharp.map"))
    assert (code, out) == (1, "linear: false  witness: (0P, 1N)\n")


def test_verify_all_fixture_table(capsys):
    files = [str(I_DIR / name) for name in ("I.triad", "sharp.fnl", "flat.fnl", "natural.fnl")]
    code, out, _ = run(capsys, "verify-all", *files)
    assert code == 0 and "FAIL" not in out
    assert out.count("== ") == 4
    assert out.rstrip().endswith("checks passed")


def test_verify_all_ludics(capsys):
    code, out, _ = run(capsys, "verify-all", "--sig", "a/0,b/1", "--max-nodes", "3")
    assert code == 0 and "lifted functionals are regular" in out


def test_output_is_deterministic(capsys):
    argv = ["verify-all", str(I_DIR / "I.triad"), str(I_DIR / "flat.fnl"), "--format", "tsv"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_duplicate_pair_is_a_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.triad"
    bad.write_text((I_DIR / "I.triad").read_text().replace("1P 1N\n", "1P 1N\n1P 1N\n"))
    code, out, err = run(capsys, "verify-all", str(bad))
    assert code == 2 and out == "" and "duplicate pair" in err


def test_usage_and_io_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["closure", "--file", TRIAD, "--side", "Q", "--set", "0P"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "closure", "--file", str(tmp_path / "missing.triad"), "--side", "P", "--set", "")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "closure", "--file", TRIAD, "--side", "P", "--set", "7P")
    assert code == 2


def test_capacity_guard_exit_code(capsys, tmp_path):
    path = tmp_path / "big.triad"
    labels = " ".join(f"p{i}" for i in range(12))
    path.write_text(f"triad\npositives: {labels}\nnegatives: q\northogonal:\nend\n")
    code, _, err = run(capsys, "closed-sets", "--file", str(path), "--max-carrier", "10")
    assert code == 2 and "capacity" in err


def test_timing_goes_to_stderr(capsys):
    code, out, err = run(capsys, "closure", "--file", TRIAD, "--side", "P", "--set", "1P", "--timing")
    assert out == "1P\n" and err.startswith("elapsed:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "triadcalc", "closure", "--file", TRIAD, "--side", "N", "--set", "0N"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "0N\n"
