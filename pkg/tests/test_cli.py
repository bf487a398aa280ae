import subprocess
import sys
from importlib import resources

import pytest

from qcss.cli import main
from qcss.generators import gen_thm41_family, gen_thm42_family
from qcss.io import load, serialize


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_then_analyze(tmp_path, capsys):
    f = tmp_path / "f.qmat"
    assert run(capsys, "gen", "thm41", "--len", "9", "--rho", "identity", "--output", str(f))[0] == 0
    code, out, _ = run(capsys, "analyze", "--input", str(f))
    assert code == 0
    assert "measured_max 9.000000" in out.splitlines()
    assert "histogram 9.000000 1458" in out


def test_analyze_report_file_and_fft(tmp_path, capsys):
    f = tmp_path / "f.qmat"
    run(capsys, "gen", "thm42", "--len", "9", "--output", str(f))
    rep = tmp_path / "r.txt"
    code, out, _ = run(capsys, "analyze", "--input", str(f), "--engine", "fft", "--report", str(rep))
    assert code == 0 and rep.read_text() == out
    assert "engine fft" in out


def test_gen_is_deterministic_and_matches_library(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "gen", "thm42", "--len", "15", "--output", str(a))
    run(capsys, "gen", "thm42", "--len", "15", "--output", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text() == serialize(gen_thm42_family(15))


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "thm41", "--len", "5")
    assert code == 0 and out == serialize(gen_thm41_family(5))


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--p", "2", "--n", "4")
    assert code == 0
    assert "q 16" in out and "modulus 1 1 0 0 1" in out


def test_verify_tampered_exit_1(tmp_path, capsys):
    f = tmp_path / "t.qmat"
    run(capsys, "gen", "thm41", "--len", "9", "--output", str(f))
    lines = f.read_text().splitlines()
    idx = lines.index("") + 12  # a row inside the second matrix
    row = lines[idx].split()
    row[3] = str((int(row[3]) + 1) % 9)
    lines[idx] = " ".join(row)
    f.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--input", str(f))
    assert code == 1
    assert "case_structure fail" in out and "verdict fail" in out


def test_verify_golden(tmp_path, capsys):
    paths = []
    code, out, _ = run(capsys, "export-golden", "--dir", str(tmp_path))
    assert code == 0
    paths = out.split()
    assert len(paths) == 3
    for p in paths:
        code, out, _ = run(capsys, "verify", "--input", p)
        assert code == 0, out
        assert "verdict pass" in out


def test_prop1_and_interleave(tmp_path, capsys):
    s = tmp_path / "s.qseq"
    m = tmp_path / "m.qmat"
    assert run(capsys, "gen", "prop1", "--p", "2", "--n", "4", "--output", str(s))[0] == 0
    assert run(capsys, "interleave", "--input", str(s), "--flock", "3", "--output", str(m))[0] == 0
    golden = (resources.files("qcss") / "golden" / "prop1_q16_k3.qmat").read_text()
    assert m.read_text() == golden
    code, out, _ = run(capsys, "gen", "prop1", "--p", "2", "--n", "4", "--flock", "3")
    assert out == golden
    code, out, _ = run(capsys, "analyze", "--input", str(m))
    assert "measured_max 4.000000" in out


def test_interleave_warns_on_small_family(tmp_path, capsys):
    s = tmp_path / "s.qseq"
    s.write_text("QSEQ1\norder 2\nperiod 4\nmembers 2\n\n0 1 0 1\n1 1 0 0\n")
    code, out, err = run(capsys, "interleave", "--input", str(s), "--flock", "2")
    assert code == 0 and "warning" in err and out.startswith("QMAT1")


def test_rho_file(tmp_path, capsys):
    r = tmp_path / "rho.txt"
    r.write_text("0 2 4 1 3\n")
    code, out, _ = run(capsys, "gen", "thm42", "--len", "5", "--rho", str(r))
    assert code == 0 and "meta rho 0 2 4 1 3" in out
    r.write_text("1 0 2 3 4\n")
    with pytest.raises(SystemExit) as exc:
        main(["gen", "thm42", "--len", "5", "--rho", str(r)])
    assert exc.value.code == 2
    assert "--rho" in capsys.readouterr().err


def test_thm41_del(capsys):
    code, out, _ = run(capsys, "gen", "thm41-del", "--len", "9", "--row", "5")
    assert code == 0 and "flock 8" in out and "meta deleted_row 5" in out


@pytest.mark.parametrize("argv,flag", [
    (["gen", "thm41", "--len", "8"], "--len"),
    (["gen", "thm41-del", "--len", "9", "--row", "10"], "--row"),
    (["gen", "prop1", "--p", "4", "--n", "2"], "--p"),
    (["gen", "prop1", "--p", "2", "--n", "4", "--flock", "4"], "--flock"),
    (["field-info", "--p", "6", "--n", "1"], "--p"),
    (["trend", "--kind", "thm41", "--points", "9", "--flocks", "3"], "--flocks"),
    (["analyze", "--input", "x", "--engine", "gpu"], "--engine"),
    ([], "command"),
])
def test_usage_errors_exit_2(argv, flag, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_malformed_input_exit_1(tmp_path, capsys):
    f = tmp_path / "bad.qmat"
    f.write_text("QMAT1\norder 3\nflock 1\nlength 2\nmembers 1\n\n0 7\n")
    code, _, err = run(capsys, "analyze", "--input", str(f))
    assert code == 1 and "line 7" in err
    code, _, err = run(capsys, "verify", "--input", str(tmp_path / "missing.qmat"))
    assert code == 1


def test_trend_output(capsys):
    code, out, _ = run(capsys, "trend", "--kind", "prop1", "--points", "16,64,256", "--flocks", "3,7,5")
    assert code == 0
    assert "row 16 15 3 5 4.000000 3.487429 1.146977 4.000000" in out
    assert "direction decreasing" in out
    code, out, _ = run(capsys, "trend", "--kind", "thm41", "--points", "9,15")
    assert "row 9 18 9 9 9.000000 6.383694 1.409842 9.000000" in out


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "qcss", "gen", "thm41", "--len", "3"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == serialize(gen_thm41_family(3))
    assert load_text(out.stdout, tmp_path).size == 6


def load_text(text, tmp_path):
    p = tmp_path / "x.qmat"
    p.write_text(text)
    return load(p)
