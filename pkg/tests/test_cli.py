import json
import subprocess
import sys

import pytest

from gqbci import __version__
from gqbci.cli import main, parse_n_range, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_both_routes(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--set", "1,a,b", "--route", "both")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["routes_agree"] is True
    ints = {e["value"]: e["multiplicity"] for e in doc["result"]["integer_eigenvalues"]}
    assert ints[1] == 3
    assert doc["tool_version"] == __version__
    assert list(doc) == ["command", "tool_version", "parameters", "result", "timing"]


def test_spectrum_perfect_matching(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "2", "--set", "1", "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["charpoly"] == ["1", "0", "-8", "0", "28", "0", "-56", "0", "70",
                                         "0", "-56", "0", "28", "0", "-8", "0", "1"]
    assert "timing" not in doc


def test_spectrum_second_set(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--set", "1,a^2,b")
    ints = {e["value"]: e["multiplicity"] for e in json.loads(out)["result"]["integer_eigenvalues"]}
    assert code == 0 and ints[1] == 1


def test_spectrum_csv_and_out(capsys, tmp_path):
    csv_path, out_path = tmp_path / "s.csv", tmp_path / "s.json"
    code, out, _ = run(capsys, "spectrum", "--n", "2", "--set", "1", "--no-timing",
                       "--csv", str(csv_path), "--out", str(out_path))
    assert code == 0
    assert csv_path.read_bytes() == b"eigenvalue,multiplicity\n-1.000000000000,8\n1.000000000000,8\n"
    assert out_path.read_text(encoding="utf-8") == out


def test_spectrum_parse_error(capsys):
    code, out, err = run(capsys, "spectrum", "--n", "3", "--set", "1,c")
    assert code == 2 and out == "" and "usage error" in err


def test_spectrum_route_mismatch_exits_1(capsys, monkeypatch):
    import gqbci.cli as cli
    from gqbci.spectra import SpectrumSummary
    real = cli.spectrum_via_reps

    def broken(S):
        s = real(S)
        return SpectrumSummary(s.charpoly[:-1] + (2,), s.eigenvalues, s.source, s.max_residue)

    monkeypatch.setattr(cli, "spectrum_via_reps", broken)
    code, _, err = run(capsys, "spectrum", "--n", "2", "--set", "1", "--route", "both")
    assert code == 1 and "disagreement" in err


@pytest.mark.parametrize("argv", [
    [], ["spectrum", "--n", "3"], ["verify", "nope", "--n", "3"], ["verify", "fif", "--n", "5..3"],
    ["verify", "bci", "--n", "3", "--m", "4"], ["spectrum", "--n", "1", "--set", "1"],
])
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_verify_fif_n4(capsys):
    code, out, _ = run(capsys, "verify", "fif", "--n", "4")
    assert code == 0
    assert json.loads(out)["result"]["results"][0]["witness"] == ["a^2", "b"]


def test_verify_bci_n3(capsys):
    code, out, _ = run(capsys, "verify", "bci", "--n", "3", "--m", "3")
    assert code == 0
    assert json.loads(out)["result"]["results"][0]["verdict"] == "holds"


def test_verify_pairs_and_homogeneous(capsys):
    assert run(capsys, "verify", "lemma33", "--n", "3")[0] == 0
    code, out, _ = run(capsys, "verify", "homogeneous", "--n", "3")
    assert code == 0 and json.loads(out)["result"]["results"][0]["homogeneous"] is True


def test_verify_fif2bci(capsys):
    code, out, _ = run(capsys, "verify", "fif2bci", "--n", "2..4")
    assert code == 0
    assert all(r["agree"] for r in json.loads(out)["result"]["results"])


def test_guard_exit_3(capsys):
    code, out, err = run(capsys, "verify", "bci", "--n", "8", "--m", "2")
    assert code == 3 and out == "" and "resource limit" in err
    code, out, err = run(capsys, "verify", "theorem1", "--n", "3..8")
    assert code == 3 and "n=8" in err
    assert json.loads(out)["result"]["rows"][0]["agrees"] is True


def test_contradiction_exit_1(capsys, monkeypatch):
    import gqbci.cli as cli
    monkeypatch.setattr(cli, "predicted_3bci", lambda n: not (n == 2 or n % 2 == 1))
    code, _, _ = run(capsys, "verify", "fif", "--n", "3")
    assert code == 1


def test_parity_sweep_small_range(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--n", "2..4", "--no-timing")
    assert code == 0
    rows = json.loads(out)["result"]["rows"]
    assert [r["bci3"]["verdict"] for r in rows] == ["holds", "holds", "fails"]


def test_reruns_are_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "gqbci", "verify", "bci", "--n", "4", "--m", "2", "--no-timing"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert b"\r\n" not in a.stdout
    c = subprocess.run(cmd + ["--jobs", "2"], capture_output=True, check=False)
    da, dc = json.loads(a.stdout), json.loads(c.stdout)
    assert da["result"] == dc["result"] and da["parameters"] == dc["parameters"]


def test_n_range_syntax():
    assert parse_n_range("7") == [7]
    assert parse_n_range("2..4") == [2, 3, 4]
    with pytest.raises(UsageError):
        parse_n_range("4..2")
    with pytest.raises(UsageError):
        parse_n_range("x")
