import json
import subprocess
import sys

import pytest

from roughprob import cli
from roughprob.cli import main
from roughprob.verifier import LawReport
from roughprob.document import fixture_path

EXAMPLE = str(fixture_path("example_2_1.json"))
IDENTITY = str(fixture_path("identity_map.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_approx_named_event(capsys):
    code, out, _ = run(capsys, "approx", EXAMPLE, "--event", "odd")
    assert code == 0
    assert out.splitlines() == [
        "A       = {1, 3, 5}",
        "T+(A)   = {1, 3}",
        "T-1(A)  = {1, 2, 3, 5, 6}",
        "exact   = false",
        "P(A)    = 1/2",
        "P*(A)   = (1/3, 5/6)",
    ]


def test_approx_label_list(capsys):
    code, out, _ = run(capsys, "approx", EXAMPLE, "--event", "3,4")
    assert code == 0
    assert "exact   = true" in out and "P*(A)   = (1/3, 1/3)" in out


def test_approx_empty_event(capsys):
    code, out, _ = run(capsys, "approx", EXAMPLE, "--event", "")
    assert code == 0
    assert "exact   = true" in out and "P*(A)   = (0, 0)" in out


def test_approx_unknown_label(capsys):
    code, _, err = run(capsys, "approx", EXAMPLE, "--event", "1,9")
    assert code == 3 and "'9'" in err


def test_report_with_notes(capsys):
    code, out, _ = run(capsys, "report", EXAMPLE, "--variable", "U")
    assert code == 0
    assert "V*(U) direct       = (5/3, 4355/216)" in out
    assert "V*(U) closed form  = (5/3, 4355/216)" in out
    assert "(0.4, 13.75) is NOT reproduced" in out
    assert "2/4" in out and "8/6" in out
    assert "  sum  1/2    11/6" in out


def test_report_event_mode(capsys):
    code, out, _ = run(capsys, "report", EXAMPLE, "--variable", "U", "--cdf-mode", "event")
    assert code == 0
    assert "    2  (1/3, 2/3)" in out
    assert "misprint" not in out and "NOT reproduced" in out


def test_report_identity_map_has_no_notes(capsys):
    code, out, _ = run(capsys, "report", IDENTITY, "--variable", "U")
    assert code == 0
    assert "E*(U)              = (7/2, 7/2)" in out
    assert "notes" not in out


def test_report_unknown_variable(capsys):
    code, _, err = run(capsys, "report", EXAMPLE, "--variable", "Z")
    assert code == 3 and "parity" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--n-max", "9"],
    ["verify", "--laws", "P2.1.1,NOPE"],
    ["approx", "/no/such/file.json", "--event", "odd"],
])
def test_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_document(capsys, tmp_path):
    path = tmp_path / "doc.json"
    path.write_text('{"elements": ["a"], "map": {"a": ["a"]}, "weights": {"a": "0.5"}}')
    code, _, err = run(capsys, "approx", str(path), "--event", "a")
    assert code == 2 and "weights.a" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["report", EXAMPLE])
    assert info.value.code == 2


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "2", "--laws", "P2.1.3,T2.18")
    assert code == 0
    assert "laws: 2/2 pass; controls: 0/0 fired" in out


def test_verify_counterexample_exit(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "1", "--include-cover-variant",
                       "--laws", "L2.6.8-COVER", "--json")
    assert code == 5
    (report,) = json.loads(out)
    assert report["status"] == "fail" and report["counterexamples"]


def test_control_fires_on_one_element(capsys):
    # one element: upper(A∪B) >= upper(A) + upper(B) fails with A = B = X
    code, out, _ = run(capsys, "verify", "--n-max", "1", "--laws", "NEG-SUPERADD")
    assert code == 0 and "controls: 1/1 fired" in out


@pytest.mark.parametrize("report, warning", [
    (LawReport("NEG-SUPERADD", "control", instances_checked=4), "found no counterexample"),
    (LawReport("L2.3.1", "law", instances_checked=4, vacuous=4), "never exercised"),
])
def test_checker_defect_exit(capsys, monkeypatch, report, warning):
    monkeypatch.setattr(cli, "run_suite", lambda config: [report])
    code, out, _ = run(capsys, "verify", "--n-max", "1")
    assert code == 4 and warning in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "roughprob", "approx", EXAMPLE, "--event", "high"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "T+(A)   = {4}" in proc.stdout
