"""End-to-end command line checks driven through main(argv)."""

import json

import pytest

from cycloclass.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_hminus_59(capsys):
    rc, out, _ = run(capsys, "hminus", "59")
    assert rc == EXIT_OK
    assert out.splitlines()[0] == "h-(59) = 41241 = 3 · 59 · 233"


def test_hminus_trivial_and_prime_values(capsys):
    rc, out, _ = run(capsys, "hminus", "3")
    assert rc == EXIT_OK and out.strip() == "h-(3) = 1"
    rc, out, _ = run(capsys, "hminus", "23")
    assert rc == EXIT_OK and out.strip() == "h-(23) = 3"


def test_hminus_normalizes_conductor(capsys):
    rc, out, _ = run(capsys, "hminus", "46")
    assert rc == EXIT_OK
    assert "h-(23) = 3" in out


def test_hminus_verbose_shows_structure(capsys):
    rc, out, _ = run(capsys, "hminus", "59", "--verbose")
    assert rc == EXIT_OK
    assert "Q = 1" in out and "w = 118" in out
    assert "orbit" in out


def test_hminus_rejects_bad_conductor(capsys):
    rc, _, err = run(capsys, "hminus", "0")
    assert rc == EXIT_USAGE and err.strip()


def test_hminus_time_limit(capsys):
    rc, _, err = run(capsys, "hminus", "191", "--time-limit", "0.000001")
    assert rc == EXIT_FAIL
    assert "time limit" in err.lower()


def test_bound_rounded(capsys):
    rc, out, _ = run(capsys, "bound", "--disc", "59", "--m", "2")
    assert rc == EXIT_OK
    assert "H = 62.64031880 (rounded up)" in out


def test_bound_exact(capsys):
    rc, out, _ = run(capsys, "bound", "--disc", "3969", "--m", "1")
    assert rc == EXIT_OK
    assert "H = 63.00000000 (exact)" in out


def test_bound_degenerate_rejected(capsys):
    rc, _, err = run(capsys, "bound", "--disc", "1", "--m", "2")
    assert rc == EXIT_USAGE and "degenerate" in err


def test_subfields_59(capsys):
    rc, out, _ = run(capsys, "subfields", "59")
    assert rc == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "subfields of Q(zeta_59)"
    rows = [ln.split() for ln in lines[2:]]
    assert [r[0] for r in rows] == ["1", "2", "29", "58"]
    assert rows[1][2] == "59" and "62.64031880" in lines[3]
    assert rows[3][2] == "~10^100"


def test_audit_clean_file(tmp_path, capsys):
    f = tmp_path / "recs.jsonl"
    f.write_text(
        json.dumps(
            {
                "field": {"kind": "cyclotomic", "u": 23},
                "h_minus": [[3, 1]],
                "source": "test",
            }
        )
        + "\n"
    )
    rc, out, _ = run(capsys, "audit", str(f))
    assert rc == EXIT_OK
    assert "audit outcome: PASS (no violations)" in out
    assert "VIOLATION" not in out.replace("0 VIOLATION", "")


def test_audit_violation_exits_1(tmp_path, capsys):
    f = tmp_path / "recs.jsonl"
    f.write_text(
        json.dumps(
            {
                "field": {"kind": "abelian", "degree": 3},
                "h": [[5, 1]],
                "source": "test",
            }
        )
        + "\n"
    )
    rc, out, _ = run(capsys, "audit", str(f))
    assert rc == EXIT_FAIL
    assert "VIOLATION" in out and "FAIL" in out


def test_audit_malformed_file_exits_2(tmp_path, capsys):
    f = tmp_path / "recs.jsonl"
    f.write_text('{"field": {"kind": "cyclotomic", "u": 118}}\n')
    rc, _, err = run(capsys, "audit", str(f))
    assert rc == EXIT_USAGE
    assert "line 1" in err


def test_audit_missing_file_exits_2(tmp_path, capsys):
    rc, _, err = run(capsys, "audit", str(tmp_path / "nope.jsonl"))
    assert rc == EXIT_USAGE and err.strip()


def test_audit_empty_file_exits_2(tmp_path, capsys):
    f = tmp_path / "empty.jsonl"
    f.write_text("\n")
    rc, _, err = run(capsys, "audit", str(f))
    assert rc == EXIT_USAGE and "no records" in err


def test_audit_structured_format(tmp_path, capsys):
    f = tmp_path / "recs.jsonl"
    f.write_text(
        json.dumps(
            {
                "field": {"kind": "cyclotomic", "u": 23},
                "h_minus": [[3, 1]],
                "source": "test",
            }
        )
        + "\n"
    )
    rc, out, _ = run(capsys, "audit", str(f), "--format", "structured")
    assert rc == EXIT_OK
    objs = [json.loads(ln) for ln in out.splitlines()]
    assert "summary" in objs[-1]
    assert objs[-1]["summary"]["violations"] == 0


def test_verify_paper(capsys):
    rc, out, _ = run(capsys, "verify-paper")
    assert rc == EXIT_OK
    assert "0 VIOLATION" in out
    assert "audit outcome: PASS (no violations)" in out


def test_verify_paper_output_is_deterministic(capsys):
    rc1, out1, _ = run(capsys, "verify-paper")
    rc2, out2, _ = run(capsys, "verify-paper")
    assert (rc1, rc2) == (EXIT_OK, EXIT_OK)
    assert out1 == out2
    rc1, out1, _ = run(capsys, "verify-paper", "--format", "structured")
    rc2, out2, _ = run(capsys, "verify-paper", "--format", "structured")
    assert out1 == out2


def test_no_command_prints_usage(capsys):
    rc, _, err = run(capsys, )
    assert rc == EXIT_USAGE
    assert "usage" in err.lower()
