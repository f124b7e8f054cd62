import json

import pytest

from spacewb import fixtures
from spacewb.cli import main
from spacewb.compiler import HARD_FLOOR, expected_counts, parse_presentation
from spacewb.machine import load_machine, parse_machine
from spacewb.transforms import is_one_letter


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(out):
    body = out.split("--- json\n", 1)[1].split("--- end", 1)[0]
    return json.loads(body)


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", fixtures.path("fbal.mach"))
    assert code == 0 and payload(out)["valid"]
    code, out, _ = run(capsys, "validate", fixtures.path("eraser.smach"))
    assert code == 0 and payload(out)["kind"] == "smachine"


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.mach"
    bad.write_text("tapes 1\nnonsense here\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "bad.mach" in err
    code, _, _ = run(capsys, "validate", tmp_path / "missing.mach")
    assert code == 2


def test_transform_full(tmp_path, capsys):
    out = tmp_path / "full.mach"
    code, _, _ = run(capsys, "transform", fixtures.path("fbal.mach"), "--full", "-o", out)
    assert code == 0
    m = load_machine(str(out))
    assert m.is_symmetric and is_one_letter(m)
    # the output re-parses to an equal machine and repeats byte for byte
    out2 = tmp_path / "again.mach"
    run(capsys, "transform", fixtures.path("fbal.mach"), "--full", "-o", out2)
    assert out.read_text() == out2.read_text()
    assert parse_machine(out.read_text()) == m


def test_transform_pad_needs_s10(capsys):
    code, _, err = run(capsys, "transform", fixtures.path("fbal.mach"), "--pad")
    assert code == 2 and "error" in err


def test_s_of_m_to_stdout(tmp_path, capsys):
    code, _, err = run(capsys, "transform", fixtures.path("even.mach"), "--s-of-m")
    assert code == 2 and "symmetric" in err
    full = tmp_path / "full.mach"
    run(capsys, "transform", fixtures.path("even.mach"), "--full", "-o", full)
    code, out, _ = run(capsys, "transform", full, "--s-of-m")
    assert code == 0 and out.startswith("smachine")


def test_compile(tmp_path, capsys):
    src = fixtures.path("eraser.smach")
    a, b = tmp_path / "a.pres", tmp_path / "b.pres"
    code, out, _ = run(capsys, "compile", src, "--L", 4, "--floor", HARD_FLOOR,
                       "--mode", "embedding", "-o", a)
    assert code == 0
    run(capsys, "compile", src, "--L", 4, "--floor", HARD_FLOOR, "--mode", "embedding", "-o", b)
    assert a.read_text() == b.read_text()
    assert sum(1 for line in a.read_text().splitlines()
               if line.startswith("rel") and " t" not in line and "h.t" not in line) == 1
    data = payload(out)
    exp = expected_counts(fixtures.load_s("eraser"), 4, "embedding")
    assert data["generators"] == exp["generators"] and data["relators"] == exp["relators"]
    p = parse_presentation(a.read_text())
    assert sum(1 for r in p.relators if r.kind == "hub") == 1


def test_compile_bad_L(capsys):
    code, _, err = run(capsys, "compile", fixtures.path("eraser.smach"), "--L", 4)
    assert code == 2 and "L" in err


def test_space(tmp_path, capsys):
    pres = tmp_path / "k.pres"
    pres.write_text("gen a\nrel a\n")
    code, out, _ = run(capsys, "space", pres, "a")
    assert code == 0
    assert payload(out)["status"] == "found" and payload(out)["value"] == 1
    free = tmp_path / "f.pres"
    free.write_text("gen a\n")
    _, out, _ = run(capsys, "space", free, "a", "--space-cap", 3)
    assert payload(out)["status"] == "rejected"
    code, _, _ = run(capsys, "space", pres, "zz")
    assert code == 2


def test_machine_space_matches_library(capsys):
    from spacewb.machine import make_input_config
    from spacewb.oracle import bfs_machine_space
    m = fixtures.load("fbal")
    code, out, _ = run(capsys, "machine-space", fixtures.path("fbal.mach"), "a a'")
    lib = bfs_machine_space(m, make_input_config(m, ("a", "a'")), 12)
    assert code == 0 and payload(out)["value"] == lib.value


def test_check_adder(capsys):
    code, out, _ = run(capsys, "check", "lemma2.6", "--umax", 2)
    assert code == 0
    data = payload(out)
    assert data["passed"] and data["suite"] == "lemma2.6" and data["cases"] > 0


def test_check_witness_reports_constant(capsys):
    code, out, _ = run(capsys, "check", "prop1.1", "--smoke-L", 0)
    assert code == 0
    assert payload(out)["metrics"]["c1"]


def test_check_unknown_suite(capsys):
    code, _, err = run(capsys, "check", "no-such-suite")
    assert code == 2 and "unknown suite" in err


def test_check_bad_knob(capsys):
    code, _, _ = run(capsys, "check", "lemma2.6", "--trace-len", 3)
    assert code == 2


def test_trace_build_and_check(tmp_path, capsys):
    tr = tmp_path / "w.trace"
    pres = tmp_path / "e.pres"
    src = fixtures.path("eraser.smach")
    code, out, _ = run(capsys, "trace", "build", src, "x", "--L", 4, "--floor", HARD_FLOOR,
                       "-o", tr)
    assert code == 0
    data = payload(out)
    assert data["space"] <= data["bound"]
    run(capsys, "compile", src, "--L", 4, "--floor", HARD_FLOOR, "-o", pres)
    code, out, _ = run(capsys, "trace", "check", pres, tr)
    assert code == 0 and payload(out)["valid"] and payload(out)["space"] == data["space"]
    broken = tmp_path / "bad.trace"
    broken.write_text(tr.read_text().replace("drop 0", "drop 5"))
    code, out, _ = run(capsys, "trace", "check", pres, broken)
    assert code == 1 and not payload(out)["valid"]


def test_seed_changes_nothing(capsys):
    _, a, _ = run(capsys, "--seed", 1, "machine-space", fixtures.path("even.mach"), "a a")
    _, b, _ = run(capsys, "--seed", 2, "machine-space", fixtures.path("even.mach"), "a a")
    assert a == b


def test_out_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SPACEWB_OUT_DIR", str(tmp_path / "o"))
    code, out, _ = run(capsys, "transform", fixtures.path("even.mach"), "--s10")
    assert code == 0
    assert (tmp_path / "o" / "even.s10.mach").exists()


@pytest.mark.parametrize("argv", [[], ["transform", "x.mach"], ["compile", "x.smach"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
