from pisupport.cli import run_command
from pisupport.library import klein_truncation
from pisupport.modfile import emit_module_file, parse_module_file


def run(*argv):
    return run_command(list(argv))


def test_check_library_name():
    code, out, err = run("check", "klein-M2")
    assert code == 0 and "ok" in out and err == ""


def test_check_bad_file(tmp_path):
    path = tmp_path / "bad.mod"
    path.write_text("format: modrep/1\nnope\n")
    code, out, err = run("check", str(path))
    assert code == 3
    assert err.startswith("error: ModuleFileSyntaxError")


def test_check_missing_file():
    code, out, err = run("check", "no/such/file.mod")
    assert code == 3 and "FileNotFoundError" in err


def test_jordan_point():
    code, out, err = run("jordan", "klein-M2", "--point", "0,1")
    assert code == 0 and out.strip() == "[2,1,1]"


def test_jordan_generic():
    code, out, err = run("jordan", "klein-M2", "--generic")
    assert code == 0 and out.strip() == "[2,2]"


def test_jordan_extension_point():
    code, out, err = run("jordan", "klein-M2", "--point", "[0,1],[1,0]")
    assert code == 0 and out.strip() == "[2,2]"


def test_jordan_library_free():
    code, out, err = run("jordan", "free:1", "--p", "3", "--r", "1",
                         "--point", "1")
    assert code == 0 and out.strip() == "[3]"


def test_support_command():
    code, out, err = run("support", "klein-M2", "--sample-degree", "2")
    assert code == 0
    lines = out.strip().split("\n")
    assert "point [0:1] in" in lines
    assert "generic out" in lines


def test_support_ideal_flag():
    code, out, err = run("support", "klein-M2", "--ideal")
    assert code == 0 and "ideal-generator s1^2" in out


def test_support_ideal_everything():
    code, out, err = run("support", "trivial", "--ideal", "--p", "2", "--r", "2")
    assert code == 0 and "ideal everything" in out


def test_cosupport_point():
    code, out, err = run("cosupport", "klein-M2", "--point", "0,1")
    assert code == 0 and out.strip() == "point [0:1] in"


def test_cosupport_generic_notes_fallback():
    code, out, err = run("cosupport", "klein-M2", "--generic")
    assert code == 0 and out.startswith("generic out")
    assert "via support" in out


def test_is_projective():
    code, out, err = run("is-projective", "free:3", "--p", "2", "--r", "2")
    assert (code, out.strip()) == (0, "true")
    code, out, err = run("is-projective", "klein-M2")
    assert (code, out.strip()) == (0, "false")


def test_tensor_hom_dual_write_files(tmp_path):
    m2 = tmp_path / "m2.mod"
    m2.write_text(emit_module_file(klein_truncation(2)))
    out_path = tmp_path / "t.mod"
    code, out, err = run("tensor", str(m2), str(m2), "-o", str(out_path))
    assert code == 0 and out_path.exists()
    t = parse_module_file(out_path.read_text())
    assert t.n == 16

    code, out, err = run("hom", str(m2), "klein-M3", "-o", str(tmp_path / "h.mod"))
    assert code == 0
    h = parse_module_file((tmp_path / "h.mod").read_text())
    assert h.n == 4 * 6

    code, out, err = run("dual", str(m2), "-o", str(tmp_path / "d.mod"))
    assert code == 0
    d = parse_module_file((tmp_path / "d.mod").read_text())
    assert d.n == 4


def test_verify_exit_zero_and_deterministic():
    argv = ["verify", "--suite", "flat", "--trials", "5", "--seed", "3"]
    code1, out1, err1 = run(*argv)
    code2, out2, err2 = run(*argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "RESULT: PASS" in out1


def test_verify_all_suites_small():
    code, out, err = run("verify", "--trials", "3", "--seed", "2")
    assert code == 0
    for name in ("dade", "tensor", "hom", "endo", "flat", "perturb"):
        assert f"suite {name}:" in out


def test_demo_klein():
    code, out, err = run("demo", "klein", "--n", "2")
    assert code == 0
    assert "support = {[0:1]}" in out
    assert "expected (infinite module)" in out
    assert "DISAGREE" not in out


def test_demo_deterministic():
    a = run("demo", "klein", "--n", "1")
    b = run("demo", "klein", "--n", "1")
    assert a == b


def test_usage_error_exit_two():
    code, out, err = run("jordan", "klein-M2")  # neither --point nor --generic
    assert code == 2 and "UsageError" in err


def test_input_error_exit_three():
    code, out, err = run("jordan", "klein-M2", "--point", "0,0")
    assert code == 3 and "AllCoefficientsZero" in err


def test_counterexample_replay_format(tmp_path):
    # the mechanism: a failing trial serializes its module; replaying the file
    # reproduces the same verdicts
    from pisupport.verify import SuiteResult

    m = klein_truncation(2)
    res = SuiteResult("dade")
    res.record(7, False, "synthetic failure", m)
    lines = res.lines()
    assert lines[0] == "suite dade: 0 passed, 1 failed"
    assert lines[1].startswith("counterexample trial=7")
    text = "\n".join(lines[2:]) + "\n"
    replayed = parse_module_file(text)
    assert list(replayed.Z) == list(m.Z)
