import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from click.testing import CliRunner
from conftest import FIXTURES

from guicheck.cli import cli, render_log
from guicheck.solver import LogEvent

SPEC = str(FIXTURES / "hscroll.gspec")
SCROLL_TRACE = str(FIXTURES / "hscroll.gtrace")
CROPPED = str(FIXTURES / "cropped.gspec")
GASON = str(FIXTURES / "gason.gtrace")


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args))

    return invoke


class TestCheck:
    def test_satisfied(self, run):
        r = run("check", "--spec", SPEC, "--trace", SCROLL_TRACE)
        assert r.exit_code == 0
        assert r.stdout == "t1=o6 t2=o5 r1=o2 r2=o4 r3=o3\nSATISFIED\n"

    def test_violated(self, run):
        r = run("check", "--spec", CROPPED, "--trace", GASON)
        assert r.exit_code == 1
        assert "CroppedLabels: specification not met" in r.stderr
        assert r.stdout == "VIOLATED\n"

    def test_missing_file(self, run, tmp_path):
        r = run("check", "--spec", str(tmp_path / "missing.gspec"), "--trace", SCROLL_TRACE)
        assert r.exit_code == 2
        assert "missing.gspec" in r.stderr

    @pytest.mark.parametrize(
        "spec_text,trace_text",
        [
            ("A = { variables { Rectangle r } constraints {} }", "rectangle(1,2,3,4);"),
            ("A = { variables { Rectangle r; } constraints { true; } }", "rectangle(1,2,3);"),
            ("A = { variables { Widget w; } constraints { true; } }", ""),
            ("A = { variables { Rectangle r; } constraints { (r.x above r); } }", "rectangle(1,2,3,4);"),
        ],
    )
    def test_bad_inputs_exit_2(self, run, tmp_path, spec_text, trace_text):
        (tmp_path / "s.gspec").write_text(spec_text)
        (tmp_path / "t.gtrace").write_text(trace_text)
        r = run("check", "--spec", str(tmp_path / "s.gspec"), "--trace", str(tmp_path / "t.gtrace"))
        assert r.exit_code == 2
        assert r.stderr.startswith("error:")

    def test_usage_error(self, run):
        assert run("check", "--spec", SPEC).exit_code == 2
        assert run("check", "--spec", SPEC, "--trace", SCROLL_TRACE, "--budget", "0").exit_code == 2

    def test_unknown_name(self, run):
        assert run("check", "--spec", SPEC, "--trace", SCROLL_TRACE, "--name", "Nope").exit_code == 2

    def test_budget_exceeded_exit_3(self, run, tmp_path):
        (tmp_path / "s.gspec").write_text("A = { variables { Rectangle a, b; } constraints { not (a above b); } }")
        (tmp_path / "t.gtrace").write_text("".join(f"rectangle({i},{i},1,1);\n" for i in range(10)))
        r = run("check", "--spec", str(tmp_path / "s.gspec"), "--trace", str(tmp_path / "t.gtrace"), "--budget", "10")
        assert r.exit_code == 3

    def test_several_specs_aggregate(self, run, tmp_path):
        (tmp_path / "s.gspec").write_text(
            "Ok = { variables { Rectangle r; } constraints { true; } }\n"
            "Bad = { variables { Rectangle r; } constraints { (r.width > 100); } }\n"
        )
        r = run("check", "--spec", str(tmp_path / "s.gspec"), "--trace", SCROLL_TRACE)
        assert r.exit_code == 1
        assert r.stdout.startswith("# Ok\n")
        assert "# Bad\nVIOLATED\n" in r.stdout
        assert r.stderr == "Bad: specification not met\n"
        only_ok = run("check", "--spec", str(tmp_path / "s.gspec"), "--trace", SCROLL_TRACE, "--name", "Ok")
        assert only_ok.exit_code == 0

    def test_name_from_library(self, run):
        r = run("check", "--spec", SPEC, "--trace", SCROLL_TRACE, "--name", "ExtRectangle")
        assert r.exit_code == 0

    def test_user_library(self, run, tmp_path):
        libdir = tmp_path / "lib"
        libdir.mkdir()
        (libdir / "pair.gspec").write_text("Pair = { variables { Rectangle a, b; } constraints { (a leftto b); } }")
        (tmp_path / "s.gspec").write_text("Top = { variables { Pair p; } constraints { p; } }")
        args = ("check", "--spec", str(tmp_path / "s.gspec"), "--trace", SCROLL_TRACE)
        assert run(*args).exit_code == 2
        assert run(*args, "--lib", str(libdir)).exit_code == 0

    def test_report_file(self, run, tmp_path):
        out = tmp_path / "report.txt"
        r = run("check", "--spec", SPEC, "--trace", SCROLL_TRACE, "--report", str(out))
        assert r.exit_code == 0
        assert out.read_text() == "t1=o6 t2=o5 r1=o2 r2=o4 r3=o3\nSATISFIED\n"

    @pytest.mark.parametrize(
        "spec,trace,golden",
        [(SPEC, SCROLL_TRACE, "hscroll_verbose.txt"), (CROPPED, GASON, "cropped_verbose.txt")],
    )
    def test_verbose_golden(self, run, spec, trace, golden):
        first = run("check", "--spec", spec, "--trace", trace, "--verbose")
        second = run("check", "--spec", spec, "--trace", trace, "--verbose")
        assert first.stdout == second.stdout
        assert first.stdout == (FIXTURES / "golden" / golden).read_text()


class TestRenderLog:
    def test_empty(self):
        assert render_log([]) == ""

    def test_lines(self):
        events = [LogEvent(0, "CroppedLabels", "Solving ... {"), LogEvent(2, "Textrect:label4", "}. End match. Found 4 objects.")]
        assert render_log(events) == "0 CroppedLabels: Solving ... {\n2 Textrect:label4: }. End match. Found 4 objects.\n"


class TestOtherCommands:
    def test_oracle_enumerate(self, run):
        r = run("oracle", "--spec", SPEC, "--trace", SCROLL_TRACE, "--enumerate")
        assert r.exit_code == 0
        assert r.stdout == "t1=o6 t2=o5 r1=o2 r2=o4 r3=o3\nassignments: 1\nsolver: agrees\nSATISFIED\n"

    def test_oracle_violated(self, run):
        r = run("oracle", "--spec", CROPPED, "--trace", GASON)
        assert r.exit_code == 1
        assert "solver: agrees" in r.stdout

    def test_fmt_is_fixpoint(self, run, tmp_path):
        first = run("fmt", SPEC)
        assert first.exit_code == 0
        (tmp_path / "f.gspec").write_text(first.stdout)
        assert run("fmt", str(tmp_path / "f.gspec")).stdout == first.stdout

    def test_fmt_parse_error(self, run, tmp_path):
        (tmp_path / "bad.gspec").write_text("A = {")
        assert run("fmt", str(tmp_path / "bad.gspec")).exit_code == 2

    def test_stdlib_list(self, run):
        r = run("stdlib", "list")
        assert r.exit_code == 0
        names = [line.split("\t")[0] for line in r.stdout.splitlines()]
        assert "HScrollbar" in names and names == sorted(names)


_fragments = st.sampled_from([
    "A", "=", "{", "}", "(", ")", ";", ",", ".", "variables", "constraints", "properties", "Rectangle",
    "r", "x", "above", "and", "not", "==", "'s'", "'", "3", "-", "//", "\n", "rectangle", "textrect", ":",
])


@settings(max_examples=150, deadline=None)
@given(st.lists(_fragments, max_size=30), st.lists(_fragments, max_size=20), st.text(max_size=10))
def test_malformed_input_never_internal_error(tmp_path_factory, spec_parts, trace_parts, noise):
    d = tmp_path_factory.mktemp("fuzz")
    (d / "s.gspec").write_text(" ".join(spec_parts) + noise)
    (d / "t.gtrace").write_text(" ".join(trace_parts) + noise)
    r = CliRunner().invoke(cli, ["check", "--spec", str(d / "s.gspec"), "--trace", str(d / "t.gtrace")])
    assert r.exit_code in (0, 1, 2), r.stderr
