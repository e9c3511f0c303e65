import pytest
from conftest import FIXTURES, load_trace

from guicheck.errors import DuplicateName, ParseError
from guicheck.flatten import resolve_spec
from guicheck.solver import check_spec, solve_node
from guicheck.speclang import BinaryOp, format_expr
from guicheck.stdlib import IOFailure, builtin_library, load_library
from guicheck.trace import parse_trace

EXPECTED_SPECS = [
    "HScrollbar", "PushedRadiobutton", "EditboxOverflow", "HLine", "ExtRectangle", "ExtTextRect",
    "MenuWithSeparator", "MainMenuLabel", "OrderedTracks", "CroppedLabels", "ResizedCanvas",
    "CheckToolTips", "CheckOKCancel", "RightToLeft",
]

SCROLLBAR = """
o2: rectangle(10, 10, 10, 10);
o3: rectangle(80, 10, 10, 10);
o4: rectangle(20, 10, 60, 10);
o5: triangle(88, 15, 80, 18, 80, 12);
o6: triangle(12, 15, 20, 18, 20, 12);
"""

# a satisfying trace for every builtin that has no case-study fixture file
INLINE = {
    "PushedRadiobutton": "outer: ellipse(0, 0, 20, 20); dot: ellipse(5, 5, 10, 10);",
    "EditboxOverflow": "frame: rectangle(0, 0, 100, 60); txt: textrect(5, 25, 8, 10, 'ab');" + SCROLLBAR,
    "Editbox": "frame: rectangle(0, 0, 100, 20);",
    "HLine": "ln: line(0, 5, 10, 5);",
    "ExtRectangle": "r: rectangle(1, 2, 3, 4);",
    "ExtTextRect": "r: textrect(1, 2, 3, 4, 'x');",
}


def _satisfying_trace(name):
    if name in INLINE:
        return parse_trace(INLINE[name])
    if name == "HScrollbar":
        return load_trace("hscroll.gtrace")
    if name == "CroppedLabels":
        return load_trace("gason_fixed.gtrace")
    return load_trace(f"cases/{name}.gtrace")


def test_contains_case_study_specs(lib):
    assert set(EXPECTED_SPECS) <= set(lib)
    assert len(lib["HScrollbar"].variables) == 5
    (c,) = lib["CheckOKCancel"].constraints
    assert "((OK.X + OK.Width) < Cancel.X)" in format_expr(c)


@pytest.mark.parametrize("name", sorted(builtin_library()))
def test_builtin_resolves_and_is_satisfiable(lib, name):
    spec = resolve_spec(name, lib=lib)
    assert check_spec(spec, _satisfying_trace(name)).satisfied


@pytest.mark.parametrize("name", ["OrderedTracks", "MenuWithSeparator", "CheckOKCancel"])
def test_implies_specs_exercise_nonempty_antecedent(lib, name):
    spec = resolve_spec(name, lib=lib)
    assert isinstance(spec.tree, BinaryOp) and spec.tree.op == "implies"
    trace = _satisfying_trace(name)
    assert len(solve_node(spec.tree.left, spec, trace)) > 0
    assert check_spec(spec, trace).satisfied


def test_editbox_overflow_wide_text_violated(lib):
    spec = resolve_spec("EditboxOverflow", lib=lib)
    wide = parse_trace("frame: rectangle(0, 0, 100, 60); txt: textrect(5, 25, 120, 10, 'long');" + SCROLLBAR)
    assert len(solve_node(spec.tree.right.left, spec, wide)) > 0
    assert not check_spec(spec, wide).satisfied


def test_sources_recorded(lib):
    assert lib.source("HScrollbar") == "<stdlib>/HScrollbar.gspec"


class TestLoadLibrary:
    def test_no_dirs_is_builtin(self):
        assert dict(load_library([])) == dict(builtin_library())

    def test_adds_user_spec(self, tmp_path):
        (tmp_path / "dialog.gspec").write_text("MyDialog = { variables { Rectangle r; } constraints { true; } }")
        (tmp_path / "notes.txt").write_text("ignored")
        lib = load_library([tmp_path])
        assert "MyDialog" in lib and set(builtin_library()) < set(lib)
        assert lib.source("MyDialog").endswith("dialog.gspec")

    def test_not_recursive(self, tmp_path):
        (tmp_path / "sub").mkdir()
        (tmp_path / "sub" / "x.gspec").write_text("Deep = { variables { } constraints { true; } }")
        assert "Deep" not in load_library([tmp_path])

    def test_duplicate_across_dirs(self, tmp_path):
        for d in ("a", "b"):
            (tmp_path / d).mkdir()
            (tmp_path / d / "m.gspec").write_text("MyDialog = { variables { } constraints { true; } }")
        with pytest.raises(DuplicateName) as info:
            load_library([tmp_path / "a", tmp_path / "b"])
        assert info.value.name == "MyDialog"

    def test_shadowing_builtin_needs_override(self, tmp_path):
        (tmp_path / "h.gspec").write_text("HLine = { variables { Line a; } constraints { true; } }")
        with pytest.raises(DuplicateName):
            load_library([tmp_path])
        lib = load_library([tmp_path], allow_override=True)
        assert lib["HLine"].constraints and lib.source("HLine").endswith("h.gspec")

    def test_parse_error_carries_path(self, tmp_path):
        (tmp_path / "bad.gspec").write_text("Bad = { variables { Rectangle } }")
        with pytest.raises(ParseError) as info:
            load_library([tmp_path])
        assert info.value.path.endswith("bad.gspec")

    def test_missing_dir(self, tmp_path):
        with pytest.raises(IOFailure):
            load_library([tmp_path / "nope"])


def test_fixture_specs_match_stdlib(lib):
    # the CLI fixtures are byte copies of the shipped files
    from importlib import resources

    for fixture, name in (("hscroll.gspec", "HScrollbar"), ("cropped.gspec", "CroppedLabels")):
        shipped = resources.files("guicheck.stdlib").joinpath(f"{name}.gspec").read_text()
        assert (FIXTURES / fixture).read_text() == shipped
