import pytest

from guicheck.errors import CyclicType, UnknownPropertyOnType, UnknownType, UnknownVariable
from guicheck.flatten import resolve_spec
from guicheck.speclang import (
    BinaryOp,
    GroupProperty,
    IntLit,
    MemberAccess,
    VarRef,
    parse_expr,
    parse_specs,
    walk,
)


def _slots(fs):
    return [(s.path, s.type_name, s.flexible) for s in fs.slots]


def test_hscrollbar_slot_order(hscroll):
    assert _slots(hscroll) == [
        ("t1", "Triangle", False),
        ("t2", "Triangle", False),
        ("r1", "Rectangle", False),
        ("r2", "Rectangle", False),
        ("r3", "Rectangle", False),
    ]


def test_main_menu_label(lib):
    fs = resolve_spec("MainMenuLabel", lib=lib)
    assert _slots(fs) == [("m.r", "Textrect", False), ("hotkey.r", "Rectangle", False)]

    def x2(path):
        return BinaryOp("+", MemberAccess(path, "x"), MemberAccess(path, "width"))

    expected = BinaryOp("<", x2("hotkey.r"), BinaryOp("-", x2("m.r"), IntLit(1)))
    assert expected in fs.statements


def test_statements_fold_left(lib):
    fs = resolve_spec("ResizedCanvas", lib=lib)
    a, b = fs.statements
    assert fs.tree == BinaryOp("and", a, b)
    assert fs.tree.left == parse_expr("rInches contains rCms")


def test_complex_leaf_binds_all_slots_and_inner_constraints(lib):
    fs = resolve_spec("MenuWithSeparator", lib=lib)
    leaves = [n for n in walk(fs.tree) if isinstance(n, BinaryOp) and n.op == "and" and n.left == VarRef("sep.ln")]
    assert len(leaves) == 2
    inner = leaves[0].right
    assert inner == BinaryOp(
        "and",
        BinaryOp("==", MemberAccess("sep.ln", "y1"), MemberAccess("sep.ln", "y2")),
        BinaryOp("<", MemberAccess("sep.ln", "x1"), MemberAccess("sep.ln", "x2")),
    )


def test_default_property_of_complex_var_is_group_box(lib):
    fs = resolve_spec("EditboxOverflow", lib=lib)
    assert [s.path for s in fs.slots] == ["t1", "eb.frame", "hb.t1", "hb.t2", "hb.r1", "hb.r2", "hb.r3"]
    # Editbox defines WIDTH explicitly, so eb.width inlines to frame.width
    assert BinaryOp(">", MemberAccess("t1", "width"), MemberAccess("eb.frame", "width")) in [
        n for n in walk(fs.tree) if isinstance(n, BinaryOp)
    ]
    doc = parse_specs(
        "Pair = { variables { Rectangle a, b; } constraints { true; } }\n"
        "Top = { variables { Pair p; Line l; } constraints { (p.WIDTH > l.x1); } }"
    )
    top = resolve_spec("Top", doc)
    assert top.tree.left == GroupProperty("p", ("p.a", "p.b"), "width")


def test_every_member_access_names_a_slot(lib):
    for name in lib:
        fs = resolve_spec(name, lib=lib)
        paths = {s.path for s in fs.slots}
        for node in walk(fs.tree):
            if isinstance(node, MemberAccess):
                assert node.var in paths
            if isinstance(node, (VarRef,)):
                assert node.name in paths
            if isinstance(node, GroupProperty):
                assert set(node.slots) <= paths


def test_deterministic(lib):
    assert resolve_spec("EditboxOverflow", lib=lib) == resolve_spec("EditboxOverflow", lib=lib)


def test_doc_shadows_library(lib):
    doc = parse_specs("HLine = { variables { Line a, b; } constraints { true; } }")
    assert len(resolve_spec("HLine", doc, lib).slots) == 2


def test_nested_two_levels():
    doc = parse_specs(
        "A = { variables { Rectangle r; } properties { x2 = (r.x + r.width); } constraints { true; } }\n"
        "B = { variables { A a; Line l; } properties { far = (a.x2 + 1); } constraints { true; } }\n"
        "C = { variables { B b; } constraints { (b.far > 3); } }"
    )
    fs = resolve_spec("C", doc)
    assert [s.path for s in fs.slots] == ["b.a.r", "b.l"]
    assert fs.tree == BinaryOp(
        ">",
        BinaryOp("+", BinaryOp("+", MemberAccess("b.a.r", "x"), MemberAccess("b.a.r", "width")), IntLit(1)),
        IntLit(3),
    )


def test_flexible_propagates_into_complex():
    doc = parse_specs(
        "A = { variables { Rectangle r; } constraints { true; } }\n"
        "B = { variables { flexible A a; Rectangle s; } constraints { true; } }"
    )
    assert _slots(resolve_spec("B", doc)) == [("a.r", "Rectangle", True), ("s", "Rectangle", False)]


class TestErrors:
    def test_self_reference(self):
        doc = parse_specs("Loop = { variables { Loop me; } constraints { true; } }")
        with pytest.raises(CyclicType):
            resolve_spec("Loop", doc)

    def test_mutual_cycle_chain(self):
        doc = parse_specs(
            "A = { variables { B b; } constraints { true; } }\n"
            "B = { variables { A a; } constraints { true; } }"
        )
        with pytest.raises(CyclicType) as info:
            resolve_spec("A", doc)
        assert info.value.chain == ["A", "B", "A"]

    def test_unknown_type(self):
        with pytest.raises(UnknownType):
            resolve_spec("A", parse_specs("A = { variables { Widget w; } constraints { true; } }"))

    def test_unknown_spec(self):
        with pytest.raises(UnknownType):
            resolve_spec("Nope", parse_specs("A = { variables { } constraints { true; } }"))

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            resolve_spec("A", parse_specs("A = { variables { Rectangle r; } constraints { (r above q); } }"))

    @pytest.mark.parametrize(
        "body",
        ["(hotkey.foo > 1)", "(r.text == 'x')", "(r.x1 > 1)"],
    )
    def test_unknown_property(self, lib, body):
        doc = parse_specs(f"A = {{ variables {{ ExtRectangle hotkey; Rectangle r; }} constraints {{ {body}; }} }}")
        with pytest.raises(UnknownPropertyOnType):
            resolve_spec("A", doc, lib)
