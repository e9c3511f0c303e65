import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from guicheck.errors import ParseError, UnknownProperty
from guicheck.oracle import random_trace
from guicheck.trace import (
    KINDS,
    Rect,
    Shape,
    bounding_box,
    format_trace,
    make_trace,
    parse_trace,
    shape_property,
)


class TestParseTrace:
    def test_two_shapes_in_order(self):
        doc = parse_trace("rectangle(10, 15, 10, 20); line(2, 5, 8, 12);")
        assert [s.kind for s in doc] == ["rectangle", "line"]
        assert [s.seq for s in doc] == [0, 1]

    def test_empty(self):
        assert len(parse_trace("")) == 0
        assert len(parse_trace("// nothing here\n\n")) == 0

    def test_label_prefix(self):
        (s,) = parse_trace("o5: triangle(88,15,80,18,80,12);").shapes
        assert s.kind == "triangle"
        assert s.label == "o5"
        assert s.coords == (88, 15, 80, 18, 80, 12)

    def test_text_payload_and_comments(self):
        doc = parse_trace("textrect(1,1,100,100,'Coo...'); // cropped\ntext(3, 4, 'hi');\r\n")
        assert [s.text for s in doc] == ["Coo...", "hi"]

    def test_polygon_arity(self):
        (s,) = parse_trace("polygon(0,0, 10,0, 5,5, 0,5);").shapes
        assert len(s.coords) == 8

    @pytest.mark.parametrize(
        "text",
        [
            "rectangle(1, 2, 3);",
            "line(1, 2, 3, 4, 5);",
            "triangle(1,2,3,4,5,6,7,8);",
            "polygon(0,0,1,1);",
            "polygon(0,0,1,1,2,2,3);",
            "text(1, 2);",
            "rectangle(1, 2, 3, 4, 'x');",
            "rectangle(1, 2, -3, 4);",
            "rectangle(1, 2, x, 4);",
            "textrect(1, 2, 3, 4, 'open);",
            "circle(1, 2, 3, 4);",
            "rectangle(1, 2, 3, 4)",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError) as info:
            parse_trace(text)
        assert info.value.line == 1
        assert info.value.column >= 1

    def test_error_position_on_later_line(self):
        with pytest.raises(ParseError) as info:
            parse_trace("rectangle(1,2,3,4);\n  line(1,2,3);")
        assert info.value.line == 2


class TestGeometry:
    def test_rectangle_bbox(self):
        assert bounding_box(Shape("rectangle", (80, 10, 10, 10))) == Rect(80, 10, 90, 20)

    def test_triangle_bbox(self):
        assert bounding_box(Shape("triangle", (88, 15, 80, 18, 80, 12))) == Rect(80, 12, 88, 18)

    def test_text_point_box(self):
        assert bounding_box(Shape("text", (5, 7), "hi")) == Rect(5, 7, 5, 7)

    def test_line_bbox_any_direction(self):
        assert bounding_box(Shape("line", (8, 12, 2, 5))) == Rect(2, 5, 8, 12)

    def test_properties(self):
        assert shape_property(Shape("rectangle", (10, 30, 10, 60)), "width") == 10
        assert shape_property(Shape("rectangle", (10, 30, 10, 60)), "HEIGHT") == 60
        assert shape_property(Shape("line", (2, 5, 8, 12)), "y1") == 5
        assert shape_property(Shape("textrect", (1, 1, 100, 100), "Coo..."), "text") == "Coo..."

    @pytest.mark.parametrize("kind,coords,prop", [("rectangle", (1, 2, 3, 4), "text"), ("ellipse", (1, 2, 3, 4), "x1")])
    def test_unknown_property(self, kind, coords, prop):
        with pytest.raises(UnknownProperty):
            shape_property(Shape(kind, coords), prop)


_trace_params = st.fixed_dictionaries(
    {"counts": st.dictionaries(st.sampled_from(KINDS), st.integers(0, 3), max_size=4)}
)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), params=_trace_params)
def test_roundtrip_and_bbox_invariants(seed, params):
    doc = random_trace(seed, params)
    again = parse_trace(format_trace(doc))
    assert again == doc
    for s in doc:
        box = bounding_box(s)
        assert box.left <= box.right and box.top <= box.bottom
        if s.kind in ("rectangle", "ellipse", "textrect"):
            assert s.coords[0] + shape_property(s, "width") == box.right
            assert s.coords[1] + shape_property(s, "height") == box.bottom
    assert [s.seq for s in doc] == list(range(len(doc)))


def test_make_trace_renumbers():
    doc = make_trace([("rectangle", (0, 0, 1, 1)), ("text", (2, 2), "a", "lbl")])
    assert [s.seq for s in doc] == [0, 1]
    assert doc[1].name == "lbl" and doc[0].name == "0"
