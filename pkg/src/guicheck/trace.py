"""Rendered-shape traces: parsing, serialization and shape geometry.

A trace is the flat, ordered list of primitive draw calls captured from a
renderer, e.g.::

    o1: rectangle(10, 30, 10, 60);
    o5: triangle(88, 15, 80, 18, 80, 12);
    textrect(1, 1, 100, 100, 'Coo...');

Coordinates are integer pixels with y growing downward.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._lexer import TokenStream
from .errors import ParseError, UnknownProperty

KINDS = ("rectangle", "line", "ellipse", "polygon", "triangle", "text", "textrect")

# DSL type name -> trace kind
PRIMITIVE_TYPES = {
    "Rectangle": "rectangle",
    "Line": "line",
    "Ellipse": "ellipse",
    "Polygon": "polygon",
    "Triangle": "triangle",
    "Text": "text",
    "Textrect": "textrect",
}
KIND_TYPE_NAMES = {kind: name for name, kind in PRIMITIVE_TYPES.items()}

_FIXED_ARITY = {"rectangle": 4, "line": 4, "ellipse": 4, "triangle": 6, "text": 2, "textrect": 4}
_BOXED = ("rectangle", "ellipse", "textrect")
_TEXTUAL = ("text", "textrect")
_BOX_PROPS = ("x", "y", "width", "height")
_LINE_PROPS = ("x1", "y1", "x2", "y2")


@dataclass(frozen=True)
class Rect:
    left: int
    top: int
    right: int
    bottom: int

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.bottom - self.top

    @property
    def area(self) -> int:
        return self.width * self.height

    def union(self, other: "Rect") -> "Rect":
        return Rect(
            min(self.left, other.left),
            min(self.top, other.top),
            max(self.right, other.right),
            max(self.bottom, other.bottom),
        )


@dataclass(frozen=True)
class Shape:
    kind: str
    coords: tuple[int, ...]
    text: str | None = None
    seq: int = 0
    label: str | None = None

    def __post_init__(self):
        check_shape(self.kind, self.coords, self.text)

    @property
    def name(self) -> str:
        """Label used in reports: the trace label, else the sequence index."""
        return self.label if self.label is not None else str(self.seq)

    @property
    def bbox(self) -> Rect:
        return bounding_box(self)


@dataclass(frozen=True)
class TraceDoc:
    shapes: tuple[Shape, ...] = ()

    def __len__(self) -> int:
        return len(self.shapes)

    def __iter__(self):
        return iter(self.shapes)

    def __getitem__(self, idx: int) -> Shape:
        return self.shapes[idx]

    def of_kind(self, kind: str) -> list[Shape]:
        return [s for s in self.shapes if s.kind == kind]

    def by_label(self, label: str) -> Shape:
        for s in self.shapes:
            if s.name == label:
                return s
        raise KeyError(label)


def check_shape(kind: str, coords: tuple[int, ...], text: str | None) -> None:
    """Raise ValueError if ``coords``/``text`` do not fit ``kind``."""
    if kind not in KINDS:
        raise ValueError(f"unknown shape kind {kind!r}")
    if kind == "polygon":
        if len(coords) < 6 or len(coords) % 2:
            raise ValueError(f"polygon needs an even number (>= 6) of coordinates, got {len(coords)}")
    elif len(coords) != _FIXED_ARITY[kind]:
        raise ValueError(f"{kind} takes {_FIXED_ARITY[kind]} coordinates, got {len(coords)}")
    if kind in _BOXED and (coords[2] < 0 or coords[3] < 0):
        raise ValueError(f"{kind} width and height must be non-negative")
    if kind in _TEXTUAL and text is None:
        raise ValueError(f"{kind} requires a text payload")
    if kind not in _TEXTUAL and text is not None:
        raise ValueError(f"{kind} does not carry text")


def bounding_box(s: Shape) -> Rect:
    c = s.coords
    if s.kind in _BOXED:
        x, y, w, h = c
        return Rect(x, y, x + w, y + h)
    if s.kind == "text":
        return Rect(c[0], c[1], c[0], c[1])
    xs = c[0::2]
    ys = c[1::2]
    return Rect(min(xs), min(ys), max(xs), max(ys))


def shape_property(s: Shape, name: str) -> int | str:
    lowered = name.lower()
    if lowered in _BOX_PROPS:
        box = bounding_box(s)
        return {"x": box.left, "y": box.top, "width": box.width, "height": box.height}[lowered]
    if s.kind == "line" and name in _LINE_PROPS:
        return s.coords[_LINE_PROPS.index(name)]
    if s.kind in _TEXTUAL and name == "text":
        return s.text
    raise UnknownProperty(name, s.kind)


def property_type(kind: str, name: str) -> type | None:
    """Static type of ``kind.name`` (int or str), or None if it does not exist."""
    if name.lower() in _BOX_PROPS:
        return int
    if kind == "line" and name in _LINE_PROPS:
        return int
    if kind in _TEXTUAL and name == "text":
        return str
    return None


def shape_size(s: Shape) -> int:
    """Size used by ``smaller``: squared length for lines, box area otherwise."""
    if s.kind == "line":
        x1, y1, x2, y2 = s.coords
        return (x2 - x1) ** 2 + (y2 - y1) ** 2
    return bounding_box(s).area


def parse_trace(text: str) -> TraceDoc:
    ts = TokenStream(text)
    shapes = []
    while ts.peek().kind != "eof":
        label = None
        if ts.peek().kind == "ident" and ts.peek(1).text == ":":
            label = ts.next().text
            ts.next()
        kind_tok = ts.expect_kind("ident", "shape kind")
        kind = kind_tok.text
        if kind not in KINDS:
            raise ts.error(f"unknown shape kind {kind!r}", kind_tok)
        ts.expect("(")
        coords = [_signed_int(ts)]
        payload = None
        while ts.accept(","):
            if ts.peek().kind == "string":
                payload = ts.next().value
                break
            coords.append(_signed_int(ts))
        ts.expect(")")
        ts.expect(";")
        try:
            shapes.append(Shape(kind, tuple(coords), payload, len(shapes), label))
        except ValueError as exc:
            raise ParseError(str(exc), kind_tok.line, kind_tok.column) from None
    return TraceDoc(tuple(shapes))


def _signed_int(ts: TokenStream) -> int:
    sign = -1 if ts.accept("-") else 1
    return sign * ts.expect_kind("int", "integer coordinate").value


def format_shape(s: Shape) -> str:
    args = [str(c) for c in s.coords]
    if s.text is not None:
        args.append(f"'{s.text}'")
    prefix = f"{s.label}: " if s.label is not None else ""
    return f"{prefix}{s.kind}({', '.join(args)});"


def format_trace(doc: TraceDoc) -> str:
    return "".join(format_shape(s) + "\n" for s in doc.shapes)


def make_trace(shapes) -> TraceDoc:
    """Build a TraceDoc from (kind, coords[, text[, label]]) records, renumbering seq."""
    out = []
    for i, rec in enumerate(shapes):
        if isinstance(rec, Shape):
            out.append(Shape(rec.kind, rec.coords, rec.text, i, rec.label))
        else:
            kind, coords, *rest = rec
            text = rest[0] if rest else None
            label = rest[1] if len(rest) > 1 else None
            out.append(Shape(kind, tuple(coords), text, i, label))
    return TraceDoc(tuple(out))
