"""AST, parser and pretty-printer for the ``.gspec`` specification language.

Concrete syntax::

    HScrollbar = {
      variables { Triangle t1, t2; Rectangle r1, r2, r3; }
      properties { X = r1.X; WIDTH = r1.WIDTH + r2.WIDTH + r3.WIDTH; }
      constraints { (((r1 contains t1) leftto r2) leftto (r3 contains t2)); }
    }

Every binary operator has the same precedence and associates to the left;
parentheses are the only way to group. ``not`` (or ``!``) is a prefix operator
binding to the following operand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from ._lexer import TokenStream, describe
from .errors import DuplicateSpecName, DuplicateVariable

POSITIONAL_OPS = frozenset({
    "leftto", "rightto", "above", "below", "contains", "over", "smaller",
    "leftaligned", "rightaligned", "topaligned", "bottomaligned",
})
LOGICAL_OPS = frozenset({"and", "or", "xor", "implies"})
ARITHMETIC_OPS = frozenset({"+", "-", "*", "/", "concat"})
RELATIONAL_OPS = frozenset({"==", "!=", "<", ">", "equals"})
BINARY_OPS = POSITIONAL_OPS | LOGICAL_OPS | ARITHMETIC_OPS | RELATIONAL_OPS
KEYWORDS = BINARY_OPS | {"not", "true", "false"}


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    child: "Expr"


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class MemberAccess:
    var: str  # dotted variable path, e.g. "m" or "eb.r"
    prop: str


@dataclass(frozen=True)
class GroupProperty:
    """Default X/Y/WIDTH/HEIGHT of a complex variable: bounding box over its slots.

    Only produced by flattening, never by the parser.
    """

    owner: str
    slots: tuple[str, ...]
    prop: str


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class StrLit:
    value: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


Expr = Union[BinaryOp, Not, VarRef, MemberAccess, GroupProperty, IntLit, StrLit, BoolLit]


@dataclass(frozen=True)
class VarDecl:
    name: str
    type_name: str
    flexible: bool = False


@dataclass(frozen=True)
class PropertyDecl:
    name: str
    value: Expr


@dataclass(frozen=True)
class Spec:
    name: str
    variables: tuple[VarDecl, ...] = ()
    properties: tuple[PropertyDecl, ...] = ()
    constraints: tuple[Expr, ...] = ()

    def variable(self, name: str) -> VarDecl | None:
        for v in self.variables:
            if v.name == name:
                return v
        return None


@dataclass(frozen=True)
class SpecDoc:
    specs: tuple[Spec, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s.name: s for s in self.specs})

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __getitem__(self, name: str) -> Spec:
        return self._index[name]

    def __iter__(self) -> Iterator[Spec]:
        return iter(self.specs)

    def __len__(self) -> int:
        return len(self.specs)

    def get(self, name: str, default=None):
        return self._index.get(name, default)

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.specs]


def parse_specs(text: str) -> SpecDoc:
    ts = TokenStream(text)
    specs = []
    seen = set()
    while ts.peek().kind != "eof":
        name_tok = ts.peek()
        spec = _parse_spec(ts)
        if spec.name in seen:
            raise DuplicateSpecName(
                f"{name_tok.line}:{name_tok.column}: spec {spec.name!r} defined twice"
            )
        seen.add(spec.name)
        specs.append(spec)
    if not specs:
        raise ts.error("expected at least one specification")
    return SpecDoc(tuple(specs))


def parse_expr(text: str) -> Expr:
    """Parse a single constraint expression (no trailing ';')."""
    ts = TokenStream(text)
    expr = _parse_expr(ts)
    if ts.peek().kind != "eof":
        raise ts.error(f"unexpected {describe(ts.peek())}")
    return expr


def _ident(ts: TokenStream, what: str) -> str:
    tok = ts.expect_kind("ident", what)
    if tok.text in KEYWORDS:
        raise ts.error(f"keyword {tok.text!r} cannot be used as {what}", tok)
    return tok.text


def _parse_spec(ts: TokenStream) -> Spec:
    name = _ident(ts, "spec name")
    ts.expect("=")
    ts.expect("{")
    ts.expect("variables")
    variables = _parse_variables(ts, name)
    properties: list[PropertyDecl] = []
    if ts.accept("properties"):
        properties = _parse_properties(ts)
    ts.expect("constraints")
    ts.expect("{")
    constraints = []
    while not ts.accept("}"):
        constraints.append(_parse_expr(ts))
        ts.expect(";")
    ts.expect("}")
    return Spec(name, tuple(variables), tuple(properties), tuple(constraints))


def _parse_variables(ts: TokenStream, spec_name: str) -> list[VarDecl]:
    ts.expect("{")
    decls: list[VarDecl] = []
    seen = set()
    while not ts.accept("}"):
        flexible = False
        if ts.at("flexible") and ts.peek(1).kind == "ident" and ts.peek(2).kind == "ident":
            ts.next()
            flexible = True
        type_name = _ident(ts, "type name")
        while True:
            tok = ts.peek()
            var = _ident(ts, "variable name")
            if var in seen:
                raise DuplicateVariable(
                    f"{tok.line}:{tok.column}: variable {var!r} declared twice in {spec_name}"
                )
            seen.add(var)
            decls.append(VarDecl(var, type_name, flexible))
            if not ts.accept(","):
                break
        ts.expect(";")
    return decls


def _parse_properties(ts: TokenStream) -> list[PropertyDecl]:
    ts.expect("{")
    props = []
    while not ts.accept("}"):
        name = _ident(ts, "property name")
        while ts.accept("."):
            name += "." + _ident(ts, "property name")
        ts.expect("=")
        props.append(PropertyDecl(name, _parse_expr(ts)))
        ts.expect(";")
    return props


def _parse_expr(ts: TokenStream) -> Expr:
    left = _parse_unary(ts)
    while True:
        tok = ts.peek()
        if tok.kind in ("op", "ident") and tok.text in BINARY_OPS:
            ts.next()
            left = BinaryOp(tok.text, left, _parse_unary(ts))
        else:
            return left


def _parse_unary(ts: TokenStream) -> Expr:
    if ts.accept("not") or ts.accept("!"):
        return Not(_parse_unary(ts))
    return _parse_primary(ts)


def _parse_primary(ts: TokenStream) -> Expr:
    tok = ts.peek()
    if ts.accept("("):
        inner = _parse_expr(ts)
        ts.expect(")")
        return inner
    if tok.kind == "int":
        return IntLit(ts.next().value)
    if tok.kind == "string":
        return StrLit(ts.next().value)
    if ts.accept("true"):
        return BoolLit(True)
    if ts.accept("false"):
        return BoolLit(False)
    if tok.kind == "ident" and tok.text not in KEYWORDS:
        parts = [ts.next().text]
        while ts.accept("."):
            parts.append(_ident(ts, "member name"))
        if len(parts) == 1:
            return VarRef(parts[0])
        return MemberAccess(".".join(parts[:-1]), parts[-1])
    raise ts.error(f"expected an operand, found {describe(tok)}", tok)


# -- printing ---------------------------------------------------------------

def format_expr(e: Expr) -> str:
    if isinstance(e, BinaryOp):
        return f"({format_expr(e.left)} {e.op} {format_expr(e.right)})"
    if isinstance(e, Not):
        return f"(not {format_expr(e.child)})"
    if isinstance(e, VarRef):
        return e.name
    if isinstance(e, MemberAccess):
        return f"{e.var}.{e.prop}"
    if isinstance(e, GroupProperty):
        return f"{e.owner}.{e.prop}"
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, StrLit):
        return f"'{e.value}'"
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    raise TypeError(f"not an expression node: {e!r}")


def format_spec(spec: Spec, indent: str = "  ") -> str:
    lines = [f"{spec.name} = {{", f"{indent}variables {{"]
    # consecutive declarations of one type share a line, as in hand-written specs
    groups: list[tuple[str, bool, list[str]]] = []
    for v in spec.variables:
        if groups and groups[-1][0] == v.type_name and groups[-1][1] == v.flexible:
            groups[-1][2].append(v.name)
        else:
            groups.append((v.type_name, v.flexible, [v.name]))
    for type_name, flexible, names in groups:
        mod = "flexible " if flexible else ""
        lines.append(f"{indent * 2}{mod}{type_name} {', '.join(names)};")
    lines.append(f"{indent}}}")
    if spec.properties:
        lines.append(f"{indent}properties {{")
        for p in spec.properties:
            lines.append(f"{indent * 2}{p.name} = {format_expr(p.value)};")
        lines.append(f"{indent}}}")
    lines.append(f"{indent}constraints {{")
    for c in spec.constraints:
        lines.append(f"{indent * 2}{format_expr(c)};")
    lines.append(f"{indent}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_doc(doc: SpecDoc) -> str:
    return "\n".join(format_spec(s) for s in doc)


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal of an expression tree."""
    yield e
    if isinstance(e, BinaryOp):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, Not):
        yield from walk(e.child)


def node_count(e: Expr) -> int:
    return sum(1 for _ in walk(e))
