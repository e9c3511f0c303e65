"""Flattening of specifications over complex (user-defined) types.

A variable whose type is another spec is expanded in place into that spec's
primitive variables, giving a global slot order such as ``[m.r, hotkey.r]``.
References to a complex variable are rewritten over its slots:

* a bare leaf ``sep`` becomes ``(<all slots of sep bound> and <sep's constraints>)``;
* ``hotkey.x2`` becomes the defining expression of ``x2`` over ``hotkey``'s slots;
* ``eb.width`` without a definition becomes a :class:`GroupProperty`, the
  bounding box of ``eb``'s slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Mapping

from .errors import CyclicType, ResolveError, UnknownPropertyOnType, UnknownType, UnknownVariable
from .speclang import (
    BinaryOp,
    BoolLit,
    Expr,
    GroupProperty,
    IntLit,
    MemberAccess,
    Not,
    Spec,
    SpecDoc,
    StrLit,
    VarRef,
    node_count,
)
from .trace import KIND_TYPE_NAMES, PRIMITIVE_TYPES, property_type

DEFAULT_PROPS = ("x", "y", "width", "height")


@dataclass(frozen=True)
class Slot:
    path: str
    kind: str
    flexible: bool = False

    @property
    def type_name(self) -> str:
        return KIND_TYPE_NAMES[self.kind]


@dataclass(frozen=True)
class ComplexVar:
    path: str
    type_name: str
    slots: tuple[str, ...]


@dataclass(frozen=True)
class FlattenedSpec:
    name: str
    slots: tuple[Slot, ...]
    tree: Expr
    statements: tuple[Expr, ...]
    property_defs: Mapping[tuple[str, str], Expr]
    complex_vars: Mapping[str, ComplexVar]

    @property
    def arity(self) -> int:
        return len(self.slots)

    def slot_index(self, path: str) -> int:
        for i, s in enumerate(self.slots):
            if s.path == path:
                return i
        raise KeyError(path)

    @property
    def node_count(self) -> int:
        return node_count(self.tree)


def conjunction(exprs) -> Expr:
    exprs = list(exprs)
    if not exprs:
        return BoolLit(True)
    return reduce(lambda a, b: BinaryOp("and", a, b), exprs)


def lookup_spec(name: str, doc: SpecDoc | None, lib: Mapping[str, Spec] | None) -> Spec | None:
    if doc is not None and name in doc:
        return doc[name]
    if lib is not None and name in lib:
        return lib[name]
    return None


def resolve_spec(name: str, doc: SpecDoc | None = None, lib: Mapping[str, Spec] | None = None) -> FlattenedSpec:
    root = lookup_spec(name, doc, lib)
    if root is None:
        raise UnknownType(f"no spec named {name!r}")
    return _Resolver(doc, lib).run(root)


class _Resolver:
    def __init__(self, doc, lib):
        self.doc = doc
        self.lib = lib
        self.slots: list[Slot] = []
        self.complex: dict[str, ComplexVar] = {}
        # variable path -> (spec declaring its type, or None for primitives)
        self.var_types: dict[str, Spec | None] = {}
        self._prop_stack: list[tuple[str, str]] = []

    def run(self, root: Spec) -> FlattenedSpec:
        self._expand(root, "", False, [root.name])
        statements = tuple(self._rewrite(c, root, "") for c in root.constraints)
        defs: dict[tuple[str, str], Expr] = {}
        for p in root.properties:
            defs[("", p.name)] = self._rewrite(p.value, root, "")
        for path, cv in self.complex.items():
            spec = self.var_types[path]
            for p in spec.properties:
                defs[(path, p.name)] = self._rewrite(p.value, spec, path + ".")
        return FlattenedSpec(
            name=root.name,
            slots=tuple(self.slots),
            tree=conjunction(statements),
            statements=statements,
            property_defs=defs,
            complex_vars=dict(self.complex),
        )

    def _expand(self, spec: Spec, prefix: str, flexible: bool, chain: list[str]) -> None:
        for decl in spec.variables:
            path = prefix + decl.name
            flex = flexible or decl.flexible
            if decl.type_name in PRIMITIVE_TYPES:
                self.slots.append(Slot(path, PRIMITIVE_TYPES[decl.type_name], flex))
                self.var_types[path] = None
                continue
            sub = lookup_spec(decl.type_name, self.doc, self.lib)
            if sub is None:
                raise UnknownType(f"{spec.name}.{decl.name}: unknown type {decl.type_name!r}")
            if sub.name in chain:
                raise CyclicType(chain + [sub.name])
            start = len(self.slots)
            self._expand(sub, path + ".", flex, chain + [sub.name])
            paths = tuple(s.path for s in self.slots[start:])
            self.complex[path] = ComplexVar(path, sub.name, paths)
            self.var_types[path] = sub

    def _resolve_var(self, name: str, spec: Spec, prefix: str) -> str:
        if spec.variable(name) is None:
            raise UnknownVariable(f"{spec.name}: undeclared variable {name!r}")
        return prefix + name

    def _rewrite(self, e: Expr, spec: Spec, prefix: str) -> Expr:
        if isinstance(e, BinaryOp):
            return BinaryOp(e.op, self._rewrite(e.left, spec, prefix), self._rewrite(e.right, spec, prefix))
        if isinstance(e, Not):
            return Not(self._rewrite(e.child, spec, prefix))
        if isinstance(e, (IntLit, StrLit, BoolLit)):
            return e
        if isinstance(e, VarRef):
            if spec.variable(e.name) is None and _find_property(spec, e.name) is not None:
                return self._inline_property(spec, prefix, e.name)
            path = self._resolve_var(e.name, spec, prefix)
            sub = self.var_types[path]
            if sub is None:
                return VarRef(path)
            cv = self.complex[path]
            bound = conjunction(VarRef(s) for s in cv.slots)
            inner = conjunction(self._rewrite(c, sub, path + ".") for c in sub.constraints)
            return BinaryOp("and", bound, inner)
        if isinstance(e, MemberAccess):
            return self._member(e.var.split("."), e.prop, spec, prefix)
        raise ResolveError(f"unexpected node {e!r}")

    def _member(self, parts: list[str], prop: str, spec: Spec, prefix: str) -> Expr:
        path = self._resolve_var(parts[0], spec, prefix)
        sub = self.var_types[path]
        if sub is None:
            if len(parts) > 1:
                raise UnknownPropertyOnType(f"{path} is primitive and has no member {parts[1]!r}")
            kind = self.slots[[s.path for s in self.slots].index(path)].kind
            if property_type(kind, prop) is None:
                raise UnknownPropertyOnType(f"{KIND_TYPE_NAMES[kind]} {path} has no property {prop!r}")
            return MemberAccess(path, prop.lower() if prop.lower() in DEFAULT_PROPS else prop)
        if len(parts) > 1:
            return self._member(parts[1:], prop, sub, path + ".")
        if _find_property(sub, prop) is not None:
            return self._inline_property(sub, path + ".", prop)
        if prop.lower() in DEFAULT_PROPS:
            return GroupProperty(path, self.complex[path].slots, prop.lower())
        raise UnknownPropertyOnType(f"{sub.name} {path} has no property {prop!r}")

    def _inline_property(self, spec: Spec, prefix: str, prop: str) -> Expr:
        decl = _find_property(spec, prop)
        key = (prefix, decl.name)
        if key in self._prop_stack:
            raise ResolveError(f"{spec.name}: property {decl.name!r} is defined in terms of itself")
        self._prop_stack.append(key)
        try:
            return self._rewrite(decl.value, spec, prefix)
        finally:
            self._prop_stack.pop()


def _find_property(spec: Spec, name: str):
    for p in spec.properties:
        if p.name == name:
            return p
    if name.lower() in DEFAULT_PROPS:
        for p in spec.properties:
            if p.name.lower() == name.lower():
                return p
    return None
