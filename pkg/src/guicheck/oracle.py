"""Brute-force satisfiability oracle and random inputs for differential testing.

The oracle shares nothing with the solver beyond the parsed inputs: it
enumerates every complete assignment of shapes to slots and evaluates the
constraint tree over those assignments. Positional and scalar operators are
evaluated pointwise; ``and``/``or``/``xor``/``not``/``implies`` are evaluated
on whole satisfying-assignment sets, so ``implies`` keeps the solver's set
rule (an empty antecedent set yields every assignment).

Positional operands must be "box-shaped": a variable, a positional or
relational node, a conjunction of those, or a literal. The box of such an
operand is the bounding box of the shapes assigned to the variables it
mentions.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Mapping

from .errors import BudgetExceeded, TypeMismatch
from .flatten import FlattenedSpec, resolve_spec
from .speclang import (
    ARITHMETIC_OPS,
    POSITIONAL_OPS,
    RELATIONAL_OPS,
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
    VarDecl,
    VarRef,
    node_count,
)
from .trace import KIND_TYPE_NAMES, Shape, TraceDoc, bounding_box, make_trace, shape_property

DEFAULT_BUDGET = 10**6

Assignment = tuple  # one shape index per slot, no Jokers


class OracleUnsupported(Exception):
    """The constraint uses a form whose pointwise meaning the oracle does not define."""


@dataclass(frozen=True)
class OracleResult:
    satisfied: bool
    assignments: frozenset


def enumerate_assignments(spec: FlattenedSpec, trace: TraceDoc, budget: int = DEFAULT_BUDGET) -> list[Assignment]:
    per_slot = [[s.seq for s in trace if s.kind == slot.kind] for slot in spec.slots]
    total = math.prod(len(c) for c in per_slot)
    if total > budget:
        raise BudgetExceeded(total, budget)
    exclusive = [not s.flexible for s in spec.slots]
    out = []
    for combo in itertools.product(*per_slot):
        used = [x for x, e in zip(combo, exclusive) if e]
        if len(used) == len(set(used)):
            out.append(combo)
    return out


def brute_force_check(spec: FlattenedSpec, trace: TraceDoc, budget: int = DEFAULT_BUDGET) -> OracleResult:
    universe = enumerate_assignments(spec, trace, budget)
    ev = _OracleEval(spec, trace, universe)
    sat = ev.truth(spec.tree)
    return OracleResult(bool(sat), frozenset(sat))


class _OracleEval:
    def __init__(self, spec: FlattenedSpec, trace: TraceDoc, universe: list[Assignment]):
        self.spec = spec
        self.shapes = trace.shapes
        self.universe = universe
        self.index = {s.path: i for i, s in enumerate(spec.slots)}

    # boolean nodes -> set of satisfying assignments
    def truth(self, e: Expr) -> set:
        U = self.universe
        if isinstance(e, BoolLit):
            return set(U) if e.value else set()
        if isinstance(e, VarRef):
            return set(U)
        if isinstance(e, Not):
            return set(U) - self.truth(e.child)
        if not isinstance(e, BinaryOp):
            raise TypeMismatch(f"{e!r} is not a constraint")
        op = e.op
        if op == "and":
            return self.truth(e.left) & self.truth(e.right)
        if op == "or":
            return self.truth(e.left) | self.truth(e.right)
        if op == "xor":
            return self.truth(e.left) ^ self.truth(e.right)
        if op == "implies":
            antecedent = self.truth(e.left)
            if not antecedent:
                return set(U)
            return antecedent & self.truth(e.right)
        if op in POSITIONAL_OPS:
            lt, rt = self.truth(e.left), self.truth(e.right)
            lv, rv = self.box_vars(e.left), self.box_vars(e.right)
            return {a for a in U if a in lt and a in rt and _positional(op, self._box(lv, a), self._box(rv, a))}
        if op in RELATIONAL_OPS:
            self._check_types(e)
            return {a for a in U if _compare(op, self.value(e.left, a), self.value(e.right, a))}
        raise TypeMismatch(f"operator {op!r} does not yield a constraint")

    def box_vars(self, e: Expr) -> frozenset:
        if isinstance(e, VarRef):
            return frozenset([self.index[e.name]])
        if isinstance(e, MemberAccess):
            return frozenset([self.index[e.var]])
        if isinstance(e, GroupProperty):
            return frozenset(self.index[s] for s in e.slots)
        if isinstance(e, (IntLit, StrLit, BoolLit)):
            return frozenset()
        if isinstance(e, BinaryOp) and (
            e.op in POSITIONAL_OPS or e.op in RELATIONAL_OPS or e.op in ARITHMETIC_OPS or e.op == "and"
        ):
            return self.box_vars(e.left) | self.box_vars(e.right)
        raise OracleUnsupported(f"no pointwise box for {e!r}")

    def _box(self, slots: frozenset, a: Assignment):
        ids = sorted({a[i] for i in slots})
        if not ids:
            return None
        box = bounding_box(self.shapes[ids[0]])
        for i in ids[1:]:
            box = box.union(bounding_box(self.shapes[i]))
        if len(ids) == 1:
            return box, _size(self.shapes[ids[0]])
        return box, box.area

    def scalar_type(self, e: Expr) -> type:
        if isinstance(e, IntLit):
            return int
        if isinstance(e, StrLit):
            return str
        if isinstance(e, MemberAccess):
            return str if e.prop == "text" else int
        if isinstance(e, GroupProperty):
            return int
        if isinstance(e, BinaryOp) and e.op in ARITHMETIC_OPS:
            lt, rt = self.scalar_type(e.left), self.scalar_type(e.right)
            want = str if e.op == "concat" else int
            if lt is not want or rt is not want:
                raise TypeMismatch(f"bad operands for {e.op!r}")
            return want
        raise TypeMismatch(f"{e!r} is not a scalar")

    def _check_types(self, e: BinaryOp) -> None:
        lt, rt = self.scalar_type(e.left), self.scalar_type(e.right)
        if lt is not rt:
            raise TypeMismatch(f"{e.op!r} compares {lt.__name__} with {rt.__name__}")
        if e.op == "equals" and lt is not str:
            raise TypeMismatch("'equals' compares strings")
        if e.op in ("<", ">") and lt is str:
            raise TypeMismatch(f"{e.op!r} is not defined on strings")

    def value(self, e: Expr, a: Assignment):
        if isinstance(e, (IntLit, StrLit)):
            return e.value
        if isinstance(e, MemberAccess):
            return shape_property(self.shapes[a[self.index[e.var]]], e.prop)
        if isinstance(e, GroupProperty):
            box, _ = self._box(frozenset(self.index[s] for s in e.slots), a)
            return {"x": box.left, "y": box.top, "width": box.width, "height": box.height}[e.prop]
        if isinstance(e, BinaryOp) and e.op in ARITHMETIC_OPS:
            x = self.value(e.left, a)
            y = self.value(e.right, a)
            if x is None or y is None:
                return None
            if e.op in ("+", "concat"):
                return x + y
            if e.op == "-":
                return x - y
            if e.op == "*":
                return x * y
            if y == 0:
                return None
            return int(x / y) if abs(x) < 2**52 else _trunc_div(x, y)
        raise TypeMismatch(f"{e!r} is not a scalar")


def _trunc_div(x: int, y: int) -> int:
    q = abs(x) // abs(y)
    return q if (x < 0) == (y < 0) else -q


def _size(s: Shape) -> int:
    if s.kind == "line":
        x1, y1, x2, y2 = s.coords
        return (x2 - x1) ** 2 + (y2 - y1) ** 2
    return bounding_box(s).area


def _positional(op: str, left, right) -> bool:
    if left is None or right is None:
        return False
    (a, asize), (b, bsize) = left, right
    if op == "above":
        return a.bottom <= b.top
    if op == "below":
        return a.top >= b.bottom
    if op == "leftto":
        return a.right <= b.left
    if op == "rightto":
        return a.left >= b.right
    if op == "contains":
        return a.left <= b.left and a.top <= b.top and a.right >= b.right and a.bottom >= b.bottom
    if op == "over":
        return a.left <= b.right and b.left <= a.right and a.top <= b.bottom and b.top <= a.bottom
    if op == "smaller":
        return asize < bsize
    if op == "leftaligned":
        return a.left == b.left
    if op == "rightaligned":
        return a.right == b.right
    if op == "topaligned":
        return a.top == b.top
    if op == "bottomaligned":
        return a.bottom == b.bottom
    raise ValueError(op)


def _compare(op: str, x, y) -> bool:
    if x is None or y is None:
        return False
    if op in ("==", "equals"):
        return x == y
    if op == "!=":
        return x != y
    if op == "<":
        return x < y
    return x > y


# -- random traces -----------------------------------------------------------

DEFAULT_TEXTS = ("OK", "CANCEL", "Track2", "Track10", "Pencil", "Cookie")


def random_trace(seed: int, params: Mapping | None = None) -> TraceDoc:
    """Random well-formed trace.

    ``params`` keys: ``counts`` (kind -> number of shapes, shuffled into a
    random order), ``coord_range`` (inclusive ``(lo, hi)``, default (0, 100))
    and ``texts`` (payload vocabulary).
    """
    params = dict(params or {})
    rng = random.Random(seed)
    counts = params.get("counts", {"rectangle": 2, "triangle": 1, "textrect": 1})
    lo, hi = params.get("coord_range", (0, 100))
    if hi < lo:
        raise ValueError("empty coordinate range")
    texts = list(params.get("texts", DEFAULT_TEXTS))
    kinds = [k for k, n in sorted(counts.items()) for _ in range(n)]
    rng.shuffle(kinds)
    records = []
    for i, kind in enumerate(kinds):
        records.append((kind, _random_coords(rng, kind, lo, hi), *_text_for(rng, kind, texts), f"o{i + 1}"))
    return make_trace([(k, c, t, lab) for k, c, t, lab in records])


def _text_for(rng, kind, texts):
    return (rng.choice(texts),) if kind in ("text", "textrect") else (None,)


def _random_coords(rng: random.Random, kind: str, lo: int, hi: int) -> tuple[int, ...]:
    def pt():
        return rng.randint(lo, hi), rng.randint(lo, hi)

    if kind in ("rectangle", "ellipse", "textrect"):
        x, y = pt()
        return (x, y, rng.randint(0, hi - x), rng.randint(0, hi - y))
    if kind == "line":
        return (*pt(), *pt())
    if kind == "triangle":
        return (*pt(), *pt(), *pt())
    if kind == "polygon":
        return tuple(c for _ in range(rng.randint(3, 5)) for c in pt())
    if kind == "text":
        return pt()
    raise ValueError(kind)


MUTATIONS = ("delete", "translate", "retext")


def mutate_trace(
    trace: TraceDoc,
    seed: int,
    mutation: str | None = None,
    target: int | None = None,
    offset: tuple[int, int] | None = None,
) -> TraceDoc:
    """Apply exactly one defect: delete a shape, move a shape, or alter a text.

    ``mutation``, ``target`` (a shape index) and ``offset`` (for translations)
    pin the choice; anything left open is drawn from ``seed``.
    """
    if not len(trace):
        raise ValueError("cannot mutate an empty trace")
    rng = random.Random(seed)
    textual = [s.seq for s in trace if s.text is not None]
    if mutation is None:
        options = list(MUTATIONS) if textual else ["delete", "translate"]
        mutation = rng.choice(options)
    if mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    if target is None:
        target = rng.choice(textual if mutation == "retext" else [s.seq for s in trace])
    shapes = list(trace.shapes)
    victim = shapes[target]
    if mutation == "delete":
        del shapes[target]
    elif mutation == "translate":
        if offset is None:
            offset = (rng.choice([-1, 1]) * rng.randint(1, 20), rng.choice([-1, 1]) * rng.randint(1, 20))
        dx, dy = offset
        shapes[target] = Shape(victim.kind, _translate(victim, dx, dy), victim.text, victim.seq, victim.label)
    else:
        if victim.text is None:
            raise ValueError("retext needs a text or textrect shape")
        shapes[target] = Shape(victim.kind, victim.coords, _alter_text(victim.text), victim.seq, victim.label)
    return make_trace(shapes)


def _translate(s: Shape, dx: int, dy: int) -> tuple[int, ...]:
    c = list(s.coords)
    if s.kind in ("rectangle", "ellipse", "textrect"):
        c[0] += dx
        c[1] += dy
        return tuple(c)
    return tuple(v + (dx if i % 2 == 0 else dy) for i, v in enumerate(c))


def _alter_text(text: str) -> str:
    cropped = text[: max(0, len(text) - 3)] + "..."
    return cropped if cropped != text else text + "?"


# -- random specs ------------------------------------------------------------

_SLOT_KINDS = ("rectangle", "rectangle", "triangle", "textrect", "line", "ellipse")
_INT_PROPS = ("x", "y", "width", "height")
_POS = sorted(POSITIONAL_OPS)


def random_spec(seed: int, max_slots: int = 5, max_nodes: int = 7) -> FlattenedSpec:
    """Random type-correct spec from a small template grammar."""
    rng = random.Random(seed)
    for _ in range(1000):
        n = rng.randint(1, max_slots)
        decls = tuple(
            VarDecl(f"v{i}", KIND_TYPE_NAMES[rng.choice(_SLOT_KINDS)], rng.random() < 0.2)
            for i in range(n)
        )
        gen = _SpecGen(rng, decls)
        stmts = [gen.constraint(rng.randint(1, 3))]
        if rng.random() < 0.3:
            stmts.append(gen.constraint(1))
        if sum(node_count(s) for s in stmts) + len(stmts) - 1 > max_nodes:
            continue
        spec = Spec(f"Random{seed}", decls, (), tuple(stmts))
        return resolve_spec(spec.name, SpecDoc((spec,)))
    raise RuntimeError("could not draw a small enough spec")


class _SpecGen:
    def __init__(self, rng: random.Random, decls):
        self.rng = rng
        self.decls = decls
        self.textual = [d.name for d in decls if d.type_name in ("Textrect", "Text")]
        self.lines = [d.name for d in decls if d.type_name == "Line"]

    def var(self) -> str:
        return self.rng.choice(self.decls).name

    def constraint(self, depth: int) -> Expr:
        r = self.rng.random()
        if depth <= 0 or r < 0.35:
            return self.atom(depth)
        if r < 0.85:
            op = self.rng.choice(["and", "or", "xor", "implies"])
            return BinaryOp(op, self.constraint(depth - 1), self.constraint(depth - 1))
        return Not(self.constraint(depth - 1))

    def atom(self, depth: int) -> Expr:
        r = self.rng.random()
        if r < 0.5:
            return BinaryOp(self.rng.choice(_POS), self.box(depth), self.box(depth))
        if r < 0.8:
            return BinaryOp(self.rng.choice(["<", ">", "==", "!="]), self.int_expr(depth), self.int_expr(depth))
        if r < 0.93 and self.textual:
            left = MemberAccess(self.rng.choice(self.textual), "text")
            right = (
                StrLit(self.rng.choice(DEFAULT_TEXTS))
                if self.rng.random() < 0.6
                else MemberAccess(self.rng.choice(self.textual), "text")
            )
            return BinaryOp(self.rng.choice(["==", "equals", "!="]), left, right)
        return BoolLit(self.rng.random() < 0.7)

    def box(self, depth: int) -> Expr:
        if depth > 1 and self.rng.random() < 0.25:
            return BinaryOp(self.rng.choice(_POS), self.box(depth - 1), self.box(depth - 1))
        return VarRef(self.var())

    def int_expr(self, depth: int) -> Expr:
        r = self.rng.random()
        if depth > 1 and r < 0.2:
            return BinaryOp(self.rng.choice(["+", "-", "*", "/"]), self.int_expr(depth - 1), self.int_expr(depth - 1))
        if r < 0.35:
            return IntLit(self.rng.randint(0, 12))
        if self.lines and self.rng.random() < 0.2:
            return MemberAccess(self.rng.choice(self.lines), self.rng.choice(("x1", "y1", "x2", "y2")))
        return MemberAccess(self.var(), self.rng.choice(_INT_PROPS))


def random_case(seed: int) -> tuple[FlattenedSpec, TraceDoc]:
    """A (spec, trace) pair within the differential-testing bounds (<= 5 slots, <= 8 shapes)."""
    rng = random.Random(seed * 7919 + 1)
    spec = random_spec(seed)
    kinds = [s.kind for s in spec.slots]
    counts: dict[str, int] = {}
    budget = rng.randint(0, 8)
    pool = list(dict.fromkeys(kinds)) + ["rectangle", "ellipse"]
    for _ in range(budget):
        k = rng.choice(pool)
        counts[k] = counts.get(k, 0) + 1
    trace = random_trace(seed, {"counts": counts, "coord_range": (0, 12), "texts": DEFAULT_TEXTS[:3]})
    return spec, trace
