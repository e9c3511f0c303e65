"""Tuple-set solver deciding whether a trace satisfies a flattened spec.

Every constraint node evaluates to a set of candidate tuples. A tuple has one
entry per slot of the spec, either a shape index or the Joker ``-1`` standing
for "any compatible shape", so a single tuple denotes all of its concrete
completions. Binary nodes combine their operands pairwise: each compatible
pair is merged positionwise and kept when the operator's predicate holds.
Scalar sub-expressions (``r1.width + 3``) evaluate to relations pairing a
tuple with a value.

Distinct non-flexible slots never bind the same shape. Tuples whose Jokers
cannot be filled under that rule denote nothing and are dropped at every node.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels
from ._kernels.opcodes import ALWAYS, COMPARE, POSITIONAL
from .errors import BudgetExceeded, TypeMismatch, UnboundSlot
from .flatten import DEFAULT_PROPS, FlattenedSpec, Slot
from .speclang import (
    ARITHMETIC_OPS,
    LOGICAL_OPS,
    POSITIONAL_OPS,
    RELATIONAL_OPS,
    BinaryOp,
    BoolLit,
    Expr,
    GroupProperty,
    IntLit,
    MemberAccess,
    Not,
    StrLit,
    VarRef,
    format_expr,
)
from .trace import KIND_TYPE_NAMES, KINDS, Rect, Shape, TraceDoc, bounding_box, shape_property, shape_size

JOKER = -1
DEFAULT_BUDGET = 10**6


class _Conflict:
    def __repr__(self):
        return "Conflict"

    def __bool__(self):
        return False


CONFLICT = _Conflict()
_KIND_CODE = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True)
class LogEvent:
    depth: int
    name: str
    message: str
    node: Expr | None = None
    rows: tuple | None = None  # labelled tuples attached to "End match" events


class Problem:
    """A (spec, trace) pair with the lookup arrays the kernels need."""

    def __init__(self, spec: FlattenedSpec, trace: TraceDoc, budget: int = DEFAULT_BUDGET):
        self.spec = spec
        self.trace = trace
        self.budget = budget
        self.v = spec.arity
        shapes = trace.shapes
        self.shape_kind = np.array([_KIND_CODE[s.kind] for s in shapes], dtype=np.int64)
        boxes = [bounding_box(s) for s in shapes]
        self.shape_boxes = np.array(
            [(b.left, b.top, b.right, b.bottom) for b in boxes], dtype=np.int64
        ).reshape(len(shapes), 4)
        self.shape_size = np.array([shape_size(s) for s in shapes], dtype=np.int64)
        self.capacity = np.bincount(self.shape_kind, minlength=len(KINDS)).astype(np.int64)
        self.slot_kind = np.array([_KIND_CODE[s.kind] for s in spec.slots], dtype=np.int64)
        self.exclusive = np.array([0 if s.flexible else 1 for s in spec.slots], dtype=np.int64)
        self.candidates = [
            [i for i, s in enumerate(shapes) if s.kind == slot.kind] for slot in spec.slots
        ]

    @property
    def m_max(self) -> int:
        return max((len(c) for c in self.candidates), default=0)

    def empty(self) -> "SolutionSet":
        return SolutionSet(self, np.empty((0, self.v), dtype=np.int64))

    def universe(self) -> "SolutionSet":
        return SolutionSet(self, np.full((1, self.v), JOKER, dtype=np.int64)).feasible_only()

    def label(self, idx: int) -> str:
        return JOKER_LABEL if idx == JOKER else self.trace[idx].name

    # -- concrete expansion -------------------------------------------------

    def expansion_size(self, row: Sequence[int]) -> int:
        return math.prod(len(self.candidates[i]) for i, x in enumerate(row) if x == JOKER)

    def expand_rows(self, rows: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
        rows = [tuple(r) for r in rows]
        needed = sum(self.expansion_size(r) for r in rows)
        if needed > self.budget:
            raise BudgetExceeded(needed, self.budget)
        out: set[tuple[int, ...]] = set()
        excl = self.exclusive.tolist()
        for row in rows:
            choices = [self.candidates[i] if x == JOKER else (x,) for i, x in enumerate(row)]
            for combo in itertools.product(*choices):
                used = [c for c, e in zip(combo, excl) if e]
                if len(used) == len(set(used)):
                    out.add(combo)
        return out

    def concrete_universe(self) -> set[tuple[int, ...]]:
        return self.expand_rows([(JOKER,) * self.v])


JOKER_LABEL = "*"


class SolutionSet:
    """Candidate tuples of one constraint node, with derived bounding boxes."""

    def __init__(self, problem: Problem, tuples: np.ndarray):
        self.problem = problem
        self.tuples = tuples
        self._keys = None

    def __len__(self) -> int:
        return self.tuples.shape[0]

    def __bool__(self) -> bool:
        return len(self) > 0

    @property
    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.tuples.tolist()]

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        return f"SolutionSet({self.rows})"

    @property
    def keys(self) -> np.ndarray:
        if self._keys is None:
            p = self.problem
            self._keys = _kernels.box_keys(self.tuples, p.shape_boxes, p.shape_size)
        return self._keys

    def boxes(self) -> list[Rect | None]:
        return [Rect(*k[1:5]) if k[0] else None for k in self.keys.tolist()]

    def labelled(self) -> tuple[tuple[str, ...], ...]:
        p = self.problem
        return tuple(tuple(p.label(x) for x in row) for row in self.tuples.tolist())

    def expand(self) -> set[tuple[int, ...]]:
        return self.problem.expand_rows(self.tuples.tolist())

    def feasible_only(self) -> "SolutionSet":
        if not len(self):
            return self
        p = self.problem
        mask = _kernels.feasible(self.tuples, p.exclusive, p.slot_kind, p.capacity, p.shape_kind)
        if mask.all():
            return self
        return SolutionSet(p, np.ascontiguousarray(self.tuples[mask]))

    def unique(self) -> "SolutionSet":
        idx = _first_unique(self.tuples)
        if idx is None:
            return self
        return SolutionSet(self.problem, np.ascontiguousarray(self.tuples[idx]))


class ScalarRelation:
    """Rows pairing a candidate tuple with an int or str value."""

    def __init__(self, problem: Problem, tuples: np.ndarray, values, vtype: type):
        self.problem = problem
        self.tuples = tuples
        self.values = values  # np.int64 array for int, list[str] for str
        self.vtype = vtype

    def __len__(self) -> int:
        return self.tuples.shape[0]

    @property
    def rows(self) -> list[tuple[tuple[int, ...], int | str]]:
        vals = self.values.tolist() if self.vtype is int else list(self.values)
        return [(tuple(t), v) for t, v in zip(self.tuples.tolist(), vals)]

    def __repr__(self):
        return f"ScalarRelation({self.rows})"

    def take(self, idx) -> "ScalarRelation":
        idx = np.asarray(idx, dtype=np.int64)
        t = np.ascontiguousarray(self.tuples[idx]).reshape(len(idx), self.tuples.shape[1])
        if self.vtype is int:
            vals = self.values[idx]
        else:
            vals = [self.values[i] for i in idx.tolist()]
        return ScalarRelation(self.problem, t, vals, self.vtype)

    def unique(self) -> "ScalarRelation":
        if self.vtype is int:
            idx = _first_unique(np.column_stack([self.tuples, self.values]))
        else:
            seen = {}
            for i, (t, v) in enumerate(zip(self.tuples.tolist(), self.values)):
                seen.setdefault((tuple(t), v), i)
            idx = sorted(seen.values())
            if len(idx) == len(self):
                idx = None
        return self if idx is None else self.take(idx)


Result = Union[SolutionSet, ScalarRelation]


def _first_unique(arr: np.ndarray):
    """Indices of first occurrences in row order, or None if all rows are distinct."""
    if arr.shape[0] < 2:
        return None
    _, idx = np.unique(arr, axis=0, return_index=True)
    if len(idx) == arr.shape[0]:
        return None
    return np.sort(idx)


# -- public building blocks -------------------------------------------------

def base_components(trace: TraceDoc, slot: int, spec: FlattenedSpec) -> SolutionSet:
    problem = Problem(spec, trace)
    return _base(problem, slot)


def _base(problem: Problem, slot: int) -> SolutionSet:
    cands = problem.candidates[slot]
    t = np.full((len(cands), problem.v), JOKER, dtype=np.int64)
    t[:, slot] = cands
    return SolutionSet(problem, t)


def merge_tuples(a: Sequence[int], b: Sequence[int], flexible: Sequence[bool] | None = None):
    """Positionwise intersection of two tuples, or CONFLICT if it is empty."""
    if a is CONFLICT or b is CONFLICT:
        return CONFLICT
    if len(a) != len(b):
        raise ValueError("tuples must have the same length")
    out = []
    for x, y in zip(a, b):
        if x == JOKER:
            out.append(y)
        elif y == JOKER or x == y:
            out.append(x)
        else:
            return CONFLICT
    flexible = flexible or [False] * len(out)
    bound = [x for x, f in zip(out, flexible) if x != JOKER and not f]
    if len(bound) != len(set(bound)):
        return CONFLICT
    return tuple(out)


def _join(problem: Problem, left, right, lkey, rkey, op: int, stats: "_Stats"):
    merged, li, ri, steps = _kernels.join(
        left.tuples, right.tuples, lkey, rkey, op,
        problem.exclusive, problem.slot_kind, problem.capacity, problem.shape_kind,
    )
    stats.steps += steps
    return merged, li, ri


@dataclass
class _Stats:
    steps: int = 0


def eval_positional(op: str, left: SolutionSet, right: SolutionSet, stats: _Stats | None = None) -> SolutionSet:
    if op not in POSITIONAL:
        raise ValueError(f"not a positional operator: {op!r}")
    stats = stats or _Stats()
    problem = left.problem
    merged, _, _, = _join(problem, left, right, left.keys, right.keys, POSITIONAL[op], stats)
    return SolutionSet(problem, merged).unique()


def _no_keys(n: int) -> np.ndarray:
    return np.zeros((n, 1), dtype=np.int64)


def eval_logical(op: str, left: SolutionSet, right: SolutionSet, universe: SolutionSet,
                 stats: _Stats | None = None) -> SolutionSet:
    stats = stats or _Stats()
    problem = left.problem
    if op == "and":
        if not left:
            return left
        merged, _, _ = _join(problem, left, right, _no_keys(len(left)), _no_keys(len(right)), ALWAYS, stats)
        return SolutionSet(problem, merged).unique()
    if op == "implies":
        if not left:
            return universe
        return eval_logical("and", left, right, universe, stats)
    if op == "or":
        both = np.concatenate([left.tuples, right.tuples]).reshape(-1, problem.v)
        return SolutionSet(problem, both).unique()
    if op == "xor":
        a = left.expand()
        b = right.expand()
        return _concrete(problem, a ^ b)
    raise ValueError(f"not a logical operator: {op!r}")


def _concrete(problem: Problem, rows: set) -> SolutionSet:
    arr = np.array(sorted(rows), dtype=np.int64).reshape(len(rows), problem.v)
    return SolutionSet(problem, arr)


def complement(s: SolutionSet, spec: FlattenedSpec | None = None, trace: TraceDoc | None = None) -> SolutionSet:
    problem = s.problem
    universe = problem.concrete_universe()
    return _concrete(problem, universe - s.expand())


# -- evaluation --------------------------------------------------------------

_ARITH_NAMES = {"+": "plus", "-": "minus", "*": "times", "/": "div", "concat": "concat"}


class _Evaluator:
    def __init__(self, problem: Problem, log: list[LogEvent] | None = None):
        self.problem = problem
        self.stats = _Stats()
        self.log = log
        self._leaf_cache: dict[int, SolutionSet] = {}

    def emit(self, depth, name, message, node=None, rows=None):
        if self.log is not None:
            self.log.append(LogEvent(depth, name, message, node, rows))

    def slot(self, path: str) -> tuple[int, Slot]:
        i = self.problem.spec.slot_index(path)
        return i, self.problem.spec.slots[i]

    def leaf(self, idx: int, depth: int) -> SolutionSet:
        slot = self.problem.spec.slots[idx]
        name = f"{slot.type_name}:{slot.path}"
        self.emit(depth, name, "Starting match. {")
        if idx in self._leaf_cache:
            self.emit(depth, name, "}. End match. Already computed. return cached.")
            return self._leaf_cache[idx]
        self.emit(depth, name, "matchExecute")
        result = _base(self.problem, idx).feasible_only()
        self.emit(depth, name, f"matchExecute done. found {len(result)} objects")
        self.emit(depth, name, f"}}. End match. Found {len(result)} objects.",
                  VarRef(slot.path), result.labelled())
        self._leaf_cache[idx] = result
        return result

    def solve(self, node: Expr, depth: int = 0) -> Result:
        name = _node_name(node, self)
        if isinstance(node, VarRef):
            idx, _ = self.slot(node.name)
            return self.leaf(idx, depth)
        self.emit(depth, name, "Starting match. {", node)
        result = self._solve(node, depth, name)
        if isinstance(result, SolutionSet):
            result = result.feasible_only()
            rows = result.labelled()
        else:
            result = _feasible_relation(result)
            rows = tuple((tuple(self.problem.label(x) for x in t), v) for t, v in result.rows)
        self.emit(depth, name, f"}}. End match. Found {len(result)} objects.", node, rows)
        return result

    def _solve(self, node: Expr, depth: int, name: str) -> Result:
        p = self.problem
        if isinstance(node, BoolLit):
            return p.universe() if node.value else p.empty()
        if isinstance(node, IntLit):
            return ScalarRelation(p, np.full((1, p.v), JOKER, dtype=np.int64),
                                  np.array([node.value], dtype=np.int64), int)
        if isinstance(node, StrLit):
            return ScalarRelation(p, np.full((1, p.v), JOKER, dtype=np.int64), [node.value], str)
        if isinstance(node, MemberAccess):
            return self._member(node, depth, name)
        if isinstance(node, GroupProperty):
            return self._group(node, depth, name)
        if isinstance(node, Not):
            child = self._set(self.solve(node.child, depth + 1), "not")
            return complement(child)
        if isinstance(node, BinaryOp):
            return self._binary(node, depth, name)
        raise TypeError(f"cannot solve {node!r}")

    def _set(self, r: Result, op: str) -> SolutionSet:
        if not isinstance(r, SolutionSet):
            raise TypeMismatch(f"operator {op!r} needs a shape/constraint operand, got a scalar")
        return r

    def _scalar(self, r: Result, op: str) -> ScalarRelation:
        if not isinstance(r, ScalarRelation):
            raise TypeMismatch(f"operator {op!r} needs a scalar operand, got shapes")
        return r

    def _member(self, node: MemberAccess, depth: int, name: str) -> ScalarRelation:
        idx, slot = self.slot(node.var)
        base = self.leaf(idx, depth + 1)
        shapes = self.problem.trace.shapes
        values = [shape_property(shapes[t[idx]], node.prop) for t in base.tuples.tolist()]
        for v in values:
            self.emit(depth, name, f"i:{idx} s:{v!r}" if isinstance(v, str) else f"i:{idx} v:{v}")
        vtype = str if node.prop == "text" else int
        return ScalarRelation(self.problem, base.tuples, _values(values, vtype), vtype)

    def _group(self, node: GroupProperty, depth: int, name: str) -> ScalarRelation:
        p = self.problem
        acc = p.universe()
        for path in node.slots:
            idx, _ = self.slot(path)
            part = self.leaf(idx, depth + 1)
            merged, _, _ = _join(p, acc, part, _no_keys(len(acc)), _no_keys(len(part)), ALWAYS, self.stats)
            acc = SolutionSet(p, merged)
        boxes = acc.boxes()
        values = [getattr(b, {"x": "left", "y": "top"}.get(node.prop, node.prop)) for b in boxes]
        return ScalarRelation(p, acc.tuples, _values(values, int), int)

    def _binary(self, node: BinaryOp, depth: int, name: str) -> Result:
        op = node.op
        p = self.problem
        left = self.solve(node.left, depth + 1)
        if op in LOGICAL_OPS:
            left = self._set(left, op)
            if not left and op == "and":
                return p.empty()
            if not left and op == "implies":
                self.emit(depth, name, "antecedent empty, returning universe")
                return p.universe()
            right = self._set(self.solve(node.right, depth + 1), op)
            return eval_logical(op, left, right, p.universe(), self.stats)
        right = self.solve(node.right, depth + 1)
        if op in POSITIONAL_OPS:
            return eval_positional(op, self._set(left, op), self._set(right, op), self.stats)
        left = self._scalar(left, op)
        right = self._scalar(right, op)
        if op in RELATIONAL_OPS:
            return self._relational(op, left, right, depth, name)
        if op in ARITHMETIC_OPS:
            return self._arith(op, left, right, depth, name)
        raise TypeMismatch(f"unknown operator {op!r}")

    def _relational(self, op, left: ScalarRelation, right: ScalarRelation, depth, name) -> SolutionSet:
        p = self.problem
        if left.vtype is not right.vtype:
            raise TypeMismatch(f"{op!r} compares {left.vtype.__name__} with {right.vtype.__name__}")
        if op == "equals" and left.vtype is not str:
            raise TypeMismatch("'equals' compares strings")
        if left.vtype is int:
            merged, _, _ = _join(p, left, right, left.values.reshape(-1, 1),
                                 right.values.reshape(-1, 1), COMPARE[op], self.stats)
            return SolutionSet(p, merged).unique()
        if op in ("<", ">"):
            raise TypeMismatch(f"{op!r} is not defined on strings")
        merged, li, ri = _join(p, left, right, _no_keys(len(left)), _no_keys(len(right)), ALWAYS, self.stats)
        keep = []
        for k, (i, j) in enumerate(zip(li.tolist(), ri.tolist())):
            a, b = left.values[i], right.values[j]
            self.emit(depth, name, f"{a!r} str equals {b!r}")
            if (a == b) == (op != "!="):
                keep.append(k)
        self.emit(depth, name, f"done matchExecute. found {len(keep)} objects")
        return SolutionSet(p, np.ascontiguousarray(merged[keep]).reshape(len(keep), p.v)).unique()

    def _arith(self, op, left: ScalarRelation, right: ScalarRelation, depth, name) -> ScalarRelation:
        p = self.problem
        if op == "concat":
            if left.vtype is not str or right.vtype is not str:
                raise TypeMismatch("'concat' joins strings")
        elif left.vtype is not int or right.vtype is not int:
            raise TypeMismatch(f"{op!r} needs integer operands")
        merged, li, ri = _join(p, left, right, _no_keys(len(left)), _no_keys(len(right)), ALWAYS, self.stats)
        if op == "concat":
            vals = [left.values[i] + right.values[j] for i, j in zip(li.tolist(), ri.tolist())]
            return ScalarRelation(p, merged, vals, str).unique()
        a = left.values[li]
        b = right.values[ri]
        if op == "+":
            vals = a + b
        elif op == "-":
            vals = a - b
        elif op == "*":
            vals = a * b
        else:
            ok = b != 0
            if not ok.all():
                self.emit(depth, name, f"division by zero in {int((~ok).sum())} rows, rows dropped")
                merged, a, b = merged[ok], a[ok], b[ok]
            vals = np.sign(a) * np.sign(b) * (np.abs(a) // np.abs(b))
        return ScalarRelation(p, np.ascontiguousarray(merged), vals.astype(np.int64), int).unique()


def _values(values, vtype):
    return np.array(values, dtype=np.int64) if vtype is int else list(values)


def _feasible_relation(r: ScalarRelation) -> ScalarRelation:
    if not len(r):
        return r
    p = r.problem
    mask = _kernels.feasible(r.tuples, p.exclusive, p.slot_kind, p.capacity, p.shape_kind)
    if mask.all():
        return r
    return r.take(np.flatnonzero(mask))


def _node_name(node: Expr, ev: _Evaluator) -> str:
    if isinstance(node, VarRef):
        _, slot = ev.slot(node.name)
        return f"{slot.type_name}:{slot.path}"
    if isinstance(node, (MemberAccess, GroupProperty)):
        return format_expr(node)
    if isinstance(node, IntLit):
        return "int"
    if isinstance(node, StrLit):
        return "string"
    if isinstance(node, BoolLit):
        return "bool"
    if isinstance(node, Not):
        return "not"
    if node.op in ("equals",) or (node.op in ("==", "!=") and _is_stringy(node)):
        return "strEq" if node.op != "!=" else "strNe"
    return _ARITH_NAMES.get(node.op, node.op)


def _is_stringy(node: BinaryOp) -> bool:
    for side in (node.left, node.right):
        if isinstance(side, StrLit) or (isinstance(side, MemberAccess) and side.prop == "text"):
            return True
        if isinstance(side, BinaryOp) and side.op == "concat":
            return True
    return False


def solve_node(node: Expr, spec: FlattenedSpec, trace: TraceDoc, budget: int = DEFAULT_BUDGET) -> Result:
    return _Evaluator(Problem(spec, trace, budget)).solve(node)


# -- top level ---------------------------------------------------------------

@dataclass
class Verdict:
    satisfied: bool
    solutions: SolutionSet
    step_count: int
    log: list[LogEvent] = field(default_factory=list)
    spec: FlattenedSpec | None = None

    def solution_labels(self) -> list[dict[str, str]]:
        paths = [s.path for s in self.spec.slots]
        return [dict(zip(paths, row)) for row in self.solutions.labelled()]

    def expanded(self) -> set[tuple[int, ...]]:
        return self.solutions.expand()

    def report(self) -> str:
        lines = [
            " ".join(f"{path}={label}" for path, label in sol.items())
            for sol in self.solution_labels()
        ]
        lines.append("SATISFIED" if self.satisfied else "VIOLATED")
        return "\n".join(lines) + "\n"


def check_spec(spec: FlattenedSpec, trace: TraceDoc, budget: int = DEFAULT_BUDGET) -> Verdict:
    problem = Problem(spec, trace, budget)
    log: list[LogEvent] = []
    ev = _Evaluator(problem, log)
    name = spec.name
    ev.emit(0, name, "Solving ... {")
    ev.emit(1, name, "Starting match. {")
    ev.emit(1, name, "matching variables {")
    for i in range(spec.arity):
        ev.leaf(i, 2)
    ev.emit(1, name, "}. done matching variables.")
    ev.emit(1, name, "matching constraints {")
    result = ev._set(ev.solve(spec.tree, 2), "constraints")
    ev.emit(1, name, f"}}. done matching constraints. found {len(result)} objects.")
    ev.emit(1, name, "computing properties. {")
    ev.emit(1, name, "} done computing properties.")
    ev.emit(1, name, f"}}. End match. Found {len(result)} objects.", spec.tree, result.labelled())
    ev.emit(0, name, "}. Done solving.")
    satisfied = len(result) > 0
    ev.emit(0, name, "Specification satisfied." if satisfied else "Testing failed: specification not met!")
    return Verdict(satisfied, result, ev.stats.steps, log, spec)


def spec_properties(spec: FlattenedSpec, row: Sequence[int], trace: TraceDoc) -> dict[str, int | str]:
    """Evaluate user-defined and default properties under one solution tuple."""
    binding = {s.path: (row[i] if row[i] != JOKER else None) for i, s in enumerate(spec.slots)}
    shapes = trace.shapes
    out: dict[str, int | str] = {}
    owners = {"": tuple(s.path for s in spec.slots)}
    owners.update({path: cv.slots for path, cv in spec.complex_vars.items()})
    for owner, slots in owners.items():
        prefix = f"{owner}." if owner else ""
        for (o, prop), expr in spec.property_defs.items():
            if o == owner:
                out[prefix + prop] = _eval_scalar(expr, binding, shapes)
        defined = {prop.lower() for (o, prop) in spec.property_defs if o == owner}
        bound = [shapes[binding[s]] for s in slots if binding[s] is not None]
        if not bound:
            continue
        box = bounding_box(bound[0])
        for s in bound[1:]:
            box = box.union(bounding_box(s))
        for prop, val in zip(DEFAULT_PROPS, (box.left, box.top, box.width, box.height)):
            if prop not in defined:
                out[prefix + prop.upper()] = val
    return out


def _eval_scalar(e: Expr, binding: dict, shapes: Sequence[Shape]):
    if isinstance(e, IntLit) or isinstance(e, StrLit):
        return e.value
    if isinstance(e, MemberAccess):
        idx = binding[e.var]
        if idx is None:
            raise UnboundSlot(f"{e.var} is a Joker in this tuple")
        return shape_property(shapes[idx], e.prop)
    if isinstance(e, GroupProperty):
        bound = [shapes[binding[s]] for s in e.slots if binding[s] is not None]
        if len(bound) != len(e.slots):
            raise UnboundSlot(f"{e.owner} has Joker slots in this tuple")
        box = bounding_box(bound[0])
        for s in bound[1:]:
            box = box.union(bounding_box(s))
        return {"x": box.left, "y": box.top, "width": box.width, "height": box.height}[e.prop]
    if isinstance(e, BinaryOp) and e.op in ARITHMETIC_OPS:
        a = _eval_scalar(e.left, binding, shapes)
        b = _eval_scalar(e.right, binding, shapes)
        if e.op in ("+", "concat"):
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        q = abs(a) // abs(b)
        return q if (a >= 0) == (b >= 0) else -q
    raise TypeMismatch(f"{format_expr(e)} is not a scalar expression")
