"""Pure-Python kernels. Reference behaviour for the compiled ``_ckernels``.

Tuples are int64 rows of length v; ``-1`` is the Joker. Keys are per-row
int64 vectors: for positional ops ``(has_box, left, top, right, bottom, size)``,
for comparisons a single value column.
"""

from __future__ import annotations

import numpy as np

from .opcodes import (
    ABOVE, ALWAYS, BELOW, BOTTOMALIGNED, CONTAINS, EQ, GT, LEFTALIGNED, LEFTTO, LT, NE,
    OVER, RIGHTALIGNED, RIGHTTO, SMALLER, TOPALIGNED,
)

JOKER = -1


def _pred(op, a, b):
    if op == ALWAYS:
        return True
    if op >= EQ:
        x, y = a[0], b[0]
        if op == EQ:
            return x == y
        if op == NE:
            return x != y
        if op == LT:
            return x < y
        return x > y
    if not (a[0] and b[0]):
        return False
    _, al, at, ar, ab, asz = a
    _, bl, bt, br, bb, bsz = b
    if op == ABOVE:
        return ab <= bt
    if op == BELOW:
        return at >= bb
    if op == LEFTTO:
        return ar <= bl
    if op == RIGHTTO:
        return al >= br
    if op == CONTAINS:
        return al <= bl and at <= bt and ar >= br and ab >= bb
    if op == OVER:
        return al <= br and bl <= ar and at <= bb and bt <= ab
    if op == SMALLER:
        return asz < bsz
    if op == LEFTALIGNED:
        return al == bl
    if op == RIGHTALIGNED:
        return ar == br
    if op == TOPALIGNED:
        return at == bt
    if op == BOTTOMALIGNED:
        return ab == bb
    raise ValueError(f"unknown opcode {op}")


def _merge(a, b, exclusive):
    """Positionwise merge; None on conflict or exclusivity violation."""
    out = list(a)
    for i, y in enumerate(b):
        x = out[i]
        if x == JOKER:
            out[i] = y
        elif y != JOKER and x != y:
            return None
    seen = set()
    for i, x in enumerate(out):
        if x != JOKER and exclusive[i]:
            if x in seen:
                return None
            seen.add(x)
    return out


def _feasible(t, exclusive, slot_kind, capacity, shape_kind):
    need = [0] * len(capacity)
    for i, x in enumerate(t):
        k = slot_kind[i]
        if x == JOKER:
            if exclusive[i]:
                need[k] += 1
            elif capacity[k] == 0:
                return False
        elif exclusive[i]:
            need[shape_kind[x]] += 1
    return all(n <= c for n, c in zip(need, capacity))


def join(left, right, lkey, rkey, op, exclusive, slot_kind, capacity, shape_kind):
    """Merge every compatible pair of rows whose keys satisfy ``op``.

    Returns ``(merged, left_idx, right_idx, steps)`` where ``steps`` counts the
    compatible pairs the predicate was evaluated on.
    """
    v = left.shape[1]
    L = left.tolist()
    R = right.tolist()
    LK = lkey.tolist()
    RK = rkey.tolist()
    excl = exclusive.tolist()
    sk = slot_kind.tolist()
    cap = capacity.tolist()
    shk = shape_kind.tolist()
    out, li, ri = [], [], []
    steps = 0
    for i, a in enumerate(L):
        ka = LK[i]
        for j, b in enumerate(R):
            m = _merge(a, b, excl)
            if m is None:
                continue
            steps += 1
            if _pred(op, ka, RK[j]) and _feasible(m, excl, sk, cap, shk):
                out.append(m)
                li.append(i)
                ri.append(j)
    merged = np.array(out, dtype=np.int64).reshape(len(out), v)
    return merged, np.array(li, dtype=np.int64), np.array(ri, dtype=np.int64), steps


def feasible(tuples, exclusive, slot_kind, capacity, shape_kind):
    excl = exclusive.tolist()
    sk = slot_kind.tolist()
    cap = capacity.tolist()
    shk = shape_kind.tolist()
    return np.array(
        [_feasible(t, excl, sk, cap, shk) for t in tuples.tolist()], dtype=bool
    ).reshape(tuples.shape[0])


def box_keys(tuples, shape_boxes, shape_size):
    """Per-row ``(has_box, left, top, right, bottom, size)`` over bound slots."""
    boxes = shape_boxes.tolist()
    sizes = shape_size.tolist()
    out = []
    for t in tuples.tolist():
        ids = [x for x in t if x != JOKER]
        if not ids:
            out.append([0, 0, 0, 0, 0, 0])
            continue
        l = min(boxes[x][0] for x in ids)
        tp = min(boxes[x][1] for x in ids)
        r = max(boxes[x][2] for x in ids)
        b = max(boxes[x][3] for x in ids)
        if len(set(ids)) == 1:
            size = sizes[ids[0]]
        else:
            size = (r - l) * (b - tp)
        out.append([1, l, tp, r, b, size])
    return np.array(out, dtype=np.int64).reshape(len(out), 6)
