# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled twin of ``_pykernels``; same signatures, same results."""

import numpy as np

cdef enum:
    JOKER = -1
    MAXKINDS = 16
    ALWAYS = 0
    ABOVE = 1
    BELOW = 2
    LEFTTO = 3
    RIGHTTO = 4
    CONTAINS = 5
    OVER = 6
    SMALLER = 7
    LEFTALIGNED = 8
    RIGHTALIGNED = 9
    TOPALIGNED = 10
    BOTTOMALIGNED = 11
    EQ = 20
    NE = 21
    LT = 22
    GT = 23



ctypedef long long i64


cdef inline bint _pred(int op, const i64[:, :] lk, Py_ssize_t i, const i64[:, :] rk, Py_ssize_t j):
    cdef i64 x, y
    if op == ALWAYS:
        return True
    if op >= EQ:
        x = lk[i, 0]
        y = rk[j, 0]
        if op == EQ:
            return x == y
        if op == NE:
            return x != y
        if op == LT:
            return x < y
        return x > y
    if lk[i, 0] == 0 or rk[j, 0] == 0:
        return False
    if op == ABOVE:
        return lk[i, 4] <= rk[j, 2]
    if op == BELOW:
        return lk[i, 2] >= rk[j, 4]
    if op == LEFTTO:
        return lk[i, 3] <= rk[j, 1]
    if op == RIGHTTO:
        return lk[i, 1] >= rk[j, 3]
    if op == CONTAINS:
        return (lk[i, 1] <= rk[j, 1] and lk[i, 2] <= rk[j, 2]
                and lk[i, 3] >= rk[j, 3] and lk[i, 4] >= rk[j, 4])
    if op == OVER:
        return (lk[i, 1] <= rk[j, 3] and rk[j, 1] <= lk[i, 3]
                and lk[i, 2] <= rk[j, 4] and rk[j, 2] <= lk[i, 4])
    if op == SMALLER:
        return lk[i, 5] < rk[j, 5]
    if op == LEFTALIGNED:
        return lk[i, 1] == rk[j, 1]
    if op == RIGHTALIGNED:
        return lk[i, 3] == rk[j, 3]
    if op == TOPALIGNED:
        return lk[i, 2] == rk[j, 2]
    if op == BOTTOMALIGNED:
        return lk[i, 4] == rk[j, 4]
    return False


cdef inline bint _merge(const i64[:, :] L, Py_ssize_t i, const i64[:, :] R, Py_ssize_t j,
                        const i64[:] excl, i64[:] out):
    cdef Py_ssize_t p, q, v = L.shape[1]
    cdef i64 x, y
    for p in range(v):
        x = L[i, p]
        y = R[j, p]
        if x == JOKER:
            out[p] = y
        elif y == JOKER or x == y:
            out[p] = x
        else:
            return False
    for p in range(v):
        if out[p] == JOKER or not excl[p]:
            continue
        for q in range(p + 1, v):
            if excl[q] and out[q] == out[p]:
                return False
    return True


cdef inline bint _feasible(const i64[:] t, const i64[:] excl, const i64[:] slot_kind,
                           const i64[:] cap, const i64[:] shape_kind):
    cdef i64 need[MAXKINDS]
    cdef Py_ssize_t p, k, nk = cap.shape[0]
    for k in range(nk):
        need[k] = 0
    for p in range(t.shape[0]):
        if t[p] == JOKER:
            if excl[p]:
                need[slot_kind[p]] += 1
            elif cap[slot_kind[p]] == 0:
                return False
        elif excl[p]:
            need[shape_kind[t[p]]] += 1
    for k in range(nk):
        if need[k] > cap[k]:
            return False
    return True


def join(left, right, lkey, rkey, int op, exclusive, slot_kind, capacity, shape_kind):
    cdef const i64[:, :] L = left
    cdef const i64[:, :] R = right
    cdef const i64[:, :] LK = lkey
    cdef const i64[:, :] RK = rkey
    cdef const i64[:] excl = exclusive
    cdef const i64[:] sk = slot_kind
    cdef const i64[:] cap = capacity
    cdef const i64[:] shk = shape_kind
    cdef Py_ssize_t n = L.shape[0], m = R.shape[0], v = L.shape[1]
    cdef Py_ssize_t i, j, p, count = 0, size = 64
    cdef long steps = 0
    if cap.shape[0] > MAXKINDS:
        raise ValueError("too many shape kinds")
    scratch_arr = np.empty(v, dtype=np.int64)
    cdef i64[:] scratch = scratch_arr
    out_arr = np.empty((size, v), dtype=np.int64)
    li_arr = np.empty(size, dtype=np.int64)
    ri_arr = np.empty(size, dtype=np.int64)
    cdef i64[:, :] out = out_arr
    cdef i64[:] li = li_arr
    cdef i64[:] ri = ri_arr
    for i in range(n):
        for j in range(m):
            if not _merge(L, i, R, j, excl, scratch):
                continue
            steps += 1
            if not _pred(op, LK, i, RK, j):
                continue
            if not _feasible(scratch, excl, sk, cap, shk):
                continue
            if count == size:
                size *= 2
                out_arr = np.resize(out_arr, (size, v))
                li_arr = np.resize(li_arr, size)
                ri_arr = np.resize(ri_arr, size)
                out = out_arr
                li = li_arr
                ri = ri_arr
            for p in range(v):
                out[count, p] = scratch[p]
            li[count] = i
            ri[count] = j
            count += 1
    return (np.ascontiguousarray(out_arr[:count]), li_arr[:count].copy(),
            ri_arr[:count].copy(), steps)


def feasible(tuples, exclusive, slot_kind, capacity, shape_kind):
    cdef const i64[:, :] T = tuples
    cdef const i64[:] excl = exclusive
    cdef const i64[:] sk = slot_kind
    cdef const i64[:] cap = capacity
    cdef const i64[:] shk = shape_kind
    cdef Py_ssize_t i, n = T.shape[0]
    if cap.shape[0] > MAXKINDS:
        raise ValueError("too many shape kinds")
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    for i in range(n):
        mask[i] = _feasible(T[i], excl, sk, cap, shk)
    return mask_arr.astype(bool)


def box_keys(tuples, shape_boxes, shape_size):
    cdef const i64[:, :] T = tuples
    cdef const i64[:, :] B = shape_boxes
    cdef const i64[:] S = shape_size
    cdef Py_ssize_t i, p, n = T.shape[0], v = T.shape[1]
    cdef i64 x, first, l, t, r, b
    cdef bint any_bound, single
    keys_arr = np.zeros((n, 6), dtype=np.int64)
    cdef i64[:, :] keys = keys_arr
    for i in range(n):
        any_bound = False
        single = True
        first = JOKER
        l = t = r = b = 0
        for p in range(v):
            x = T[i, p]
            if x == JOKER:
                continue
            if not any_bound:
                any_bound = True
                first = x
                l = B[x, 0]
                t = B[x, 1]
                r = B[x, 2]
                b = B[x, 3]
            else:
                if x != first:
                    single = False
                if B[x, 0] < l:
                    l = B[x, 0]
                if B[x, 1] < t:
                    t = B[x, 1]
                if B[x, 2] > r:
                    r = B[x, 2]
                if B[x, 3] > b:
                    b = B[x, 3]
        if not any_bound:
            continue
        keys[i, 0] = 1
        keys[i, 1] = l
        keys[i, 2] = t
        keys[i, 3] = r
        keys[i, 4] = b
        keys[i, 5] = S[first] if single else (r - l) * (b - t)
    return keys_arr
