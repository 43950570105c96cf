"""Pure-Python kernels; reference semantics for the compiled ``_ckernels``.

Matrices are row-major ``bytes`` of field indices.  ``tables`` is the tuple
``(q, add, mul, neg, inv)`` from :attr:`FieldSpec.tables`.  Pivot rows are
returned 0-based.
"""

from __future__ import annotations

import time


def canon(m, n, k, tables):
    """Canonical column-echelon form of the n x k matrix ``m``.

    Returns ``(canon_bytes, pivots)``; raises ValueError if rank < k.
    """
    q, add, mul, neg, inv = tables
    cols = [[m[r * k + c] for r in range(n)] for c in range(k)]
    used = [False] * k
    pivot_of = [-1] * k
    found = 0
    for r in range(n - 1, -1, -1):
        if found == k:
            break
        for c in range(k):
            if not used[c] and cols[c][r]:
                break
        else:
            continue
        col = cols[c]
        s = inv[col[r]]
        if s != 1:
            col = cols[c] = [mul[s * q + x] for x in col]
        used[c] = True
        pivot_of[c] = r
        found += 1
        for d in range(k):
            if d != c:
                f = cols[d][r]
                if f:
                    nf = neg[f] * q
                    cols[d] = [add[y * q + mul[nf + x]] for x, y in zip(col, cols[d])]
    if found < k:
        raise ValueError("generator matrix is rank-deficient")
    order = sorted(range(k), key=pivot_of.__getitem__)
    out = bytearray(n * k)
    for j, c in enumerate(order):
        col = cols[c]
        for r in range(n):
            out[r * k + j] = col[r]
    return bytes(out), tuple(pivot_of[c] for c in order)


def matmul(a, b, n, m, k, tables):
    """(n x m) @ (m x k) over the field."""
    q, add, mul, _, _ = tables
    out = bytearray(n * k)
    for i in range(n):
        row = a[i * m:(i + 1) * m]
        for j in range(k):
            acc = 0
            for l, x in enumerate(row):
                if x:
                    y = b[l * k + j]
                    if y:
                        acc = add[acc * q + mul[x * q + y]]
            out[i * k + j] = acc
    return bytes(out)


def mul_canon(a, b, n, m, k, tables):
    return canon(matmul(a, b, n, m, k, tables), n, k, tables)


def mul_canon_many(a, bs, n, m, k, tables):
    """Canonical keys of ``a @ b`` for every b in ``bs``."""
    return [canon(matmul(a, b, n, m, k, tables), n, k, tables)[0] for b in bs]


def dfs_solve(cols, nrows, lam, max_solutions, deadline):
    """All 0/1 selections of ``cols`` summing to ``lam`` in every row.

    ``cols`` is a list of integer column vectors in search order.  Returns
    ``(solutions, status)``; each solution is a tuple of selected positions.
    ``max_solutions < 0`` means unbounded, ``deadline <= 0`` means no limit.
    """
    ncols = len(cols)
    suffix = [[0] * nrows for _ in range(ncols + 1)]
    for j in range(ncols - 1, -1, -1):
        suffix[j] = [x + y for x, y in zip(suffix[j + 1], cols[j])]
    sums = [0] * nrows
    chosen: list[int] = []
    out: list[tuple[int, ...]] = []
    state = {"nodes": 0, "status": "complete"}

    def rec(j):
        state["nodes"] += 1
        if deadline > 0 and state["nodes"] & 1023 == 0 and time.monotonic() > deadline:
            state["status"] = "timeout"
            return True
        suf = suffix[j]
        for i in range(nrows):
            if sums[i] + suf[i] < lam:
                return False
        if j == ncols:
            out.append(tuple(chosen))
            if 0 <= max_solutions <= len(out):
                state["status"] = "truncated"
                return True
            return False
        col = cols[j]
        if all(s + c <= lam for s, c in zip(sums, col)):
            for i in range(nrows):
                sums[i] += col[i]
            chosen.append(j)
            stop = rec(j + 1)
            chosen.pop()
            for i in range(nrows):
                sums[i] -= col[i]
            if stop:
                return True
        return rec(j + 1)

    if max_solutions != 0:
        rec(0)
    else:
        state["status"] = "truncated"
    return out, state["status"]
