# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``_pykernels`` call for call."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset
from time import monotonic

cdef enum:
    MAXD = 32


cdef int _canon(const unsigned char *m, int n, int k, int q,
                const unsigned char *add, const unsigned char *mul,
                const unsigned char *neg, const unsigned char *inv,
                unsigned char *out, int *piv) noexcept nogil:
    # returns 0 on success, -1 if rank-deficient
    cdef unsigned char cols[MAXD][MAXD]
    cdef int pivot_of[MAXD]
    cdef int used[MAXD]
    cdef int order[MAXD]
    cdef int r, c, d, j, found = 0, sel, tmp
    cdef unsigned char s, f, nf
    for c in range(k):
        used[c] = 0
        pivot_of[c] = -1
        for r in range(n):
            cols[c][r] = m[r * k + c]
    r = n - 1
    while r >= 0 and found < k:
        sel = -1
        for c in range(k):
            if not used[c] and cols[c][r]:
                sel = c
                break
        if sel >= 0:
            s = inv[cols[sel][r]]
            if s != 1:
                for j in range(r + 1):
                    cols[sel][j] = mul[s * q + cols[sel][j]]
            used[sel] = 1
            pivot_of[sel] = r
            found += 1
            for d in range(k):
                if d != sel:
                    f = cols[d][r]
                    if f:
                        nf = neg[f]
                        for j in range(r + 1):
                            if cols[sel][j]:
                                cols[d][j] = add[cols[d][j] * q + mul[nf * q + cols[sel][j]]]
        r -= 1
    if found < k:
        return -1
    for c in range(k):
        order[c] = c
    # insertion sort by pivot row
    for c in range(1, k):
        tmp = order[c]
        d = c - 1
        while d >= 0 and pivot_of[order[d]] > pivot_of[tmp]:
            order[d + 1] = order[d]
            d -= 1
        order[d + 1] = tmp
    for j in range(k):
        c = order[j]
        piv[j] = pivot_of[c]
        for r in range(n):
            out[r * k + j] = cols[c][r]
    return 0


cdef inline void _matmul(const unsigned char *a, const unsigned char *b,
                         int n, int m, int k, int q,
                         const unsigned char *add, const unsigned char *mul,
                         unsigned char *out) noexcept nogil:
    cdef int i, j, l
    cdef unsigned char acc, x, y
    for i in range(n):
        for j in range(k):
            acc = 0
            for l in range(m):
                x = a[i * m + l]
                if x:
                    y = b[l * k + j]
                    if y:
                        acc = add[acc * q + mul[x * q + y]]
            out[i * k + j] = acc


def _check(int n, int m, int k):
    if n > MAXD or m > MAXD or k > MAXD:
        raise ValueError("dimension exceeds compiled kernel limit %d" % MAXD)


def canon(const unsigned char[:] mat, int n, int k, tables):
    cdef int q = tables[0]
    cdef const unsigned char[:] add = tables[1]
    cdef const unsigned char[:] mul = tables[2]
    cdef const unsigned char[:] neg = tables[3]
    cdef const unsigned char[:] inv = tables[4]
    cdef unsigned char out[MAXD * MAXD]
    cdef int piv[MAXD]
    _check(n, n, k)
    if k == 0:
        return bytes(n * 0), ()
    if _canon(&mat[0], n, k, q, &add[0], &mul[0], &neg[0], &inv[0], out, piv) < 0:
        raise ValueError("generator matrix is rank-deficient")
    return out[:n * k], tuple([piv[j] for j in range(k)])


def matmul(const unsigned char[:] a, const unsigned char[:] b, int n, int m, int k, tables):
    cdef int q = tables[0]
    cdef const unsigned char[:] add = tables[1]
    cdef const unsigned char[:] mul = tables[2]
    cdef unsigned char out[MAXD * MAXD]
    _check(n, m, k)
    if n * k == 0:
        return b""
    _matmul(&a[0], &b[0], n, m, k, q, &add[0], &mul[0], out)
    return out[:n * k]


def mul_canon(const unsigned char[:] a, const unsigned char[:] b, int n, int m, int k, tables):
    cdef int q = tables[0]
    cdef const unsigned char[:] add = tables[1]
    cdef const unsigned char[:] mul = tables[2]
    cdef const unsigned char[:] neg = tables[3]
    cdef const unsigned char[:] inv = tables[4]
    cdef unsigned char prod[MAXD * MAXD]
    cdef unsigned char out[MAXD * MAXD]
    cdef int piv[MAXD]
    _check(n, m, k)
    if k == 0:
        return b"", ()
    _matmul(&a[0], &b[0], n, m, k, q, &add[0], &mul[0], prod)
    if _canon(prod, n, k, q, &add[0], &mul[0], &neg[0], &inv[0], out, piv) < 0:
        raise ValueError("generator matrix is rank-deficient")
    return out[:n * k], tuple([piv[j] for j in range(k)])


def mul_canon_many(const unsigned char[:] a, bs, int n, int m, int k, tables):
    cdef int q = tables[0]
    cdef const unsigned char[:] add = tables[1]
    cdef const unsigned char[:] mul = tables[2]
    cdef const unsigned char[:] neg = tables[3]
    cdef const unsigned char[:] inv = tables[4]
    cdef unsigned char prod[MAXD * MAXD]
    cdef unsigned char out[MAXD * MAXD]
    cdef int piv[MAXD]
    cdef const unsigned char[:] b
    cdef list res = []
    _check(n, m, k)
    if k == 0:
        return [b"" for _ in bs]
    for obj in bs:
        b = obj
        _matmul(&a[0], &b[0], n, m, k, q, &add[0], &mul[0], prod)
        if _canon(prod, n, k, q, &add[0], &mul[0], &neg[0], &inv[0], out, piv) < 0:
            raise ValueError("generator matrix is rank-deficient")
        res.append(out[:n * k])
    return res


cdef struct Ctx:
    int nrows
    int ncols
    long lam
    long *A
    long *suf
    long *sums
    int *chosen
    int nchosen
    long max_solutions
    long nodes
    double deadline
    int stop


cdef int _dfs(Ctx *ctx, int j, list out) except -1:
    cdef int i, ok
    cdef int nrows = ctx.nrows
    cdef long *col
    cdef long *suf = ctx.suf + j * nrows
    ctx.nodes += 1
    if ctx.deadline > 0 and (ctx.nodes & 1023) == 0 and monotonic() > ctx.deadline:
        ctx.stop = 2
        return 0
    for i in range(nrows):
        if ctx.sums[i] + suf[i] < ctx.lam:
            return 0
    if j == ctx.ncols:
        out.append(tuple([ctx.chosen[i] for i in range(ctx.nchosen)]))
        if ctx.max_solutions >= 0 and len(out) >= ctx.max_solutions:
            ctx.stop = 1
        return 0
    col = ctx.A + j * nrows
    ok = 1
    for i in range(nrows):
        if ctx.sums[i] + col[i] > ctx.lam:
            ok = 0
            break
    if ok:
        for i in range(nrows):
            ctx.sums[i] += col[i]
        ctx.chosen[ctx.nchosen] = j
        ctx.nchosen += 1
        _dfs(ctx, j + 1, out)
        ctx.nchosen -= 1
        for i in range(nrows):
            ctx.sums[i] -= col[i]
        if ctx.stop:
            return 0
    return _dfs(ctx, j + 1, out)


def dfs_solve(cols, int nrows, long lam, long max_solutions, double deadline):
    cdef Ctx ctx
    cdef int ncols = len(cols)
    cdef int i, j
    cdef list out = []
    ctx.nrows = nrows
    ctx.ncols = ncols
    ctx.lam = lam
    ctx.max_solutions = max_solutions
    ctx.deadline = deadline
    ctx.nodes = 0
    ctx.stop = 0
    ctx.nchosen = 0
    ctx.A = <long *> malloc(sizeof(long) * (ncols * nrows + 1))
    ctx.suf = <long *> malloc(sizeof(long) * ((ncols + 1) * nrows + 1))
    ctx.sums = <long *> malloc(sizeof(long) * (nrows + 1))
    ctx.chosen = <int *> malloc(sizeof(int) * (ncols + 1))
    try:
        for j in range(ncols):
            for i in range(nrows):
                ctx.A[j * nrows + i] = cols[j][i]
        memset(ctx.sums, 0, sizeof(long) * (nrows + 1))
        for i in range(nrows):
            ctx.suf[ncols * nrows + i] = 0
        for j in range(ncols - 1, -1, -1):
            for i in range(nrows):
                ctx.suf[j * nrows + i] = ctx.suf[(j + 1) * nrows + i] + ctx.A[j * nrows + i]
        if max_solutions != 0:
            _dfs(&ctx, 0, out)
        else:
            ctx.stop = 1
    finally:
        free(ctx.A)
        free(ctx.suf)
        free(ctx.sums)
        free(ctx.chosen)
    return out, ("complete", "truncated", "timeout")[ctx.stop]
