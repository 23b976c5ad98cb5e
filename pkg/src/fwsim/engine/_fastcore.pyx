# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled engine backend; byte-identical results to _pycore, C loops."""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef void _transvection(uint64_t[:, :, ::1] c3, uint64_t[:, ::1] c2,
                        uint64_t[::1] c1, uint64_t[:, ::1] scratch,
                        uint64_t[::1] rowbuf, int m, int W, int v, int w) nogil:
    cdef int j, t, k
    cdef uint64_t word, cw, cv
    cdef int wword = w >> 6, vword = v >> 6
    cdef uint64_t wbit = (<uint64_t>1) << (w & 63)
    cdef uint64_t vbit = (<uint64_t>1) << (v & 63)

    for j in range(m):
        for t in range(W):
            scratch[j, t] = c3[v, j, t]
    for t in range(W):
        rowbuf[t] = scratch[w, t]          # monomials {v, w, k}
        scratch[w, t] = 0
    for j in range(m):
        scratch[j, wword] &= ~wbit
    for j in range(m):
        for t in range(W):
            c3[w, j, t] ^= scratch[j, t]
            c3[j, w, t] ^= scratch[j, t]
    for j in range(m):
        for t in range(W):
            word = scratch[j, t]
            while word:
                k = (t << 6) + _ctz(word)
                word &= word - 1
                c3[j, k, wword] ^= wbit
    # degree-3 folds {v,w,k} -> {w,k}
    for t in range(W):
        c2[w, t] ^= rowbuf[t]
    for t in range(W):
        word = rowbuf[t]
        while word:
            k = (t << 6) + _ctz(word)
            word &= word - 1
            c2[k, wword] ^= wbit
    # degree-2 moves and folds
    for t in range(W):
        rowbuf[t] = c2[v, t]
    cw = (rowbuf[wword] >> (w & 63)) & 1
    rowbuf[wword] &= ~wbit
    rowbuf[vword] &= ~vbit
    for t in range(W):
        c2[w, t] ^= rowbuf[t]
    for t in range(W):
        word = rowbuf[t]
        while word:
            k = (t << 6) + _ctz(word)
            word &= word - 1
            c2[k, wword] ^= wbit
    cv = (c1[vword] >> (v & 63)) & 1
    c1[wword] ^= (cw ^ cv) << (w & 63)


cdef void _swap(uint64_t[:, :, ::1] c3, uint64_t[:, ::1] c2, uint64_t[::1] c1,
                int m, int W, int v, int w) nogil:
    cdef int j, t, k
    cdef uint64_t tmp, b1, b2
    cdef int wword = w >> 6, vword = v >> 6
    cdef int wsh = w & 63, vsh = v & 63
    cdef uint64_t wbit = (<uint64_t>1) << wsh
    cdef uint64_t vbit = (<uint64_t>1) << vsh
    for j in range(m):
        for t in range(W):
            tmp = c3[v, j, t]; c3[v, j, t] = c3[w, j, t]; c3[w, j, t] = tmp
    for j in range(m):
        for t in range(W):
            tmp = c3[j, v, t]; c3[j, v, t] = c3[j, w, t]; c3[j, w, t] = tmp
    for j in range(m):
        for k in range(m):
            b1 = (c3[j, k, vword] >> vsh) & 1
            b2 = (c3[j, k, wword] >> wsh) & 1
            if b1 != b2:
                c3[j, k, vword] ^= vbit
                c3[j, k, wword] ^= wbit
    for t in range(W):
        tmp = c2[v, t]; c2[v, t] = c2[w, t]; c2[w, t] = tmp
    for j in range(m):
        b1 = (c2[j, vword] >> vsh) & 1
        b2 = (c2[j, wword] >> wsh) & 1
        if b1 != b2:
            c2[j, vword] ^= vbit
            c2[j, wword] ^= wbit
    b1 = (c1[vword] >> vsh) & 1
    b2 = (c1[wword] >> wsh) & 1
    if b1 != b2:
        c1[vword] ^= vbit
        c1[wword] ^= wbit


def propagate_ops(int n, ops):
    """Run compiled ops from the zero frame; returns (c3, c2, c1)."""
    cdef int m = 2 * n
    cdef int W = (m + 63) >> 6
    c3_arr = np.zeros((m, m, W), dtype=np.uint64)
    c2_arr = np.zeros((m, W), dtype=np.uint64)
    c1_arr = np.zeros(W, dtype=np.uint64)
    ops_arr = np.ascontiguousarray(ops, dtype=np.int32)
    cdef uint64_t[:, :, ::1] c3 = c3_arr
    cdef uint64_t[:, ::1] c2 = c2_arr
    cdef uint64_t[::1] c1 = c1_arr
    cdef int32_t[:, ::1] o = ops_arr
    scratch_arr = np.empty((m, W), dtype=np.uint64)
    rowbuf_arr = np.empty(W, dtype=np.uint64)
    cdef uint64_t[:, ::1] scratch = scratch_arr
    cdef uint64_t[::1] rowbuf = rowbuf_arr
    cdef Py_ssize_t i
    cdef int op, a, b, c
    cdef int x, y, z
    with nogil:
        for i in range(o.shape[0]):
            op = o[i, 0]; a = o[i, 1]; b = o[i, 2]; c = o[i, 3]
            if op == 0:
                _transvection(c3, c2, c1, scratch, rowbuf, m, W, a, b)
            elif op == 1:
                _swap(c3, c2, c1, m, W, a, b)
            elif op == 2:
                c1[a >> 6] ^= (<uint64_t>1) << (a & 63)
            elif op == 3:
                c2[a, b >> 6] ^= (<uint64_t>1) << (b & 63)
                c2[b, a >> 6] ^= (<uint64_t>1) << (a & 63)
            else:
                # all six permutations of the symmetric degree-3 entry
                c3[a, b, c >> 6] ^= (<uint64_t>1) << (c & 63)
                c3[a, c, b >> 6] ^= (<uint64_t>1) << (b & 63)
                c3[b, a, c >> 6] ^= (<uint64_t>1) << (c & 63)
                c3[b, c, a >> 6] ^= (<uint64_t>1) << (a & 63)
                c3[c, a, b >> 6] ^= (<uint64_t>1) << (b & 63)
                c3[c, b, a >> 6] ^= (<uint64_t>1) << (a & 63)
    return c3_arr, c2_arr, c1_arr


def z_edges(int n, c3_in, c2_in):
    """Canonical z-monomial edges (qubit ids) of degree 2 and 3."""
    c3_arr = np.ascontiguousarray(c3_in, dtype=np.uint64)
    c2_arr = np.ascontiguousarray(c2_in, dtype=np.uint64)
    cdef uint64_t[:, :, ::1] c3 = c3_arr
    cdef uint64_t[:, ::1] c2 = c2_arr
    cdef int m = 2 * n
    cdef int i, j, k, t, g
    cdef int64_t n2 = 0, n3 = 0
    cdef uint64_t word
    # count pass
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if (c2[n + i, (n + j) >> 6] >> ((n + j) & 63)) & 1:
                    n2 += 1
                word = 0
                for k in range(j + 1, n):
                    if (c3[n + i, n + j, (n + k) >> 6] >> ((n + k) & 63)) & 1:
                        n3 += 1
    e2_arr = np.empty((n2, 2), dtype=np.int32)
    e3_arr = np.empty((n3, 3), dtype=np.int32)
    cdef int32_t[:, ::1] e2 = e2_arr
    cdef int32_t[:, ::1] e3 = e3_arr
    cdef int64_t p2 = 0, p3 = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if (c2[n + i, (n + j) >> 6] >> ((n + j) & 63)) & 1:
                    e2[p2, 0] = i; e2[p2, 1] = j
                    p2 += 1
                for k in range(j + 1, n):
                    if (c3[n + i, n + j, (n + k) >> 6] >> ((n + k) & 63)) & 1:
                        e3[p3, 0] = i; e3[p3, 1] = j; e3[p3, 2] = k
                        p3 += 1
    return e2_arr, e3_arr


def greedy_cover(int n_vertices, e2_in, e3_in):
    """Max-degree greedy cover over edge arrays; lowest index on ties."""
    e2_arr = np.ascontiguousarray(e2_in, dtype=np.int32).reshape(-1, 2)
    e3_arr = np.ascontiguousarray(e3_in, dtype=np.int32).reshape(-1, 3)
    cdef int64_t ne2 = e2_arr.shape[0], ne3 = e3_arr.shape[0]
    cdef int64_t n_edges = ne2 + ne3
    if n_edges == 0:
        return np.empty(0, dtype=np.int32)
    edges_arr = np.full((n_edges, 3), -1, dtype=np.int32)
    if ne2:
        edges_arr[:ne2, :2] = e2_arr
    if ne3:
        edges_arr[ne2:] = e3_arr
    cdef int32_t[:, ::1] edges = edges_arr
    deg_arr = np.zeros(n_vertices, dtype=np.int64)
    cdef int64_t[::1] deg = deg_arr
    cdef int64_t e
    cdef int s, vtx
    with nogil:
        for e in range(n_edges):
            for s in range(3):
                vtx = edges[e, s]
                if vtx >= 0:
                    deg[vtx] += 1
    # CSR of edge ids per vertex
    starts_arr = np.zeros(n_vertices + 1, dtype=np.int64)
    cdef int64_t[::1] starts = starts_arr
    cdef int64_t total = 0
    cdef int vv
    for vv in range(n_vertices):
        starts[vv] = total
        total += deg[vv]
    starts[n_vertices] = total
    fill_arr = starts_arr[:n_vertices].copy()
    cdef int64_t[::1] fill = fill_arr
    eids_arr = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] eids = eids_arr
    with nogil:
        for e in range(n_edges):
            for s in range(3):
                vtx = edges[e, s]
                if vtx >= 0:
                    eids[fill[vtx]] = e
                    fill[vtx] += 1
    active_arr = np.ones(n_edges, dtype=np.uint8)
    cdef uint8_t[::1] active = active_arr
    removed_arr = np.empty(n_vertices, dtype=np.int32)
    cdef int32_t[::1] removed = removed_arr
    cdef int n_removed = 0
    cdef int best
    cdef int64_t best_deg, idx
    while True:
        best = 0
        best_deg = 0
        for vv in range(n_vertices):
            if deg[vv] > best_deg:
                best = vv
                best_deg = deg[vv]
        if best_deg == 0:
            break
        removed[n_removed] = best
        n_removed += 1
        for idx in range(starts[best], starts[best + 1]):
            e = eids[idx]
            if active[e]:
                active[e] = 0
                for s in range(3):
                    vtx = edges[e, s]
                    if vtx >= 0:
                        deg[vtx] -= 1
    return removed_arr[:n_removed].copy()
