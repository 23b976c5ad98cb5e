"""Pure numpy engine backend; slice XORs on the packed coefficient tensors.

Semantics of one transvection x_v <- x_v + x_w on a multilinear GF(2)
polynomial: every monomial containing v keeps its original term and spawns a
copy with v replaced by w; if w was already present the copy loses a degree
(x^2 = x).  On the symmetric tensors that is, with M the v-slice of c3:

    c3[w]         ^= M'      (M' = M with row/column w cleared)
    c3[:, w, :]   ^= M'
    c3[:, :, w]   ^= M'      (bit plane update on the packed axis)
    c2[w], c2[:, w] ^= row w of M      (degree-3 folds {v,w,k} -> {w,k})
    c2 updates analogous one degree down, then c1.

The numbers-as-bits layout matches fwsim.engine; see there for the op codes.
"""
from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)
_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


def _words(m: int) -> int:
    return (m + 63) // 64


def _unpack(rows: np.ndarray, m: int) -> np.ndarray:
    """Packed (..., W) uint64 -> (..., m) uint8 bits (little-endian words)."""
    flat = np.ascontiguousarray(rows)
    bits = np.unpackbits(flat.view(np.uint8), axis=-1, bitorder="little")
    return bits[..., :m]


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """(..., m) 0/1 -> packed (..., W) uint64."""
    m = bits.shape[-1]
    pad = _words(m) * 64 - m
    if pad:
        bits = np.concatenate(
            [bits, np.zeros(bits.shape[:-1] + (pad,), dtype=bits.dtype)], axis=-1
        )
    return np.packbits(bits.astype(np.uint8), axis=-1, bitorder="little").view(np.uint64)


def _transvection(c3, c2, c1, m: int, v: int, w: int) -> None:
    vw, vb = v >> 6, np.uint64(v & 63)
    ww, wb = w >> 6, np.uint64(w & 63)
    clear_w = _FULL ^ (_ONE << wb)
    clear_v = _FULL ^ (_ONE << vb)

    mslice = c3[v].copy()
    r3 = mslice[w].copy()  # monomials {v, w, k}
    mslice[w, :] = 0
    mslice[:, ww] &= clear_w
    c3[w] ^= mslice
    c3[:, w, :] ^= mslice
    plane = _unpack(mslice, m).astype(np.uint64)
    c3[:, :, ww] ^= plane << wb

    c2[w] ^= r3
    rbits = _unpack(r3[None, :], m)[0].astype(np.uint64)
    c2[:, ww] ^= rbits << wb

    r2 = c2[v].copy()  # monomials {v, j}
    cw = int((r2[ww] >> wb) & _ONE)
    r2[ww] &= clear_w
    r2[vw] &= clear_v
    c2[w] ^= r2
    r2bits = _unpack(r2[None, :], m)[0].astype(np.uint64)
    c2[:, ww] ^= r2bits << wb

    cv = int((c1[vw] >> vb) & _ONE)
    c1[ww] ^= np.uint64(cw ^ cv) << wb


def _swap(c3, c2, c1, m: int, v: int, w: int) -> None:
    vw, vb = v >> 6, np.uint64(v & 63)
    ww, wb = w >> 6, np.uint64(w & 63)
    c3[[v, w]] = c3[[w, v]]
    c3[:, [v, w], :] = c3[:, [w, v], :]
    av = (c3[:, :, vw] >> vb) & _ONE
    aw = (c3[:, :, ww] >> wb) & _ONE
    d = av ^ aw
    c3[:, :, vw] ^= d << vb
    c3[:, :, ww] ^= d << wb
    c2[[v, w]] = c2[[w, v]]
    av = (c2[:, vw] >> vb) & _ONE
    aw = (c2[:, ww] >> wb) & _ONE
    d = av ^ aw
    c2[:, vw] ^= d << vb
    c2[:, ww] ^= d << wb
    av = int((c1[vw] >> vb) & _ONE)
    aw = int((c1[ww] >> wb) & _ONE)
    if av != aw:
        c1[vw] ^= _ONE << vb
        c1[ww] ^= _ONE << wb


def _toggle3(c3, i, j, k) -> None:
    for a, b, c in ((i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
        c3[a, b, c >> 6] ^= _ONE << np.uint64(c & 63)


def _toggle2(c2, i, j) -> None:
    c2[i, j >> 6] ^= _ONE << np.uint64(j & 63)
    c2[j, i >> 6] ^= _ONE << np.uint64(i & 63)


def propagate_ops(n: int, ops: np.ndarray):
    """Run compiled ops from the zero frame; returns (c3, c2, c1)."""
    m = 2 * n
    w = _words(m)
    c3 = np.zeros((m, m, w), dtype=np.uint64)
    c2 = np.zeros((m, w), dtype=np.uint64)
    c1 = np.zeros(w, dtype=np.uint64)
    for op, a, b, c in ops:
        if op == 0:
            _transvection(c3, c2, c1, m, int(a), int(b))
        elif op == 1:
            _swap(c3, c2, c1, m, int(a), int(b))
        elif op == 2:
            c1[a >> 6] ^= _ONE << np.uint64(int(a) & 63)
        elif op == 3:
            _toggle2(c2, int(a), int(b))
        else:
            _toggle3(c3, int(a), int(b), int(c))
    return c3, c2, c1


def z_edges(n: int, c3, c2):
    """Canonical z-monomial edges (qubit ids) of degree 2 and 3."""
    pairs = []
    triples = []
    for zi in range(n):
        gi = n + zi
        row2 = _unpack(c2[gi][None, :], 2 * n)[0][n:]
        js = np.nonzero(row2[zi + 1:])[0]
        if js.size:
            pairs.append(
                np.stack([np.full(js.size, zi, dtype=np.int32),
                          (js + zi + 1).astype(np.int32)], axis=1)
            )
        block = _unpack(c3[gi, n:, :], 2 * n)[:, n:]
        sub = np.triu(block[zi + 1:, zi + 1:], 1)
        idx = np.argwhere(sub)
        if idx.size:
            tri = np.empty((idx.shape[0], 3), dtype=np.int32)
            tri[:, 0] = zi
            tri[:, 1] = idx[:, 0] + zi + 1
            tri[:, 2] = idx[:, 1] + zi + 1
            triples.append(tri)
    e2 = np.concatenate(pairs) if pairs else np.empty((0, 2), dtype=np.int32)
    e3 = np.concatenate(triples) if triples else np.empty((0, 3), dtype=np.int32)
    return e2, e3


def greedy_cover(n_vertices: int, e2: np.ndarray, e3: np.ndarray) -> np.ndarray:
    """Max-degree greedy cover over padded edge arrays; lowest index on ties."""
    ne2, ne3 = len(e2), len(e3)
    edges = np.full((ne2 + ne3, 3), -1, dtype=np.int64)
    if ne2:
        edges[:ne2, :2] = e2
    if ne3:
        edges[ne2:] = e3
    n_edges = len(edges)
    removed = []
    if n_edges == 0:
        return np.array(removed, dtype=np.int32)
    deg = np.zeros(n_vertices, dtype=np.int64)
    flat = edges.ravel()
    valid = flat >= 0
    np.add.at(deg, flat[valid], 1)
    # CSR of edge ids per vertex
    eids = np.repeat(np.arange(n_edges), 3)[valid]
    verts = flat[valid]
    order = np.argsort(verts, kind="stable")
    eids = eids[order]
    starts = np.searchsorted(verts[order], np.arange(n_vertices + 1))
    active = np.ones(n_edges, dtype=bool)
    while True:
        v = int(np.argmax(deg))
        if deg[v] == 0:
            break
        removed.append(v)
        cand = eids[starts[v]:starts[v + 1]]
        alive = cand[active[cand]]
        active[alive] = False
        vs = edges[alive].ravel()
        vs = vs[vs >= 0]
        np.subtract.at(deg, vs, 1)
    return np.array(removed, dtype=np.int32)


# -- test support -----------------------------------------------------------


def tensor_terms(n: int, c3, c2, c1) -> dict:
    """Canonical {vars-tuple: 1} term map of the dense state (for tests)."""
    m = 2 * n
    out = {}
    ll = _unpack(c1[None, :], m)[0]
    for v in np.nonzero(ll)[0]:
        out[(int(v),)] = 1
    b2 = _unpack(c2, m)
    for i, j in np.argwhere(np.triu(b2, 1)):
        out[(int(i), int(j))] = 1
    for i in range(m):
        block = np.triu(_unpack(c3[i], m), 1)
        block[:i + 1, :] = 0
        for j, k in np.argwhere(block):
            out[(int(i), int(j), int(k))] = 1
    return out
