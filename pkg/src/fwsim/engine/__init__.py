"""Dense frame-propagation engine with compiled and pure-numpy backends.

For the random-circuit scans the frame polynomial is propagated in a dense
packed-bit representation: coefficient tensors c3 (m, m, W), c2 (m, W) and
c1 (W,) of uint64 words, m = 2n variables, W = ceil(m/64), bit k of
c3[i, j] = coefficient of monomial {i, j, k}, kept symmetric under index
permutations with zero "diagonal".  Per-gate updates are a handful of slice
XORs, so cost per gate is O(n^2 / w) words instead of a hash-map rewrite.

Circuits are first compiled to a flat int32 op list (rows [op, a, b, c]):

    0  transvection: substitute x_a <- x_a + x_b
    1  swap the variables a and b
    2  toggle monomial {a}
    3  toggle monomial {a, b}
    4  toggle monomial {a, b, c}

Both backends implement: propagate_ops, z_edges, greedy_cover.  The compiled
backend (fwsim.engine._fastcore, built from Cython) is picked when the
import succeeds; set FWSIM_ENGINE=pure|fast to override.  Results are
bit-identical between backends.
"""
from __future__ import annotations

import os
import sys

import numpy as np

from ..clifford import CliffordCircuit

if sys.byteorder != "little":
    raise ImportError("dense engine assumes a little-endian platform")

TRANS, SWAP, MONO1, MONO2, MONO3 = range(5)


def compile_circuit(circuit: CliffordCircuit) -> np.ndarray:
    """Flatten a circuit into engine ops (substitutions before phase toggles)."""
    n = circuit.n
    rows = []
    for g in circuit.gates:
        k = g.kind
        if k == "H":
            (i,) = g.qubits
            rows += [(SWAP, i, n + i, -1), (MONO2, i, n + i, -1)]
        elif k == "S":
            (i,) = g.qubits
            rows += [(TRANS, n + i, i, -1), (MONO1, i, -1, -1), (MONO2, i, n + i, -1)]
        elif k == "CNOT":
            c, t = g.qubits
            rows += [
                (TRANS, n + c, n + t, -1),
                (TRANS, t, c, -1),
                (MONO3, c, n + c, n + t),
                (MONO3, c, t, n + t),
                (MONO2, c, n + t, -1),
            ]
        elif k == "CZ":
            i, j = g.qubits
            rows += [
                (TRANS, n + i, j, -1),
                (TRANS, n + j, i, -1),
                (MONO3, i, j, n + i),
                (MONO3, i, j, n + j),
            ]
        elif k == "X":
            rows.append((MONO1, n + g.qubits[0], -1, -1))
        elif k == "Z":
            rows.append((MONO1, g.qubits[0], -1, -1))
        else:
            raise AssertionError(k)
    return np.array(rows, dtype=np.int32).reshape(-1, 4)


_BACKENDS = {}


def backend(name: str = None):
    """Resolve an engine backend module ('fast', 'pure', or auto)."""
    if name is None:
        name = os.environ.get("FWSIM_ENGINE", "auto")
    if name in _BACKENDS:
        return _BACKENDS[name]
    if name == "pure":
        from . import _pycore as mod
    elif name == "fast":
        from . import _fastcore as mod  # type: ignore[attr-defined]
    elif name == "auto":
        try:
            from . import _fastcore as mod  # type: ignore[attr-defined]
        except ImportError:
            from . import _pycore as mod
    else:
        raise ValueError(f"unknown engine backend {name!r}")
    _BACKENDS[name] = mod
    return mod


def backend_name(name: str = None) -> str:
    mod = backend(name)
    return "fast" if mod.__name__.endswith("_fastcore") else "pure"


def propagate_dense(circuit: CliffordCircuit, engine=None):
    """Dense zero-frame propagation; returns (c3, c2, c1) packed tensors."""
    mod = backend() if engine is None else engine
    return mod.propagate_ops(circuit.n, compile_circuit(circuit))


def cover_counts(circuit: CliffordCircuit, engine=None):
    """(weak-retained, born-retained) qubit counts for a zero-frame scan."""
    mod = backend() if engine is None else engine
    c3, c2, _ = mod.propagate_ops(circuit.n, compile_circuit(circuit))
    e2, e3 = mod.z_edges(circuit.n, c3, c2)
    n = circuit.n
    weak = mod.greedy_cover(n, e2, e3)
    empty = np.empty((0, 2), dtype=np.int32)
    born = mod.greedy_cover(n, empty, e3)
    return n - len(weak), n - len(born)
