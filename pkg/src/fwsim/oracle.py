"""Dense-matrix ground truth for small systems.

Everything here is exact complex linear algebra used to cross-check the
GF(2) fast paths: Pauli words, phase point operators, Wigner tables, circuit
unitaries, Born/marginal distributions, and collision probabilities.  The
quantities involved are sums of +-2^-m terms, so double precision comparisons
at 1e-10 are meaningful.  None of this is ever on the simulation fast path.

Size guards: states and unitaries up to n = 10; anything summing over all
4^n Pauli labels up to n = 6.
"""
from __future__ import annotations

import numpy as np

from .clifford import CliffordCircuit, Gate
from .frame import FramePolynomial

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CZ = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)

GATE_MATRICES = {"H": _H, "S": _S, "X": _X, "Z": _Z, "CNOT": _CNOT, "CZ": _CZ}

MAX_DENSE_QUBITS = 10
MAX_PAULI_SUM_QUBITS = 6


def _check_n(n: int, limit: int) -> None:
    if n > limit:
        raise ValueError(f"n={n} too large for the dense oracle (limit {limit})")


def pauli_matrix(n: int, a: int) -> np.ndarray:
    """Dense T_a = prod_j i^(a_jx a_jz) X^a_jx Z^a_jz."""
    _check_n(n, MAX_DENSE_QUBITS)
    m = np.array([[1.0 + 0j]])
    for q in range(n):
        ax, az = (a >> q) & 1, (a >> (n + q)) & 1
        s = (1j) ** (ax * az) * (_X if ax else _I) @ (_Z if az else _I)
        m = np.kron(m, s)
    return m


def _parity_table(nbits: int) -> np.ndarray:
    t = np.zeros(1 << nbits, dtype=np.int8)
    for i in range(1, 1 << nbits):
        t[i] = t[i >> 1] ^ (i & 1)
    return t


def _inner_sign_matrix(n: int) -> np.ndarray:
    """signs[u, a] = (-1)^[u, a] for all packed points."""
    m = 1 << (2 * n)
    par = _parity_table(2 * n)
    u = np.arange(m)[:, None]
    a = np.arange(m)[None, :]
    mask = (1 << n) - 1
    inner = par[(u & mask) & (a >> n)] ^ par[(u >> n) & (a & mask)]
    return 1.0 - 2.0 * inner


def frame_values(f: FramePolynomial, b: int = 0) -> np.ndarray:
    """F(a) over all 4^n packed points a."""
    _check_n(f.n, MAX_PAULI_SUM_QUBITS)
    m = 1 << (2 * f.n)
    out = np.zeros(m, dtype=np.int8)
    for a in range(m):
        out[a] = f.evaluate(a, b)
    return out


def phase_point_matrix(f: FramePolynomial, u: int, b: int, n: int) -> np.ndarray:
    """A^F(u) = 2^-n sum_a (-1)^([u,a] + F(a)) T_a, literal sum."""
    _check_n(n, MAX_PAULI_SUM_QUBITS)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    fv = frame_values(f, b)
    for a in range(1 << (2 * n)):
        sip = _sym_inner(u, a, n)
        out += (-1.0) ** ((sip + fv[a]) % 2) * pauli_matrix(n, a)
    return out / dim


def _sym_inner(u: int, a: int, n: int) -> int:
    mask = (1 << n) - 1
    return (((u & mask) & (a >> n)).bit_count() + ((u >> n) & (a & mask)).bit_count()) & 1


def wigner_table(rho: np.ndarray, f: FramePolynomial, b: int = 0) -> np.ndarray:
    """W(u) = Tr[rho A^F(u)] / 2^n over all 4^n points, as real values."""
    n = f.n
    _check_n(n, MAX_PAULI_SUM_QUBITS)
    m = 1 << (2 * n)
    coeff = np.empty(m, dtype=complex)
    for a in range(m):
        coeff[a] = np.sum(rho.T * pauli_matrix(n, a))
    signs = _inner_sign_matrix(n) * (1.0 - 2.0 * frame_values(f, b))[None, :]
    return np.real(signs @ coeff) / (4.0 ** n)


def product_density(blochs) -> np.ndarray:
    """Density matrix of a product of single-qubit Bloch vectors."""
    _check_n(len(blochs), MAX_DENSE_QUBITS)
    rho = np.array([[1.0 + 0j]])
    for rx, ry, rz in blochs:
        rho = np.kron(rho, 0.5 * (_I + rx * _X + ry * _Y + rz * _Z))
    return rho


def _apply_gate_cols(mat: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Left-multiply the full 2^n gate unitary into a (2^n, B) array."""
    b = mat.shape[1]
    t = mat.reshape((2,) * n + (b,))
    u = GATE_MATRICES[g.kind]
    if len(g.qubits) == 1:
        (q,) = g.qubits
        t = np.tensordot(u, t, axes=([1], [q]))
        t = np.moveaxis(t, 0, q)
    else:
        qi, qj = g.qubits
        t = np.tensordot(u.reshape(2, 2, 2, 2), t, axes=([2, 3], [qi, qj]))
        t = np.moveaxis(t, (0, 1), (qi, qj))
    return t.reshape(1 << n, b)


def circuit_unitary(c: CliffordCircuit) -> np.ndarray:
    """Full unitary, first listed gate applied first."""
    _check_n(c.n, MAX_DENSE_QUBITS)
    u = np.eye(1 << c.n, dtype=complex)
    for g in c.gates:
        u = _apply_gate_cols(u, g, c.n)
    return u


def output_density(c: CliffordCircuit, blochs) -> np.ndarray:
    u = circuit_unitary(c)
    return u @ product_density(blochs) @ u.conj().T


def exact_born(c: CliffordCircuit, blochs, subset=None) -> np.ndarray:
    """Marginal Born distribution over a sorted qubit subset.

    Returns an array of length 2^k; bit i of the index is the outcome of the
    i-th smallest qubit in the subset.
    """
    n = c.n
    subset = sorted(range(n) if subset is None else subset)
    diag = np.real(np.diag(output_density(c, blochs)))
    t = diag.reshape((2,) * n)
    keep = set(subset)
    t = t.sum(axis=tuple(q for q in range(n) if q not in keep)) if len(keep) < n else t
    # tensor axes are qubit-ordered with qubit 0 outermost; flatten so that
    # bit i of the flat index is subset[i]'s outcome
    k = len(subset)
    t = np.transpose(t, axes=tuple(reversed(range(k))))
    return t.reshape(-1)


def collision_probability(c: CliffordCircuit, blochs, subset=None) -> float:
    """Z = sum_y p(y)^2 over the marginal distribution."""
    p = exact_born(c, blochs, subset)
    return float(np.sum(p * p))


def pauli_expectation(blochs, a: int, sign: int = 0) -> float:
    """Tr[rho (-1)^sign T_a] for a product state; real by Hermiticity."""
    n = len(blochs)
    val = -1.0 if sign else 1.0
    for q, (rx, ry, rz) in enumerate(blochs):
        ax, az = (a >> q) & 1, (a >> (n + q)) & 1
        if ax and az:
            val *= ry
        elif ax:
            val *= rx
        elif az:
            val *= rz
    return val
