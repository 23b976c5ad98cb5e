"""Random circuit generation: uniform Cliffords and two benchmark layouts.

Uniform one- and two-qubit Cliffords (modulo global phase) are drawn as a
uniform symplectic map times a uniform Pauli word.  The symplectic groups are
tiny (|Sp(2,2)| = 6, |Sp(4,2)| = 720), so a breadth-first closure over the
generator gates precomputes one shortest gate word per group element; a draw
is a table lookup plus Pauli gates.  That makes 6*4 = 24 and 720*16 = 11520
equally likely unitaries, the full single- and two-qubit Clifford groups up
to phase.

Architectures (two-qubit gate count L = round(alpha n ln n), single-qubit
layer excluded from L):

* ring1d: n even, qubits on a ring; one uniform single-qubit Clifford per
  qubit, then brickwork layers of nearest-neighbor pairs, even pairs
  (0,1),(2,3),... alternating with odd pairs (1,2),...,(n-1,0), filled in
  order until the gate budget runs out (possibly mid-layer).
* complete: same single-qubit layer, then L gates each on an independently
  uniform unordered pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clifford import CliffordCircuit, Gate, gate_action

ARCHITECTURES = ("ring1d", "complete")


@dataclass(frozen=True)
class ArchitectureSpec:
    kind: str
    n: int
    alpha: float
    seed: int

    def __post_init__(self):
        if self.kind not in ARCHITECTURES:
            raise ValueError(f"kind must be one of {ARCHITECTURES}")
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.kind == "ring1d" and self.n % 2:
            raise ValueError("ring1d needs even n")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")

    @property
    def gate_count(self) -> int:
        return gate_count(self.n, self.alpha)


def gate_count(n: int, alpha: float) -> int:
    """L = alpha n ln(n), rounded half-up."""
    return int(math.floor(alpha * n * math.log(n) + 0.5))


def _build_closure(n: int, generators):
    """BFS over a symplectic group; one shortest gate word per element."""
    from .phase_space import SymplecticMap

    start = tuple(1 << v for v in range(2 * n))
    table = {start: ()}
    order = [start]
    actions = [(g, gate_action(g, n).smap) for g in generators]
    head = 0
    while head < len(order):
        rows = order[head]
        head += 1
        word = table[rows]
        cur = SymplecticMap(n, rows)
        for g, smap in actions:
            new = (smap @ cur).rows
            if new not in table:
                table[new] = word + (g,)
                order.append(new)
    return [table[rows] for rows in order]


_WORDS_1Q = None
_WORDS_2Q = None


def symplectic_words_1q():
    """Gate words realizing each of the 6 elements of Sp(2,2)."""
    global _WORDS_1Q
    if _WORDS_1Q is None:
        _WORDS_1Q = _build_closure(1, [Gate("H", (0,)), Gate("S", (0,))])
        assert len(_WORDS_1Q) == 6
    return _WORDS_1Q


def symplectic_words_2q():
    """Gate words realizing each of the 720 elements of Sp(4,2)."""
    global _WORDS_2Q
    if _WORDS_2Q is None:
        gens = [
            Gate("H", (0,)),
            Gate("H", (1,)),
            Gate("S", (0,)),
            Gate("S", (1,)),
            Gate("CNOT", (0, 1)),
        ]
        _WORDS_2Q = _build_closure(2, gens)
        assert len(_WORDS_2Q) == 720
    return _WORDS_2Q


def _pauli_word(bits: int, qubits) -> list:
    """X/Z gates realizing the Pauli labelled by (x bits, z bits) pairs."""
    out = []
    k = len(qubits)
    for i, q in enumerate(qubits):
        if (bits >> i) & 1:
            out.append(Gate("X", (q,)))
        if (bits >> (k + i)) & 1:
            out.append(Gate("Z", (q,)))
    return out


def _remap(word, qubits) -> list:
    return [Gate(g.kind, tuple(qubits[q] for q in g.qubits)) for g in word]


def random_single_qubit_clifford(rng: np.random.Generator, qubit: int = 0) -> list:
    """Uniform over the 24-element single-qubit Clifford group mod phase."""
    words = symplectic_words_1q()
    idx = int(rng.integers(len(words)))
    pauli = int(rng.integers(4))
    return _remap(words[idx], (qubit,)) + _pauli_word(pauli, (qubit,))


def random_two_qubit_clifford(rng: np.random.Generator, qubits=(0, 1)) -> list:
    """Uniform over the 11520-element two-qubit Clifford group mod phase."""
    words = symplectic_words_2q()
    idx = int(rng.integers(len(words)))
    pauli = int(rng.integers(16))
    return _remap(words[idx], qubits) + _pauli_word(pauli, qubits)


def _ring_pairs(n: int):
    """Brickwork pair stream: even layer, odd layer, repeating."""
    layer = 0
    while True:
        if layer == 0:
            for i in range(0, n, 2):
                yield (i, (i + 1) % n)
        else:
            for i in range(1, n, 2):
                yield (i, (i + 1) % n)
        layer ^= 1


def build_circuit(spec: ArchitectureSpec) -> CliffordCircuit:
    """Generate the circuit of an architecture point, deterministic in seed."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    gates = []
    for q in range(n):
        gates.extend(random_single_qubit_clifford(rng, q))
    L = spec.gate_count
    if spec.kind == "ring1d":
        pair_stream = _ring_pairs(n)
        for _ in range(L):
            gates.extend(random_two_qubit_clifford(rng, next(pair_stream)))
    else:
        for _ in range(L):
            i = int(rng.integers(n))
            j = int(rng.integers(n - 1))
            if j >= i:
                j += 1
            gates.extend(random_two_qubit_clifford(rng, (i, j)))
    return CliffordCircuit(n, tuple(gates))
