"""Clifford gate set, circuits, gate actions, and frame propagation.

Each supported gate U acts on Pauli labels as U T_a U^dag = (-1)^P(a) T_S(a),
where S is a GF(2) symplectic map and P a polynomial of degree <= 3.  The
(S, P) pairs implemented here:

    H_i     : swap a_ix <-> a_iz                 P = a_iz a_ix
    S_i     : a_iz <- a_ix + a_iz                P = a_iz a_ix
    CNOT_ij : a_iz <- a_iz + a_jz (i control)    P = a_jz a_ix (a_iz + a_jx + 1)
              a_jx <- a_ix + a_jx
    CZ_ij   : a_iz <- a_iz + a_jx                P = a_jx a_ix (a_iz + a_jz)
              a_jz <- a_ix + a_jz
    X_i     : identity                           P = a_iz
    Z_i     : identity                           P = a_ix

"A <- B" gives the new coordinate of S(a) in terms of the old ones.  All six
of these symplectic maps are GF(2) involutions, which propagation code relies
on when it needs S^{-1}.

A circuit is an ordered gate list; the first listed gate is applied to the
state first.  Propagating a frame through the circuit applies, per gate,
F <- F o S^{-1} + P o S^{-1}, which keeps every Wigner value of the evolving
state unchanged (the phase point moving as u <- S u).

Circuit text format: a ``qubits <n>`` header, then one gate per line with
0-based indices (``H 0``, ``CNOT 0 1``), ``#`` starting a comment.
"""
from __future__ import annotations

from dataclasses import dataclass

from .frame import FramePolynomial
from .phase_space import PauliString, SymplecticMap, parity

GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Z": 1, "CNOT": 2, "CZ": 2}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {GATE_ARITY[self.kind]} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("gate qubits must be distinct")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")


def gate(kind: str, *qubits) -> Gate:
    return Gate(kind, tuple(qubits))


@dataclass(frozen=True)
class CliffordCircuit:
    n: int
    gates: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        for g in self.gates:
            if any(q >= self.n for q in g.qubits):
                raise ValueError(f"gate {g} out of range for n={self.n}")

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class GateAction:
    """Symplectic map plus phase polynomial of one gate at width n."""

    smap: SymplecticMap
    phase: FramePolynomial


def _gate_rows(g: Gate, n: int):
    """Rows of the forward symplectic map that differ from the identity."""
    k = g.kind
    if k in ("X", "Z"):
        return {}
    if k == "H":
        (i,) = g.qubits
        return {i: 1 << (n + i), n + i: 1 << i}
    if k == "S":
        (i,) = g.qubits
        return {n + i: (1 << i) | (1 << (n + i))}
    if k == "CNOT":
        c, t = g.qubits
        return {n + c: (1 << (n + c)) | (1 << (n + t)), t: (1 << c) | (1 << t)}
    if k == "CZ":
        i, j = g.qubits
        return {n + i: (1 << (n + i)) | (1 << j), n + j: (1 << (n + j)) | (1 << i)}
    raise AssertionError(k)


def _gate_phase_terms(g: Gate, n: int):
    k = g.kind
    if k in ("H", "S"):
        (i,) = g.qubits
        return [(i, n + i)]
    if k == "CNOT":
        c, t = g.qubits
        return [(n + t, c, n + c), (n + t, c, t), (n + t, c)]
    if k == "CZ":
        i, j = g.qubits
        return [(i, j, n + i), (i, j, n + j)]
    if k == "X":
        return [(n + g.qubits[0],)]
    return [(g.qubits[0],)]


def gate_action(g: Gate, n: int) -> GateAction:
    """The (S, P) pair of a gate embedded at width n."""
    if any(q >= n for q in g.qubits):
        raise ValueError("qubit index out of range")
    rows = [1 << v for v in range(2 * n)]
    for v, row in _gate_rows(g, n).items():
        rows[v] = row
    phase = FramePolynomial.from_terms(n, {t: 1 for t in _gate_phase_terms(g, n)})
    return GateAction(SymplecticMap(n, tuple(rows)), phase)


def _gate_subs(g: Gate, n: int) -> dict:
    """Substitution F o S^{-1}: variable v is replaced by row v of S^{-1}.

    Every gate map here is an involution, so S^{-1} = S.
    """
    subs = {}
    for v, row in _gate_rows(g, n).items():
        rep = []
        r = row
        while r:
            rep.append((r & -r).bit_length() - 1)
            r &= r - 1
        subs[v] = rep
    return subs


def _compose_gate_rows(rows: list, g: Gate, n: int) -> None:
    """rows <- S_g . rows, exploiting that S_g touches at most two rows."""
    touched = _gate_rows(g, n)
    old = {v: rows[v] for v in touched}
    for v, gr in touched.items():
        acc = 0
        r = gr
        while r:
            j = (r & -r).bit_length() - 1
            acc ^= old.get(j, rows[j])
            r &= r - 1
        rows[v] = acc


def circuit_symplectic(c: CliffordCircuit) -> SymplecticMap:
    """Left-to-right composition of per-gate maps (first gate innermost)."""
    rows = [1 << v for v in range(2 * c.n)]
    for g in c.gates:
        _compose_gate_rows(rows, g, c.n)
    return SymplecticMap(c.n, tuple(rows))


def propagate_frame(c: CliffordCircuit, f0: FramePolynomial):
    """Push a frame through the circuit; returns (final frame, total S).

    Parametric selector coefficients ride through untouched, so one pass
    covers every initial product frame at once.
    """
    if f0.n != c.n:
        raise ValueError("dimension mismatch")
    f = f0
    rows = [1 << v for v in range(2 * c.n)]
    for g in c.gates:
        subs = _gate_subs(g, c.n)
        phase = FramePolynomial.from_terms(c.n, {t: 1 for t in _gate_phase_terms(g, c.n)})
        f = f.substitute(subs) + phase.substitute(subs)
        _compose_gate_rows(rows, g, c.n)
    return f, SymplecticMap(c.n, tuple(rows))


def conjugate_pauli(c: CliffordCircuit, p: PauliString, direction: str = "forward") -> PauliString:
    """Exact signed conjugation U p U^dag (forward) or U^dag p U (backward)."""
    if p.n != c.n:
        raise ValueError("dimension mismatch")
    n, a, sign = c.n, p.a, p.sign
    if direction == "forward":
        for g in c.gates:
            sign ^= _phase_at(g, n, a)
            a = _smap_at(g, n, a)
    elif direction == "backward":
        # U^dag T_a U = (-1)^{P(S^{-1} a)} T_{S^{-1} a}; maps are involutions
        for g in reversed(c.gates):
            a = _smap_at(g, n, a)
            sign ^= _phase_at(g, n, a)
    else:
        raise ValueError("direction must be 'forward' or 'backward'")
    return PauliString(n, a, sign)


def _smap_at(g: Gate, n: int, a: int) -> int:
    out = a
    for v, row in _gate_rows(g, n).items():
        bit = parity(row & a)
        out = (out & ~(1 << v)) | (bit << v)
    return out


def _phase_at(g: Gate, n: int, a: int) -> int:
    acc = 0
    for tvars in _gate_phase_terms(g, n):
        prod = 1
        for v in tvars:
            prod &= a >> v
        acc ^= prod & 1
    return acc


# -- circuit text format ------------------------------------------------


def parse_circuit(text: str) -> CliffordCircuit:
    """Parse the one-gate-per-line text format."""
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "qubits":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate qubits header")
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise ValueError(f"line {lineno}: bad qubits header")
            n = int(parts[1])
            continue
        if n is None:
            raise ValueError(f"line {lineno}: missing 'qubits <n>' header")
        kind = parts[0]
        if kind not in GATE_ARITY:
            raise ValueError(f"line {lineno}: unknown gate {kind!r}")
        try:
            qubits = tuple(int(tok) for tok in parts[1:])
        except ValueError:
            raise ValueError(f"line {lineno}: bad qubit index") from None
        if len(qubits) != GATE_ARITY[kind]:
            raise ValueError(f"line {lineno}: {kind} takes {GATE_ARITY[kind]} index(es)")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"line {lineno}: repeated qubit index")
        if any(q < 0 or q >= n for q in qubits):
            raise ValueError(f"line {lineno}: qubit index out of range")
        gates.append(Gate(kind, qubits))
    if n is None:
        raise ValueError("missing 'qubits <n>' header")
    return CliffordCircuit(n, tuple(gates))


def format_circuit(c: CliffordCircuit) -> str:
    lines = [f"qubits {c.n}"]
    lines += [" ".join([g.kind] + [str(q) for q in g.qubits]) for g in c.gates]
    return "\n".join(lines) + "\n"
