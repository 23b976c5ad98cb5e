"""Product input states and their nonnegative phase-space decompositions.

Each qubit of a product input is a Bloch vector (r_x, r_y, r_z).  Its joint
distribution over the 8 cells (u_x, u_z, b) - a 2-bit phase point u and one
frame-selector bit b - is stored as a row of 8 weights, indexed

    idx = u_x + 2 u_z + 4 b.

Two representations are available per qubit:

* single-frame: pin b and use the closed-form Wigner values
  W(u) = (1/4) [1 + (-1)^u_z r_x + (-1)^u_x r_z + (-1)^(u_x+u_z+b) r_y],
  which requires all four values to be nonnegative at that b;
* cube: spread over all 8 cells with the always-nonnegative product weights
  w(s) = prod_k (1 + s_k r_k)/2, s in {+-1}^3, mapped onto cells via
  b = (1-s_x s_y s_z)/2, u_z = (1-s_x)/2, u_x = (1-s_z)/2.

Per-qubit rows always sum to 1; sampling a whole register is n independent
categorical draws.  Normalization follows the joint (u, b) convention: the
row sums to 1 over all 8 cells, not per frame.

Input-state file format, one line per qubit: ``bloch r_x r_y r_z`` or the
shortcuts ``zero`` (0,0,1), ``A`` (1,1,1)/sqrt(3), ``equatorial <theta>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin, sqrt

import numpy as np

from .phase_space import PhasePoint

_EPS = 1e-12


class NegativeRepresentation(ValueError):
    """A qubit has no nonnegative table in the requested representation."""

    def __init__(self, qubit: int, message: str):
        super().__init__(message)
        self.qubit = qubit


@dataclass(frozen=True)
class SingleQubitState:
    bloch: tuple

    def __post_init__(self):
        rx, ry, rz = self.bloch
        if rx * rx + ry * ry + rz * rz > 1.0 + _EPS:
            raise ValueError(f"Bloch vector {self.bloch} outside the unit ball")


@dataclass(frozen=True)
class FrameSelector:
    """n selector bits choosing the product frame sum_i b_i a_ix a_iz."""

    n: int
    bits: int


ZERO = SingleQubitState((0.0, 0.0, 1.0))
MAGIC = SingleQubitState((1 / sqrt(3.0), 1 / sqrt(3.0), 1 / sqrt(3.0)))


def equatorial(theta: float) -> SingleQubitState:
    return SingleQubitState((cos(theta), sin(theta), 0.0))


def wigner_single(state: SingleQubitState, b: int, ux: int, uz: int) -> float:
    """Closed-form single-qubit Wigner value at frame bit b and point (ux, uz)."""
    rx, ry, rz = state.bloch
    return 0.25 * (
        1.0
        + (-1.0) ** uz * rx
        + (-1.0) ** ux * rz
        + (-1.0) ** ((ux + uz + b) % 2) * ry
    )


def cube_decompose(state: SingleQubitState) -> np.ndarray:
    """8 nonnegative weights over (u_x, u_z, b) cells from the corner products.

    w(s) = prod_k (1 + s_k r_k)/2 reconstructs the Bloch vector exactly and
    is nonnegative anywhere in the unit ball.
    """
    rx, ry, rz = state.bloch
    table = np.zeros(8)
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                w = (1 + sx * rx) * (1 + sy * ry) * (1 + sz * rz) / 8.0
                b = (1 - sx * sy * sz) // 2
                uz = (1 - sx) // 2
                ux = (1 - sz) // 2
                table[ux + 2 * uz + 4 * b] = w
    return table


def _single_frame_row(state: SingleQubitState, b: int):
    row = np.zeros(8)
    for uz in (0, 1):
        for ux in (0, 1):
            w = wigner_single(state, b, ux, uz)
            if w < -_EPS:
                return None
            row[ux + 2 * uz + 4 * b] = max(w, 0.0)
    return row


class WignerDistribution:
    """Product-form distribution over (phase point, frame selector) pairs."""

    __slots__ = ("n", "tables", "_pinned")

    def __init__(self, tables: np.ndarray, pinned):
        self.n = tables.shape[0]
        self.tables = tables
        self._pinned = tuple(pinned)
        sums = tables.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > 1e-12) or np.any(tables < 0.0):
            raise ValueError("per-qubit tables must be nonnegative and sum to 1")

    @property
    def is_single_frame(self) -> bool:
        return all(b is not None for b in self._pinned)

    def pinned_b(self, qubit: int):
        """The fixed selector bit of a qubit, or None if b is sampled."""
        return self._pinned[qubit]

    def pinned_bits(self) -> int:
        if not self.is_single_frame:
            raise ValueError("distribution is not single-frame")
        return sum(b << i for i, b in enumerate(self._pinned))

    def sample_batch(self, rng: np.random.Generator, shots: int):
        """Draw `shots` registers: (ux, uz, b) uint8 arrays of shape (shots, n)."""
        cum = np.cumsum(self.tables, axis=1)
        cum[:, -1] = 1.0
        r = rng.random((shots, self.n))
        idx = np.empty((shots, self.n), dtype=np.int64)
        for q in range(self.n):
            idx[:, q] = np.searchsorted(cum[q], r[:, q], side="right")
        return (idx & 1).astype(np.uint8), ((idx >> 1) & 1).astype(np.uint8), (idx >> 2).astype(np.uint8)

    def sample(self, rng: np.random.Generator):
        """One draw: a PhasePoint and the sampled FrameSelector."""
        ux, uz, b = self.sample_batch(rng, 1)
        ubits = 0
        bbits = 0
        for q in range(self.n):
            ubits |= int(ux[0, q]) << q
            ubits |= int(uz[0, q]) << (self.n + q)
            bbits |= int(b[0, q]) << q
        return PhasePoint(self.n, ubits), FrameSelector(self.n, bbits)

    def support(self, qubit: int):
        """Nonzero (ux, uz, b, weight) cells of one qubit."""
        out = []
        for idx in range(8):
            w = float(self.tables[qubit, idx])
            if w > 0.0:
                out.append((idx & 1, (idx >> 1) & 1, idx >> 2, w))
        return out


def build_distribution(states, mode: str = "auto") -> WignerDistribution:
    """Assemble per-qubit tables.

    mode 'single' pins each qubit's selector bit (preferring b=0, then b=1)
    and fails with NegativeRepresentation if neither frame is nonnegative;
    'cube' always succeeds; 'auto' falls back to cube per qubit.
    """
    if mode not in ("auto", "single", "cube"):
        raise ValueError(f"unknown mode {mode!r}")
    rows, pinned = [], []
    for q, state in enumerate(states):
        row = None
        if mode in ("single", "auto"):
            for b in (0, 1):
                row = _single_frame_row(state, b)
                if row is not None:
                    pinned.append(b)
                    break
            if row is None and mode == "single":
                raise NegativeRepresentation(
                    q, f"qubit {q} is negative under both fixed frames"
                )
        if row is None:
            row = cube_decompose(state)
            w0, w1 = row[:4].sum(), row[4:].sum()
            pinned.append(0 if w1 == 0.0 else (1 if w0 == 0.0 else None))
        rows.append(row)
    return WignerDistribution(np.array(rows), pinned)


def parse_states(text: str):
    """Parse the input-state file format into a list of SingleQubitState."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "bloch" and len(parts) == 4:
                out.append(SingleQubitState(tuple(float(t) for t in parts[1:])))
            elif parts[0] == "zero" and len(parts) == 1:
                out.append(ZERO)
            elif parts[0] == "A" and len(parts) == 1:
                out.append(MAGIC)
            elif parts[0] == "equatorial" and len(parts) == 2:
                out.append(equatorial(float(parts[1])))
            else:
                raise ValueError("unrecognized state line")
        except ValueError as exc:
            raise ValueError(f"state file line {lineno}: {exc}") from None
    if not out:
        raise ValueError("state file defines no qubits")
    return out


def format_states(states) -> str:
    return "\n".join("bloch %.17g %.17g %.17g" % s.bloch for s in states) + "\n"
