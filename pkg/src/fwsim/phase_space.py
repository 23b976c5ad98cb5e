"""GF(2) phase-space primitives: points, symplectic bit matrices, Pauli labels.

Coordinate convention used everywhere in this package: a system of n qubits
has 2n binary phase-space variables indexed by v in [0, 2n).  Index v < n is
the x-coordinate of qubit v; index v >= n is the z-coordinate of qubit v - n.
Vectors over these variables are packed into Python ints, bit v = variable v,
so word-sized XOR/AND do the GF(2) arithmetic.  Bit matrices are stored as
tuples of packed rows.

A phase-space point u labels the Hermitian Pauli word
T_u = prod_j i^(u_jx u_jz) X_j^(u_jx) Z_j^(u_jz), and the symplectic inner
product [u, a] = u_x . a_z + u_z . a_x (mod 2) tracks their commutation.
"""
from __future__ import annotations

from dataclasses import dataclass


def parity(x: int) -> int:
    """Parity of the set bits of a packed vector."""
    return x.bit_count() & 1


def mask_ones(width: int) -> int:
    return (1 << width) - 1


@dataclass(frozen=True)
class PhasePoint:
    """A point of Z_2^{2n}, bits packed per the module convention."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("phase space needs at least one qubit")
        if self.bits < 0 or self.bits >> (2 * self.n):
            raise ValueError("bits outside [0, 2^{2n})")

    @classmethod
    def from_coords(cls, x_bits, z_bits) -> "PhasePoint":
        n = len(x_bits)
        bits = 0
        for i, b in enumerate(list(x_bits) + list(z_bits)):
            bits |= (b & 1) << i
        return cls(n, bits)

    def coord(self, v: int) -> int:
        return (self.bits >> v) & 1

    @property
    def x_bits(self) -> int:
        return self.bits & mask_ones(self.n)

    @property
    def z_bits(self) -> int:
        return self.bits >> self.n

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return PhasePoint(self.n, self.bits ^ other.bits)


@dataclass(frozen=True)
class SymplecticMap:
    """Invertible 2n x 2n bit matrix with S^T J S = J, rows packed as ints."""

    n: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != 2 * self.n:
            raise ValueError("need 2n rows")

    @classmethod
    def identity(cls, n: int) -> "SymplecticMap":
        return cls(n, tuple(1 << v for v in range(2 * n)))

    def __matmul__(self, other: "SymplecticMap") -> "SymplecticMap":
        """Matrix product self . other over GF(2)."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        rows = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                v = (rr & -rr).bit_length() - 1
                acc ^= other.rows[v]
                rr &= rr - 1
            rows.append(acc)
        return SymplecticMap(self.n, tuple(rows))


@dataclass(frozen=True)
class PauliString:
    """Signed Hermitian Pauli word (-1)^sign T_a."""

    n: int
    a: int
    sign: int = 0

    def coord(self, v: int) -> int:
        return (self.a >> v) & 1


def symplectic_inner(u: PhasePoint, a: PhasePoint) -> int:
    """[u, a] = u_x . a_z + u_z . a_x mod 2."""
    if u.n != a.n:
        raise ValueError("dimension mismatch")
    return parity(u.x_bits & a.z_bits) ^ parity(u.z_bits & a.x_bits)


def symplectic_inner_bits(u_bits: int, a_bits: int, n: int) -> int:
    """Same inner product on raw packed vectors."""
    m = mask_ones(n)
    return parity((u_bits & m) & (a_bits >> n)) ^ parity((u_bits >> n) & (a_bits & m))


def apply_map(s: SymplecticMap, u: PhasePoint) -> PhasePoint:
    """Matrix-vector product over GF(2): u' = S u."""
    if s.n != u.n:
        raise ValueError("dimension mismatch")
    return PhasePoint(u.n, apply_map_bits(s, u.bits))


def apply_map_bits(s: SymplecticMap, bits: int) -> int:
    out = 0
    for v, row in enumerate(s.rows):
        out |= parity(row & bits) << v
    return out


def transpose_rows(rows, m: int):
    cols = [0] * m
    for i, row in enumerate(rows):
        rr = row
        while rr:
            j = (rr & -rr).bit_length() - 1
            cols[j] |= 1 << i
            rr &= rr - 1
    return cols


def invert_rows(rows, m: int):
    """Invert a packed GF(2) matrix by Gaussian elimination."""
    a = list(rows)
    inv = [1 << i for i in range(m)]
    for col in range(m):
        piv = None
        for r in range(col, m):
            if (a[r] >> col) & 1:
                piv = r
                break
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for r in range(m):
            if r != col and ((a[r] >> col) & 1):
                a[r] ^= a[col]
                inv[r] ^= inv[col]
    return inv


def invert_map(s: SymplecticMap) -> SymplecticMap:
    """S^{-1} over GF(2); composition with S is the identity."""
    return SymplecticMap(s.n, tuple(invert_rows(s.rows, 2 * s.n)))


def verify_symplectic(s: SymplecticMap) -> bool:
    """True iff S^T J S = J, i.e. columns of S preserve the inner product."""
    m = 2 * s.n
    cols = transpose_rows(s.rows, m)
    for i in range(m):
        for j in range(i, m):
            want = 1 if abs(i - j) == s.n else 0
            if symplectic_inner_bits(cols[i], cols[j], s.n) != want:
                return False
    return True
