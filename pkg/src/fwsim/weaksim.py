"""Weak simulation: sampling measurement outcomes over simulatable qubits.

The sampler pipeline for a circuit with total symplectic map S and a cover
whose reduced frame is linear (k . a_z for every selector b):

    1. draw (u, b) from the input's product distribution,
    2. u' = S(u),
    3. output y_q = u'_qx + k_q(b) on each retained qubit q.

The distribution of these outputs equals the circuit's marginal Born
distribution on the retained set.  Because each output bit is a GF(2)-linear
function of the per-qubit draws, the sampler's exact output law can also be
computed without sampling, as an XOR-convolution of per-qubit contribution
distributions; tests lean on that to avoid Monte-Carlo noise.

When the reduced frame is quadratic (born-mode cover, one fixed frame), full
outcomes are out of reach but values of linear functions of outcomes remain
samplable: the quadratic is brought to the chained canonical form
a_{i1} a_{i2} + c a_{i2} a_{i3} + ... by an invertible change of variables C,
the even chain positions are traced out, and each surviving coordinate i is
reported together with the outcome mask it represents (column i of C).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordCircuit, circuit_symplectic
from .cover import CoverResult
from .frame import FramePolynomial
from .phase_space import SymplecticMap
from .states import WignerDistribution


class InstantiatedFrameNonlinear(RuntimeError):
    """Reduced frame fails to be linear at a sampled selector (internal bug)."""


class UnsupportedMultiFrame(ValueError):
    """Operation requires a single-frame (fully pinned) input distribution."""


@dataclass(frozen=True)
class LinearFrameData:
    """k with reduced frame = sum_q k_q a_qz, bits packed qubit-wise."""

    n: int
    bits: int


def extract_linear_k(reduced: FramePolynomial, b: int = 0) -> LinearFrameData:
    """Read the linear z-coefficients of a reduced frame at selector b."""
    n = reduced.n
    bits = 0
    for tvars, (mask, const) in reduced.terms():
        coeff = ((mask & b).bit_count() & 1) ^ const
        if not coeff:
            continue
        if len(tvars) > 1:
            raise InstantiatedFrameNonlinear(
                f"monomial {tvars} alive at selector {b:#x}"
            )
        v = tvars[0]
        if v < n:
            raise InstantiatedFrameNonlinear(f"x-variable {v} in reduced frame")
        bits |= 1 << (v - n)
    return LinearFrameData(n, bits)


def initial_frame(dist: WignerDistribution) -> FramePolynomial:
    """The input's initial frame: parametric where b is sampled, fixed where pinned."""
    n = dist.n
    terms = {}
    for q in range(n):
        b = dist.pinned_b(q)
        if b is None:
            terms[(q, n + q)] = (1 << q, 0)
        elif b == 1:
            terms[(q, n + q)] = (0, 1)
    return FramePolynomial.from_terms(n, terms)


def format_outcome(code: int, k: int) -> str:
    """Render an outcome code; leftmost character = first reported qubit."""
    return "".join("1" if (code >> i) & 1 else "0" for i in range(k))


class _LinearOutputPlan:
    """Shared machinery: outputs that are GF(2)-linear in the per-qubit draws.

    Output bit i is  xor_q [ xrows[i,q] ux_q ^ zrows[i,q] uz_q ^ brows[i,q] b_q ]
    ^ const[i].  Subclasses fill the row matrices; sampling and the exact
    XOR-convolution law are generic.
    """

    def __init__(self, dist: WignerDistribution, xrows, zrows, brows, consts):
        self.dist = dist
        self.n = dist.n
        self.xrows = xrows
        self.zrows = zrows
        self.brows = brows
        self.consts = consts

    @property
    def width(self) -> int:
        return self.xrows.shape[0]

    def sample_bits(self, rng: np.random.Generator, shots: int) -> np.ndarray:
        """(shots, width) uint8 outcome array."""
        ux, uz, b = self.dist.sample_batch(rng, shots)
        y = (ux @ self.xrows.T) ^ (uz @ self.zrows.T) ^ (b @ self.brows.T)
        y &= 1
        y ^= self.consts[None, :]
        return y.astype(np.uint8)

    def histogram(self, rng: np.random.Generator, shots: int) -> dict:
        y = self.sample_bits(rng, shots)
        weights = 1 << np.arange(self.width, dtype=np.int64)
        codes = y.astype(np.int64) @ weights
        out = {}
        for code, cnt in zip(*np.unique(codes, return_counts=True)):
            out[format_outcome(int(code), self.width)] = int(cnt)
        return out

    def exact_distribution(self) -> np.ndarray:
        """Exact output law over 2^width codes (bit i = i-th reported qubit)."""
        k = self.width
        dist = np.zeros(1 << k)
        base = 0
        for i in range(k):
            base |= int(self.consts[i]) << i
        dist[base] = 1.0
        codes = np.arange(1 << k)
        for q in range(self.n):
            contrib = {}
            for ux, uz, b, w in self.dist.support(q):
                code = 0
                for i in range(k):
                    bit = (
                        (self.xrows[i, q] & ux)
                        ^ (self.zrows[i, q] & uz)
                        ^ (self.brows[i, q] & b)
                    )
                    code |= int(bit) << i
                contrib[code] = contrib.get(code, 0.0) + w
            new = np.zeros_like(dist)
            for code, w in contrib.items():
                new += w * dist[codes ^ code]
            dist = new
        return dist


class SamplerPlan(_LinearOutputPlan):
    """Weak-simulation sampler: precomputes S and the reduced-frame selectors."""

    def __init__(self, circuit: CliffordCircuit, dist: WignerDistribution,
                 cover: CoverResult, smap: SymplecticMap = None):
        if cover.mode != "weak":
            raise ValueError("weak-mode cover required")
        n = circuit.n
        if dist.n != n:
            raise ValueError("dimension mismatch")
        self.retained = cover.retained
        self.smap = circuit_symplectic(circuit) if smap is None else smap
        sel = {}
        for tvars, (mask, const) in cover.reduced_frame.terms():
            if len(tvars) != 1 or tvars[0] < n:
                raise InstantiatedFrameNonlinear(
                    f"weak cover left a non-linear term {tvars}"
                )
            sel[tvars[0] - n] = (mask, const)
        k = len(self.retained)
        xrows = np.zeros((k, n), dtype=np.uint8)
        zrows = np.zeros((k, n), dtype=np.uint8)
        brows = np.zeros((k, n), dtype=np.uint8)
        consts = np.zeros(k, dtype=np.uint8)
        for i, q in enumerate(self.retained):
            row = self.smap.rows[q]  # x-coordinate row of S
            for v in range(n):
                xrows[i, v] = (row >> v) & 1
                zrows[i, v] = (row >> (n + v)) & 1
            mask, const = sel.get(q, (0, 0))
            consts[i] = const
            for v in range(n):
                brows[i, v] = (mask >> v) & 1
        super().__init__(dist, xrows, zrows, brows, consts)


def sample_outcome(circuit, dist, cover, rng) -> str:
    """One marginal outcome string over the retained qubits."""
    bits = SamplerPlan(circuit, dist, cover).sample_bits(rng, 1)[0]
    return "".join("1" if b else "0" for b in bits)


def sample_histogram(circuit, dist, cover, rng, shots: int) -> dict:
    return SamplerPlan(circuit, dist, cover).histogram(rng, shots)


def exact_sampler_distribution(circuit, dist, cover) -> np.ndarray:
    """Exact sampler law over the retained qubits (no Monte-Carlo)."""
    return SamplerPlan(circuit, dist, cover).exact_distribution()


# -- quadratic canonicalization and linear-function sampling --------------


@dataclass(frozen=True)
class QuadraticCanonicalForm:
    """Chain form of a quadratic z-polynomial under a change of variables.

    ``transform`` rows are masks over qubit indices giving the composed map C
    with  original(C a) = canonical(a).  The canonical quadratic part runs
    along consecutive chain pairs; the first pair has coefficient 1 and pair
    m >= 1 has coefficient cbits[m-1].
    """

    n: int
    chain: tuple
    cbits: tuple
    transform: tuple
    canonical: FramePolynomial

    def pair_coefficients(self):
        return (1,) + self.cbits if self.chain else ()


def canonicalize_quadratic(q_poly: FramePolynomial) -> QuadraticCanonicalForm:
    """Bring a non-parametric quadratic over z-variables into chain form.

    Repeatedly peels a head variable h: its partner sum L is compressed onto
    a single fresh variable t by the invertible substitution a_t <- sum(L),
    fixing the canonical pair {h, t}; the walk continues from t, restarting
    on a fresh head (pair coefficient 0) whenever t has no partners left.
    """
    n = q_poly.n
    adj = [0] * n
    lin = 0
    for tvars, (mask, const) in q_poly.terms():
        if mask:
            raise ValueError("canonicalization needs a non-parametric polynomial")
        if len(tvars) == 3:
            raise ValueError("input must have degree <= 2")
        if any(v < n for v in tvars):
            raise ValueError("input must involve z-variables only")
        if len(tvars) == 1:
            lin ^= 1 << (tvars[0] - n)
        else:
            i, j = tvars[0] - n, tvars[1] - n
            adj[i] ^= 1 << j
            adj[j] ^= 1 << i
    ctrans = [1 << q for q in range(n)]
    chain = []
    pair_coeffs = []

    def substitute(t: int, mask: int) -> None:
        """Apply a_t <- sum of mask variables (t in mask) to adj/lin/ctrans."""
        nonlocal lin
        extra = mask & ~(1 << t)
        snapshot = adj[t]
        uu = snapshot
        while uu:
            u = (uu & -uu).bit_length() - 1
            uu &= uu - 1
            ss = extra
            while ss:
                s = (ss & -ss).bit_length() - 1
                ss &= ss - 1
                if s == u:
                    lin ^= 1 << u  # a_u a_u folds to a_u
                else:
                    adj[s] ^= 1 << u
                    adj[u] ^= 1 << s
        if (lin >> t) & 1:
            lin ^= extra
        for v in range(n):
            if (ctrans[v] >> t) & 1:
                ctrans[v] ^= extra

    while any(adj):
        if not chain or adj[chain[-1]] == 0:
            head = min(q for q in range(n) if adj[q])
            if chain:
                pair_coeffs.append(0)
            chain.append(head)
        head = chain[-1]
        alive = adj[head]
        t = (alive & -alive).bit_length() - 1
        if alive != (1 << t):
            substitute(t, alive)
            if adj[head] != (1 << t):
                raise AssertionError("head not exhausted by substitution")
        adj[head] = 0
        adj[t] &= ~(1 << head)
        pair_coeffs.append(1)
        chain.append(t)

    terms = {}
    for m, c in enumerate(pair_coeffs):
        if c:
            terms[(n + chain[m], n + chain[m + 1])] = 1
    ll = lin
    while ll:
        q = (ll & -ll).bit_length() - 1
        terms[(n + q,)] = 1
        ll &= ll - 1
    canonical = FramePolynomial.from_terms(n, terms)
    return QuadraticCanonicalForm(
        n, tuple(chain), tuple(pair_coeffs[1:]), tuple(ctrans), canonical
    )


class LinearFunctionPlan(_LinearOutputPlan):
    """Sampler of linear functions of outcomes under a quadratic reduced frame.

    ``output_qubits`` lists the surviving coordinates; ``outcome_masks[i]``
    is the set of physical qubits whose outcome parity the i-th reported bit
    equals in distribution.
    """

    def __init__(self, circuit: CliffordCircuit, dist: WignerDistribution,
                 cover: CoverResult):
        if cover.mode != "born":
            raise ValueError("born-mode cover required")
        if not dist.is_single_frame:
            raise UnsupportedMultiFrame(
                "linear-function sampling assumes a single fixed frame"
            )
        n = circuit.n
        b = dist.pinned_bits()
        reduced = cover.reduced_frame.instantiate(b)
        self.canon = canonicalize_quadratic(reduced)
        traced = set(self.canon.chain[1::2])
        self.output_qubits = tuple(
            q for q in cover.retained if q not in traced
        )
        k_linear = extract_linear_k(self.canon.canonical.trace_out(traced))
        self.smap = circuit_symplectic(circuit)
        cols = {q: 0 for q in range(n)}
        for j in range(n):
            rr = self.canon.transform[j]
            while rr:
                i = (rr & -rr).bit_length() - 1
                cols[i] |= 1 << j
                rr &= rr - 1
        self.outcome_masks = tuple(cols[q] for q in self.output_qubits)
        k = len(self.output_qubits)
        xrows = np.zeros((k, n), dtype=np.uint8)
        zrows = np.zeros((k, n), dtype=np.uint8)
        brows = np.zeros((k, n), dtype=np.uint8)
        consts = np.zeros(k, dtype=np.uint8)
        for i, q in enumerate(self.output_qubits):
            consts[i] = (k_linear.bits >> q) & 1
            # reported bit i = parity(col_q of C over u'_x) + k_q
            cc = cols[q]
            while cc:
                j = (cc & -cc).bit_length() - 1
                cc &= cc - 1
                row = self.smap.rows[j]
                for v in range(n):
                    xrows[i, v] ^= (row >> v) & 1
                    zrows[i, v] ^= (row >> (n + v)) & 1
        super().__init__(dist, xrows, zrows, brows, consts)


def sample_linear_functions(circuit, dist, cover, rng, shots: int = 1):
    """Sample linear-function values; returns (plan, (shots, width) bits)."""
    plan = LinearFunctionPlan(circuit, dist, cover)
    return plan, plan.sample_bits(rng, shots)
