"""Born-probability estimators and GF(2) quadratic Gauss sums.

Two unbiased estimators of a marginal outcome probability p(y') on a qubit
subset I:

* pauli: draw a_z uniformly on I, back-propagate the Pauli word T_(0,a_z)
  through the circuit, and average (-1)^(a_z . y') Tr[rho T'].  Works for any
  circuit; per-outcome variance is Z - p(y')^2 with Z the collision
  probability of the marginal distribution.
* wigner: draw a phase point and frame selector from the input distribution,
  push the point through the circuit, and evaluate the closed-form average
  2^-k sum_az (-1)^((u'_x + y') . a_z + F'(0, a_z)) of the reduced frame.
  Needs a born-mode cover (no cubic terms in the reduced frame); the average
  is a quadratic Gauss sum, evaluated exactly in O(k^3) by variable
  elimination, never by enumeration.  Averaged over outcomes its variance is
  (1 - Z) / 2^k, which never exceeds the pauli counterpart's (1 - 2^-k) Z.

Estimator values live in [-1, 1] and are averaged as-is (clamping would bias
the mean); running moments use Welford updates.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .clifford import CliffordCircuit, circuit_symplectic, conjugate_pauli
from .cover import CoverResult
from .frame import FramePolynomial
from .phase_space import PauliString, parity
from .states import WignerDistribution


class NeedMoreTracing(ValueError):
    """Reduced frame still has cubic terms; trace out more qubits first."""


@dataclass(frozen=True)
class EstimateReport:
    """Point estimate of one marginal probability with sampling diagnostics."""

    method: str
    target: str
    subset: tuple
    estimate: float
    samples: int
    variance: float
    stderr: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "method": self.method,
                "target": self.target,
                "subset": list(self.subset),
                "estimate": self.estimate,
                "samples": self.samples,
                "variance": self.variance,
                "stderr": self.stderr,
            },
            sort_keys=True,
        )


# -- quadratic Gauss sums -------------------------------------------------


def _gauss_sum(rows, lin: int, nv: int) -> float:
    """2^-nv sum_a (-1)^Q(a) for Q given by adjacency masks + linear mask.

    Eliminates variables pairwise: summing over a_i with quadratic neighbor
    form L forces the parity constraint L = lin_i on the rest, which is
    solved for one pivot and substituted back.  Each elimination contributes
    a factor 1/2; a variable appearing only linearly makes the sum vanish.
    """
    rows = list(rows)
    active = (1 << nv) - 1
    sign = 1
    halvings = 0
    while active:
        i = (active & -active).bit_length() - 1
        neigh = rows[i] & active & ~(1 << i)
        if neigh == 0:
            if (lin >> i) & 1:
                return 0.0
            active &= ~(1 << i)
            continue
        c = (lin >> i) & 1
        j = (neigh & -neigh).bit_length() - 1
        rest = neigh & ~(1 << j)
        active &= ~((1 << i) | (1 << j))
        halvings += 1
        partners = rows[j] & active
        uu = partners
        while uu:
            u = (uu & -uu).bit_length() - 1
            uu &= uu - 1
            if c:
                lin ^= 1 << u
            tt = rest
            while tt:
                t = (tt & -tt).bit_length() - 1
                tt &= tt - 1
                if t == u:
                    lin ^= 1 << u
                else:
                    rows[u] ^= 1 << t
                    rows[t] ^= 1 << u
        if (lin >> j) & 1:
            if c:
                sign = -sign
            lin ^= rest
        lin &= active
    return sign * 2.0 ** (-halvings)


def gauss_sum_quadratic(q_poly: FramePolynomial, b: int = 0) -> float:
    """Normalized exponential sum of a quadratic GF(2) polynomial.

    Returns 2^-k sum over assignments of (-1)^Q, a value in {0} union
    {+-2^-m}; variables absent from Q average out to a factor 1.
    """
    poly = q_poly.instantiate(b) if q_poly.is_parametric() else q_poly
    var_ids = sorted({v for tvars, _ in poly.terms() for v in tvars})
    local = {v: i for i, v in enumerate(var_ids)}
    rows = [0] * len(var_ids)
    lin = 0
    for tvars, _ in poly.terms():
        if len(tvars) == 3:
            raise ValueError("gauss_sum_quadratic needs degree <= 2")
        if len(tvars) == 1:
            lin ^= 1 << local[tvars[0]]
        else:
            i, j = local[tvars[0]], local[tvars[1]]
            rows[i] ^= 1 << j
            rows[j] ^= 1 << i
    return _gauss_sum(rows, lin, len(var_ids))


# -- wigner estimator ------------------------------------------------------


class WignerEstimatorPlan:
    """Precomputed per-circuit state for the phase-space estimator."""

    def __init__(self, circuit: CliffordCircuit, dist: WignerDistribution,
                 cover: CoverResult):
        if cover.mode != "born":
            raise ValueError("born-mode cover required")
        n = circuit.n
        if dist.n != n:
            raise ValueError("dimension mismatch")
        self.n = n
        self.dist = dist
        self.retained = cover.retained
        self.k = len(self.retained)
        local = {q: i for i, q in enumerate(self.retained)}
        self.quad = []
        self.lin = []
        for tvars, (mask, const) in cover.reduced_frame.terms():
            if len(tvars) == 3:
                raise NeedMoreTracing(
                    "reduced frame has cubic terms; born cover should prevent this"
                )
            qs = [local[v - n] for v in tvars]
            if len(qs) == 1:
                self.lin.append((qs[0], mask, const))
            else:
                self.quad.append((qs[0], qs[1], mask, const))
        self.smap = circuit_symplectic(circuit)
        self.xrow = [self.smap.rows[q] for q in self.retained]

    def _uprime_code(self, ubits: int) -> int:
        code = 0
        for i, row in enumerate(self.xrow):
            code |= parity(row & ubits) << i
        return code

    def value(self, ubits: int, bbits: int, y_code: int) -> float:
        """One estimator evaluation at a sampled (u, b)."""
        rows = [0] * self.k
        lin = 0
        for i, j, mask, const in self.quad:
            if ((mask & bbits).bit_count() & 1) ^ const:
                rows[i] ^= 1 << j
                rows[j] ^= 1 << i
        for i, mask, const in self.lin:
            if ((mask & bbits).bit_count() & 1) ^ const:
                lin ^= 1 << i
        lin ^= self._uprime_code(ubits) ^ y_code
        return _gauss_sum(rows, lin, self.k)

    def estimate(self, y_code: int, shots: int, rng: np.random.Generator):
        count, mean, m2 = 0, 0.0, 0.0
        for _ in range(shots):
            u, f = self.dist.sample(rng)
            val = self.value(u.bits, f.bits, y_code)
            count += 1
            delta = val - mean
            mean += delta / count
            m2 += delta * (val - mean)
        return _report("wigner", y_code, self.retained, count, mean, m2)

    def exact_moments(self, y_code: int):
        """(E[estimator], E[estimator^2]) by enumerating the input support."""
        supports = [self.dist.support(q) for q in range(self.n)]
        e1 = e2 = 0.0
        for combo in itertools.product(*supports):
            w = 1.0
            ubits = bbits = 0
            for q, (ux, uz, b, wq) in enumerate(combo):
                w *= wq
                ubits |= ux << q
                ubits |= uz << (self.n + q)
                bbits |= b << q
            if w == 0.0:
                continue
            val = self.value(ubits, bbits, y_code)
            e1 += w * val
            e2 += w * val * val
        return e1, e2


def wigner_estimate(circuit, dist, cover, target: str, shots: int,
                    rng: np.random.Generator) -> EstimateReport:
    plan = WignerEstimatorPlan(circuit, dist, cover)
    return plan.estimate(_parse_target(target, plan.k), shots, rng)


# -- pauli estimator -------------------------------------------------------


class PauliEstimatorPlan:
    """Uniform Pauli sampling with Heisenberg back-propagation."""

    def __init__(self, circuit: CliffordCircuit, blochs, subset):
        self.circuit = circuit
        self.n = circuit.n
        self.blochs = list(blochs)
        self.subset = tuple(sorted(subset))
        self.k = len(self.subset)

    def value(self, az_code: int, y_code: int) -> float:
        a = 0
        for i, q in enumerate(self.subset):
            a |= ((az_code >> i) & 1) << (self.n + q)
        back = conjugate_pauli(self.circuit, PauliString(self.n, a), "backward")
        val = oracle.pauli_expectation(self.blochs, back.a, back.sign)
        return -val if parity(az_code & y_code) else val

    def estimate(self, y_code: int, shots: int, rng: np.random.Generator):
        count, mean, m2 = 0, 0.0, 0.0
        for _ in range(shots):
            bits = rng.integers(0, 2, size=self.k)
            az = 0
            for i, bit in enumerate(bits):
                az |= int(bit) << i
            val = self.value(az, y_code)
            count += 1
            delta = val - mean
            mean += delta / count
            m2 += delta * (val - mean)
        return _report("pauli", y_code, self.subset, count, mean, m2)

    def exact_moments(self, y_code: int):
        vals = [self.value(az, y_code) for az in range(1 << self.k)]
        e1 = sum(vals) / (1 << self.k)
        e2 = sum(v * v for v in vals) / (1 << self.k)
        return e1, e2


def pauli_estimate(circuit, blochs, subset, target: str, shots: int,
                   rng: np.random.Generator) -> EstimateReport:
    plan = PauliEstimatorPlan(circuit, blochs, subset)
    return plan.estimate(_parse_target(target, plan.k), shots, rng)


# -- variance diagnostics ---------------------------------------------------


def variance_report(circuit, blochs, subset) -> dict:
    """Oracle-exact variance table for both estimators on a marginal subset."""
    subset = tuple(sorted(subset))
    k = len(subset)
    p = oracle.exact_born(circuit, blochs, subset)
    z = float(np.sum(p * p))
    var_pauli = z - p * p
    return {
        "subset": subset,
        "p": p,
        "collision": z,
        "var_pauli": var_pauli,
        "delta_pauli": (1.0 - 2.0 ** (-k)) * z,
        "delta_wigner": (1.0 - z) / 2 ** k,
    }


def _parse_target(target: str, k: int) -> int:
    if len(target) != k or any(ch not in "01" for ch in target):
        raise ValueError(f"target must be a {k}-bit string, got {target!r}")
    return sum(1 << i for i, ch in enumerate(target) if ch == "1")


def _report(method, y_code, subset, count, mean, m2) -> EstimateReport:
    from .weaksim import format_outcome

    var = m2 / (count - 1) if count > 1 else 0.0
    return EstimateReport(
        method=method,
        target=format_outcome(y_code, len(subset)),
        subset=tuple(subset),
        estimate=mean,
        samples=count,
        variance=var,
        stderr=math.sqrt(var / count) if count else 0.0,
    )
