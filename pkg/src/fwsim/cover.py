"""Greedy hypergraph vertex cover and selection of simulatable qubits.

After a circuit's final frame is restricted to z-variables, its monomials of
degree >= 2 form a hypergraph on the z-vertices.  Covering those edges and
tracing out the covered qubits leaves a reduced frame that is linear (weak
mode) or free of cubic terms (born mode) for every frame selector, which is
exactly what the samplers and estimators require.  Minimum vertex cover is
NP-hard; the standard greedy heuristic (repeatedly delete a highest-degree
vertex, ties broken toward the lowest index) is used instead.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .frame import FramePolynomial, Hypergraph

MODES = ("weak", "born")


@dataclass(frozen=True)
class CoverResult:
    """Covered qubits (in removal order), survivors, and the reduced frame."""

    removed: tuple
    retained: tuple
    reduced_frame: FramePolynomial
    mode: str

    def to_json(self) -> str:
        payload = {
            "removed": list(self.removed),
            "retained": list(self.retained),
            "reduced_frame": self.reduced_frame.to_text(),
            "mode": self.mode,
        }
        return json.dumps(payload, sort_keys=True)


def greedy_cover(h: Hypergraph):
    """Vertex-cover a hypergraph greedily; returns vertices in removal order.

    Each round removes one vertex of maximal order (edge count) together with
    its incident edges, until no edges remain.  Ties pick the lowest vertex.
    """
    incident = {}
    for e in h.edges:
        for v in e:
            incident.setdefault(v, set()).add(e)
    alive = set(h.edges)
    removed = []
    while alive:
        best, best_deg = None, 0
        for v in sorted(incident):
            d = len(incident[v])
            if d > best_deg:
                best, best_deg = v, d
        removed.append(best)
        for e in list(incident.pop(best)):
            alive.discard(e)
            for v in e:
                if v != best and v in incident:
                    incident[v].discard(e)
                    if not incident[v]:
                        del incident[v]
    return removed


def cover_is_valid(h: Hypergraph, removed) -> bool:
    rm = set(removed)
    return all(e & rm for e in h.edges)


def simulatable_set(f_final: FramePolynomial, mode: str) -> CoverResult:
    """Pick the marginal qubit set whose reduced frame meets the mode target.

    Works on the z-restriction of the final frame with any-selector liveness,
    so the result is valid for every initial frame the input may sample.
    Weak mode covers all degree >= 2 monomials (linear target); born mode
    covers only cubic ones (quadratic target).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n = f_final.n
    zpoly = f_final.restrict_x_zero()
    want = (lambda d: d >= 2) if mode == "weak" else (lambda d: d == 3)
    edges = frozenset(
        frozenset(tvars) for tvars, _ in zpoly.terms() if want(len(tvars))
    )
    h = Hypergraph(frozenset(range(n, 2 * n)), edges)
    removed_vars = greedy_cover(h)
    removed = tuple(v - n for v in removed_vars)
    retained = tuple(q for q in range(n) if q not in set(removed))
    reduced = zpoly.trace_out(removed)
    return CoverResult(removed, retained, reduced, mode)
