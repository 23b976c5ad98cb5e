"""Cubic multilinear GF(2) frame polynomials and their hypergraph view.

A frame polynomial F over the 2n phase-space variables is a sum of distinct
monomials of degree 1..3 with no constant term (so F(0) = 0 always).  Each
monomial's coefficient is an affine function of an n-bit selector b:
coeff(b) = <mask, b> + const (mod 2).  Non-parametric polynomials simply have
mask = 0 everywhere.  The selector parametrizes the family of product frames
sum_i b_i a_ix a_iz, so one propagated polynomial serves all 2^n of them.

Monomials are stored canonically: strictly increasing variable indices packed
into an int key (three 16-bit fields, 0xFFFF marking unused slots).  Two
polynomials are equal iff their term maps are equal.

The text form labels variables a<q><x|z> with 1-based qubit numbers, e.g.
``a1z + a1x*a2z + b[1]*a1x*a1z``; machine-facing interfaces are 0-based.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

_SLOT = 0xFFFF


def _pack(tvars) -> int:
    key = 0
    shift = 0
    for v in tvars:
        key |= v << shift
        shift += 16
    while shift < 48:
        key |= _SLOT << shift
        shift += 16
    return key


def _unpack(key: int):
    out = []
    for shift in (0, 16, 32):
        v = (key >> shift) & 0xFFFF
        if v != _SLOT:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """Vertices and size-1..3 edges mirroring a polynomial's monomials."""

    vertices: frozenset
    edges: frozenset

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)


class FramePolynomial:
    """Multilinear GF(2) polynomial of degree <= 3 with affine-in-b coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("need at least one qubit")
        self.n = n
        self._terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "FramePolynomial":
        return cls(n)

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "FramePolynomial":
        """Build from {tuple-of-vars: coeff} where coeff is 1 or (mask, const)."""
        acc = {}
        for tvars, coeff in terms.items():
            sel = (0, coeff) if isinstance(coeff, int) else tuple(coeff)
            tvars = tuple(sorted(set(tvars)))
            if not 1 <= len(tvars) <= 3:
                raise ValueError("monomials must have 1..3 distinct variables")
            if any(not 0 <= v < 2 * n for v in tvars):
                raise ValueError("variable index out of range")
            _xor_term(acc, _pack(tvars), sel)
        return cls(n, acc)

    @classmethod
    def selector_frame(cls, n: int) -> "FramePolynomial":
        """The parametric initial frame sum_i b_i a_ix a_iz."""
        return cls(n, {_pack((i, n + i)): (1 << i, 0) for i in range(n)})

    @classmethod
    def fixed_frame(cls, n: int, b: int) -> "FramePolynomial":
        """The frame sum_i b_i a_ix a_iz at a fixed selector value b."""
        return cls(n, {_pack((i, n + i)): (0, 1) for i in range(n) if (b >> i) & 1})

    # -- basic protocol -----------------------------------------------

    def terms(self):
        """Iterate (vars-tuple, (mask, const)) in insertion order."""
        for key, sel in self._terms.items():
            yield _unpack(key), sel

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return (
            isinstance(other, FramePolynomial)
            and self.n == other.n
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        return f"FramePolynomial(n={self.n}, {self.to_text()!r})"

    def is_parametric(self) -> bool:
        return any(mask for mask, _ in self._terms.values())

    # -- evaluation and algebra ---------------------------------------

    def evaluate(self, a, b: int = 0) -> int:
        """F(a) at selector b; a is a PhasePoint or packed bits."""
        bits = a if isinstance(a, int) else a.bits
        if not isinstance(a, int) and a.n != self.n:
            raise ValueError("dimension mismatch")
        acc = 0
        for key, (mask, const) in self._terms.items():
            coeff = ((mask & b).bit_count() & 1) ^ const
            if not coeff:
                continue
            prod = 1
            for shift in (0, 16, 32):
                v = (key >> shift) & 0xFFFF
                if v != _SLOT:
                    prod &= bits >> v
            acc ^= prod & 1
        return acc

    def __add__(self, other: "FramePolynomial") -> "FramePolynomial":
        """GF(2) sum: XOR of coefficient selectors per monomial."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        acc = dict(self._terms)
        for key, sel in other._terms.items():
            _xor_term(acc, key, sel)
        return FramePolynomial(self.n, acc)

    def substitute(self, subs: dict) -> "FramePolynomial":
        """Simultaneously replace variables by GF(2) sums of variables.

        ``subs`` maps a variable index to an iterable of variable indices (its
        replacement sum; empty means the variable is set to 0).  Monomials are
        expanded multilinearly (x^2 = x) and XOR-folded back to canonical
        form; selectors ride along unchanged.  This computes F o M where row v
        of the matrix M is the replacement mask of variable v.
        """
        nv = 2 * self.n
        reps = {}
        for v, rep in subs.items():
            rep = tuple(rep)
            if not 0 <= v < nv or any(not 0 <= w < nv for w in rep):
                raise ValueError("substitution index out of range")
            reps[v] = rep
        acc = {}
        for key, sel in self._terms.items():
            tvars = _unpack(key)
            if not any(v in reps for v in tvars):
                _xor_term(acc, key, sel)
                continue
            factors = [reps.get(v, (v,)) for v in tvars]
            if any(len(f) == 0 for f in factors):
                continue
            for choice in itertools.product(*factors):
                _xor_term(acc, _pack(sorted(set(choice))), sel)
        return FramePolynomial(self.n, acc)

    def instantiate(self, b: int) -> "FramePolynomial":
        """Fold the selector argument in: coefficients become plain bits."""
        acc = {}
        for key, (mask, const) in self._terms.items():
            if ((mask & b).bit_count() & 1) ^ const:
                acc[key] = (0, 1)
        return FramePolynomial(self.n, acc)

    def restrict_x_zero(self) -> "FramePolynomial":
        """Drop every monomial containing an x-variable (sets a_x = 0)."""
        n = self.n
        acc = {
            key: sel
            for key, sel in self._terms.items()
            if all(v >= n for v in _unpack(key))
        }
        return FramePolynomial(n, acc)

    def trace_out(self, discard) -> "FramePolynomial":
        """Drop every monomial touching a discarded qubit (its vars set to 0)."""
        discard = set(discard)
        if any(not 0 <= q < self.n for q in discard):
            raise ValueError("qubit index out of range")
        dead = {q for q in discard} | {self.n + q for q in discard}
        acc = {
            key: sel
            for key, sel in self._terms.items()
            if not any(v in dead for v in _unpack(key))
        }
        return FramePolynomial(self.n, acc)

    # -- structure reports --------------------------------------------

    def _live_keys(self, b_mode: str, b: int = 0):
        if b_mode == "any":
            return list(self._terms.keys())
        if b_mode == "fixed":
            return [
                key
                for key, (mask, const) in self._terms.items()
                if ((mask & b).bit_count() & 1) ^ const
            ]
        raise ValueError("b_mode must be 'any' or 'fixed'")

    def hypergraph_view(self, b_mode: str = "any", b: int = 0) -> Hypergraph:
        """One edge per monomial alive under the given selector mode."""
        edges = frozenset(frozenset(_unpack(k)) for k in self._live_keys(b_mode, b))
        return Hypergraph(frozenset(range(2 * self.n)), edges)

    def degree_profile(self, b_mode: str = "any", b: int = 0):
        """(max degree, is-linear flag, sorted list of degree>=2 monomials)."""
        high = sorted(
            _unpack(k) for k in self._live_keys(b_mode, b) if len(_unpack(k)) >= 2
        )
        maxdeg = max((len(t) for t in high), default=0)
        if maxdeg == 0:
            maxdeg = 1 if self._live_keys(b_mode, b) else 0
        return maxdeg, maxdeg <= 1, high

    # -- text form ------------------------------------------------------

    def var_label(self, v: int) -> str:
        q, letter = (v, "x") if v < self.n else (v - self.n, "z")
        return f"a{q + 1}{letter}"

    def to_text(self) -> str:
        """Deterministic text form, terms sorted by (degree, rendered string)."""
        rendered = []
        for tvars, (mask, const) in self.terms():
            labels = sorted(self.var_label(v) for v in tvars)
            body = "*".join(labels)
            parts = [f"b[{i + 1}]" for i in range(self.n) if (mask >> i) & 1]
            if not parts:
                prefix = "" if const else None  # const=0, mask=0 never stored
            elif len(parts) == 1 and not const:
                prefix = parts[0] + "*"
            else:
                inner = "+".join((["1"] if const else []) + parts)
                prefix = f"({inner})*"
            rendered.append((len(tvars), (prefix or "") + body))
        if not rendered:
            return "0"
        return " + ".join(s for _, s in sorted(rendered))

    @classmethod
    def from_text(cls, n: int, text: str) -> "FramePolynomial":
        """Parse the to_text form back into a polynomial."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(n)
        acc = {}
        for chunk in text.split(" + "):
            mask, const, tvars = _parse_term(n, chunk.strip())
            _xor_term(acc, _pack(tuple(sorted(set(tvars)))), (mask, const))
        return cls(n, acc)


_VAR_RE = re.compile(r"^a(\d+)([xz])$")
_SEL_RE = re.compile(r"^b\[(\d+)\]$")


def _parse_term(n: int, chunk: str):
    prefixed = chunk.startswith("(")
    mask, const = 0, 0 if prefixed else 1
    if prefixed:
        close = chunk.index(")")
        for tok in chunk[1:close].split("+"):
            tok = tok.strip()
            if tok == "1":
                const ^= 1
            else:
                m = _SEL_RE.match(tok)
                if not m:
                    raise ValueError(f"bad selector factor {tok!r}")
                mask ^= 1 << (int(m.group(1)) - 1)
        chunk = chunk[close + 1:].lstrip("*")
    tvars = []
    for tok in chunk.split("*"):
        tok = tok.strip()
        m = _SEL_RE.match(tok)
        if m:
            if prefixed:
                raise ValueError("selector factor after affine prefix")
            mask ^= 1 << (int(m.group(1)) - 1)
            const = 0
            continue
        m = _VAR_RE.match(tok)
        if not m:
            raise ValueError(f"bad variable {tok!r}")
        q = int(m.group(1)) - 1
        if not 0 <= q < n:
            raise ValueError(f"qubit {q + 1} out of range for n={n}")
        tvars.append(q if m.group(2) == "x" else n + q)
    if not 1 <= len(tvars) <= 3:
        raise ValueError(f"term {chunk!r} must have 1..3 variables")
    return mask, const, tvars


def _xor_term(acc: dict, key: int, sel) -> None:
    mask, const = sel
    old = acc.get(key)
    if old is None:
        if mask or const:
            acc[key] = (mask, const)
        return
    mask ^= old[0]
    const ^= old[1]
    if mask or const:
        acc[key] = (mask, const)
    else:
        del acc[key]
