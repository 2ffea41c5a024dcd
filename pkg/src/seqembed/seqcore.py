"""Lazy bounded sequences: elements of the sup-norm sequence space.

A sequence is a pure coordinate oracle (1-based) together with a
certified upper bound on its sup norm and a structural tag. Nothing
infinite is ever materialized; statements about limits are replaced by
finite-window statistics with explicit tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import EmptyWindow, IndexZero, LengthMismatch

#: absolute tolerance for equality assertions unless stated otherwise
DEFAULT_TOL = 1e-9
#: relative tolerance at which oracle-level linearity is considered exact
LINEARITY_RTOL = 1e-12


# ---------------------------------------------------------------------------
# structural tags

@dataclass(frozen=True)
class ExplicitList:
    """Finite prefix followed by a constant tail."""
    prefix: tuple
    tail: float


@dataclass(frozen=True)
class EventuallyConstant:
    """Constant `value` from index `start` on; `head` fills 1..start-1."""
    value: float
    start: int = 1
    head: tuple = ()


@dataclass(frozen=True)
class ExplicitLimit:
    """Converges to `limit`; coordinate n is limit + rate / n."""
    limit: float
    rate: float


@dataclass(frozen=True)
class Periodic:
    pattern: tuple


@dataclass(frozen=True)
class FunctionalImage:
    """Image of a space element under a functional-placement embedding."""
    space: object
    element: object
    scheme: object = None


@dataclass(frozen=True)
class LinearCombo:
    coeffs: tuple
    children: tuple


@dataclass(frozen=True)
class Opaque:
    pass


@dataclass(frozen=True)
class BoundedSeq:
    """A lazily evaluated bounded sequence.

    `oracle` must be pure: repeated evaluation at the same index returns
    bit-identical scalars. `bound` is a certified sup-norm upper bound.
    `block` (optional) evaluates coordinates lo..hi inclusive as an
    array; it must agree with `oracle` to well below DEFAULT_TOL and
    exists only as a fast path for window statistics.
    """
    oracle: Callable[[int], float]
    bound: float
    tag: object = Opaque()
    block: Optional[Callable[[int, int], np.ndarray]] = None

    def coordinates(self, lo: int, hi: int) -> np.ndarray:
        if lo < 1:
            raise IndexZero(f"window starts at {lo}")
        if self.block is not None:
            return np.asarray(self.block(lo, hi), dtype=float)
        return np.array([self.oracle(n) for n in range(lo, hi + 1)], dtype=float)


@dataclass(frozen=True)
class ClusterEstimate:
    """Finite-truncation stand-in for a subsequential limit."""
    indices: tuple
    value: float
    spread: float


# ---------------------------------------------------------------------------
# constructors

def eventually_constant(value: float, start: int = 1, head: Sequence[float] = ()) -> BoundedSeq:
    head = tuple(float(v) for v in head)
    if len(head) != start - 1:
        raise LengthMismatch(f"head length {len(head)} != start-1 = {start - 1}")
    value = float(value)
    bound = max([abs(value)] + [abs(v) for v in head])

    def oracle(n: int) -> float:
        if n < 1:
            raise IndexZero(f"index {n} < 1")
        return head[n - 1] if n < start else value

    return BoundedSeq(oracle, bound, EventuallyConstant(value, start, head))


def explicit_list(prefix: Sequence[float], tail: float) -> BoundedSeq:
    prefix = tuple(float(v) for v in prefix)
    tail = float(tail)
    bound = max([abs(tail)] + [abs(v) for v in prefix])

    def oracle(n: int) -> float:
        if n < 1:
            raise IndexZero(f"index {n} < 1")
        return prefix[n - 1] if n <= len(prefix) else tail

    return BoundedSeq(oracle, bound, ExplicitList(prefix, tail))


def explicit_limit(limit: float, rate: float) -> BoundedSeq:
    limit = float(limit)
    rate = float(rate)

    def oracle(n: int) -> float:
        if n < 1:
            raise IndexZero(f"index {n} < 1")
        return limit + rate / n

    return BoundedSeq(oracle, abs(limit) + abs(rate), ExplicitLimit(limit, rate))


def periodic(pattern: Sequence[float]) -> BoundedSeq:
    pattern = tuple(float(v) for v in pattern)
    if not pattern:
        raise LengthMismatch("empty pattern")
    m = len(pattern)

    def oracle(n: int) -> float:
        if n < 1:
            raise IndexZero(f"index {n} < 1")
        return pattern[(n - 1) % m]

    return BoundedSeq(oracle, max(abs(v) for v in pattern), Periodic(pattern))


def zero_seq() -> BoundedSeq:
    return eventually_constant(0.0)


def from_function(fn: Callable[[int], float], bound: float) -> BoundedSeq:
    """Wrap an opaque pure oracle with a caller-certified bound."""
    def oracle(n: int) -> float:
        if n < 1:
            raise IndexZero(f"index {n} < 1")
        return float(fn(n))

    return BoundedSeq(oracle, float(bound), Opaque())


# ---------------------------------------------------------------------------
# operations

def coordinate(s: BoundedSeq, n: int) -> float:
    if n < 1:
        raise IndexZero(f"index {n} < 1")
    return float(s.oracle(n))


def prefix_sup(s: BoundedSeq, N: int) -> float:
    """max |coordinate| over 1..N; nondecreasing in N and <= s.bound."""
    if N < 1:
        raise IndexZero(f"N = {N} < 1")
    vals = s.coordinates(1, N)
    return float(np.max(np.abs(vals)))


def combine(coeffs: Sequence[float], seqs: Sequence[BoundedSeq]) -> BoundedSeq:
    if len(coeffs) != len(seqs):
        raise LengthMismatch(f"{len(coeffs)} coefficients, {len(seqs)} sequences")
    if not seqs:
        raise LengthMismatch("empty combination")
    coeffs = tuple(float(c) for c in coeffs)
    seqs = tuple(seqs)
    bound = sum(abs(c) * s.bound for c, s in zip(coeffs, seqs))

    def oracle(n: int) -> float:
        if n < 1:
            raise IndexZero(f"index {n} < 1")
        return float(sum(c * s.oracle(n) for c, s in zip(coeffs, seqs)))

    def block(lo: int, hi: int) -> np.ndarray:
        out = np.zeros(hi - lo + 1)
        for c, s in zip(coeffs, seqs):
            out += c * s.coordinates(lo, hi)
        return out

    return BoundedSeq(oracle, bound, LinearCombo(coeffs, seqs), block)


def cluster_estimates(s: BoundedSeq, window: range, cell_width: float):
    """Bucket coordinates over `window` into cells over [-bound, bound].

    One ClusterEstimate per nonempty cell (value = cell midpoint),
    sorted by descending hit count then ascending value. The union of
    the returned index lists is exactly the window.
    """
    if len(window) == 0:
        raise EmptyWindow("empty window")
    if window[0] < 1:
        raise IndexZero(f"window starts at {window[0]}")
    if cell_width <= 0:
        raise ValueError(f"cell_width {cell_width} must be positive")

    indices = np.fromiter(window, dtype=int)
    lo, hi = int(indices.min()), int(indices.max())
    vals = s.coordinates(lo, hi)[indices - lo]

    b = s.bound
    if b == 0.0:
        return [ClusterEstimate(tuple(int(i) for i in sorted(indices)), 0.0, 0.0)]

    ncells = max(1, int(math.ceil(2.0 * b / cell_width)))
    cells = np.floor((vals + b) / cell_width).astype(int)
    np.clip(cells, 0, ncells - 1, out=cells)

    out = []
    for cell in np.unique(cells):
        mask = cells == cell
        mid = -b + (cell + 0.5) * cell_width
        spread = float(np.max(np.abs(vals[mask] - mid)))
        members = tuple(int(i) for i in sorted(indices[mask]))
        out.append(ClusterEstimate(members, float(mid), spread))
    out.sort(key=lambda e: (-len(e.indices), e.value))
    return out


def structural_limit(s: BoundedSeq, budget: int):
    """(limit, tail_variation, stabilization_index) for convergence-
    certifying tags, or None when the tag carries no such certificate.

    tail_variation bounds |coordinate(n) - limit| for n > budget.
    """
    tag = s.tag
    if isinstance(tag, EventuallyConstant):
        return tag.value, 0.0, tag.start
    if isinstance(tag, ExplicitList):
        return tag.tail, 0.0, len(tag.prefix) + 1
    if isinstance(tag, ExplicitLimit):
        return tag.limit, abs(tag.rate) / max(budget, 1), max(budget, 1)
    if isinstance(tag, Periodic) and len(set(tag.pattern)) == 1:
        return tag.pattern[0], 0.0, 1
    if isinstance(tag, LinearCombo):
        limit = 0.0
        variation = 0.0
        stab = 1
        for c, child in zip(tag.coeffs, tag.children):
            sub = structural_limit(child, budget)
            if sub is None:
                return None
            limit += c * sub[0]
            variation += abs(c) * sub[1]
            stab = max(stab, sub[2])
        return limit, variation, stab
    return None
