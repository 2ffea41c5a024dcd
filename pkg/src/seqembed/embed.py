"""The interleaved embedding of a separable space into bounded sequences.

Coordinates 2k-1 and 2k of the image carry +phi_k(x) and -phi_k(x),
where phi_k norms the k-th dense net point. At finite truncation the
isometry is certified by a defect interval rather than asserted, and
non-convergence is certified by oscillation witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetExhausted, ZeroElement
from .seqcore import BoundedSeq, FunctionalImage, coordinate, prefix_sup
from .spaces import SeparableSpace

#: block size for witness scans over the net enumeration
_SCAN_BLOCK = 4096


@dataclass(frozen=True)
class Embedding:
    """Sign-interleaved functional rule over a space's net."""
    space: SeparableSpace

    def functional_index(self, n: int):
        """(k, sign) with psi_n = sign * phi_k."""
        k = (n + 1) // 2
        return k, (1.0 if n % 2 == 1 else -1.0)


@dataclass(frozen=True)
class DefectRecord:
    lower: float
    upper: float
    achieved: float


@dataclass(frozen=True)
class OscillationWitness:
    """Two ε-separated coordinate clusters with a certified gap.

    The checkable surrogate for "this sequence has no limit": every
    plus value is >= target_hi, every minus value <= target_lo, and
    gap = min(plus_values) - max(minus_values) > 0.
    """
    plus_indices: tuple
    minus_indices: tuple
    plus_values: tuple
    minus_values: tuple
    gap: float
    epsilon: float
    target_hi: float
    target_lo: float


def embed_t1(space: SeparableSpace, x) -> BoundedSeq:
    """T(x) = (psi_n(x)) with psi_{2k-1} = phi_k, psi_{2k} = -phi_k."""
    x = space.canonical(x)
    bound = space.norm(x)

    def oracle(n: int) -> float:
        k = (n + 1) // 2
        val = space.apply_functional(space.norming_functional(k), x)
        return val if n % 2 == 1 else -val

    def block(lo: int, hi: int) -> np.ndarray:
        k_hi = (hi + 1) // 2
        vals = space.functional_values(x, k_hi)
        out = np.empty(2 * k_hi)
        out[0::2] = vals
        out[1::2] = -vals
        return out[lo - 1:hi]

    return BoundedSeq(oracle, bound, FunctionalImage(space, x), block)


def isometry_defect(space: SeparableSpace, x, K: int) -> DefectRecord:
    """Certified interval for the truncated sup norm of the image.

    achieved = prefix sup through coordinate 2K, upper = ||x||, and
    lower = ||x|| (1 - d_K(x/||x||)) from the net-density argument.
    """
    x = space.canonical(x)
    nx = space.norm(x)
    if nx == 0.0:
        raise ZeroElement("isometry defect needs a nonzero element")
    achieved = prefix_sup(embed_t1(space, x), 2 * K)
    lower = nx * (1.0 - space.net_distance(space.unit(x), K))
    return DefectRecord(lower=lower, upper=nx, achieved=achieved)


def reverify_witness(s: BoundedSeq, w: OscillationWitness) -> bool:
    """Re-check a witness directly against the coordinate oracle.

    Stored values must match re-evaluation bit-identically; index lists
    must strictly increase; the gap must be consistent and positive.
    """
    if len(w.plus_indices) != len(w.minus_indices):
        return False
    if len(w.plus_indices) != len(w.plus_values):
        return False
    if len(w.minus_indices) != len(w.minus_values):
        return False
    for idxs in (w.plus_indices, w.minus_indices):
        if any(a >= b for a, b in zip(idxs, idxs[1:])):
            return False
    for n, v in zip(w.plus_indices, w.plus_values):
        if coordinate(s, n) != v:
            return False
    for n, v in zip(w.minus_indices, w.minus_values):
        if coordinate(s, n) != v:
            return False
    if any(v < w.target_hi for v in w.plus_values):
        return False
    if any(v > w.target_lo for v in w.minus_values):
        return False
    gap = min(w.plus_values) - max(w.minus_values)
    return gap == w.gap and gap > 0.0


def oscillation_witness(space: SeparableSpace, x, epsilon: float,
                        count: int, scan_budget: int = 100000) -> OscillationWitness:
    """Witness that the embedded image oscillates between +-||x||.

    Scans the net in enumeration order for points within `epsilon` of
    x/||x||; each hit k contributes coordinate 2k-1 (value >= target_hi
    = ||x|| (1 - epsilon)) and coordinate 2k (value <= -target_hi).
    Raises BudgetExhausted carrying the partial witness if fewer than
    `count` hits are found within the scan budget.
    """
    x = space.canonical(x)
    nx = space.norm(x)
    if nx == 0.0:
        raise ZeroElement("oscillation witness needs a nonzero element")
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon = {epsilon} must be in (0, 1)")
    if count < 1:
        raise ValueError(f"count = {count} must be >= 1")

    v = space.unit(x)
    image = embed_t1(space, x)
    target = nx * (1.0 - epsilon)

    hits = []
    k = 0
    while k < scan_budget and len(hits) < count:
        hi = min(k + _SCAN_BLOCK, scan_budget)
        dists = space.distance_profile(v, hi)[k:hi]
        for off in np.nonzero(dists <= epsilon)[0]:
            cand = k + int(off) + 1
            plus = coordinate(image, 2 * cand - 1)
            minus = coordinate(image, 2 * cand)
            # rounding may push a boundary hit a hair past the target;
            # skip it rather than weaken the certificate
            if plus >= target and minus <= -target:
                hits.append((cand, plus, minus))
                if len(hits) == count:
                    break
        k = hi

    witness = OscillationWitness(
        plus_indices=tuple(2 * k - 1 for k, _, _ in hits),
        minus_indices=tuple(2 * k for k, _, _ in hits),
        plus_values=tuple(p for _, p, _ in hits),
        minus_values=tuple(m for _, _, m in hits),
        gap=(min(p for _, p, _ in hits) - max(m for _, _, m in hits)) if hits else 0.0,
        epsilon=epsilon,
        target_hi=target,
        target_lo=-target,
    )
    if len(hits) < count:
        raise BudgetExhausted(
            f"found {len(hits)} of {count} witness pairs within budget {scan_budget}",
            partial=witness, found=len(hits))
    return witness
