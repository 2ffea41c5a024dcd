"""Extending embeddings past a given subspace of bounded sequences.

Given a subspace D spanned (or densely generated) by known bounded
sequences, a common subsequence of indices is extracted along which
every generator stabilizes: cell refinement in the finite-basis case,
staged diagonal refinement for countable families. The extracted index
set is split into alternating halves I+/I-, norming functionals are
placed on them, and the resulting embedding separates its image from
D + (convergent sequences), certified by witnesses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .embed import OscillationWitness, embed_t1, isometry_defect
from .errors import (BudgetExhausted, EmptyBasis, SchemeExhausted,
                     ZeroElement)
from .seqcore import (BoundedSeq, FunctionalImage, combine, coordinate,
                      zero_seq)
from .spaces import SeparableSpace


# ---------------------------------------------------------------------------
# subspace descriptors

@dataclass(frozen=True)
class SubspaceD:
    """A subspace of bounded sequences given by generators.

    mode "finite": `members` is the (possibly empty) basis.
    mode "countable": `members` are the leading Hamel-basis members.
    mode "dense": `members` are the leading terms of a dense sequence.
    """
    mode: str
    members: tuple

    @classmethod
    def finite(cls, seqs: Sequence[BoundedSeq]) -> "SubspaceD":
        return cls("finite", tuple(seqs))

    @classmethod
    def countable(cls, seqs: Sequence[BoundedSeq]) -> "SubspaceD":
        return cls("countable", tuple(seqs))

    @classmethod
    def dense(cls, seqs: Sequence[BoundedSeq]) -> "SubspaceD":
        return cls("dense", tuple(seqs))

    @property
    def size(self) -> int:
        return len(self.members)

    def member(self, i: int) -> BoundedSeq:
        return self.members[i - 1]

    def combination(self, coeffs: Sequence[float]) -> BoundedSeq:
        coeffs = list(coeffs)
        if len(coeffs) > self.size:
            raise EmptyBasis(f"{len(coeffs)} coefficients for {self.size} members")
        if not coeffs or all(c == 0.0 for c in coeffs):
            return zero_seq()
        return combine(coeffs, self.members[:len(coeffs)])


def independence_defect(D: SubspaceD, window: int = 64) -> int:
    """r minus the rank of the generator matrix over coordinates
    1..window. Zero means no dependence is visible on the probe window;
    full independence in the ambient space is not decidable from
    finitely many coordinates.
    """
    if D.size == 0:
        return 0
    M = np.array([m.coordinates(1, window) for m in D.members])
    return D.size - int(np.linalg.matrix_rank(M))


# ---------------------------------------------------------------------------
# index schemes

@dataclass(frozen=True)
class IndexScheme:
    """Materialized prefix of an extracted subsequence (n_j).

    The split is positional: I- holds the odd-position entries
    n_1, n_3, ..., I+ the even-position ones, and the bijections are
    the order-preserving enumerations of each half. `coverage` is the
    scan range within which membership is fully decided; classifying
    past it raises SchemeExhausted. mode "identity" is the degenerate
    D = {0} scheme over all indices (evens = I+, odds = I-).
    """
    mode: str
    prefix: tuple
    alpha: tuple
    tol_schedule: tuple
    coverage: Optional[int]
    recipe: Optional[Callable[[int], "IndexScheme"]] = field(
        default=None, repr=False, compare=False)

    def __post_init__(self):
        pos = {n: j + 1 for j, n in enumerate(self.prefix)}
        object.__setattr__(self, "_pos", pos)

    # -- geometry ------------------------------------------------------------
    @property
    def length(self) -> Optional[int]:
        return None if self.mode == "identity" else len(self.prefix)

    def index_at(self, j: int) -> int:
        """n_j (1-based)."""
        if self.mode == "identity":
            return j
        if j > len(self.prefix):
            raise SchemeExhausted(j, len(self.prefix))
        return self.prefix[j - 1]

    def max_k(self) -> Optional[int]:
        """Largest k for which both eta+(k) and eta-(k) are materialized."""
        return None if self.mode == "identity" else len(self.prefix) // 2

    def plus_index(self, k: int) -> int:
        """eta+(k): the k-th element of I+."""
        return self.index_at(2 * k)

    def minus_index(self, k: int) -> int:
        """eta-(k): the k-th element of I-."""
        return self.index_at(2 * k - 1)

    def classify(self, n: int):
        """(sign, k): +1 if n = eta+(k), -1 if n = eta-(k), 0 if n off I."""
        if self.mode == "identity":
            return (1.0, n // 2) if n % 2 == 0 else (-1.0, (n + 1) // 2)
        j = self._pos.get(n)
        if j is not None:
            return (1.0, j // 2) if j % 2 == 0 else (-1.0, (j + 1) // 2)
        if self.coverage is not None and n <= self.coverage:
            return (0.0, 0)
        raise SchemeExhausted(n, self.coverage)

    def extended(self, scan_budget: int) -> "IndexScheme":
        """Successor scheme rescanned under a larger budget."""
        if self.mode == "identity":
            return self
        if self.coverage is not None and scan_budget <= self.coverage:
            return self
        if self.recipe is None:
            raise SchemeExhausted(scan_budget, self.coverage)
        return self.recipe(scan_budget)

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "prefix": list(self.prefix),
            "alpha": list(self.alpha),
            "tol_schedule": list(self.tol_schedule),
            "scan_budget_used": self.coverage,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IndexScheme":
        return cls(mode=obj["mode"],
                   prefix=tuple(int(n) for n in obj["prefix"]),
                   alpha=tuple(float(a) for a in obj["alpha"]),
                   tol_schedule=tuple(float(t) for t in obj["tol_schedule"]),
                   coverage=obj["scan_budget_used"])


def identity_scheme() -> IndexScheme:
    """The D = {0} degeneracy: I = all indices, evens/odds split."""
    return IndexScheme("identity", (), (), (), None)


# ---------------------------------------------------------------------------
# extraction

def _bucket(values: np.ndarray, bound: float, side: float) -> np.ndarray:
    """Cell index of each value on the grid of width `side` over
    [-bound, bound], top edge clamped into the last cell."""
    if bound == 0.0 or side == 0.0:
        return np.zeros(len(values), dtype=int)
    ncells = int(round(2.0 * bound / side))
    cells = np.floor((values + bound) / side).astype(int)
    return np.clip(cells, 0, ncells - 1)


def bw_extract(D: SubspaceD, depth: int, scan_budget: int) -> IndexScheme:
    """Cell-refinement extraction of a common cluster of D's basis.

    The coordinate vectors z_n = (w^1_n, ..., w^r_n) are scanned up to
    the budget and bucketed into cells whose side halves per level,
    starting at the certified bound. The most-hit cell survives each
    level (tie: lexicographically smallest cell corner); survivors of
    the final level form the prefix, alpha is the final cell midpoint,
    and the tolerance schedule lists each level's cell half-diagonal.
    """
    if D.mode != "finite":
        raise EmptyBasis(f"bw_extract needs a finite basis, got mode {D.mode!r}")
    r = D.size
    if r < 1:
        raise EmptyBasis("bw_extract needs at least one basis sequence")
    if depth < 1:
        raise ValueError(f"depth = {depth} must be >= 1")

    Z = np.column_stack([m.coordinates(1, scan_budget) for m in D.members])
    bounds = np.array([m.bound for m in D.members])

    survivors = np.arange(scan_budget)
    deltas = []
    winner = np.zeros(r, dtype=int)
    sides = bounds.copy()
    for level in range(1, depth + 1):
        sides = bounds / 2.0 ** (level - 1)
        deltas.append(0.5 * float(np.sqrt(np.sum(sides ** 2))))
        cells = np.column_stack([
            _bucket(Z[survivors, i], bounds[i], sides[i]) for i in range(r)])
        uniq, inverse, counts = np.unique(
            cells, axis=0, return_inverse=True, return_counts=True)
        # np.unique sorts rows lexicographically, so among maximal
        # counts argmax picks the smallest cell corner
        best = int(np.argmax(counts))
        winner = uniq[best]
        survivors = survivors[inverse == best]

    alpha = tuple(float(-bounds[i] + (winner[i] + 0.5) * sides[i])
                  if bounds[i] != 0.0 else 0.0 for i in range(r))
    prefix = tuple(int(n) + 1 for n in survivors)
    scheme = IndexScheme(
        "finite", prefix, alpha, tuple(deltas), scan_budget,
        recipe=lambda budget: bw_extract(D, depth, budget))
    if len(prefix) < 2 * depth:
        raise BudgetExhausted(
            f"surviving prefix has {len(prefix)} indices < 2*depth = {2 * depth}",
            partial=scheme, found=len(prefix))
    return scheme


def diagonal_extract(D: SubspaceD, m: int, tol_schedule: Sequence[float],
                     scan_budget: int) -> IndexScheme:
    """Staged diagonal refinement over the first m family members.

    Stage i shrinks the surviving index set until member i varies by at
    most tol_schedule[i-1] along it (one-dimensional cell refinement).
    The prefix takes the j-th element of stage j's survivor set for
    j <= m and continues along the final stage, so every member's tail
    variation meets its schedule entry.
    """
    if D.mode not in ("countable", "dense"):
        raise EmptyBasis(f"diagonal_extract needs a countable or dense family, got {D.mode!r}")
    if m < 1:
        raise ValueError(f"m = {m} must be >= 1")
    schedule = [float(t) for t in tol_schedule]
    if len(schedule) < m:
        raise ValueError(f"tolerance schedule of length {len(schedule)} < m = {m}")
    if any(a <= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("tolerance schedule must strictly decrease")
    if m > D.size:
        raise EmptyBasis(f"m = {m} exceeds the {D.size} materialized members")

    S = np.arange(1, scan_budget + 1)
    betas = []
    diagonal = []
    for i in range(1, m + 1):
        w = D.member(i)
        vals_full = w.coordinates(1, scan_budget)
        bound = w.bound
        tol = schedule[i - 1]
        if bound == 0.0:
            betas.append(0.0)
        else:
            level = 1
            while True:
                side = bound / 2.0 ** (level - 1)
                cells = _bucket(vals_full[S - 1], bound, side)
                uniq, inverse, counts = np.unique(
                    cells, return_inverse=True, return_counts=True)
                best = int(np.argmax(counts))
                S = S[inverse == best]
                if side <= tol:
                    betas.append(float(-bound + (uniq[best] + 0.5) * side))
                    break
                level += 1
        if len(S) < i:
            scheme = IndexScheme("diagonal", tuple(int(n) for n in S),
                                 tuple(betas), tuple(schedule[:i]), scan_budget)
            raise BudgetExhausted(
                f"stage {i}: {len(S)} survivors cannot supply a diagonal",
                partial=scheme, found=i - 1)
        diagonal.append(int(S[i - 1]))

    tail = [int(n) for n in S if n > diagonal[-1]]
    prefix = tuple(diagonal + tail)
    return IndexScheme(
        "diagonal", prefix, tuple(betas), tuple(schedule[:m]), scan_budget,
        recipe=lambda budget: diagonal_extract(D, m, tol_schedule, budget))


# ---------------------------------------------------------------------------
# scheme-placed embedding

def scheme_embed(space: SeparableSpace, scheme: IndexScheme, x) -> BoundedSeq:
    """T(x) with +phi_k at eta+(k), -phi_k at eta-(k), 0 off I."""
    x = space.canonical(x)
    bound = space.norm(x)

    def oracle(n: int) -> float:
        sign, k = scheme.classify(n)
        if sign == 0.0:
            return 0.0
        val = space.apply_functional(space.norming_functional(k), x)
        return val if sign > 0 else -val

    def block(lo: int, hi: int) -> np.ndarray:
        if scheme.mode == "identity":
            k_hi = (hi + 1) // 2
            vals = space.functional_values(x, k_hi)
            out = np.empty(2 * k_hi)
            out[0::2] = -vals
            out[1::2] = vals
            return out[lo - 1:hi]
        if scheme.coverage is not None and hi > scheme.coverage:
            raise SchemeExhausted(hi, scheme.coverage)
        out = np.zeros(hi - lo + 1)
        k_max = (len(scheme.prefix) + 1) // 2
        vals = space.functional_values(x, k_max) if k_max else np.zeros(0)
        for j, n in enumerate(scheme.prefix, start=1):
            if lo <= n <= hi:
                k = j // 2 if j % 2 == 0 else (j + 1) // 2
                out[n - lo] = vals[k - 1] if j % 2 == 0 else -vals[k - 1]
        return out

    return BoundedSeq(oracle, bound, FunctionalImage(space, x, scheme), block)


# ---------------------------------------------------------------------------
# limit functionals

@dataclass(frozen=True)
class LimitEstimate:
    """Tail-averaged estimate of the limit of d along the scheme."""
    L: float
    err: float
    j_window: int


def limit_along(d: BoundedSeq, scheme: IndexScheme, j_window: int) -> LimitEstimate:
    """L = mean of d(n_j) over the last half of the window; err = max
    deviation over that half plus the scheme's final tolerance."""
    if j_window < 2:
        raise ValueError(f"j_window = {j_window} must be >= 2")
    if scheme.length is not None and scheme.length < j_window:
        raise SchemeExhausted(j_window, scheme.length)
    tail = range(j_window // 2 + 1, j_window + 1)
    vals = np.array([coordinate(d, scheme.index_at(j)) for j in tail])
    L = float(np.mean(vals))
    dev = float(np.max(np.abs(vals - L)))
    delta = scheme.tol_schedule[-1] if scheme.tol_schedule else 0.0
    return LimitEstimate(L=L, err=dev + delta, j_window=j_window)


# ---------------------------------------------------------------------------
# separation witnesses

_SCAN_BLOCK = 4096


def separation_witness(space: SeparableSpace, scheme: IndexScheme, x,
                       d: BoundedSeq, epsilon: float, count: int,
                       scan_budget: int = 100000,
                       j_window: Optional[int] = None) -> OscillationWitness:
    """Witness that T(x) - d oscillates between ~(||x|| - L) and
    ~(-||x|| - L), where L is d's limit along the scheme.

    Witness positions are restricted to prefix entries where d is
    within the certified limit error, so the gap contract
    gap >= 2 ||x|| (1 - epsilon) - 2 err(L) holds by construction.
    """
    x = space.canonical(x)
    nx = space.norm(x)
    if nx == 0.0:
        raise ZeroElement("separation witness needs a nonzero element")
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon = {epsilon} must be in (0, 1)")

    if d.bound == 0.0:
        L, errL = 0.0, 0.0
    else:
        if j_window is None:
            j_window = scheme.length if scheme.length is not None else 256
        est = limit_along(d, scheme, j_window)
        L, errL = est.L, est.err

    target_hi = nx * (1.0 - epsilon) - L - errL
    target_lo = -nx * (1.0 - epsilon) - L + errL

    v = space.unit(x)
    diff = combine((1.0, -1.0), (scheme_embed(space, scheme, x), d))

    k_cap = scheme.max_k()
    k_limit = scan_budget if k_cap is None else min(scan_budget, k_cap)

    hits = []
    k = 0
    while k < k_limit and len(hits) < count:
        hi = min(k + _SCAN_BLOCK, k_limit)
        dists = space.distance_profile(v, hi)[k:hi]
        for off in np.nonzero(dists <= epsilon)[0]:
            cand = k + int(off) + 1
            n_plus = scheme.plus_index(cand)
            n_minus = scheme.minus_index(cand)
            if d.bound != 0.0:
                if abs(coordinate(d, n_plus) - L) > errL:
                    continue
                if abs(coordinate(d, n_minus) - L) > errL:
                    continue
            plus = coordinate(diff, n_plus)
            minus = coordinate(diff, n_minus)
            if plus >= target_hi and minus <= target_lo:
                hits.append((n_plus, n_minus, plus, minus))
                if len(hits) == count:
                    break
        k = hi

    witness = OscillationWitness(
        plus_indices=tuple(h[0] for h in hits),
        minus_indices=tuple(h[1] for h in hits),
        plus_values=tuple(h[2] for h in hits),
        minus_values=tuple(h[3] for h in hits),
        gap=(min(h[2] for h in hits) - max(h[3] for h in hits)) if hits else 0.0,
        epsilon=epsilon,
        target_hi=target_hi,
        target_lo=target_lo,
    )
    if len(hits) < count:
        raise BudgetExhausted(
            f"found {len(hits)} of {count} separation pairs "
            f"(scanned k <= {k_limit})",
            partial=witness, found=len(hits))
    return witness


# ---------------------------------------------------------------------------
# whole-construction driver

@dataclass
class ExtensionResult:
    """Generators of D + T(E) with their finite-truncation certificates.

    No closedness claim is made or checked; the subspace is represented
    by its generators only.
    """
    scheme: IndexScheme
    embeddings: list
    defects: list          # (sample_id, DefectRecord | error string)
    witnesses: list        # (sample_id, d_id, OscillationWitness | error string)
    budget_exhausted: bool


def build_extension(space: SeparableSpace, D: SubspaceD, samples,
                    *, depth: int = 4, scan_budget: int = 4096,
                    epsilon: float = 0.2, count: int = 5, K: int = 64,
                    m: Optional[int] = None,
                    tol_schedule: Optional[Sequence[float]] = None,
                    d_coeffs: Optional[Sequence[Sequence[float]]] = None,
                    witness_budget: int = 100000) -> ExtensionResult:
    """Run the extraction for D, embed each sample through the scheme,
    and emit defect certificates plus separation witnesses against a
    sampled set of D-combinations (always including 0)."""
    exhausted = False
    if D.mode == "finite":
        if D.size == 0:
            scheme = identity_scheme()
        else:
            scheme = bw_extract(D, depth, scan_budget)
    else:
        if m is None:
            m = D.size
        if tol_schedule is None:
            tol_schedule = [0.5 / 2.0 ** i for i in range(m)]
        scheme = diagonal_extract(D, m, tol_schedule, scan_budget)

    embeddings = [scheme_embed(space, scheme, x) for x in samples]

    k_cap = scheme.max_k()
    K_eff = K if k_cap is None else min(K, k_cap)
    defects = []
    for sid, x in enumerate(samples):
        try:
            defects.append((sid, isometry_defect(space, x, K_eff)))
        except ZeroElement as exc:
            defects.append((sid, f"ZeroElement: {exc}"))

    if d_coeffs is None:
        d_coeffs = [[0.0] * D.size]
    if not any(all(c == 0.0 for c in coeffs) for coeffs in d_coeffs):
        d_coeffs = [[0.0] * D.size] + list(d_coeffs)

    witnesses = []
    for sid, x in enumerate(samples):
        for did, coeffs in enumerate(d_coeffs):
            d = D.combination(coeffs)
            try:
                w = separation_witness(space, scheme, x, d, epsilon, count,
                                       scan_budget=witness_budget)
                witnesses.append((sid, did, w))
            except BudgetExhausted as exc:
                exhausted = True
                witnesses.append((sid, did, f"BudgetExhausted: {exc}"))
            except ZeroElement as exc:
                witnesses.append((sid, did, f"ZeroElement: {exc}"))

    return ExtensionResult(scheme=scheme, embeddings=embeddings,
                           defects=defects, witnesses=witnesses,
                           budget_exhausted=exhausted)
