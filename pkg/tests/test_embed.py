import math

import numpy as np
import pytest

from seqembed import (BudgetExhausted, CustomNet, Embedding, FiniteDimLp,
                      SeqLp, ZeroElement, coordinate, embed_t1,
                      isometry_defect, oscillation_witness, prefix_sup,
                      reverify_witness)

SQ2 = math.sqrt(2.0)


def test_functional_index_interleaving():
    emb = Embedding(FiniteDimLp(2, 2))
    assert emb.functional_index(1) == (1, 1.0)
    assert emb.functional_index(2) == (1, -1.0)
    assert emb.functional_index(7) == (4, 1.0)
    assert emb.functional_index(8) == (4, -1.0)


def test_embed_coordinates_are_signed_pairs():
    sp = FiniteDimLp(2, 2)
    x = np.array([3.0, 4.0])
    s = embed_t1(sp, x)
    for k in range(1, 50):
        assert coordinate(s, 2 * k) == -coordinate(s, 2 * k - 1)
    assert s.bound == 5.0


def test_embed_block_matches_oracle():
    sp = FiniteDimLp(2, 1)
    s = embed_t1(sp, np.array([1.0, -2.0]))
    window = s.coordinates(5, 40)
    direct = [coordinate(s, n) for n in range(5, 41)]
    assert np.allclose(window, direct, rtol=0, atol=1e-14)


def test_embed_linearity():
    sp = FiniteDimLp(3, 2)
    x, y = np.array([1.0, 2.0, -1.0]), np.array([0.5, 0.0, 3.0])
    sx, sy, sxy = embed_t1(sp, x), embed_t1(sp, y), embed_t1(sp, x + y)
    for n in (1, 2, 9, 40):
        assert coordinate(sxy, n) == pytest.approx(
            coordinate(sx, n) + coordinate(sy, n), abs=1e-12)


def test_prefix_sup_never_exceeds_norm():
    rng = np.random.default_rng(3)
    for p in (1.0, 2.0, math.inf):
        sp = FiniteDimLp(2, p)
        for _ in range(10):
            x = rng.standard_normal(2)
            assert prefix_sup(embed_t1(sp, x), 2000) <= sp.norm(x) + 1e-9


def test_defect_worked_example():
    # at K = 8 only level-1 directions are seen; the best functional for
    # (3,4) is the duality row of (1,1)/sqrt(2), giving 7/sqrt(2)
    sp = FiniteDimLp(2, 2)
    rec = isometry_defect(sp, np.array([3.0, 4.0]), 8)
    assert rec.upper == 5.0
    assert rec.achieved == pytest.approx(7.0 / SQ2, abs=1e-9)
    assert rec.lower <= rec.achieved <= rec.upper
    assert rec.lower == pytest.approx(5.0 * (1.0 - sp.net_distance(
        np.array([0.6, 0.8]), 8)), abs=1e-12)


def test_defect_interval_tightens_with_k():
    sp = FiniteDimLp(2, 2)
    x = np.array([2.0, -1.0])
    recs = [isometry_defect(sp, x, K) for K in (4, 16, 64, 256)]
    lowers = [r.lower for r in recs]
    assert all(a <= b + 1e-12 for a, b in zip(lowers, lowers[1:]))
    assert all(r.lower - 1e-9 <= r.achieved <= r.upper + 1e-9 for r in recs)


def test_defect_rejects_zero():
    with pytest.raises(ZeroElement):
        isometry_defect(FiniteDimLp(2, 2), np.zeros(2), 8)


def test_defect_exact_on_custom_net():
    # when x/||x|| is itself a net point the defect closes at once
    sp = CustomNet([(1.0, 0.0), (0.0, 1.0)])
    rec = isometry_defect(sp, np.array([0.0, 2.5]), 2)
    assert rec.lower == pytest.approx(2.5)
    assert rec.achieved == pytest.approx(2.5)


def test_oscillation_witness_roundtrip():
    sp = FiniteDimLp(2, 2)
    x = np.array([3.0, 4.0])
    w = oscillation_witness(sp, x, 0.2, 5)
    assert len(w.plus_indices) == 5
    assert w.gap >= 2.0 * 5.0 * 0.8 - 1e-9
    assert all(n % 2 == 1 for n in w.plus_indices)
    assert all(n % 2 == 0 for n in w.minus_indices)
    assert reverify_witness(embed_t1(sp, x), w)


def test_oscillation_witness_seqlp():
    sp = SeqLp(2.0)
    w = oscillation_witness(sp, {2: -1.5}, 0.2, 3)
    assert w.gap >= 2.0 * 1.5 * 0.8 - 1e-9
    assert reverify_witness(embed_t1(sp, {2: -1.5}), w)


def test_oscillation_witness_budget_exhausted_carries_partial():
    sp = FiniteDimLp(2, 2)
    with pytest.raises(BudgetExhausted) as exc:
        oscillation_witness(sp, np.array([1.0, 0.0]), 0.01, 50, scan_budget=16)
    partial = exc.value.partial
    assert exc.value.found == len(partial.plus_indices) < 50


def test_oscillation_witness_validates_args():
    sp = FiniteDimLp(2, 2)
    with pytest.raises(ZeroElement):
        oscillation_witness(sp, np.zeros(2), 0.2, 1)
    with pytest.raises(ValueError):
        oscillation_witness(sp, np.array([1.0, 0.0]), 1.2, 1)
    with pytest.raises(ValueError):
        oscillation_witness(sp, np.array([1.0, 0.0]), 0.2, 0)


def test_reverify_rejects_tampering():
    sp = FiniteDimLp(2, 2)
    x = np.array([1.0, 2.0])
    s = embed_t1(sp, x)
    w = oscillation_witness(sp, x, 0.3, 3)
    assert reverify_witness(s, w)

    import dataclasses
    forged = dataclasses.replace(w, gap=w.gap + 1.0)
    assert not reverify_witness(s, forged)
    forged = dataclasses.replace(
        w, plus_values=(w.plus_values[0] + 1e-9,) + w.plus_values[1:])
    assert not reverify_witness(s, forged)
    forged = dataclasses.replace(
        w, plus_indices=tuple(reversed(w.plus_indices)))
    assert not reverify_witness(s, forged)
    forged = dataclasses.replace(w, minus_indices=w.minus_indices[:-1])
    assert not reverify_witness(s, forged)
