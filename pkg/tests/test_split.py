import math

import numpy as np
import pytest

from splitrate import dmc, gf2, split
from splitrate.combine import LabelMap, TableBudgetError
from splitrate.split import ChainModel, MemoryBudgetError, RateAllocation


def _kernel():
    return gf2.BitMatrix(np.array([[1, 0], [1, 1]], dtype=np.uint8))


def _gamma(eps):
    return 2.0 * math.sqrt(eps * (1 - eps))


def _bsc_cutoff(eps):
    return 1.0 - math.log2(1.0 + _gamma(eps))


def _random_invertible(rng, n):
    while True:
        m = gf2.BitMatrix(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
        if gf2.rank(m) == n:
            return m


def test_chain_model_validation():
    with pytest.raises(ValueError):
        ChainModel(base=dmc.bec(0.25), map=LabelMap.identity(2, alphabet_size=3),
                   dists=(dmc.uniform_dist(3),) * 2)
    with pytest.raises(ValueError):
        ChainModel(base=dmc.bsc(0.1), map=LabelMap.identity(2),
                   dists=(dmc.uniform_dist(2),))
    with pytest.raises(ValueError):
        ChainModel(base=dmc.bsc(0.1), map=LabelMap.identity(2),
                   dists=([0.6, 0.6], [0.5, 0.5]))
    chain = ChainModel.uniform(dmc.bsc(0.1), LabelMap.linear(_kernel()))
    assert chain.copies == 2
    assert all(q.tolist() == [0.5, 0.5] for q in chain.dists)


def test_rate_allocation_validation():
    alloc = RateAllocation.from_rates([0.25, 0.75])
    assert alloc.sum == pytest.approx(1.0)
    assert alloc.normalized == pytest.approx(0.5)
    with pytest.raises(ValueError):
        RateAllocation.from_rates([])
    with pytest.raises(ValueError):
        RateAllocation.from_rates([0.5, -0.1])
    with pytest.raises(ValueError):
        RateAllocation.from_rates([0.5, math.inf])


def test_write_allocation_csv(tmp_path):
    path = tmp_path / "alloc.csv"
    split.write_allocation_csv(path, RateAllocation.from_rates([0.25, 0.75]))
    lines = path.read_text().splitlines()
    assert lines[0] == "index,rate"
    assert lines[1] == "1,0.25"
    assert lines[2] == "2,0.75"
    assert lines[3] == "# sum=1"
    assert lines[4] == "# normalized=0.5"


def test_bec_two_copy_closed_forms():
    # chained BEC pair: the first subchannel erases when either output
    # erases, the second when both do
    for eps in (0.1, 0.25, 0.4, 0.75):
        chain = ChainModel.uniform(dmc.bec(eps), LabelMap.linear(_kernel()))
        alloc = split.chain_rates(chain)
        r1 = 1.0 - math.log2(1.0 + 2 * eps - eps * eps)
        r2 = 1.0 - math.log2(1.0 + eps * eps)
        assert alloc.per_subchannel[0] == pytest.approx(r1, abs=1e-12)
        assert alloc.per_subchannel[1] == pytest.approx(r2, abs=1e-12)
    chain = ChainModel.uniform(dmc.bec(0.25), LabelMap.linear(_kernel()))
    alloc = split.chain_rates(chain)
    assert alloc.per_subchannel[0] == pytest.approx(0.476438043943, abs=1e-9)
    assert alloc.per_subchannel[1] == pytest.approx(0.912537159333, abs=1e-9)
    assert alloc.normalized == pytest.approx(0.694487601638, abs=1e-9)


def test_bsc_two_copy_closed_forms():
    # first subchannel sees the XOR of two crossovers, the second a
    # repetition pair, giving Bhattacharyya gamma(2 eps (1-eps)) and
    # gamma(eps)^2
    for eps in (0.05, 0.1, 0.3, 0.45):
        chain = ChainModel.uniform(dmc.bsc(eps), LabelMap.linear(_kernel()))
        alloc = split.chain_rates(chain)
        r1 = 1.0 - math.log2(1.0 + _gamma(2 * eps * (1 - eps)))
        r2 = 1.0 - math.log2(1.0 + _gamma(eps) ** 2)
        assert alloc.per_subchannel[0] == pytest.approx(r1, abs=1e-12)
        assert alloc.per_subchannel[1] == pytest.approx(r2, abs=1e-12)
    chain = ChainModel.uniform(dmc.bsc(0.1), LabelMap.linear(_kernel()))
    alloc = split.chain_rates(chain)
    assert alloc.per_subchannel[0] == pytest.approx(0.177575831, abs=1e-9)
    assert alloc.per_subchannel[1] == pytest.approx(0.556393349, abs=1e-9)
    assert alloc.normalized == pytest.approx(0.366984589702, abs=1e-9)


def test_identity_map_gives_base_cutoff_everywhere():
    for base in (dmc.bsc(0.2), dmc.bec(0.3), dmc.mec(3, 0.4)):
        q = dmc.uniform_dist(base.num_inputs)
        r0 = dmc.e0(1.0, q, base)
        lm = LabelMap.identity(3, alphabet_size=base.num_inputs)
        alloc = split.chain_rates(ChainModel.uniform(base, lm))
        assert np.allclose(alloc.per_subchannel, r0, atol=1e-12)
        assert alloc.sum == pytest.approx(3 * r0, abs=1e-10)


def test_combining_strictly_helps_two_copies():
    for base in (dmc.bsc(0.1), dmc.bec(0.25)):
        chained = split.chain_rates(ChainModel.uniform(base, LabelMap.linear(_kernel())))
        plain = split.chain_rates(ChainModel.uniform(base, LabelMap.identity(2)))
        assert chained.sum > plain.sum + 1e-4


def test_conditional_cutoff_matches_chain_rates():
    chain = ChainModel.uniform(dmc.bec(0.25), LabelMap.linear(gf2.kron_power(_kernel(), 2)))
    alloc = split.chain_rates(chain)
    for i in range(1, 5):
        assert split.conditional_cutoff(i, chain) == pytest.approx(
            alloc.per_subchannel[i - 1], abs=1e-12
        )
    with pytest.raises(IndexError):
        split.conditional_cutoff(0, chain)
    with pytest.raises(IndexError):
        split.conditional_cutoff(5, chain)


def test_point_mass_first_coordinate():
    # forcing u1 = 0 turns stage 1 into a zero-rate channel and leaves
    # stage 2 as a repetition pair
    eps = 0.25
    delta = np.array([1.0, 0.0])
    chain = ChainModel(base=dmc.bec(eps), map=LabelMap.linear(_kernel()),
                       dists=(delta, np.array([0.5, 0.5])))
    alloc = split.chain_rates(chain)
    assert alloc.per_subchannel[0] == pytest.approx(0.0, abs=1e-12)
    assert alloc.per_subchannel[1] == pytest.approx(
        1.0 - math.log2(1.0 + eps * eps), abs=1e-12
    )


def test_mutual_info_conservation():
    # chain rule: conditional informations sum to n I(W) for any bijection
    rng = np.random.default_rng(9)
    base = dmc.bsc(0.15)
    total = 4 * dmc.mutual_info([0.5, 0.5], base)
    for _ in range(3):
        f = _random_invertible(rng, 4)
        info = split.chain_mutual_info(ChainModel.uniform(base, LabelMap.linear(f)))
        assert np.all(info >= -1e-12)
        assert float(info.sum()) == pytest.approx(total, abs=1e-10)
    # nonlinear permutation maps conserve it too
    perm = rng.permutation(16)
    info = split.chain_mutual_info(
        ChainModel.uniform(base, LabelMap.table_map(perm, 2, 4))
    )
    assert float(info.sum()) == pytest.approx(total, abs=1e-10)


def test_rates_never_exceed_conditional_info():
    rng = np.random.default_rng(14)
    base = dmc.bsc(0.2)
    f = _random_invertible(rng, 4)
    chain = ChainModel.uniform(base, LabelMap.linear(f))
    rates = split.chain_rates(chain).per_subchannel
    info = split.chain_mutual_info(chain)
    assert np.all(rates <= info + 1e-12)
    assert np.all(rates >= 0) and np.all(rates <= 1 + 1e-12)


def test_brute_force_budget_guards():
    with pytest.raises(TableBudgetError):
        split.chain_rates(ChainModel.uniform(dmc.bec(0.25), LabelMap.identity(11)))
    with pytest.raises(MemoryBudgetError):
        split.chain_rates(ChainModel.uniform(dmc.bsc(0.1), LabelMap.identity(16)))


def test_spectral_matches_brute_force():
    rng = np.random.default_rng(2)
    for n in (2, 3, 4, 5, 6):
        f = _random_invertible(rng, n)
        for eps in (0.05, 0.25, 0.45):
            fast = split.spectral_chain(eps, f)
            slow = split.chain_rates(ChainModel.uniform(dmc.bsc(eps), LabelMap.linear(f)))
            assert np.allclose(fast.per_subchannel, slow.per_subchannel, atol=1e-12)
            assert fast.sum == pytest.approx(slow.sum, abs=1e-11)


def test_spectral_identity_closed_form():
    eps = 0.2
    alloc = split.spectral_chain(eps, gf2.BitMatrix.identity(8))
    assert np.allclose(alloc.per_subchannel, _bsc_cutoff(eps), atol=1e-12)


def test_spectral_edge_crossovers():
    # noiseless and pure-noise channels split into all-ones / all-zeros
    alloc = split.spectral_chain(0.0, gf2.kron_power(_kernel(), 2))
    assert np.allclose(alloc.per_subchannel, 1.0, atol=1e-12)
    alloc = split.spectral_chain(0.5, gf2.kron_power(_kernel(), 2))
    assert np.allclose(alloc.per_subchannel, 0.0, atol=1e-12)


def test_spectral_kron_power_table():
    # normalized sums for 2^k copies of bsc(0.1) under the k-fold
    # Kronecker power of the 2x2 kernel; oracle values from the brute path
    expect = {
        1: 0.366984589702,
        2: 0.400599440853,
        3: 0.424525951963,
        4: 0.443255917897,
    }
    f1 = _kernel()
    for k, value in expect.items():
        alloc = split.spectral_chain(0.1, gf2.kron_power(f1, k))
        assert alloc.normalized == pytest.approx(value, abs=1e-9)
    # combining gains are monotone in k here
    vals = [split.spectral_chain(0.1, gf2.kron_power(f1, k)).normalized
            for k in range(1, 5)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_spectral_validation():
    with pytest.raises(ValueError):
        split.spectral_chain(0.6, gf2.BitMatrix.identity(2))
    with pytest.raises(ValueError):
        split.spectral_chain(0.1, gf2.BitMatrix(np.ones((2, 3), dtype=np.uint8)))
    with pytest.raises(gf2.SingularMatrixError):
        split.spectral_chain(0.1, gf2.BitMatrix(np.ones((2, 2), dtype=np.uint8)))
    with pytest.raises(MemoryBudgetError):
        split.spectral_chain(0.1, gf2.BitMatrix.identity(27))


def test_syndrome_structure_repetition_code():
    # [3, 1] repetition generator: syndrome bits see noise pairs
    p = gf2.BitMatrix(np.array([[1, 1]], dtype=np.uint8))
    f = gf2.from_generator(p)
    eps = 0.1
    eff = split.syndrome_structure(f, 1, eps)
    assert np.allclose(eff, 2 * eps * (1 - eps), atol=1e-15)
    # the first (unconditioned) chain stage is exactly a BSC at eff[0]
    alloc = split.spectral_chain(eps, f)
    assert alloc.per_subchannel[0] == pytest.approx(_bsc_cutoff(eff[0]), abs=1e-12)


def test_syndrome_structure_random_parity():
    rng = np.random.default_rng(6)
    k, n = 3, 7
    p = gf2.BitMatrix(rng.integers(0, 2, size=(k, n - k), dtype=np.uint8))
    f = gf2.from_generator(p)
    eff = split.syndrome_structure(f, k, 0.08)
    weights = 1 + p.bits.sum(axis=0)
    assert np.allclose(eff, 0.5 * (1 - (1 - 0.16) ** weights), atol=1e-15)
    alloc = split.spectral_chain(0.08, f)
    assert alloc.per_subchannel[0] == pytest.approx(_bsc_cutoff(eff[0]), abs=1e-12)


def test_syndrome_structure_validation():
    f = gf2.from_generator(gf2.BitMatrix(np.array([[1, 1]], dtype=np.uint8)))
    with pytest.raises(ValueError):
        split.syndrome_structure(f, 0, 0.1)
    with pytest.raises(ValueError):
        split.syndrome_structure(f, 3, 0.1)
    with pytest.raises(ValueError):
        split.syndrome_structure(f, 1, 0.7)
    bad = gf2.BitMatrix(np.array([[1, 1], [0, 1]], dtype=np.uint8))
    with pytest.raises(ValueError):
        split.syndrome_structure(bad, 1, 0.1)
    rect = gf2.BitMatrix(np.ones((2, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        split.syndrome_structure(rect, 1, 0.1)
