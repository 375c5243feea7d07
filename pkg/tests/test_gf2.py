import numpy as np
import pytest

from splitrate import gf2
from splitrate.gf2 import BitMatrix, SingularMatrixError


def _random_invertible(rng, n):
    while True:
        m = BitMatrix(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
        if gf2.rank(m) == n:
            return m


def test_bitmatrix_validation():
    m = BitMatrix(np.array([[1, 0], [1, 1]], dtype=np.uint8))
    assert m.rows == 2 and m.cols == 2
    with pytest.raises(ValueError):
        BitMatrix(np.array([[2, 0]], dtype=np.uint8))
    with pytest.raises(ValueError):
        BitMatrix(np.zeros((2, 0), dtype=np.uint8))
    empty = BitMatrix(np.zeros((0, 3), dtype=np.uint8))
    assert empty.rows == 0 and empty.cols == 3


def test_identity_zeros_eq_hash():
    eye = BitMatrix.identity(3)
    assert np.array_equal(eye.bits, np.eye(3, dtype=np.uint8))
    assert BitMatrix.zeros(2, 4).bits.shape == (2, 4)
    assert BitMatrix.identity(3) == eye
    assert hash(BitMatrix.identity(3)) == hash(eye)
    assert BitMatrix.identity(3) != BitMatrix.zeros(3, 3)


def test_matmul_and_mul_vec():
    a = BitMatrix(np.array([[1, 0], [1, 1]], dtype=np.uint8))
    assert gf2.matmul(a, a) == BitMatrix(np.array([[1, 0], [0, 1]], dtype=np.uint8))
    x = gf2.mul_vec(np.array([1, 1], dtype=np.uint8), a)
    assert x.tolist() == [0, 1]
    with pytest.raises(ValueError):
        gf2.mul_vec(np.array([1, 1, 1], dtype=np.uint8), a)


def test_kron_convention_msb_first():
    a = BitMatrix(np.array([[1, 0], [1, 1]], dtype=np.uint8))
    k2 = gf2.kron(a, a)
    expected = np.kron(a.bits, a.bits)
    assert np.array_equal(k2.bits, expected)
    assert gf2.kron_power(a, 1) == a
    assert gf2.kron_power(a, 3) == gf2.kron(a, gf2.kron(a, a))
    with pytest.raises(ValueError):
        gf2.kron_power(a, 0)


def test_rank():
    assert gf2.rank(BitMatrix.identity(4)) == 4
    assert gf2.rank(BitMatrix.zeros(3, 5)) == 0
    m = BitMatrix(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8))
    assert gf2.rank(m) == 2


def test_invert_round_trip_randomized():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 5, 8, 12):
        for _ in range(4):
            m = _random_invertible(rng, n)
            inv = gf2.invert(m)
            assert gf2.matmul(m, inv) == BitMatrix.identity(n)
            assert gf2.matmul(inv, m) == BitMatrix.identity(n)


def test_invert_singular_raises():
    with pytest.raises(SingularMatrixError):
        gf2.invert(BitMatrix(np.array([[1, 1], [1, 1]], dtype=np.uint8)))
    with pytest.raises(ValueError):
        gf2.invert(BitMatrix(np.array([[1, 0, 1]], dtype=np.uint8)))


def test_from_generator_structure_and_self_inverse():
    p = BitMatrix(np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8))  # k=2, n-k=3
    f = gf2.from_generator(p)
    assert f.rows == f.cols == 5
    assert np.array_equal(f.bits[:3, :3], np.eye(3, dtype=np.uint8))
    assert not f.bits[:3, 3:].any()
    assert np.array_equal(f.bits[3:, :3], p.bits)
    assert np.array_equal(f.bits[3:, 3:], np.eye(2, dtype=np.uint8))
    assert gf2.matmul(f, f) == BitMatrix.identity(5)


def test_parity_columns():
    p = BitMatrix(np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8))
    f = gf2.from_generator(p)
    cols = gf2.parity_columns(f, 2)
    assert cols.cols == 3
    with pytest.raises(ValueError):
        gf2.parity_columns(f, 5)


def test_row_space_dual_orthogonal_and_dimension():
    rng = np.random.default_rng(5)
    for n in (3, 5, 8):
        for r in range(n + 1):
            m = BitMatrix(rng.integers(0, 2, size=(r, n), dtype=np.uint8)) if r else BitMatrix(
                np.zeros((0, n), dtype=np.uint8)
            )
            d = gf2.row_space_dual(m)
            assert d.rows == n - gf2.rank(m)
            assert d.cols == n
            if d.rows and m.rows:
                prods = (m.bits @ d.bits.T) % 2
                assert not prods.any()
            if d.rows:
                assert gf2.rank(d) == d.rows


def test_row_space_dual_extremes():
    assert gf2.row_space_dual(BitMatrix.identity(4)).rows == 0
    d = gf2.row_space_dual(BitMatrix.zeros(0, 4))
    assert d.rows == 4
    assert gf2.rank(d) == 4


def test_row_space_dual_deterministic():
    m = BitMatrix(np.array([[1, 1, 0, 1], [0, 1, 1, 0]], dtype=np.uint8))
    assert gf2.row_space_dual(m) == gf2.row_space_dual(m)


def test_rows_to_ints():
    m = BitMatrix(np.array([[1, 0, 1], [0, 1, 0]], dtype=np.uint8))
    words = gf2.rows_to_ints(m)
    assert words.tolist() == [0b101, 0b010]


def test_load_generator(tmp_path):
    path = tmp_path / "gen.txt"
    path.write_text("2 3\n101\n011\n")
    p = gf2.load_generator(path)
    assert p.rows == 2 and p.cols == 3
    assert p.bits.tolist() == [[1, 0, 1], [0, 1, 1]]
    path.write_text("2 3\n101\n")
    with pytest.raises(ValueError):
        gf2.load_generator(path)
    path.write_text("2 3\n10x\n011\n")
    with pytest.raises(ValueError):
        gf2.load_generator(path)


def test_bundled_generator_is_golay_dual():
    from importlib import resources

    with resources.as_file(
        resources.files("splitrate").joinpath("data", "golay_dual_p.txt")
    ) as path:
        p = gf2.load_generator(path)
    assert p.rows == 11 and p.cols == 12
    f = gf2.from_generator(p)
    assert gf2.rank(f) == 23
    # generator rows [P | I] span a code whose nonzero weights are 8, 12, 16
    gen = np.concatenate([p.bits, np.eye(11, dtype=np.uint8)], axis=1)
    weights = set()
    for mask in range(1, 1 << 11):
        combo = np.zeros(23, dtype=np.uint8)
        for j in range(11):
            if mask >> j & 1:
                combo ^= gen[j]
        weights.add(int(combo.sum()))
    assert weights == {8, 12, 16}
