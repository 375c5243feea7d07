"""Dense GF(2) linear algebra for binary label maps.

Matrices are stored as numpy uint8 arrays with entries in {0, 1}.
Vectors are row vectors; x = u @ M is the labeling convention, with
position 1 mapped to index 0.  Gaussian elimination pivots on the first
nonzero entry in each column, so all results are deterministic.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


class SingularMatrixError(ValueError):
    """Raised when a GF(2) matrix has no inverse."""


class BitMatrix:
    """Dense matrix over GF(2).

    A matrix used as a label map must be square and invertible; that is
    checked where the map is applied, not here.  Zero-row matrices are
    permitted so that kernel computations can return an empty basis.
    """

    __slots__ = ("bits",)

    def __init__(self, entries) -> None:
        bits = np.asarray(entries, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError(f"expected a 2-D array of bits, got ndim={bits.ndim}")
        if bits.shape[1] < 1:
            raise ValueError("a BitMatrix needs at least one column")
        if not np.all(bits <= 1):
            raise ValueError("entries must be 0 or 1")
        self.bits = bits

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.all(self.bits == other.bits))

    def __hash__(self):
        return hash((self.bits.shape, self.bits.tobytes()))

    def __repr__(self) -> str:
        body = ",".join("".join(str(b) for b in row) for row in self.bits)
        return f"BitMatrix({self.rows}x{self.cols}:[{body}])"


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.cols} columns vs {b.rows} rows")
    return BitMatrix((a.bits.astype(np.int64) @ b.bits.astype(np.int64)) % 2)


def mul_vec(u, m: BitMatrix) -> np.ndarray:
    """Apply the row-vector map x = u M over GF(2)."""
    u = np.asarray(u, dtype=np.uint8)
    if u.ndim != 1 or u.shape[0] != m.rows:
        raise ValueError(f"vector length {u.shape} does not match {m.rows} rows")
    return ((u.astype(np.int64) @ m.bits.astype(np.int64)) % 2).astype(np.uint8)


def kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product; the left factor owns the most significant index digit."""
    return BitMatrix(np.kron(a.bits, b.bits))


def kron_power(a: BitMatrix, k: int) -> BitMatrix:
    """k-fold Kronecker power of a square matrix.

    Row index digits are read in base ``a.rows`` with the most significant
    digit selecting the outermost factor, so rows of the result are ordered
    lexicographically by (u_1, ..., u_k).
    """
    if not a.is_square:
        raise ValueError("Kronecker powers are defined for square matrices")
    if k < 1:
        raise ValueError("k must be at least 1")
    out = a.bits
    for _ in range(k - 1):
        out = np.kron(out, a.bits)
    return BitMatrix(out)


def rank(m: BitMatrix) -> int:
    """GF(2) rank via Gaussian elimination."""
    a = m.bits.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        below = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if below.size:
            a[below] ^= a[r]
        r += 1
    return r


def invert(m: BitMatrix) -> BitMatrix:
    """Invert a square matrix over GF(2) by Gauss-Jordan elimination.

    Raises:
        SingularMatrixError: if rank(m) < n.
    """
    if not m.is_square:
        raise ValueError("only square matrices can be inverted")
    n = m.rows
    aug = np.concatenate([m.bits.copy(), np.eye(n, dtype=np.uint8)], axis=1)
    for c in range(n):
        hits = c + np.nonzero(aug[c:, c])[0]
        if hits.size == 0:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {c})")
        p = int(hits[0])
        if p != c:
            aug[[c, p]] = aug[[p, c]]
        others = np.nonzero(aug[:, c])[0]
        others = others[others != c]
        if others.size:
            aug[others] ^= aug[c]
    return BitMatrix(aug[:, n:])


def from_generator(p: BitMatrix) -> BitMatrix:
    """Build the self-inverse block label map of a systematic (n, k) code.

    For a k x (n-k) parity block P of a generator [P I_k], returns the
    n x n matrix with identity/zero top blocks and [P I_k] at the bottom:

        [[I_{n-k}, 0],
         [P,       I_k]]
    """
    k, r = p.rows, p.cols
    n = k + r
    out = np.zeros((n, n), dtype=np.uint8)
    out[:r, :r] = np.eye(r, dtype=np.uint8)
    out[r:, :r] = p.bits
    out[r:, r:] = np.eye(k, dtype=np.uint8)
    return BitMatrix(out)


def parity_columns(f: BitMatrix, k: int) -> BitMatrix:
    """First n-k columns of a square label map.

    For a map built by :func:`from_generator` this is H^T, the transposed
    parity-check matrix of the underlying code.
    """
    if not f.is_square:
        raise ValueError("expected a square label map")
    n = f.rows
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < {n}, got {k}")
    return BitMatrix(f.bits[:, : n - k].copy())


def row_space_dual(m: BitMatrix) -> BitMatrix:
    """Basis of the dual space {w : M w^T = 0} over GF(2).

    The result has n - rank(M) rows (possibly zero rows for full column
    rank), one basis vector per free column of the reduced echelon form,
    ordered by free-column index.
    """
    a = m.bits.copy()
    nrows, ncols = a.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        hits = r + np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] ^= a[r]
        pivot_cols.append(c)
        r += 1
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = np.zeros((len(free_cols), ncols), dtype=np.uint8)
    for i, fc in enumerate(free_cols):
        basis[i, fc] = 1
        # back-substitute: pivot variable j picks up the entry in column fc
        for j, pc in enumerate(pivot_cols):
            basis[i, pc] = a[j, fc]
    return BitMatrix(basis)


def rows_to_ints(m: BitMatrix) -> np.ndarray:
    """Pack each row into an integer, bit j of the word = column j."""
    weights = (1 << np.arange(m.cols, dtype=np.int64))
    return (m.bits.astype(np.int64) * weights).sum(axis=1)


def load_generator(path) -> BitMatrix:
    """Read a parity block P from a plain-text generator file.

    Format: first line "k n-k", then k lines of 0/1 characters with no
    separators.
    """
    text = Path(path).read_text().split("\n")
    header = text[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: first line must be 'k n-k'")
    k, r = int(header[0]), int(header[1])
    rows = [line.strip() for line in text[1:] if line.strip()]
    if len(rows) != k:
        raise ValueError(f"{path}: expected {k} rows, found {len(rows)}")
    bits = np.zeros((k, r), dtype=np.uint8)
    for i, line in enumerate(rows):
        if len(line) != r or set(line) - {"0", "1"}:
            raise ValueError(f"{path}: row {i + 1} must be {r} characters of 0/1")
        bits[i] = [int(ch) for ch in line]
    return BitMatrix(bits)
