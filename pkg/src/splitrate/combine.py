"""Channel combining: n copies of a base channel behind one input relabeling.

A combined channel takes an input vector u = (u1..un), relabels it through
a bijection f on the input alphabet's n-fold product, and sends x = f(u)
coordinatewise through n independent uses of the base channel:

    W(y1..yn | u1..un) = prod_i V(yi | xi),  x = f(u).

The bijection is either linear over GF(2) (x = uF for an invertible bit
matrix F, binary inputs only) or an explicit permutation table.  Input and
output vectors map to row/column indices most-significant-first, matching
the Kronecker convention of the gf2 module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import gf2
from .dmc import Channel, channel_to_json

_CELL_BUDGET = 1 << 24


class MapValidationError(ValueError):
    """Label map is not a bijection of the right shape."""


class TableBudgetError(ValueError):
    """Dense synthesis would exceed the explicit-table cell budget."""


def tuple_to_index(symbols, alphabet_size: int) -> int:
    """Rank of a symbol tuple, first coordinate most significant."""
    idx = 0
    for s in symbols:
        s = int(s)
        if not 0 <= s < alphabet_size:
            raise ValueError(f"symbol {s} outside alphabet of size {alphabet_size}")
        idx = idx * alphabet_size + s
    return idx


def index_to_tuple(idx: int, alphabet_size: int, length: int) -> tuple[int, ...]:
    """Inverse of tuple_to_index."""
    if not 0 <= idx < alphabet_size**length:
        raise ValueError(f"index {idx} out of range for {length} symbols")
    out = []
    for _ in range(length):
        out.append(idx % alphabet_size)
        idx //= alphabet_size
    return tuple(reversed(out))


@dataclass(frozen=True)
class LabelMap:
    """Bijection on input vectors of length ``copies`` over a fixed alphabet.

    Exactly one of ``matrix`` (linear variant, x = uF over GF(2)) or
    ``table`` (explicit permutation of vector ranks) is set.  Construct
    through the ``linear``, ``table_map``, or ``identity`` classmethods.
    """

    copies: int
    alphabet_size: int
    matrix: Optional[gf2.BitMatrix] = None
    table: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.copies < 1:
            raise MapValidationError(f"need at least one copy, got {self.copies}")
        if self.alphabet_size < 2:
            raise MapValidationError(f"alphabet size must be >= 2, got {self.alphabet_size}")
        if (self.matrix is None) == (self.table is None):
            raise MapValidationError("exactly one of matrix and table must be given")
        if self.matrix is not None:
            if self.alphabet_size != 2:
                raise MapValidationError("linear maps require a binary alphabet")
            m = self.matrix
            if m.rows != self.copies or m.cols != self.copies:
                raise MapValidationError(
                    f"matrix must be {self.copies}x{self.copies}, got {m.rows}x{m.cols}"
                )
            gf2.invert(m)  # raises SingularMatrixError if not bijective
        else:
            size = self.alphabet_size**self.copies
            t = np.asarray(self.table, dtype=np.int64)
            if t.shape != (size,):
                raise MapValidationError(f"table must have {size} entries, got {t.shape}")
            if t.min() < 0 or t.max() >= size or np.unique(t).size != size:
                raise MapValidationError("table is not a bijection")
            object.__setattr__(self, "table", t)

    @classmethod
    def linear(cls, matrix: gf2.BitMatrix) -> "LabelMap":
        """Linear map x = u @ matrix over GF(2)."""
        return cls(copies=matrix.rows, alphabet_size=2, matrix=matrix)

    @classmethod
    def table_map(cls, table, alphabet_size: int, copies: int) -> "LabelMap":
        """Explicit permutation of vector ranks (most-significant-first)."""
        return cls(copies=copies, alphabet_size=alphabet_size, table=np.asarray(table))

    @classmethod
    def identity(cls, copies: int, alphabet_size: int = 2) -> "LabelMap":
        if alphabet_size == 2:
            return cls.linear(gf2.BitMatrix.identity(copies))
        return cls.table_map(
            np.arange(alphabet_size**copies), alphabet_size, copies
        )

    @property
    def is_linear(self) -> bool:
        return self.matrix is not None

    def image_indices(self) -> np.ndarray:
        """x-rank for every u-rank, as one int64 vector of length q^n."""
        if self.table is not None:
            return self.table.copy()
        n = self.copies
        shifts = np.arange(n - 1, -1, -1)
        u_bits = ((np.arange(1 << n)[:, None] >> shifts) & 1).astype(np.uint8)
        x_bits = (u_bits @ self.matrix.bits) % 2
        return x_bits.astype(np.int64) @ (1 << shifts)


def apply_map(label_map: LabelMap, u) -> tuple[int, ...]:
    """Image x = f(u) of one input vector."""
    u = tuple(int(s) for s in u)
    if len(u) != label_map.copies:
        raise ValueError(f"expected {label_map.copies} symbols, got {len(u)}")
    if label_map.is_linear:
        for s in u:
            if s not in (0, 1):
                raise ValueError(f"linear maps take bits, got {s}")
        x = gf2.mul_vec(np.array(u, dtype=np.uint8), label_map.matrix)
        return tuple(int(b) for b in x)
    idx = tuple_to_index(u, label_map.alphabet_size)
    return index_to_tuple(
        int(label_map.table[idx]), label_map.alphabet_size, label_map.copies
    )


@dataclass(frozen=True)
class SynthChannel:
    """A combined channel together with the pieces it was built from."""

    base: Channel
    map: LabelMap
    combined: Channel
    copies: int


def synthesize(base: Channel, label_map: LabelMap) -> SynthChannel:
    """Materialize the combined channel as one dense transition matrix.

    Raises TableBudgetError when the dense table would exceed 2^24 cells;
    larger systems must use the implicit paths of the split module.
    """
    if label_map.alphabet_size != base.num_inputs:
        raise MapValidationError(
            f"map alphabet {label_map.alphabet_size} != channel inputs {base.num_inputs}"
        )
    n = label_map.copies
    cells = (base.num_inputs * base.num_outputs) ** n
    if cells > _CELL_BUDGET:
        raise TableBudgetError(
            f"dense table needs {cells} cells (budget {_CELL_BUDGET}); "
            "use the implicit split-module paths instead"
        )
    prod = base.prob
    for _ in range(n - 1):
        prod = np.kron(prod, base.prob)
    combined = Channel(prod[label_map.image_indices()])
    return SynthChannel(base=base, map=label_map, combined=combined, copies=n)


def synth_to_json(synth: SynthChannel) -> dict:
    """Channel JSON of the combined table plus a meta block describing it."""
    meta = {
        "base": channel_to_json(synth.base),
        "map": "linear" if synth.map.is_linear else "table",
        "copies": synth.copies,
    }
    return channel_to_json(synth.combined, meta=meta)
