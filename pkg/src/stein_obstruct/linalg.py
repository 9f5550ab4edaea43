"""Exact linear algebra over GF(2).

Vectors and matrix rows are stored as Python ints used as bitsets: bit ``j``
holds coordinate ``j``.  Elimination runs in the compiled kernel when it is
importable and falls back to the pure-Python kernel otherwise; set
``STEIN_OBSTRUCT_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import ContainmentViolation, DimensionMismatch

from . import _gf2_py

if os.environ.get("STEIN_OBSTRUCT_PURE"):
    _kernel = _gf2_py
    BACKEND = "python"
else:
    try:
        from . import _gf2_ext as _kernel  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _kernel = _gf2_py
        BACKEND = "python"


def _check_bits(value: int, length: int) -> None:
    if value < 0 or value >> length:
        raise DimensionMismatch(f"bitset {value:#x} does not fit in length {length}")


@dataclass(frozen=True)
class BitVector:
    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionMismatch("negative length")
        _check_bits(self.value, self.length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        bits = list(bits)
        value = 0
        for j, b in enumerate(bits):
            if b & 1:
                value |= 1 << j
        return cls(value, len(bits))

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(0, length)

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple((self.value >> j) & 1 for j in range(self.length))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.value >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise DimensionMismatch(f"{self.length} != {other.length}")
        return BitVector(self.value ^ other.value, self.length)

    def is_zero(self) -> bool:
        return self.value == 0

    def support(self) -> List[int]:
        return [j for j in range(self.length) if (self.value >> j) & 1]

    def __repr__(self) -> str:
        return "BitVector(" + "".join(map(str, self.bits)) + ")"


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``nrows x ncols`` matrix over GF(2), rows as bitsets."""

    nrows: int
    ncols: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise DimensionMismatch("negative shape")
        if len(self.rows) != self.nrows:
            raise DimensionMismatch(f"expected {self.nrows} rows, got {len(self.rows)}")
        for r in self.rows:
            _check_bits(r, self.ncols)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise DimensionMismatch("ragged matrix")
            rows.append(BitVector.from_bits(row).value)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], nrows: int) -> "BitMatrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col.length != nrows:
                raise DimensionMismatch("column length does not match row count")
            for i in col.support():
                rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def row(self, i: int) -> BitVector:
        return BitVector(self.rows[i], self.ncols)

    def column(self, j: int) -> BitVector:
        value = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                value |= 1 << i
        return BitVector(value, self.nrows)

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} != {other.shape}")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def apply(self, v: BitVector) -> BitVector:
        if v.length != self.ncols:
            raise DimensionMismatch(f"vector length {v.length} != {self.ncols} columns")
        value = 0
        for i, r in enumerate(self.rows):
            if (r & v.value).bit_count() & 1:
                value |= 1 << i
        return BitVector(value, self.nrows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BitMatrix":
        """Return ``P m Q``: new row ``i`` is old row ``row_perm[i]``; old column ``j`` moves to ``col_perm[j]``."""
        rows = []
        for i in row_perm:
            r = self.rows[i]
            new = 0
            for j in range(self.ncols):
                if (r >> j) & 1:
                    new |= 1 << col_perm[j]
            rows.append(new)
        return BitMatrix(self.nrows, self.ncols, tuple(rows))

    def __repr__(self) -> str:
        body = ";".join("".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows)
        return f"BitMatrix({self.nrows}x{self.ncols}: {body})"


def rank(m: BitMatrix) -> int:
    """Dimension of the column span (equal to the row span) over GF(2)."""
    return _kernel.rank(m.rows, m.ncols)


def echelon(m: BitMatrix) -> Tuple[List[int], List[int]]:
    """Reduced row echelon rows and pivot columns of ``m``."""
    return _kernel.echelon(m.rows, m.ncols)


def kernel_basis(m: BitMatrix) -> List[BitVector]:
    """Basis of ``{v : m v = 0}``, one vector per free column in increasing order."""
    basis, pivots = echelon(m)
    pivot_set = set(pivots)
    out = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        value = 1 << free
        for row, p in zip(basis, pivots):
            if (row >> free) & 1:
                value |= 1 << p
        out.append(BitVector(value, m.ncols))
    return out


def image_basis(m: BitMatrix) -> List[BitVector]:
    """Reduced basis of the column space of ``m``."""
    basis, _ = echelon(m.transpose())
    return [BitVector(v, m.nrows) for v in basis]


def span_rank(vectors: Sequence[BitVector], length: int | None = None) -> int:
    if not vectors:
        return 0
    n = vectors[0].length if length is None else length
    for v in vectors:
        if v.length != n:
            raise DimensionMismatch(f"vector length {v.length} != {n}")
    return _kernel.rank([v.value for v in vectors], n)


def quotient_dim(big: Sequence[BitVector], small: Sequence[BitVector]) -> int:
    """``dim span(big) - dim span(small)``, after checking containment."""
    lengths = {v.length for v in big} | {v.length for v in small}
    if len(lengths) > 1:
        raise DimensionMismatch(f"mixed ambient dimensions {sorted(lengths)}")
    if not lengths:
        return 0
    n = lengths.pop()
    rb = span_rank(big, n)
    if span_rank(list(big) + list(small), n) != rb:
        raise ContainmentViolation("span(small) is not contained in span(big)")
    return rb - span_rank(small, n)


def is_invertible(m: BitMatrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def inverse(m: BitMatrix) -> BitMatrix:
    """Inverse via elimination on ``[m | I]``; raises ValueError if singular."""
    n = m.nrows
    if m.ncols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    augmented = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    basis, pivots = _kernel.echelon(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular over GF(2)")
    return BitMatrix(n, n, tuple(row >> n for row in basis[:n]))
