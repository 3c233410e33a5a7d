"""Exact linear algebra over GF(2) on bit-packed rows.

Rows are Python ints used as bitsets; bit ``j`` of a row is the entry in
column ``j``.  Elimination always pivots on the lowest set column, so
every result is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Gf2Vector:
    """Bit vector of fixed length; bit i of ``bits`` is component i."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("vector length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside declared length")

    @classmethod
    def from_bits(cls, entries: Iterable[int]) -> "Gf2Vector":
        bits = 0
        n = 0
        for i, e in enumerate(entries):
            if e not in (0, 1):
                raise ValueError(f"entry {i} is {e}, expected 0 or 1")
            bits |= e << i
            n = i + 1
        return cls(n, bits)

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"component {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]


@dataclass(frozen=True)
class Gf2Matrix:
    """Bit matrix stored one int per row."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be non-negative")
        if len(self.row_bits) != self.rows:
            raise ValueError("row count does not match storage")
        for r, bits in enumerate(self.row_bits):
            if bits < 0 or bits >> self.cols:
                raise ValueError(f"row {r} has bits outside {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Gf2Matrix":
        parsed = []
        width = cols
        for r, row in enumerate(rows):
            entries = list(row)
            if width is None:
                width = len(entries)
            elif len(entries) != width:
                raise ValueError(f"row {r} has {len(entries)} entries, expected {width}")
            bits = 0
            for j, e in enumerate(entries):
                if e not in (0, 1):
                    raise ValueError(f"entry ({r},{j}) is {e}, expected 0 or 1")
                bits |= e << j
            parsed.append(bits)
        return cls(len(parsed), width or 0, tuple(parsed))

    @classmethod
    def from_bitmasks(cls, masks: Iterable[int], cols: int) -> "Gf2Matrix":
        masks = tuple(masks)
        return cls(len(masks), cols, masks)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    def get(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"({r},{c}) out of range for {self.rows}x{self.cols}")
        return (self.row_bits[r] >> c) & 1

    def transpose(self) -> "Gf2Matrix":
        cols = []
        for c in range(self.cols):
            bits = 0
            for r in range(self.rows):
                bits |= ((self.row_bits[r] >> c) & 1) << r
            cols.append(bits)
        return Gf2Matrix(self.cols, self.rows, tuple(cols))

    def augment_column(self, rhs: Gf2Vector) -> "Gf2Matrix":
        """Append ``rhs`` as an extra final column."""
        if rhs.length != self.rows:
            raise ValueError(f"rhs length {rhs.length} != row count {self.rows}")
        rows = tuple(bits | (rhs.get(r) << self.cols) for r, bits in enumerate(self.row_bits))
        return Gf2Matrix(self.rows, self.cols + 1, rows)

    def mul_vec(self, v: Gf2Vector) -> Gf2Vector:
        if v.length != self.cols:
            raise ValueError(f"vector length {v.length} != column count {self.cols}")
        out = 0
        for r, bits in enumerate(self.row_bits):
            out |= ((bits & v.bits).bit_count() & 1) << r
        return Gf2Vector(self.rows, out)


def rank(m: Gf2Matrix) -> int:
    """Row rank over GF(2) via Gaussian elimination; input untouched."""
    work = list(m.row_bits)
    r = 0
    for c in range(m.cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> c) & 1:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def solve(a: Gf2Matrix, rhs: Gf2Vector) -> Gf2Vector | None:
    """One solution of ``a @ x = rhs`` over GF(2), or None if inconsistent.

    Free variables are set to 0, which makes the result the
    lexicographically least solution by column index.
    """
    if rhs.length != a.rows:
        raise ValueError(f"rhs length {rhs.length} != row count {a.rows}")
    work = [bits | (rhs.get(r) << a.cols) for r, bits in enumerate(a.row_bits)]
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> c) & 1:
                work[i] ^= work[r]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    rhs_bit = 1 << a.cols
    for i in range(r, len(work)):
        if work[i] & rhs_bit:
            return None
    # After full reduction each pivot row reads x[pivot] + (free terms) = rhs;
    # with free variables zeroed the pivot value is the augmented bit itself.
    x = 0
    for row_idx, c in enumerate(pivots):
        if work[row_idx] & rhs_bit:
            x |= 1 << c
    return Gf2Vector(a.cols, x)
