"""Bit-packed linear algebra and linear codes over the two-element field.

A matrix row is a Python int whose bit j is the entry in column j, so row
operations are XORs and a row-vector/matrix product is an XOR of selected
rows.  Codes are presented by generator matrices; messages and codewords
are likewise ints with bit i holding coordinate i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import GuardError

# Above this generator rank, exhaustive codeword enumeration is refused.
RANK_MAX = 28


@dataclass(frozen=True)
class BinaryMatrix:
    """Immutable binary matrix with int-packed rows (bit j = column j)."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for r in self.data:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: list[int] | tuple[int, ...], cols: int) -> BinaryMatrix:
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> BinaryMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BinaryMatrix:
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> int:
        return self.data[i]

    def bit(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def transpose(self) -> BinaryMatrix:
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BinaryMatrix(self.cols, self.rows, tuple(out))

    def __matmul__(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.data:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= other.data[low.bit_length() - 1]
                rr ^= low
            out.append(acc)
        return BinaryMatrix(self.rows, other.cols, tuple(out))

    def mul_vector(self, v: int) -> int:
        """Row vector times matrix: XOR of the rows selected by bits of v."""
        if not 0 <= v < (1 << self.rows):
            raise ValueError(f"vector {v:#x} does not fit in {self.rows} bits")
        acc = 0
        while v:
            low = v & -v
            acc ^= self.data[low.bit_length() - 1]
            v ^= low
        return acc

    def hstack(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        data = tuple(a | (b << self.cols) for a, b in zip(self.data, other.data))
        return BinaryMatrix(self.rows, self.cols + other.cols, data)

    def vstack(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return BinaryMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "row_hex": [format(r, "x") for r in self.data],
        }

    @classmethod
    def from_json(cls, obj: dict) -> BinaryMatrix:
        data = tuple(int(h, 16) for h in obj["row_hex"])
        return cls(int(obj["rows"]), int(obj["cols"]), data)

    def __str__(self) -> str:
        return "\n".join(
            "".join(str((r >> j) & 1) for j in range(self.cols)) for r in self.data
        )


def _row_reduce(rows: list[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Pivots take the leftmost available column, chosen from the topmost
    unused row, and are cleared from every other row, so the output is
    canonical for the row space.  Returns (reduced nonzero rows, pivot
    columns), both in pivot order.
    """
    work = list(rows)
    pivots: list[int] = []
    reduced: list[int] = []
    top = 0
    for j in range(cols):
        sel = None
        for i in range(top, len(work)):
            if (work[i] >> j) & 1:
                sel = i
                break
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        piv = work[top]
        for i in range(len(work)):
            if i != top and (work[i] >> j) & 1:
                work[i] ^= piv
        for k in range(len(reduced)):
            if (reduced[k] >> j) & 1:
                reduced[k] ^= piv
        reduced.append(piv)
        pivots.append(j)
        top += 1
        if top == len(work):
            break
    return reduced, pivots


@dataclass(frozen=True)
class LinearCode:
    """Linear code presented by a generator matrix (rows span the code)."""

    generator: BinaryMatrix

    @property
    def blocklength(self) -> int:
        return self.generator.cols

    @property
    def dimension(self) -> int:
        """Nominal dimension: the number of generator rows."""
        return self.generator.rows

    @cached_property
    def _reduced(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        rows, pivots = _row_reduce(list(self.generator.data), self.generator.cols)
        return tuple(rows), tuple(pivots)

    @property
    def rank(self) -> int:
        """True dimension: rank of the generator matrix."""
        return len(self._reduced[0])

    @property
    def size(self) -> int:
        return 1 << self.rank

    @property
    def rate(self) -> float:
        if self.blocklength == 0:
            return 0.0
        return self.rank / self.blocklength

    def contains(self, word: int) -> bool:
        """Membership test by eliminating word against the reduced rows."""
        rows, pivots = self._reduced
        for r, j in zip(rows, pivots):
            if (word >> j) & 1:
                word ^= r
        return word == 0

    def to_json(self) -> dict:
        return {"generator": self.generator.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> LinearCode:
        return cls(BinaryMatrix.from_json(obj["generator"]))


def encode(code: LinearCode, message: int) -> int:
    """Codeword for a message: XOR of the generator rows picked by its bits."""
    return code.generator.mul_vector(message)


def rank(matrix: BinaryMatrix) -> int:
    """Rank of a binary matrix via row reduction."""
    return len(_row_reduce(list(matrix.data), matrix.cols)[0])


def codewords(code: LinearCode) -> Iterator[int]:
    """Yield all 2^rank distinct codewords in Gray-code order."""
    rows, _ = code._reduced
    if len(rows) > RANK_MAX:
        raise GuardError(
            f"codeword enumeration needs rank <= {RANK_MAX}, got {len(rows)}"
        )
    word = 0
    yield 0
    for i in range(1, 1 << len(rows)):
        word ^= rows[(i & -i).bit_length() - 1]
        yield word


# span_array materializes 8 * 2^rank bytes, so it gets a tighter cap.
SPAN_RANK_MAX = 24


def span_array(code: LinearCode) -> np.ndarray:
    """All distinct codewords as a uint64 array (blocklength <= 64 only)."""
    if code.blocklength > 64:
        raise GuardError(
            f"span_array needs blocklength <= 64, got {code.blocklength}"
        )
    rows, _ = code._reduced
    if len(rows) > SPAN_RANK_MAX:
        raise GuardError(
            f"span_array needs rank <= {SPAN_RANK_MAX}, got {len(rows)}"
        )
    span = np.zeros(1 << len(rows), dtype=np.uint64)
    for i, r in enumerate(rows):
        half = 1 << i
        span[half : 2 * half] = span[:half] ^ np.uint64(r)
    return span


def parity_check(code: LinearCode) -> BinaryMatrix:
    """Parity-check matrix H with c H^T = 0 exactly on codewords.

    Built from the reduced generator: each non-pivot column j yields the
    check row e_j + sum over pivots i of (generator bit at (i, j)) e_i.
    For a rank-zero code H is the identity.
    """
    m = code.blocklength
    rows, pivots = code._reduced
    pivot_set = set(pivots)
    checks = []
    for j in range(m):
        if j in pivot_set:
            continue
        h = 1 << j
        for r, p in zip(rows, pivots):
            if (r >> j) & 1:
                h |= 1 << p
        checks.append(h)
    return BinaryMatrix(len(checks), m, tuple(checks))


def min_distance(code: LinearCode) -> int:
    """Exact minimum weight of a nonzero codeword by full enumeration.

    Uses the rank-many independent rows, so duplicated generator rows do
    not inflate the work.  Rejects rank 0 (no nonzero codeword) and rank
    above RANK_MAX.
    """
    k = code.rank
    if k == 0:
        raise ValueError("minimum distance is undefined for the zero code")
    if k > RANK_MAX:
        raise GuardError(f"min_distance needs rank <= {RANK_MAX}, got {k}")
    rows = code._reduced[0]
    if code.blocklength <= 64:
        # Vectorized base span over the first rows, Gray walk over the rest.
        base_k = min(k, 20)
        span = np.zeros(1 << base_k, dtype=np.uint64)
        for i, r in enumerate(rows[:base_k]):
            half = 1 << i
            span[half : 2 * half] = span[:half] ^ np.uint64(r)
        best = int(np.bitwise_count(span[1:]).min()) if base_k else code.blocklength
        extra = rows[base_k:]
        offset = 0
        for g in range(1, 1 << len(extra)):
            offset ^= extra[(g & -g).bit_length() - 1]
            w = int(np.bitwise_count(span ^ np.uint64(offset)).min())
            if w < best:
                best = w
        return best
    best = code.blocklength
    word = 0
    for i in range(1, 1 << k):
        word ^= rows[(i & -i).bit_length() - 1]
        w = word.bit_count()
        if w < best:
            best = w
    return best


def direct_sum(a: LinearCode, b: LinearCode) -> LinearCode:
    """Direct sum: codewords are concatenations of one word from each part."""
    ga, gb = a.generator, b.generator
    data = ga.data + tuple(r << ga.cols for r in gb.data)
    gen = BinaryMatrix(ga.rows + gb.rows, ga.cols + gb.cols, data)
    return LinearCode(gen)
