"""Constructors and samplers for the code families under study.

The central family is the rate-1/2 ensemble encoding a message x as the
pair (x, alpha x) with alpha ranging over a field of order 2^n, generator
[I | M_alpha].  Augmentation stacks extra random rows under that
generator; puncturing and truncating restrict it to leading coordinate
blocks; the circulant and plain-random families serve as baselines; the
block-diagonal constructor glues independent members into one long code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .gf2 import FieldElement, find_irreducible, mul_matrix
from .linalg import BinaryMatrix, LinearCode, direct_sum
from .rng import SplitMix64


@dataclass(frozen=True)
class EnsembleParams:
    """Inner dimension n, augmentation row count t, optional c and k.

    When built from a constant c, t = ceil(c * log2(n)).  The optional k
    selects how many leading coordinates a punctured or truncated variant
    keeps, and must satisfy 0 < k < n.
    """

    n: int
    t: int
    c: float | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"inner dimension must be >= 1, got {self.n}")
        if self.t < 0:
            raise ValueError(f"row count must be >= 0, got {self.t}")
        if self.c is not None and self.t != derive_row_count(self.n, self.c):
            raise ValueError(
                f"t = {self.t} does not match ceil({self.c} * log2({self.n}))"
            )
        if self.k is not None and not 0 < self.k < self.n:
            raise ValueError(f"k must satisfy 0 < k < n, got k={self.k}")

    @classmethod
    def from_c(cls, n: int, c: float, k: int | None = None) -> EnsembleParams:
        return cls(n, derive_row_count(n, c), c, k)


def derive_row_count(n: int, c: float) -> int:
    """Augmentation row count t = ceil(c * log2(n))."""
    if n < 1:
        raise ValueError(f"inner dimension must be >= 1, got {n}")
    if c < 0:
        raise ValueError(f"constant must be >= 0, got {c}")
    return math.ceil(c * math.log2(n))


@dataclass(frozen=True)
class EnsembleSample:
    """One draw of the augmented ensemble: alpha plus t random rows."""

    alpha: FieldElement
    m_rows: BinaryMatrix
    seed: int
    params: EnsembleParams

    def __post_init__(self) -> None:
        n, t = self.params.n, self.params.t
        if self.m_rows.shape != (t, 2 * n):
            raise ValueError(
                f"augmentation rows must be {t} x {2 * n}, got {self.m_rows.shape}"
            )
        if self.alpha.spec.n != n:
            raise ValueError("alpha does not live in the configured field")

    def code(self) -> LinearCode:
        """The sampled code: base generator with the random rows stacked."""
        return augment(wozencraft(self.alpha), self.m_rows)

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "t": self.params.t,
            "alpha_hex": self.alpha.hex(),
            "m_rows": self.m_rows.to_json(),
            "seed": str(self.seed),
        }

    @classmethod
    def from_json(cls, obj: dict) -> EnsembleSample:
        n, t = int(obj["n"]), int(obj["t"])
        spec = find_irreducible(n)
        return cls(
            alpha=spec.element(int(obj["alpha_hex"], 16)),
            m_rows=BinaryMatrix.from_json(obj["m_rows"]),
            seed=int(obj["seed"]),
            params=EnsembleParams(n, t),
        )


def wozencraft(alpha: FieldElement) -> LinearCode:
    """Rate-1/2 code sending x to (x, alpha x): generator [I | M_alpha]."""
    n = alpha.spec.n
    gen = BinaryMatrix.identity(n).hstack(mul_matrix(alpha))
    return LinearCode(gen)


def augment(code: LinearCode, m_rows: BinaryMatrix) -> LinearCode:
    """Stack extra generator rows under a code's generator."""
    if m_rows.cols != code.blocklength:
        raise ValueError(
            f"row width {m_rows.cols} differs from blocklength {code.blocklength}"
        )
    return LinearCode(code.generator.vstack(m_rows))


def sample(params: EnsembleParams, seed: int) -> EnsembleSample:
    """Draw one ensemble member from a seeded stream.

    Stream derivation rule: a single SplitMix64 stream seeded with `seed`
    supplies first the n bits of alpha, then the t augmentation rows in
    order, each as 2n bits.
    """
    spec = find_irreducible(params.n)
    stream = SplitMix64(seed)
    alpha = spec.element(stream.bits(params.n))
    width = 2 * params.n
    rows = tuple(stream.bits(width) for _ in range(params.t))
    m_rows = BinaryMatrix(params.t, width, rows)
    return EnsembleSample(alpha, m_rows, seed, params)


def puncture_wozencraft(alpha: FieldElement, k: int) -> LinearCode:
    """Restriction to the first n + k coordinates with k-bit messages.

    Generator [I_k | first k rows of M_alpha]: the codeword for a k-bit
    message m' equals the full-length codeword of m' zero-padded to n
    bits, restricted to coordinates {0..k-1} and the whole second half.
    """
    n = alpha.spec.n
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k} n={n}")
    m_alpha = mul_matrix(alpha)
    rows = tuple((1 << i) | (m_alpha.row(i) << k) for i in range(k))
    return LinearCode(BinaryMatrix(k, n + k, rows))


def truncate_wozencraft(alpha: FieldElement, k: int) -> LinearCode:
    """Deletion of the last n - k coordinates: generator [I_n | M_alpha cols < k]."""
    n = alpha.spec.n
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k} n={n}")
    m_alpha = mul_matrix(alpha)
    mask = (1 << k) - 1
    rows = tuple((1 << i) | ((m_alpha.row(i) & mask) << n) for i in range(n))
    return LinearCode(BinaryMatrix(n, n + k, rows))


def rotate_right(row: int, n: int) -> int:
    """One-step cyclic shift: coordinate j of the result is coordinate j-1 mod n."""
    if not 0 <= row < (1 << n):
        raise ValueError(f"row {row:#x} does not fit in {n} bits")
    return ((row << 1) | (row >> (n - 1))) & ((1 << n) - 1)


def quasicyclic(first_row: int, n: int) -> LinearCode:
    """Code with generator [I | Q], Q circulant with the given first row."""
    rows = []
    q = first_row
    for i in range(n):
        rows.append((1 << i) | (q << n))
        q = rotate_right(q, n)
    return LinearCode(BinaryMatrix(n, 2 * n, tuple(rows)))


def random_linear(kdim: int, m: int, seed: int) -> LinearCode:
    """Uniform kdim x m generator drawn from a seeded stream, row by row."""
    if kdim < 0:
        raise ValueError(f"dimension must be >= 0, got {kdim}")
    if kdim > m:
        raise ValueError(f"dimension {kdim} exceeds blocklength {m}")
    stream = SplitMix64(seed)
    rows = tuple(stream.bits(m) for _ in range(kdim))
    return LinearCode(BinaryMatrix(kdim, m, rows))


def concatenated_code(members: list[LinearCode]) -> LinearCode:
    """Block-diagonal combination of independent member codes."""
    if not members:
        raise ValueError("member list must be nonempty")
    return reduce(direct_sum, members)
