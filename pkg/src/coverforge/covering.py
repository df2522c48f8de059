"""Covering geometry of binary codes: balls, bitmaps, coset leaders.

Two independent engines compute coverage.  The bitmap engine materializes
the whole space as a bit array (one bit per point of F_2^m) and grows the
covered set by XOR translations, so its cost scales with 2^m.  The coset
engine runs breadth-first search over syndromes, so its cost scales with
2^redundancy.  Both produce exact answers; agreement between them is a
cross-check, not a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator

import numpy as np

from .errors import GuardError
from .linalg import LinearCode, parity_check

# Soft guards, overridable per call: bitmap engine refuses dimensions above
# M_MAX, the coset engine refuses redundancies above S_MAX.
M_MAX = 28
S_MAX = 26

# Hard ceiling on bitmap dimension (2^60 bits is far beyond any memory).
_M_HARD = 60

# Sub-word butterfly masks: entry j selects the low half of each block of
# 2^(j+1) bits, so XOR-by-2^j swaps the two halves of every block.
_BUTTERFLY = tuple(
    np.uint64(v)
    for v in (
        0x5555555555555555,
        0x3333333333333333,
        0x0F0F0F0F0F0F0F0F,
        0x00FF00FF00FF00FF,
        0x0000FFFF0000FFFF,
        0x00000000FFFFFFFF,
    )
)


def ball_volume(m: int, r: int) -> int:
    """Number of points within Hamming distance r of a point in F_2^m."""
    if m < 0:
        raise ValueError(f"space dimension must be nonnegative, got {m}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    if r > m:
        raise ValueError(f"radius {r} exceeds space dimension {m}")
    return sum(math.comb(m, i) for i in range(r + 1))


def radius_for_volume(m: int, target: int) -> int:
    """Smallest radius whose ball in F_2^m holds at least target points."""
    if target < 1:
        raise ValueError(f"target volume must be >= 1, got {target}")
    if target > (1 << m):
        raise ValueError(
            f"target volume {target} exceeds space size 2^{m} = {1 << m}"
        )
    cum = 0
    term = 1
    for r in range(m + 1):
        cum += term
        if cum >= target:
            return r
        term = term * (m - r) // (r + 1)
    raise AssertionError("unreachable: full ball covers the space")


def binary_entropy(x: float) -> float:
    """Binary entropy -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_inverse(y: float) -> float:
    """Inverse of binary entropy on [0, 1/2], by bisection."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"entropy value must lie in [0, 1], got {y}")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sphere_covering_rate(gamma: float) -> float:
    """Minimum possible rate of a code with relative covering radius gamma."""
    if not 0.0 <= gamma <= 0.5:
        raise ValueError(
            f"relative covering radius must lie in [0, 1/2], got {gamma}"
        )
    return 1.0 - binary_entropy(gamma)


@dataclass(frozen=True)
class BallSpec:
    """A Hamming ball shape: ambient dimension plus radius."""

    m: int
    radius: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"space dimension must be nonnegative, got {self.m}")
        if not 0 <= self.radius <= self.m:
            raise ValueError(
                f"radius {self.radius} out of range for dimension {self.m}"
            )

    @classmethod
    def from_volume(cls, m: int, target: int) -> BallSpec:
        """Ball with the smallest radius holding at least target points."""
        return cls(m, radius_for_volume(m, target))

    @property
    def volume(self) -> int:
        return ball_volume(self.m, self.radius)


class SpaceBitmap:
    """Subset of F_2^m stored one bit per point in packed 64-bit words.

    Point u lives at bit (u mod 64) of word (u div 64).  Dimensions below
    6 use a single word whose padding bits are kept at zero.
    """

    __slots__ = ("m", "words")

    def __init__(self, m: int, words: np.ndarray) -> None:
        if not 0 <= m <= _M_HARD:
            raise ValueError(f"bitmap dimension must lie in [0, {_M_HARD}], got {m}")
        expect = 1 << max(0, m - 6)
        if words.dtype != np.uint64 or words.shape != (expect,):
            raise ValueError("words must be a uint64 array of length 2^max(0,m-6)")
        self.m = m
        self.words = words

    @classmethod
    def empty(cls, m: int) -> SpaceBitmap:
        return cls(m, np.zeros(1 << max(0, m - 6), dtype=np.uint64))

    @classmethod
    def full(cls, m: int) -> SpaceBitmap:
        out = cls.empty(m)
        out.words[:] = out._word_mask()
        return out

    @classmethod
    def from_points(cls, m: int, points: Iterable[int]) -> SpaceBitmap:
        out = cls.empty(m)
        for u in points:
            out.set(u)
        return out

    @classmethod
    def from_value(cls, m: int, value: int) -> SpaceBitmap:
        """Bitmap whose point u is set iff bit u of value is set."""
        if not 0 <= value < (1 << (1 << m)):
            raise ValueError(f"value needs more than 2^{m} bits")
        nwords = 1 << max(0, m - 6)
        raw = value.to_bytes(nwords * 8, "little")
        return cls(m, np.frombuffer(raw, dtype=np.uint64).copy())

    def to_value(self) -> int:
        """The set packed into one int: bit u is point u's membership."""
        return int.from_bytes(self.words.tobytes(), "little")

    def _word_mask(self) -> np.uint64:
        if self.m >= 6:
            return np.uint64(0xFFFFFFFFFFFFFFFF)
        return np.uint64((1 << (1 << self.m)) - 1)

    def copy(self) -> SpaceBitmap:
        return SpaceBitmap(self.m, self.words.copy())

    def _check_point(self, u: int) -> None:
        if not 0 <= u < (1 << self.m):
            raise ValueError(f"point {u:#x} outside F_2^{self.m}")

    def get(self, u: int) -> bool:
        self._check_point(u)
        return bool((int(self.words[u >> 6]) >> (u & 63)) & 1)

    def set(self, u: int) -> None:
        self._check_point(u)
        self.words[u >> 6] |= np.uint64(1 << (u & 63))

    def popcount(self) -> int:
        return int(np.bitwise_count(self.words).sum(dtype=np.int64))

    def is_full(self) -> bool:
        return self.popcount() == (1 << self.m)

    def translate(self, u: int) -> SpaceBitmap:
        """Bitmap of the translated set {s XOR u : s in this set}.

        Word-level part of u permutes whole words by index XOR; the low
        six bits are applied inside each word by butterfly swaps.
        """
        self._check_point(u)
        w = self.words
        wu = u >> 6
        if wu:
            w = w[np.arange(w.size, dtype=np.uint64) ^ np.uint64(wu)]
        su = u & 63
        for j in range(6):
            if (su >> j) & 1:
                s = np.uint64(1 << j)
                mask = _BUTTERFLY[j]
                w = ((w & mask) << s) | ((w >> s) & mask)
        if w is self.words:
            w = w.copy()
        return SpaceBitmap(self.m, w)

    def union_with(self, other: SpaceBitmap) -> None:
        """In-place union."""
        if self.m != other.m:
            raise ValueError("bitmap dimensions differ")
        np.bitwise_or(self.words, other.words, out=self.words)

    def __or__(self, other: SpaceBitmap) -> SpaceBitmap:
        out = self.copy()
        out.union_with(other)
        return out

    def intersection(self, other: SpaceBitmap) -> SpaceBitmap:
        if self.m != other.m:
            raise ValueError("bitmap dimensions differ")
        return SpaceBitmap(self.m, self.words & other.words)

    def __and__(self, other: SpaceBitmap) -> SpaceBitmap:
        return self.intersection(other)

    def complement(self) -> SpaceBitmap:
        return SpaceBitmap(self.m, ~self.words & self._word_mask())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpaceBitmap):
            return NotImplemented
        return self.m == other.m and bool(np.array_equal(self.words, other.words))

    def points(self) -> Iterator[int]:
        """Yield the set's points in increasing order."""
        for i, w in enumerate(self.words):
            w = int(w)
            base = i << 6
            while w:
                low = w & -w
                yield base + low.bit_length() - 1
                w ^= low


def xor_translate(bitmap: SpaceBitmap, u: int) -> SpaceBitmap:
    """Translate a point set by XOR with u."""
    return bitmap.translate(u)


def code_bitmap(code: LinearCode, m_max: int | None = None) -> SpaceBitmap:
    """Bitmap of all codewords, built by doubling over independent rows."""
    limit = M_MAX if m_max is None else m_max
    m = code.blocklength
    if m > limit:
        raise GuardError(
            f"bitmap engine needs space dimension <= {limit}, got {m}"
        )
    out = SpaceBitmap.empty(m)
    out.set(0)
    for row in code._reduced[0]:
        out.union_with(out.translate(row))
    return out


def expand_ball(bitmap: SpaceBitmap, radius: int) -> SpaceBitmap:
    """Points within Hamming distance radius of the given set.

    Runs radius rounds; each round ORs all m unit translates of the
    current set into it, growing the set by one step of Hamming distance.
    """
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    cur = bitmap.copy()
    for _ in range(radius):
        nxt = cur.copy()
        for j in range(bitmap.m):
            nxt.union_with(cur.translate(1 << j))
        cur = nxt
    return cur


@dataclass(frozen=True)
class CosetLeaderProfile:
    """Distribution of coset leader weights: counts[w] cosets of weight w."""

    redundancy: int
    counts: tuple[int, ...]

    @property
    def covering_radius(self) -> int:
        return len(self.counts) - 1

    @property
    def cosets(self) -> int:
        return 1 << self.redundancy

    def fraction_covered(self, radius: int) -> Fraction:
        """Exact fraction of the space within the given radius of the code."""
        within = sum(self.counts[: radius + 1])
        return Fraction(within, self.cosets)

    def to_csv(self, fp: IO[str]) -> None:
        fp.write("weight,count\n")
        for w, c in enumerate(self.counts):
            fp.write(f"{w},{c}\n")


def coset_leader_profile(
    code: LinearCode, s_max: int | None = None
) -> CosetLeaderProfile:
    """Coset leader weights by breadth-first search over syndromes.

    Starts at the zero syndrome and repeatedly XORs in single parity-check
    columns, so a syndrome is first reached at exactly its leader weight.
    """
    limit = S_MAX if s_max is None else s_max
    h = parity_check(code)
    red = h.rows
    if red > limit:
        raise GuardError(
            f"coset engine needs redundancy <= {limit}, got {red}"
        )
    m = code.blocklength
    cols = np.zeros(m, dtype=np.uint32)
    for i, row in enumerate(h.data):
        r = row
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= np.uint32(1 << i)
            r ^= low
    weights = np.full(1 << red, -1, dtype=np.int8)
    weights[0] = 0
    frontier = np.zeros(1, dtype=np.uint32)
    dist = 0
    while frontier.size:
        parts = []
        for j in range(m):
            cand = frontier ^ cols[j]
            new = cand[weights[cand] < 0]
            if new.size:
                weights[new] = dist + 1
                parts.append(new)
        frontier = (
            np.concatenate(parts) if parts else np.empty(0, dtype=np.uint32)
        )
        dist += 1
    counts = np.bincount(weights.astype(np.int64))
    return CosetLeaderProfile(red, tuple(int(c) for c in counts))


def _pick_engine(
    code: LinearCode, engine: str, m_max: int | None, s_max: int | None
) -> str:
    if engine in ("bitmap", "coset"):
        return engine
    if engine != "auto":
        raise ValueError(f"unknown engine {engine!r}")
    m_lim = M_MAX if m_max is None else m_max
    s_lim = S_MAX if s_max is None else s_max
    red = code.blocklength - code.rank
    if red <= s_lim:
        return "coset"
    if code.blocklength <= m_lim:
        return "bitmap"
    raise GuardError(
        f"space dimension {code.blocklength} exceeds bitmap guard {m_lim} "
        f"and redundancy {red} exceeds syndrome guard {s_lim}"
    )


def covered_fraction(
    code: LinearCode,
    ball: BallSpec,
    engine: str = "auto",
    m_max: int | None = None,
    s_max: int | None = None,
) -> Fraction:
    """Exact fraction of F_2^m within the ball's radius of some codeword."""
    if ball.m != code.blocklength:
        raise ValueError(
            f"ball dimension {ball.m} differs from blocklength {code.blocklength}"
        )
    chosen = _pick_engine(code, engine, m_max, s_max)
    if chosen == "coset":
        prof = coset_leader_profile(code, s_max)
        return prof.fraction_covered(ball.radius)
    grown = expand_ball(code_bitmap(code, m_max), ball.radius)
    return Fraction(grown.popcount(), 1 << code.blocklength)


def covering_radius(
    code: LinearCode,
    engine: str = "auto",
    m_max: int | None = None,
    s_max: int | None = None,
) -> int:
    """Smallest radius at which balls around all codewords cover the space."""
    chosen = _pick_engine(code, engine, m_max, s_max)
    if chosen == "coset":
        return coset_leader_profile(code, s_max).covering_radius
    cur = code_bitmap(code, m_max)
    radius = 0
    while not cur.is_full():
        cur = expand_ball(cur, 1)
        radius += 1
    return radius


def format_fraction(value: Fraction) -> str:
    """Serialize an exact rational as 'numerator/denominator'."""
    return f"{value.numerator}/{value.denominator}"
