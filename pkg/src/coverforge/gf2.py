"""Arithmetic in the finite field with 2^n elements.

Field elements are polynomials over the two-element field packed into
Python ints: bit i holds the coefficient of x^i, so bit 0 is the constant
term.  A FieldSpec fixes the extension degree n together with the
lexicographically smallest irreducible modulus of degree n, which makes
the representation canonical: equal ints over equal specs are equal field
elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import BinaryMatrix


def poly_degree(p: int) -> int:
    """Degree of a packed polynomial (-1 for the zero polynomial)."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two packed polynomials."""
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def poly_mod(a: int, m: int) -> int:
    """Remainder of a packed polynomial modulo a nonzero modulus."""
    if m == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    dm = poly_degree(m)
    da = poly_degree(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = poly_degree(a)
    return a


def poly_gcd(a: int, b: int) -> int:
    """Greatest common divisor of two packed polynomials."""
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def _poly_powmod_x(exp_log2: int, m: int) -> int:
    """x raised to the power 2^exp_log2, modulo m, by repeated squaring."""
    acc = poly_mod(2, m)
    for _ in range(exp_log2):
        acc = _poly_mulmod(acc, acc, m)
    return acc


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: int) -> bool:
    """Whether a packed polynomial of degree >= 1 is irreducible.

    Uses the finite-field criterion: p of degree d is irreducible exactly
    when x^(2^d) = x modulo p and, for every prime q dividing d,
    gcd(x^(2^(d/q)) - x, p) = 1.
    """
    d = poly_degree(poly)
    if d < 1:
        raise ValueError(f"irreducibility needs degree >= 1, got {poly:#x}")
    if _poly_powmod_x(d, poly) != poly_mod(2, poly):
        return False
    for q in _prime_factors(d):
        probe = _poly_powmod_x(d // q, poly) ^ poly_mod(2, poly)
        if poly_gcd(probe, poly) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Extension degree plus the degree-n modulus fixing the representation."""

    n: int
    modulus: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.n}")
        if poly_degree(self.modulus) != self.n:
            raise ValueError(
                f"modulus {self.modulus:#x} does not have degree {self.n}"
            )
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is reducible")

    @property
    def order(self) -> int:
        return 1 << self.n

    def element(self, bits: int) -> FieldElement:
        return FieldElement(bits, self)

    def to_json(self) -> dict:
        return {"n": self.n, "modulus_hex": format(self.modulus, "x")}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return cls(int(obj["n"]), int(obj["modulus_hex"], 16))


@lru_cache(maxsize=None)
def find_irreducible(n: int) -> FieldSpec:
    """FieldSpec with the lexicographically smallest irreducible of degree n.

    Candidates are scanned in increasing order as ints; anything with a
    zero constant term is divisible by x, so only odd ints are tried.
    """
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    for cand in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_irreducible(cand):
            return FieldSpec(n, cand)
    raise RuntimeError(f"no irreducible of degree {n}")  # cannot happen


@dataclass(frozen=True)
class FieldElement:
    """Field element: packed coefficient vector tied to its FieldSpec."""

    bits: int
    spec: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.bits < self.spec.order:
            raise ValueError(
                f"element {self.bits:#x} out of range for degree {self.spec.n}"
            )

    def __add__(self, other: FieldElement) -> FieldElement:
        if self.spec != other.spec:
            raise ValueError("elements live in different fields")
        return FieldElement(self.bits ^ other.bits, self.spec)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return gf_mul(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def hex(self) -> str:
        return format(self.bits, "x")


def gf_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Product of two field elements over the same spec."""
    if a.spec != b.spec:
        raise ValueError("elements live in different fields")
    return FieldElement(_poly_mulmod(a.bits, b.bits, a.spec.modulus), a.spec)


def gf_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse, computed as a^(2^n - 2); rejects zero."""
    if a.bits == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    m = a.spec.modulus
    # a^(2^n - 2) = prod of a^(2^i) for i = 1 .. n-1.
    sq = a.bits
    acc = 1
    for _ in range(a.spec.n - 1):
        sq = _poly_mulmod(sq, sq, m)
        acc = _poly_mulmod(acc, sq, m)
    return FieldElement(acc, a.spec)


def mul_matrix(alpha: FieldElement) -> BinaryMatrix:
    """Matrix of multiplication by alpha acting on row vectors.

    Row i holds the coefficient vector of alpha * x^i, so for any row
    vector v the product v M is the coefficient vector of alpha times the
    polynomial packed in v.  This matches the row-combination convention
    used by the encoder.
    """
    n = alpha.spec.n
    rows = []
    for i in range(n):
        rows.append(gf_mul(alpha, FieldElement(1 << i, alpha.spec)).bits)
    return BinaryMatrix(n, n, tuple(rows))
