"""Prime-field arithmetic for share generation, summation and interpolation.

All values live in GF(p) for an odd prime p < 2^63.  Python integers are
arbitrary precision, so products of two 62-bit values never overflow; the
upper bound on p exists to keep share logs portable to fixed-width readers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundTooLarge, EmptyPolynomial, MismatchedField, NotPrime, ZeroInverse

MAX_PRIME = 1 << 63

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the whole supported range below 2^63).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^64."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n == b:
            return True
        if n % b == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def validate_prime(p: int) -> int:
    """Check that p is usable as a field modulus; returns p."""
    if not 3 <= p < MAX_PRIME:
        raise NotPrime(f"modulus {p} outside supported range [3, 2^63)")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


def next_prime_above(bound: int) -> int:
    """Smallest prime strictly greater than bound."""
    if not 2 <= bound < (1 << 62):
        raise BoundTooLarge(f"bound {bound} outside [2, 2^62)")
    n = bound + 1
    if n % 2 == 0 and n != 2:
        n += 1
    while not is_prime(n):
        n += 2
    if n >= MAX_PRIME:
        raise BoundTooLarge(f"next prime above {bound} exceeds 2^63")
    return n


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of GF(p), normalized to [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        if self.p < 3:
            raise NotPrime(f"modulus {self.p} too small")
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "FieldElement") -> None:
        if self.p != other.p:
            raise MismatchedField(f"operands in GF({self.p}) and GF({other.p})")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.value + other.value, self.p)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.value - other.value, self.p)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.value * other.value, self.p)

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.p})")
        return FieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.p})"


def fe(value: int, p: int) -> FieldElement:
    return FieldElement(value, p)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inv()


def poly_eval(coeffs: list[FieldElement], x: FieldElement) -> FieldElement:
    """Evaluate coeffs[0] + coeffs[1]*x + ... via Horner's rule."""
    if not coeffs:
        raise EmptyPolynomial("polynomial needs at least a constant term")
    acc = FieldElement(0, x.p)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
