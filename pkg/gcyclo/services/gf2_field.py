"""GF(2)[x] polynomial arithmetic and GF(2^k) fields holding the p^j-th roots of unity.

Polynomials over GF(2) are nonnegative integers: bit t is the coefficient
of x^t. Field elements are such integers reduced modulo the field's
irreducible modulus.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional

import numpy as np

from ..config import settings
from ..errors import FieldContextError, ParameterError, SizeError, UndefinedGcdError
from .number_theory import multiplicative_order, validate_odd_prime

logger = logging.getLogger(__name__)


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two bit vectors."""
    if a < b:
        a, b = b, a
    result = 0
    while b:
        low = b & -b
        result ^= a << (low.bit_length() - 1)
        b ^= low
    return result


def _square(a: int) -> int:
    # Squaring in characteristic 2 spreads bit t to bit 2t
    if a == 0:
        return 0
    return int("0".join(format(a, "b")), 2)


def _mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    da = a.bit_length() - 1
    while da >= dm:
        a ^= m << (da - dm)
        da = a.bit_length() - 1
    return a


def _divmod(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length() - 1
    q = 0
    da = a.bit_length() - 1
    while da >= db:
        shift = da - db
        q ^= 1 << shift
        a ^= b << shift
        da = a.bit_length() - 1
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


@dataclass(frozen=True)
class Gf2Poly:
    """A polynomial over GF(2), coefficient of x^t at bit t of `value`."""

    value: int = 0

    def __post_init__(self):
        if self.value < 0:
            raise ParameterError("polynomial encoding must be nonnegative")

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Gf2Poly":
        value = 0
        for t in exponents:
            value ^= 1 << t
        return cls(value)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Gf2Poly":
        """Coefficient t taken from bits[t]."""
        array = bits if isinstance(bits, np.ndarray) else np.fromiter(bits, dtype=np.uint8)
        packed = np.packbits(array.astype(np.uint8), bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def x_pow_plus_one(cls, n: int) -> "Gf2Poly":
        """x^n + 1 (= x^n - 1 over GF(2))."""
        return cls((1 << n) | 1)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return self.value.bit_length() - 1

    def is_zero(self) -> bool:
        return self.value == 0

    def coefficient(self, t: int) -> int:
        return (self.value >> t) & 1

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_clmul(self.value, other.value))

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        q, r = _divmod(self.value, other.value)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        return Gf2Poly(_mod(self.value, other.value))

    def __str__(self) -> str:
        if self.value == 0:
            return "0"
        terms = []
        for t in range(self.degree, -1, -1):
            if (self.value >> t) & 1:
                terms.append("1" if t == 0 else "x" if t == 1 else f"x^{t}")
        return " + ".join(terms)


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Monic gcd over GF(2); gcd(a, 0) = a."""
    if not a and not b:
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    return Gf2Poly(_gcd(a.value, b.value))


def is_irreducible(f: Gf2Poly) -> bool:
    """Irreducibility via gcd(x^(2^i) - x, f) = 1 for 1 <= i <= deg f / 2."""
    if f.degree < 1:
        return False
    m = f.value
    x_power = 2
    for _ in range(f.degree // 2):
        x_power = _mod(_square(x_power), m)
        if _gcd(x_power ^ 2, m) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(k: int) -> Gf2Poly:
    """The monic irreducible polynomial of degree k with the smallest encoding."""
    if k < 1:
        raise ParameterError("degree must be at least 1")
    if k == 1:
        return Gf2Poly(0b10)

    for candidate in range(1 << k, 1 << (k + 1)):
        # Skip multiples of x and of x + 1
        if not candidate & 1 or candidate.bit_count() % 2 == 0:
            continue
        poly = Gf2Poly(candidate)
        if is_irreducible(poly):
            logger.debug(f"Irreducible of degree {k}: {poly}")
            return poly
    # Unreachable: irreducibles exist in every degree
    raise ParameterError(f"no irreducible polynomial of degree {k}")


def extension_degree(p: int, j: int) -> int:
    """[F_2(alpha_j) : F_2] = ord_{p^j}(2)."""
    return multiplicative_order(2, p**j)


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^k) with k = ord_{p^n}(2) and a fixed primitive p^n-th root of unity."""

    p: int
    n: int
    k: int
    modulus: Gf2Poly
    alpha_n: int
    alpha: tuple[int, ...]

    @property
    def period(self) -> int:
        return self.p**self.n

    def element(self, value: int) -> "FieldElement":
        return FieldElement(_mod(value, self.modulus.value), self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def alpha_at(self, j: int) -> "FieldElement":
        """alpha_j = alpha_n^(p^(n-j)), a primitive p^j-th root of unity."""
        if not 1 <= j <= self.n:
            raise ParameterError(f"level j = {j} outside 1..{self.n}")
        return FieldElement(self.alpha[j - 1], self)

    @cached_property
    def powers(self) -> list[int]:
        """alpha_n^h for h in [0, p^n)."""
        table = [1]
        for _ in range(self.period - 1):
            table.append(_mulmod(table[-1], self.alpha_n, self.modulus.value))
        return table

    @cached_property
    def powers_array(self) -> Optional[np.ndarray]:
        """The power table as uint64 words when elements fit one word."""
        if self.k > 64:
            return None
        return np.array(self.powers, dtype=np.uint64)

    @cached_property
    def exponent_of(self) -> dict[int, int]:
        """Inverse of the power table: element value -> h."""
        return {value: h for h, value in enumerate(self.powers)}

    def root(self, h: int) -> "FieldElement":
        """alpha_n^h."""
        return FieldElement(self.powers[h % self.period], self)


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldCtx, always reduced modulo its modulus."""

    value: int
    ctx: FieldCtx = field(compare=False, repr=False)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return field_add(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return field_mul(self, other)

    def __pow__(self, exponent: int) -> "FieldElement":
        return field_pow(self, exponent)

    def __bool__(self) -> bool:
        return self.value != 0

    def in_prime_field(self) -> bool:
        """True for 0 and 1."""
        return self.value in (0, 1)


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_clmul(a, b), m)


def _powmod(a: int, exponent: int, m: int) -> int:
    result = 1
    for bit in format(exponent, "b"):
        result = _mod(_square(result), m)
        if bit == "1":
            result = _mulmod(result, a, m)
    return result


def _same_field(a: FieldElement, b: FieldElement) -> None:
    if a.ctx.modulus != b.ctx.modulus:
        raise FieldContextError("elements belong to different fields")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(a.value ^ b.value, a.ctx)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(_mulmod(a.value, b.value, a.ctx.modulus.value), a.ctx)


def field_pow(a: FieldElement, exponent: int) -> FieldElement:
    """Square-and-multiply; exponent 0 gives 1 (also for a = 0)."""
    if exponent < 0:
        raise ParameterError("exponent must be nonnegative")
    return FieldElement(_powmod(a.value, exponent, a.ctx.modulus.value), a.ctx)


def eval_poly(f: Gf2Poly, x: FieldElement) -> FieldElement:
    """Horner evaluation of f at x."""
    m = x.ctx.modulus.value
    acc = 0
    for t in range(f.degree, -1, -1):
        acc = _mulmod(acc, x.value, m) ^ ((f.value >> t) & 1)
    return FieldElement(acc, x.ctx)


@lru_cache(maxsize=32)
def build_field_ctx(p: int, n: int, cap_degree: Optional[int] = None) -> FieldCtx:
    """Smallest field GF(2^k) containing the p^n-th roots of unity, with alpha_n and its p-power tower."""
    validate_odd_prime(p)
    if n < 1:
        raise ParameterError("n must be at least 1")
    cap = settings.cap_degree if cap_degree is None else cap_degree

    k = extension_degree(p, n)
    if k > cap:
        raise SizeError(f"field degree k = {k} for p = {p}, n = {n} exceeds the cap {cap}")

    modulus = find_irreducible(k)
    m = modulus.value
    period = p**n
    cofactor = ((1 << k) - 1) // period

    # Sweep candidates until one projects onto an element of order exactly p^n
    alpha_n = None
    for z in range(2, 1 << k):
        w = _powmod(z, cofactor, m)
        if _powmod(w, p ** (n - 1), m) != 1:
            alpha_n = w
            break
    if alpha_n is None:
        raise ParameterError(f"no element of order {period} in GF(2^{k})")

    alpha = [0] * n
    alpha[n - 1] = alpha_n
    for j in range(n - 1, 0, -1):
        alpha[j - 1] = _powmod(alpha[j], p, m)

    logger.info(f"Built GF(2^{k}) for p = {p}, n = {n} with modulus {modulus}")
    return FieldCtx(p=p, n=n, k=k, modulus=modulus, alpha_n=alpha_n, alpha=tuple(alpha))
