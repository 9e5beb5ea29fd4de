"""Modular arithmetic primitives: orders, primitive roots, indices and the Wieferich test."""

import logging
import math
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel, ConfigDict
from sympy import factorint, isprime, primerange, totient

from ..config import settings
from ..errors import NoSolutionError, NotInvertibleError, ParameterError

logger = logging.getLogger(__name__)


class ModTwoProfile(BaseModel):
    """Behaviour of 2 modulo the powers of an odd prime p."""

    model_config = ConfigDict(frozen=True)

    p: int
    c: int
    wieferich: bool
    u: int
    orders: list[int]

    def order_at(self, j: int) -> int:
        """ord_{p^j}(2) for 1 <= j <= len(orders)."""
        if not 1 <= j <= len(self.orders):
            raise ParameterError(f"level {j} outside 1..{len(self.orders)}")
        return self.orders[j - 1]


def is_odd_prime(p: int) -> bool:
    """Check that p is an odd prime."""
    return isinstance(p, int) and p >= 3 and p % 2 == 1 and isprime(p)


def validate_odd_prime(p: int) -> None:
    """Raise ParameterError unless p is an odd prime."""
    if not is_odd_prime(p):
        raise ParameterError("p must be an odd prime")


def euler_phi_prime_power(p: int, j: int) -> int:
    """phi(p^j) = p^(j-1)(p-1)."""
    if j < 1:
        raise ParameterError("exponent must be at least 1")
    return p ** (j - 1) * (p - 1)


@lru_cache(maxsize=None)
def _phi_factorization(m: int) -> tuple[int, dict[int, int]]:
    phi = int(totient(m))
    return phi, {int(q): int(k) for q, k in factorint(phi).items()}


def multiplicative_order(a: int, m: int) -> int:
    """Smallest t >= 1 with a^t = 1 (mod m).

    phi(m) is factored and each prime factor is stripped while the
    reduced exponent still annihilates a.
    """
    if m < 2:
        raise ParameterError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}")

    order, factors = _phi_factorization(m)
    a %= m
    for q in factors:
        while order % q == 0 and pow(a, order // q, m) == 1:
            order //= q
    return order


def is_primitive_root(g: int, p: int) -> bool:
    """g generates Z*_{p^2}, hence Z*_{p^j} for every j >= 1."""
    m = p * p
    if math.gcd(g, m) != 1:
        return False
    return multiplicative_order(g, m) == p * (p - 1)


@lru_cache(maxsize=None)
def find_primitive_root(p: int) -> int:
    """Smallest g >= 2 that is a primitive root modulo p^2."""
    validate_odd_prime(p)
    for g in range(2, p * p):
        if g % p and is_primitive_root(g, p):
            logger.debug(f"Primitive root modulo {p}^2: {g}")
            return g
    # Unreachable: Z*_{p^2} is cyclic
    raise ParameterError(f"no primitive root found modulo {p}^2")


def is_wieferich(p: int) -> bool:
    """True iff 2^(p-1) = 1 (mod p^2)."""
    validate_odd_prime(p)
    return pow(2, p - 1, p * p) == 1


def wieferich_primes(limit: int) -> list[int]:
    """All Wieferich primes in [3, limit]."""
    return [p for p in primerange(3, limit + 1) if pow(2, p - 1, p * p) == 1]


def discrete_log(g: int, a: int, m: int, sweep_limit: Optional[int] = None) -> int:
    """The unique x in [0, ord_m(g)) with g^x = a (mod m).

    Small groups are swept exhaustively, larger ones use baby-step/giant-step.
    """
    if m < 2:
        raise ParameterError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}")

    limit = settings.dlog_sweep_limit if sweep_limit is None else sweep_limit
    order = multiplicative_order(g, m)
    a %= m
    g %= m

    if order < limit:
        value = 1
        for x in range(order):
            if value == a:
                return x
            value = value * g % m
        raise NoSolutionError(f"{a} is not a power of {g} modulo {m}")

    # Baby steps g^j, giant steps g^(-s)
    s = math.isqrt(order) + 1
    baby: dict[int, int] = {}
    value = 1
    for j in range(s):
        baby.setdefault(value, j)
        value = value * g % m
    giant = pow(g, -s, m)
    gamma = a
    for i in range(s + 1):
        j = baby.get(gamma)
        if j is not None:
            return (i * s + j) % order
        gamma = gamma * giant % m
    raise NoSolutionError(f"{a} is not a power of {g} modulo {m}")


def delta(t: int) -> int:
    """1 if t is even, 0 if t is odd."""
    if t < 1:
        raise ParameterError("delta is defined for t >= 1")
    return 1 - (t & 1)


def delta_half_period(p: int, n: int) -> int:
    """delta((p^n + 1)/2) without forming p^n: the half is even iff p^n = 3 (mod 4)."""
    return 1 if pow(p, n, 4) == 3 else 0


def half_power_parity(p: int, l: int) -> int:
    """((p^l - 1)/2) mod 2, read off p^l mod 4."""
    return 1 if pow(p, l, 4) == 3 else 0


def mod_two_profile(p: int, n: int, g: Optional[int] = None) -> ModTwoProfile:
    """Collect c = ord_p(2), the Wieferich flag, u = ind_g 2 mod p^2 and ord_{p^j}(2)."""
    validate_odd_prime(p)
    if n < 1:
        raise ParameterError("n must be at least 1")
    g = find_primitive_root(p) if g is None else g

    orders = [multiplicative_order(2, p**j) for j in range(1, n + 1)]
    return ModTwoProfile(
        p=p,
        c=orders[0],
        wieferich=is_wieferich(p),
        u=discrete_log(g, 2, p * p),
        orders=orders,
    )
