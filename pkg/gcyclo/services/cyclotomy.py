"""Generalized cyclotomic classes of order d_j modulo p^j and the characteristic sets C_0 / C_1."""

import logging
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import ParameterError, SizeError
from .number_theory import (
    discrete_log,
    euler_phi_prime_power,
    find_primitive_root,
    is_primitive_root,
    validate_odd_prime,
)

logger = logging.getLogger(__name__)

ZERO = "ZERO"

# Power table blocks for the vectorized index sweep
_BLOCK = 1024

# Largest modulus whose residue products still fit in int64
_MAX_MODULUS = 3_037_000_499


class CyclotomicParams(BaseModel):
    """The parameter tuple (p, n, e, b, g) of one sequence instance; f = (p-1)/e = 2^r."""

    model_config = ConfigDict(frozen=True)

    p: int
    n: int
    e: int
    b: int = 0
    g: int

    @model_validator(mode="before")
    @classmethod
    def _resolve_generator(cls, data):
        if isinstance(data, dict) and data.get("g") in (None, "auto"):
            validate_odd_prime(data.get("p"))
            data = {**data, "g": find_primitive_root(data["p"])}
        return data

    @model_validator(mode="after")
    def _check_invariants(self) -> "CyclotomicParams":
        validate_odd_prime(self.p)
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if self.e < 1 or (self.p - 1) % self.e:
            raise ParameterError(f"e must be a positive divisor of p - 1 = {self.p - 1}")
        f = (self.p - 1) // self.e
        if f < 2 or f & (f - 1):
            raise ParameterError(f"f = (p - 1)/e = {f} must be a power of two 2^r with r >= 1")
        if not 0 <= self.b <= self.d(self.n) - 1:
            raise ParameterError(f"b must lie in [0, {self.d(self.n) - 1}]")
        if not is_primitive_root(self.g, self.p):
            raise ParameterError(f"g = {self.g} is not a primitive root modulo {self.p}^2")
        return self

    @property
    def f(self) -> int:
        return (self.p - 1) // self.e

    @property
    def r(self) -> int:
        return self.f.bit_length() - 1

    @property
    def period(self) -> int:
        return self.p**self.n

    def d(self, j: int) -> int:
        """d_j = phi(p^j)/e = f p^(j-1)."""
        return self.f * self.p ** (j - 1)

    def echo(self) -> str:
        """Compact `p,n,e,b,g` rendering used in file headers."""
        return f"{self.p},{self.n},{self.e},{self.b},{self.g}"


class CyclotomicClass(BaseModel):
    """D_i^(p^j) as an explicit sorted residue list."""

    model_config = ConfigDict(frozen=True)

    j: int
    i: int
    elements: tuple[int, ...]


def build_params(p: int, n: int, e: int, b: int = 0, g: Optional[int] = None) -> CyclotomicParams:
    """Construct validated parameters; g defaults to the smallest primitive root mod p^2."""
    return CyclotomicParams(p=p, n=n, e=e, b=b, g=g)


def _check_level(params: CyclotomicParams, j: int) -> None:
    if not 1 <= j <= params.n:
        raise ParameterError(f"level j = {j} outside 1..{params.n}")


@lru_cache(maxsize=4096)
def _class_elements(p: int, e: int, g: int, j: int, i: int) -> tuple[int, ...]:
    m = p**j
    d_j = euler_phi_prime_power(p, j) // e
    start = pow(g, i, m)
    step = pow(g, d_j, m)
    elements = []
    value = start
    for _ in range(e):
        elements.append(value)
        value = value * step % m
    return tuple(sorted(elements))


def cyclotomic_class(params: CyclotomicParams, j: int, i: int) -> CyclotomicClass:
    """D_i^(p^j) = {g^(i + d_j t) mod p^j : 0 <= t < e}, with i taken mod d_j."""
    _check_level(params, j)
    i %= params.d(j)
    return CyclotomicClass(j=j, i=i, elements=_class_elements(params.p, params.e, params.g, j, i))


def reduce_class(params: CyclotomicParams, j: int, i: int, l: int) -> list[int]:
    """Elements of D_i^(p^j) reduced mod p^l, in class order."""
    _check_level(params, j)
    if not 1 <= l <= j:
        raise ParameterError(f"reduction level l = {l} outside 1..{j}")
    m = params.p**l
    return [x % m for x in cyclotomic_class(params, j, i).elements]


def classify(params: CyclotomicParams, x: int) -> Union[tuple[int, int], str]:
    """(j, i) with x in p^(n-j) D_i^(p^j), or ZERO for x = 0."""
    if not 0 <= x < params.period:
        raise ParameterError(f"x = {x} outside Z_{params.period}")
    if x == 0:
        return ZERO

    # Strip the p-adic valuation
    v = 0
    while x % params.p == 0:
        x //= params.p
        v += 1
    j = params.n - v
    i = discrete_log(params.g, x, params.p**j) % params.d(j)
    return j, i


def in_c1(params: CyclotomicParams, x: int) -> bool:
    """Membership predicate for the characteristic set C_1^(p^n)."""
    cls = classify(params, x)
    if cls == ZERO:
        return True
    j, i = cls
    d_j = params.d(j)
    return (i - params.b) % d_j < d_j // 2


@lru_cache(maxsize=16)
def _index_table(p: int, n: int, g: int) -> np.ndarray:
    """ind_g(y) mod p^n for every y in Z_{p^n} (-1 where y is not a unit)."""
    modulus = p**n
    if modulus > _MAX_MODULUS:
        raise SizeError(f"period p^n = {modulus} is too large for the int64 index table")
    phi = euler_phi_prime_power(p, n)
    powers = np.empty(phi, dtype=np.int64)

    # First block sequentially, then whole blocks at a time by g^block
    head = min(phi, _BLOCK)
    value = 1
    for t in range(head):
        powers[t] = value
        value = value * g % modulus
    step = np.int64(pow(g, head, modulus))
    for start in range(head, phi, head):
        stop = min(start + head, phi)
        powers[start:stop] = powers[start - head : stop - head] * step % modulus

    table = np.full(modulus, -1, dtype=np.int64)
    table[powers] = np.arange(phi, dtype=np.int64)
    table.setflags(write=False)
    return table


def class_index_table(params: CyclotomicParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized classify over Z_{p^n}.

    Returns (levels, indices): levels[x] = j and indices[x] = i for x != 0,
    with levels[0] = 0 and indices[0] = -1 marking ZERO.
    """
    p, n = params.p, params.n
    modulus = params.period
    ind = _index_table(p, n, params.g)

    levels = np.zeros(modulus, dtype=np.int64)
    indices = np.full(modulus, -1, dtype=np.int64)
    for v in range(n):
        j = n - v
        y = np.arange(p**j, dtype=np.int64)
        y = y[y % p != 0]
        x = y * p**v
        levels[x] = j
        # ind mod p^n of a residue y < p^j reduces to ind mod p^j
        indices[x] = ind[y] % params.d(j)
    return levels, indices


def c1_mask(params: CyclotomicParams) -> np.ndarray:
    """Boolean mask over Z_{p^n}: True exactly on C_1^(p^n)."""
    levels, indices = class_index_table(params)
    mask = np.zeros(params.period, dtype=bool)
    mask[0] = True
    for j in range(1, params.n + 1):
        at_level = levels == j
        d_j = params.d(j)
        mask[at_level] = (indices[at_level] - params.b) % d_j < d_j // 2
    return mask


class CharacteristicSets(BaseModel):
    """C_0 and C_1 as sorted residue lists."""

    model_config = ConfigDict(frozen=True)

    c0: tuple[int, ...]
    c1: tuple[int, ...]


def characteristic_sets(params: CyclotomicParams) -> CharacteristicSets:
    """C_1 = union of p^(n-j) D_{(i+b) mod d_j}^(p^j), i < d_j/2, plus {0}; C_0 its complement."""
    mask = c1_mask(params)
    c1 = tuple(int(x) for x in np.flatnonzero(mask))
    c0 = tuple(int(x) for x in np.flatnonzero(~mask))
    logger.debug(f"Characteristic sets for {params.echo()}: |C1| = {len(c1)}, |C0| = {len(c0)}")
    return CharacteristicSets(c0=c0, c1=c1)


def dump_classes(params: CyclotomicParams) -> dict[str, list[int]]:
    """JSON-ready dump keyed by "j,i" plus the characteristic sets."""
    dump: dict[str, list[int]] = {}
    for j in range(1, params.n + 1):
        for i in range(params.d(j)):
            dump[f"{j},{i}"] = list(cyclotomic_class(params, j, i).elements)
    sets = characteristic_sets(params)
    dump["c0"] = list(sets.c0)
    dump["c1"] = list(sets.c1)
    return dump
