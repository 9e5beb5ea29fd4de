"""One period of the generalized cyclotomic sequence and its generating polynomial."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from ..config import settings
from ..errors import ParameterError, SizeError
from .cyclotomy import CyclotomicParams, c1_mask
from .gf2_field import Gf2Poly

logger = logging.getLogger(__name__)

__all__ = [
    "BinarySequence",
    "Gf2Poly",
    "generate",
    "generating_polynomial",
    "weight",
]


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack 0/1 values into little-endian uint64 words, bit i of the stream at word i // 64."""
    packed = np.packbits(bits.astype(np.uint8), bitorder="little")
    pad = (-len(packed)) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
    return packed.view("<u8").copy()


@dataclass(frozen=True, eq=False)
class BinarySequence:
    """A bit vector of length `period`, packed 64 bits per word."""

    period: int
    words: np.ndarray = field(repr=False)
    params: Optional[CyclotomicParams] = None

    def __post_init__(self):
        self.words.setflags(write=False)

    @classmethod
    def from_bits(cls, bits: Iterable[int], params: Optional[CyclotomicParams] = None) -> "BinarySequence":
        raw = np.asarray(bits if isinstance(bits, np.ndarray) else list(bits))
        if raw.ndim != 1 or (raw.size and not np.isin(raw, (0, 1)).all()):
            raise ParameterError("bits must be a flat sequence of 0/1 values")
        array = raw.astype(np.uint8)
        return cls(period=len(array), words=_pack(array), params=params)

    @classmethod
    def from_ascii(cls, text: str, params: Optional[CyclotomicParams] = None) -> "BinarySequence":
        """Parse a '0'/'1' string; whitespace is ignored."""
        cleaned = "".join(text.split())
        if set(cleaned) - {"0", "1"}:
            raise ParameterError("sequence text may only contain '0' and '1'")
        return cls.from_bits(np.frombuffer(cleaned.encode(), dtype=np.uint8) - ord("0"), params)

    @classmethod
    def from_hex(cls, text: str, period: int, params: Optional[CyclotomicParams] = None) -> "BinarySequence":
        """Inverse of to_hex for a known period."""
        try:
            raw = np.frombuffer(bytes.fromhex(text.strip()), dtype=np.uint8)
        except ValueError as exc:
            raise ParameterError(f"invalid hex sequence: {exc}") from exc
        bits = np.unpackbits(raw, bitorder="little")
        if len(bits) < period:
            raise ParameterError(f"hex data holds {len(bits)} bits, period is {period}")
        return cls.from_bits(bits[:period], params)

    @property
    def bits(self) -> np.ndarray:
        """Unpacked uint8 view of the period."""
        return np.unpackbits(self.words.view(np.uint8), bitorder="little")[: self.period]

    @property
    def value(self) -> int:
        """The period as one integer, s_i at bit i."""
        return int.from_bytes(self.words.tobytes(), "little")

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def to_ascii(self) -> str:
        return (self.bits + ord("0")).tobytes().decode()

    def to_hex(self) -> str:
        """Little-endian hex: bit 0 of the first byte is s_0."""
        return self.words.view(np.uint8)[: (self.period + 7) // 8].tobytes().hex()

    def to_csv_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"index": np.arange(self.period), "value": self.bits.astype(np.int64)})

    def __len__(self) -> int:
        return self.period

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return self.period == other.period and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.period, self.words.tobytes()))


def weight(seq: BinarySequence) -> int:
    """Hamming weight of one period."""
    return seq.weight


def generate(params: CyclotomicParams, cap_period: Optional[int] = None) -> BinarySequence:
    """s_i = 1 iff i lies in C_1^(p^n), for 0 <= i < p^n."""
    cap = settings.cap_period if cap_period is None else cap_period
    if params.period > cap:
        raise SizeError(f"period p^n = {params.period} exceeds the cap {cap}")

    seq = BinarySequence.from_bits(c1_mask(params), params)
    logger.debug(f"Generated period {seq.period} for {params.echo()}, weight {seq.weight}")
    return seq


def generating_polynomial(seq: BinarySequence) -> Gf2Poly:
    """S(x) = s_0 + s_1 x + ... + s_{N-1} x^(N-1)."""
    return Gf2Poly(seq.value)
