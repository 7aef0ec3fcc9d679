"""Stretch a short seed into a long stream with uniform short-block stats.

Pipeline: the first k seed bits become the initial window; the remaining
bits are treated as the compressed form of a biased bit stream.  The
bias pi is chosen so the binary entropy H(pi) matches the available rate
h = (|seed| - k) / N, the code bits are decoded into N biased bits with
a fixed-precision arithmetic decoder, and the conversion of
:mod:`.transform` turns that biased stream into the output.  The whole
map is deterministic in (seed, config).

The coder is an integer range coder in the classic reference style:
`precision`-bit low/high registers, carry handling via pending inverted
bits, termination by a single 1 bit.  A decoder that runs past the end
of the code word reads zeros (decoding is total; the induced tail bias
is a documented artifact of finite seeds).  The exact bit behavior is
pinned by golden vectors in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitseq import BitSequence, as_bit_array
from .generator import limit_entropy
from .transform import transform

PI_FLOOR = 1e-9
DEFAULT_PRECISION = 62


@dataclass(frozen=True)
class ExpanderConfig:
    """Expansion parameters: output order, target length, coder width."""

    order: int
    target_len: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.target_len < 1:
            raise ValueError("target length must be positive")
        if not 16 <= self.precision <= 62:
            raise ValueError("precision must lie in [16, 62]")


def entropy_inverse(h: float, tol: float = 1e-12) -> float:
    """The pi in (0, 1/2] with binary entropy h, found by bisection.

    H is strictly increasing on (0, 1/2], so bisection converges; the
    result is floored at PI_FLOOR to avoid log degeneracy.
    """
    if not 0.0 < h <= 1.0:
        raise ValueError(f"entropy must lie in (0, 1], got {h!r}")
    if h >= 1.0:
        return 0.5
    lo, hi = PI_FLOOR, 0.5
    if limit_entropy(lo) >= h:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        err = limit_entropy(mid) - h
        if abs(err) <= tol:
            return mid
        if err < 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def _freq_split(pi: float, precision: int) -> tuple[int, int]:
    """Quantize P(0)=pi onto an integer cumulative scale that fits the
    coder's range invariant (total <= quarter range)."""
    total = 1 << min(32, precision - 3)
    f0 = min(max(int(round(pi * total)), 1), total - 1)
    return f0, total


class _RangeCoder:
    def __init__(self, precision: int):
        self.precision = precision
        self.full = 1 << precision
        self.mask = self.full - 1
        self.top = self.full >> 1
        self.second = self.top >> 1
        self.low = 0
        self.high = self.mask


class _Encoder(_RangeCoder):
    def __init__(self, precision: int):
        super().__init__(precision)
        self.out: list[int] = []
        self.pending = 0

    def _emit(self, bit: int) -> None:
        self.out.append(bit)
        if self.pending:
            self.out.extend([bit ^ 1] * self.pending)
            self.pending = 0

    def encode(self, cum_lo: int, cum_hi: int, total: int) -> None:
        span = self.high - self.low + 1
        self.high = self.low + (span * cum_hi) // total - 1
        self.low = self.low + (span * cum_lo) // total
        while ((self.low ^ self.high) & self.top) == 0:
            self._emit(self.low >> (self.precision - 1))
            self.low = (self.low << 1) & self.mask
            self.high = ((self.high << 1) & self.mask) | 1
        while (self.low & ~self.high & self.second) != 0:
            self.pending += 1
            self.low = (self.low << 1) & (self.mask >> 1)
            self.high = ((self.high << 1) & (self.mask >> 1)) | self.top | 1

    def finish(self) -> None:
        # The interval always straddles the midpoint here, so the point
        # "1 followed by zeros" lies inside it.
        self.out.append(1)


class _Decoder(_RangeCoder):
    def __init__(self, precision: int, code: np.ndarray):
        super().__init__(precision)
        self._code_bits = code
        self._next = 0
        self.code = 0
        for _ in range(precision):
            self.code = (self.code << 1) | self._read_bit()

    def _read_bit(self) -> int:
        # Exhausted code words continue with zeros: decoding is total.
        if self._next < self._code_bits.size:
            bit = int(self._code_bits[self._next])
            self._next += 1
            return bit
        return 0

    def decode(self, f0: int, total: int) -> int:
        span = self.high - self.low + 1
        offset = self.code - self.low
        value = ((offset + 1) * total - 1) // span
        symbol = 0 if value < f0 else 1
        cum_lo, cum_hi = (0, f0) if symbol == 0 else (f0, total)
        self.high = self.low + (span * cum_hi) // total - 1
        self.low = self.low + (span * cum_lo) // total
        while ((self.low ^ self.high) & self.top) == 0:
            self.code = ((self.code << 1) & self.mask) | self._read_bit()
            self.low = (self.low << 1) & self.mask
            self.high = ((self.high << 1) & self.mask) | 1
        while (self.low & ~self.high & self.second) != 0:
            self.code = (self.code & self.top) | ((self.code << 1) & (self.mask >> 1)) \
                | self._read_bit()
            self.low = (self.low << 1) & (self.mask >> 1)
            self.high = ((self.high << 1) & (self.mask >> 1)) | self.top | 1
        return symbol


def bernoulli_encode(x, pi: float, precision: int = DEFAULT_PRECISION) -> BitSequence:
    """Arithmetic-code a bit stream under the iid model P(0) = pi."""
    if not 0.0 < pi < 1.0:
        raise ValueError(f"pi must lie strictly inside (0, 1), got {pi!r}")
    bits = as_bit_array(x)
    f0, total = _freq_split(pi, precision)
    enc = _Encoder(precision)
    for b in bits.tolist():
        if b == 0:
            enc.encode(0, f0, total)
        else:
            enc.encode(f0, total, total)
    enc.finish()
    return BitSequence(enc.out)


def bernoulli_decode(code, pi: float, n: int,
                     precision: int = DEFAULT_PRECISION) -> BitSequence:
    """Decode exactly n bits under the iid model P(0) = pi.

    Bits past the end of the code word are taken as zero, so any code
    word decodes to any requested length.
    """
    if not 0.0 < pi < 1.0:
        raise ValueError(f"pi must lie strictly inside (0, 1), got {pi!r}")
    if n < 0:
        raise ValueError("output length must be nonnegative")
    if n == 0:
        return BitSequence()
    f0, total = _freq_split(pi, precision)
    dec = _Decoder(precision, as_bit_array(code))
    out = bytearray(n)
    for i in range(n):
        out[i] = dec.decode(f0, total)
    return BitSequence._wrap(np.frombuffer(bytes(out), dtype=np.uint8))


def expand(seed, config: ExpanderConfig) -> BitSequence:
    """Deterministically expand a seed to `config.target_len` bits.

    The first `order` seed bits form the initial window; the rest are
    decoded at the rate-matched bias and run through the conversion.
    """
    seed_bits = as_bit_array(seed)
    k = config.order
    n = config.target_len
    if seed_bits.size <= k:
        raise ValueError(
            f"seed must be longer than the order ({seed_bits.size} <= {k})")
    h = (seed_bits.size - k) / n
    if h > 1.0:
        raise ValueError(
            f"target length {n} is below the code length {seed_bits.size - k}")
    initial = seed_bits[:k]
    code = seed_bits[k:]
    pi = entropy_inverse(h)
    decoded = bernoulli_decode(code, pi, n, config.precision)
    return transform(decoded, initial)
