"""Sequential sampling from a kernel and exact finite-horizon analysis.

Sampling follows a fixed inverse-transform convention so that runs are
bit-reproducible: at each step the generator draws a uniform real u and
emits 0 iff u < P(0 | context).

The exact operations treat the chain on 2^k context states explicitly:
`propagate` advances a state distribution, `exact_block_distribution`
yields the law of a length-m window at a given offset, and
`exact_conditional_entropy` evaluates the order-m conditional entropy of
the stationary (uniform-initial) process in bits per letter.  These are
desk-scale tools; they are capped at 2^order states and order+8 bits of
window extension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bitseq import BitSequence, as_bit_array
from .errors import CapacityError
from .kernels import (KernelSpec, TABLE_ORDER_CAP, Variant, context_to_int,
                      int_to_context, kernel_table)
from .sources import BitSource

EXTENSION_CAP = 8


@dataclass
class GeneratorState:
    """A kernel plus the sliding window of the last `order` emitted bits.

    Single-owner and sequential: the Markov dependence forbids parallel
    emission within one stream.
    """

    kernel: KernelSpec
    context: int
    steps_emitted: int = 0

    def context_bits(self) -> tuple[int, ...]:
        return int_to_context(self.context, self.kernel.order)


def init_uniform(kernel: KernelSpec, source: BitSource) -> GeneratorState:
    """Draw the initial window uniformly, consuming exactly `order` bits."""
    word = source.bits(kernel.order)
    return GeneratorState(kernel, context_to_int(word))


def init_fixed(kernel: KernelSpec, word) -> GeneratorState:
    """Start from a fixed initial window of length `order`."""
    bits = as_bit_array(word)
    if bits.size != kernel.order:
        raise ValueError(
            f"initial word length {bits.size} does not match order {kernel.order}")
    return GeneratorState(kernel, context_to_int(bits))


def next_bit(state: GeneratorState, reals) -> int:
    """Emit one bit: 0 iff the uniform draw is < P(0 | context)."""
    k = state.kernel.order
    flag = 1 if state.kernel.variant is Variant.BAR else 0
    par = (state.context.bit_count() & 1) ^ flag
    p0 = state.kernel.pi if par == 0 else 1.0 - state.kernel.pi
    bit = 0 if reals.next_real() < p0 else 1
    state.context = ((state.context << 1) | bit) & ((1 << k) - 1)
    state.steps_emitted += 1
    return bit


def generate(state: GeneratorState, n: int, reals) -> BitSequence:
    """Emit n bits, advancing the state; equivalent to n next_bit calls."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        return BitSequence()
    kernel = state.kernel
    k = kernel.order
    u = reals.reals(n)
    # Per-step decisions precomputed for both parity branches.
    ge_pi = (u >= kernel.pi).tolist()
    ge_q = (u >= 1.0 - kernel.pi).tolist()
    flag = 1 if kernel.variant is Variant.BAR else 0
    buf = bytearray(state.context_bits())
    par = (state.context.bit_count() & 1) ^ flag
    append = buf.append
    for i in range(n):
        y = ge_q[i] if par else ge_pi[i]
        append(y)
        par ^= y ^ buf[i]
    out = bytes(buf[k:])
    state.context = context_to_int(buf[-k:])
    state.steps_emitted += n
    return BitSequence._wrap(np.frombuffer(out, dtype=np.uint8))


def generate_by_conversion(state: GeneratorState, n: int, reals) -> BitSequence:
    """Alternative sampling route with the same output law as `generate`:
    threshold the draws into a biased stream (0 iff draw < pi) and feed
    it through the stream conversion seeded with the current window.

    The two routes agree in distribution, not bit-for-bit under a shared
    draw sequence; tests cross-check them against the exact block laws.
    """
    from .transform import transform
    if n < 0:
        raise ValueError("length must be nonnegative")
    kernel = state.kernel
    u = reals.reals(n)
    x = (u >= kernel.pi).astype(np.uint8)
    v = np.array(state.context_bits(), dtype=np.uint8)
    y = transform(x, v, kernel.variant)
    if n:
        tail = np.concatenate([v, y.array])[-kernel.order:]
        state.context = context_to_int(tail)
    state.steps_emitted += n
    return y


@dataclass(frozen=True)
class StateDistribution:
    """A probability vector over the 2^order context words.

    Indexed by the big-endian integer encoding of the word.  Entries are
    nonnegative and sum to 1 within 1e-12.
    """

    order: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.shape != (1 << self.order,):
            raise ValueError(f"expected {1 << self.order} entries, got {p.shape}")
        if p.min() < 0.0:
            raise ValueError("probabilities must be nonnegative")
        if abs(float(p.sum()) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1 within 1e-12")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def uniform(cls, order: int) -> "StateDistribution":
        return cls(order, np.full(1 << order, 2.0 ** -order))

    @classmethod
    def point_mass(cls, order: int, word) -> "StateDistribution":
        bits = as_bit_array(word)
        if bits.size != order:
            raise ValueError(f"word length {bits.size} does not match order {order}")
        p = np.zeros(1 << order)
        p[context_to_int(bits)] = 1.0
        return cls(order, p)


def _check_order_cap(order: int) -> None:
    if order > TABLE_ORDER_CAP:
        raise CapacityError(f"order {order} exceeds exact-computation cap {TABLE_ORDER_CAP}")


def _propagate_array(p: np.ndarray, p0: np.ndarray, p1: np.ndarray,
                     steps: int) -> np.ndarray:
    half = p.size >> 1
    for _ in range(steps):
        nxt = np.empty_like(p)
        lo, hi = p[:half], p[half:]
        nxt[0::2] = lo * p0[:half] + hi * p0[half:]
        nxt[1::2] = lo * p1[:half] + hi * p1[half:]
        p = nxt
    return p


def propagate(kernel: KernelSpec, dist: StateDistribution,
              steps: int = 1) -> StateDistribution:
    """Advance a context distribution through `steps` chain transitions."""
    if dist.order != kernel.order:
        raise ValueError("distribution order does not match kernel order")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    _check_order_cap(kernel.order)
    table = kernel_table(kernel)
    return StateDistribution(
        kernel.order, _propagate_array(dist.probs, table.p0, table.p1, steps))


def exact_block_distribution(kernel: KernelSpec, initial: StateDistribution,
                             offset: int, block_len: int) -> np.ndarray:
    """Exact law of the length-`block_len` window starting `offset` letters
    after the initial window.

    Returns a vector over all words of that length, indexed big-endian.
    Computed by `offset` steps of state propagation followed by window
    extension (block_len > order) or marginalization (block_len < order).
    """
    k = kernel.order
    m = block_len
    if initial.order != k:
        raise ValueError("initial distribution order does not match kernel order")
    if offset < 0:
        raise ValueError("offset must be nonnegative")
    if m < 1:
        raise ValueError("block length must be positive")
    _check_order_cap(k)
    if m > k + EXTENSION_CAP:
        raise CapacityError(
            f"block length {m} exceeds extension cap order+{EXTENSION_CAP}")
    table = kernel_table(kernel)
    p = _propagate_array(initial.probs, table.p0, table.p1, offset)
    if m < k:
        return p.reshape(1 << m, -1).sum(axis=1)
    for t in range(k, m):
        reps = 1 << (t - k)
        nxt = np.empty(1 << (t + 1))
        nxt[0::2] = p * np.tile(table.p0, reps)
        nxt[1::2] = p * np.tile(table.p1, reps)
        p = nxt
    return p


def exact_conditional_entropy(kernel: KernelSpec, m: int) -> float:
    """Order-m conditional entropy of the stationary process, bits/letter.

    Equal to 1 exactly for m <= order and to the binary entropy of pi for
    every m > order.
    """
    if m < 1:
        raise ValueError("entropy order must be positive")
    pm = exact_block_distribution(
        kernel, StateDistribution.uniform(kernel.order), 0, m)
    ctx = pm.reshape(-1, 2).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = pm / np.repeat(ctx, 2)
        terms = np.where(pm > 0.0, pm * np.log2(ratio), 0.0)
    return float(-terms.sum())


def limit_entropy(pi: float) -> float:
    """Binary entropy of pi in bits: the per-letter entropy rate of any
    kernel with parameter pi."""
    if not 0.0 < pi < 1.0:
        raise ValueError(f"pi must lie strictly inside (0, 1), got {pi!r}")
    return -(pi * math.log2(pi) + (1.0 - pi) * math.log2(1.0 - pi))
