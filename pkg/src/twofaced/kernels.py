"""Order-k conditional-probability kernels with two-valued transitions.

Two mutually recursive kernel families over the binary alphabet are
provided, selected by :class:`Variant`.  For every k-bit context the
next-bit law puts probability ``pi`` on one letter and ``1 - pi`` on the
other.  Which letter receives ``pi`` is decided by the context parity:
the PLAIN family gives ``pi`` to the bit equal to the XOR of the context
bits, the BAR family to its complement.

The inductive definition doubles the context one (oldest) bit at a time:
a leading 0 keeps the family, a leading 1 swaps PLAIN and BAR, down to
the order-1 base cases.  ``cond_prob_recursive`` implements that
recursion literally; ``cond_prob`` implements the parity closed form.
Both resolve to the two-valued symbol {pi, 1 - pi} before converting to
float, so they agree exactly, with no tolerance.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError

TABLE_ORDER_CAP = 20


class Variant(enum.Enum):
    PLAIN = "plain"
    BAR = "bar"

    def flipped(self) -> "Variant":
        return Variant.BAR if self is Variant.PLAIN else Variant.PLAIN


@dataclass(frozen=True)
class KernelSpec:
    """An order-k kernel: variant, order, and transition parameter pi.

    pi = 0.5 yields the fair-coin process and is allowed; pi in {0, 1}
    would make the chain non-ergodic and is rejected.
    """

    variant: Variant
    order: int
    pi: float

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order!r}")
        if not 0.0 < self.pi < 1.0:
            raise ValueError(f"pi must lie strictly inside (0, 1), got {self.pi!r}")


def as_context(context, order: int) -> tuple[int, ...]:
    """Normalize a context word to a tuple of bits, checking its length."""
    if isinstance(context, str):
        bits = tuple(int(c) for c in context)
    else:
        bits = tuple(int(b) for b in context)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("context bits must be 0 or 1")
    if len(bits) != order:
        raise ValueError(f"context length {len(bits)} does not match order {order}")
    return bits


def context_to_int(context) -> int:
    """Encode a context word as an integer, oldest bit most significant."""
    value = 0
    for b in context:
        value = (value << 1) | int(b)
    return value


def int_to_context(value: int, order: int) -> tuple[int, ...]:
    return tuple((value >> (order - 1 - j)) & 1 for j in range(order))


def _parity(bits) -> int:
    p = 0
    for b in bits:
        p ^= b
    return p


def pi_branch(variant: Variant, next_bit: int, context) -> bool:
    """Closed form: does P(next_bit | context) equal pi (vs 1 - pi)?"""
    par = _parity(context)
    same = next_bit == par
    return same if variant is Variant.PLAIN else not same


@lru_cache(maxsize=None)
def _pi_branch_recursive(variant: Variant, next_bit: int, context: tuple) -> bool:
    if len(context) == 1:
        same = next_bit == context[0]
        return same if variant is Variant.PLAIN else not same
    head, rest = context[0], context[1:]
    return _pi_branch_recursive(variant if head == 0 else variant.flipped(),
                                next_bit, rest)


def pi_branch_recursive(variant: Variant, next_bit: int, context) -> bool:
    """Inductive definition of the pi/(1-pi) branch, memoized."""
    return _pi_branch_recursive(variant, next_bit, tuple(context))


def _check_bit(next_bit: int) -> int:
    if next_bit not in (0, 1):
        raise ValueError(f"next bit must be 0 or 1, got {next_bit!r}")
    return next_bit


def cond_prob(spec: KernelSpec, next_bit: int, context) -> float:
    """P(next_bit | context) by the parity closed form."""
    bits = as_context(context, spec.order)
    _check_bit(next_bit)
    return spec.pi if pi_branch(spec.variant, next_bit, bits) else 1.0 - spec.pi


def cond_prob_recursive(spec: KernelSpec, next_bit: int, context) -> float:
    """P(next_bit | context) by the literal order-doubling recursion."""
    bits = as_context(context, spec.order)
    _check_bit(next_bit)
    return spec.pi if pi_branch_recursive(spec.variant, next_bit, bits) else 1.0 - spec.pi


def _word_parities(order: int) -> np.ndarray:
    v = np.arange(1 << order, dtype=np.uint32)
    v ^= v >> np.uint32(16)
    v ^= v >> np.uint32(8)
    v ^= v >> np.uint32(4)
    v ^= v >> np.uint32(2)
    v ^= v >> np.uint32(1)
    return (v & np.uint32(1)).astype(np.uint8)


@dataclass(frozen=True)
class KernelTable:
    """Materialized conditional probabilities, one row per context word.

    Row u (contexts indexed as big-endian integers, i.e. lexicographic
    word order) holds (P(0|u), P(1|u)); every entry is pi or 1 - pi.
    """

    spec: KernelSpec
    p0: np.ndarray
    p1: np.ndarray

    def row(self, context) -> tuple[float, float]:
        u = context_to_int(as_context(context, self.spec.order))
        return float(self.p0[u]), float(self.p1[u])

    def to_csv(self) -> str:
        """CSV rows ``context,p0,p1``, contexts in lexicographic order,
        probabilities with 17 significant digits."""
        k = self.spec.order
        lines = ["context,p0,p1"]
        for u in range(1 << k):
            ctx = format(u, f"0{k}b")
            lines.append(f"{ctx},{self.p0[u]:.17g},{self.p1[u]:.17g}")
        return "\n".join(lines) + "\n"


def kernel_table(spec: KernelSpec, cap: int = TABLE_ORDER_CAP) -> KernelTable:
    """Materialize the 2^k-row table of conditional probabilities."""
    if spec.order > cap:
        raise CapacityError(f"order {spec.order} exceeds table cap {cap}")
    par = _word_parities(spec.order)
    flag = 0 if spec.variant is Variant.PLAIN else 1
    pi, q = spec.pi, 1.0 - spec.pi
    p0 = np.where(par == flag, pi, q)
    p1 = np.where(par == 1 - flag, pi, q)
    p0.setflags(write=False)
    p1.setflags(write=False)
    return KernelTable(spec, p0, p1)
