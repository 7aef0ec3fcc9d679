"""Empirical verification suite: block frequencies, chi-square, entropy.

Counting is over overlapping windows: a sequence of length t has
t - m + 1 windows of length m, and frequencies divide by that window
count (the exact normalizer for the available windows).  A truly random
stream has every m-word frequency near 2^-m; the chi-square statistic
against that uniform expectation, with 2^m - 1 degrees of freedom,
quantifies the deviation.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _special

from .bitseq import BitSequence, as_bit_array
from .errors import CapacityError

BLOCK_LEN_CAP = 24


def _window_values(bits: np.ndarray, m: int) -> np.ndarray:
    """Integer value of every overlapping m-bit window, oldest bit high."""
    count = bits.size - m + 1
    w = np.zeros(count, dtype=np.int64)
    for j in range(m):
        w <<= 1
        w |= bits[j:j + count]
    return w


def _window_counts(bits: np.ndarray, m: int) -> np.ndarray:
    return np.bincount(_window_values(bits, m), minlength=1 << m)


def occurrence_count(seq, u) -> int:
    """Number of overlapping occurrences of the word u in seq."""
    bits = as_bit_array(seq)
    word = as_bit_array(u)
    m = word.size
    if m < 1:
        raise ValueError("pattern must contain at least one bit")
    if m > bits.size:
        raise ValueError(f"pattern length {m} exceeds sequence length {bits.size}")
    if m <= 60:
        target = 0
        for b in word:
            target = (target << 1) | int(b)
        return int(np.count_nonzero(_window_values(bits, m) == target))
    # Long patterns: overlapping text search.
    text = BitSequence._wrap(bits).to_ascii01()
    pat = BitSequence._wrap(word).to_ascii01()
    count = 0
    pos = text.find(pat)
    while pos != -1:
        count += 1
        pos = text.find(pat, pos + 1)
    return count


@dataclass(frozen=True)
class BlockStats:
    """Frequency table of all m-words with its uniformity summaries."""

    block_len: int
    counts: np.ndarray = field(repr=False)
    windows: int
    max_abs_deviation: float
    chi_square: float
    df: int

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.windows

    @property
    def p_value(self) -> float:
        return chi_square_pvalue(self.chi_square, self.df)


def block_frequencies(seq, m: int) -> BlockStats:
    """Count all overlapping m-windows and summarize deviation from 2^-m."""
    bits = as_bit_array(seq)
    if m < 1:
        raise ValueError("block length must be positive")
    if m > BLOCK_LEN_CAP:
        raise CapacityError(f"block length {m} exceeds table cap {BLOCK_LEN_CAP}")
    if m > bits.size:
        raise ValueError(f"block length {m} exceeds sequence length {bits.size}")
    counts = _window_counts(bits, m)
    windows = bits.size - m + 1
    expected = windows / (1 << m)
    if expected < 5.0:
        warnings.warn(
            f"expected count per cell is {expected:.2f} (< 5); "
            "the chi-square approximation is unreliable", stacklevel=2)
    freq = counts / windows
    max_dev = float(np.abs(freq - 2.0 ** -m).max())
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    counts.setflags(write=False)
    return BlockStats(m, counts, windows, max_dev, chi2, (1 << m) - 1)


def empirical_conditional_entropy(seq, m: int) -> float:
    """Plug-in conditional entropy of order m in bits per letter.

    Context and continuation frequencies come from the m-window counts;
    0 log 0 is taken as 0, and contexts that never occur contribute zero
    (a warning reports how many were missing).
    """
    bits = as_bit_array(seq)
    if m < 1:
        raise ValueError("entropy order must be positive")
    if m > BLOCK_LEN_CAP:
        raise CapacityError(f"entropy order {m} exceeds table cap {BLOCK_LEN_CAP}")
    if m > bits.size:
        raise ValueError(f"entropy order {m} exceeds sequence length {bits.size}")
    counts = _window_counts(bits, m).astype(np.float64)
    ctx = counts.reshape(-1, 2).sum(axis=1)
    missing = int(np.count_nonzero(ctx == 0))
    if missing:
        warnings.warn(
            f"{missing} of {ctx.size} contexts never occur; "
            "they contribute zero to the estimate", stacklevel=2)
    windows = bits.size - m + 1
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = counts / np.repeat(ctx, 2)
        terms = np.where(counts > 0.0, counts * np.log2(ratio), 0.0)
    return float(-terms.sum() / windows)


def chi_square_pvalue(statistic: float, df: int) -> float:
    """Upper-tail probability of the chi-square law."""
    if statistic < 0.0:
        raise ValueError("statistic must be nonnegative")
    if df < 1:
        raise ValueError("degrees of freedom must be positive")
    return float(_special.gammaincc(df / 2.0, statistic / 2.0))


def analyze(seq, max_block: int, min_block: int = 1) -> list[BlockStats]:
    """Block statistics for every length in [min_block, max_block]."""
    if min_block < 1 or max_block < min_block:
        raise ValueError("block range must satisfy 1 <= min <= max")
    return [block_frequencies(seq, m) for m in range(min_block, max_block + 1)]


def report_text(stats: list[BlockStats], alpha: float = 1e-4) -> str:
    """Line-oriented report; a p-value below alpha is flagged REJECT."""
    lines = []
    for s in stats:
        p = s.p_value
        verdict = "ok" if p >= alpha else "REJECT"
        lines.append(
            f"block_len={s.block_len} windows={s.windows} "
            f"max_abs_dev={s.max_abs_deviation:.6e} chi_square={s.chi_square:.6g} "
            f"df={s.df} p_value={p:.6g} {verdict}")
    return "\n".join(lines) + "\n"


def report_csv(stats: list[BlockStats]) -> str:
    lines = ["block_len,windows,max_abs_deviation,chi_square,df,p_value"]
    for s in stats:
        lines.append(
            f"{s.block_len},{s.windows},{s.max_abs_deviation:.17g},"
            f"{s.chi_square:.17g},{s.df},{s.p_value:.17g}")
    return "\n".join(lines) + "\n"
