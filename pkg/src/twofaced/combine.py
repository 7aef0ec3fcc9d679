"""XOR combination of bit streams and the growing-order construction.

XOR-ing any stream with a stream whose k-blocks are exactly uniform
yields a stream whose k-blocks are exactly uniform; `xor_streams` is
that operation.  `twice_two_faced` pushes the idea to every block
length: over a strictly increasing cut sequence n_1 < n_2 < ..., output
position i XORs the first m component streams, where m is the index of
the segment containing i (i <= n_1 uses one component, n_1 < i <= n_2
two, and so on).  With component j following an order-n_j kernel, every
block length is covered once the cuts pass it.

Components are instantiated lazily: a component whose segment starts at
or beyond the requested length is never built.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bitseq import BitSequence
from .errors import ConfigurationError
from .generator import generate, init_uniform
from .kernels import KernelSpec, Variant
from .sources import BitSource, CounterBitSource, UniformRealSource, mix64

StreamFactory = Callable[[int], BitSequence]


def xor_streams(a: BitSequence, b: BitSequence) -> BitSequence:
    """Bitwise XOR of two equal-length streams."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return a ^ b


@dataclass(frozen=True)
class CutSequence:
    """Strictly increasing positive cut positions n_1 < n_2 < ..."""

    cuts: tuple[int, ...]

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cuts)
        if any(c < 1 for c in cuts):
            raise ValueError("cuts must be positive")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError("cuts must be strictly increasing")
        object.__setattr__(self, "cuts", cuts)

    def segment_starts(self, n: int) -> list[int]:
        """0-based start position of each component active within length n."""
        return [0] + [c for c in self.cuts if c < n]


@dataclass(frozen=True)
class ComponentSpec:
    """One component stream: kernel order, parameter, and its own seed."""

    order: int
    pi: float
    seed: int
    variant: Variant = Variant.PLAIN

    def kernel(self) -> KernelSpec:
        return KernelSpec(self.variant, self.order, self.pi)


@dataclass(frozen=True)
class TwiceTwoFacedConfig:
    cuts: CutSequence
    components: tuple[ComponentSpec, ...]


def component_stream(spec: ComponentSpec) -> StreamFactory:
    """Factory producing the component's prefix of a requested length.

    Each call restarts the component from its seed: the first `order`
    source bits initialize the window uniformly, the rest drive sampling.
    """

    def build(n: int) -> BitSequence:
        source = CounterBitSource(spec.seed)
        state = init_uniform(spec.kernel(), source)
        return generate(state, n, UniformRealSource(source))

    return build


def twice_two_faced(factories: Sequence[StreamFactory], cuts: CutSequence,
                    n: int) -> BitSequence:
    """Combine component streams over the cut sequence up to length n."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    starts = cuts.segment_starts(n)
    if len(factories) < len(starts):
        raise ConfigurationError(
            f"{len(starts)} components required for length {n}, got {len(factories)}")
    acc = np.zeros(n, dtype=np.uint8)
    for factory, start in zip(factories, starts):
        acc[start:] ^= factory(n).array[start:]
    return BitSequence._wrap(acc)


def twice_two_faced_from_config(config: TwiceTwoFacedConfig, n: int) -> BitSequence:
    factories = [component_stream(c) for c in config.components]
    return twice_two_faced(factories, config.cuts, n)


def default_config(pi: float, seed: int, n: int) -> TwiceTwoFacedConfig:
    """Power-of-two cuts with matching component orders.

    Component j (1-based) has order 2^j; per-component seeds are derived
    from the base seed by mixing so the streams are independent.
    """
    cuts = []
    c = 2
    while c < n:
        cuts.append(c)
        c *= 2
    cuts.append(c)
    components = tuple(
        ComponentSpec(order=cut, pi=pi, seed=mix64(seed ^ mix64(j + 1)))
        for j, cut in enumerate(cuts))
    return TwiceTwoFacedConfig(CutSequence(tuple(cuts)), components)


def parse_config(text: str) -> TwiceTwoFacedConfig:
    """Parse the text config format: lines ``cut <n>`` and
    ``component order=<k> pi=<float> seed=<u64>``; blank lines and
    ``#`` comments are ignored."""
    cuts: list[int] = []
    components: list[ComponentSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "cut" and len(fields) == 2:
                cuts.append(int(fields[1]))
                continue
            if fields[0] == "component":
                kv = dict(f.split("=", 1) for f in fields[1:])
                if set(kv) != {"order", "pi", "seed"}:
                    raise ValueError(f"expected order=, pi=, seed=, got {sorted(kv)}")
                components.append(ComponentSpec(
                    order=int(kv["order"]), pi=float(kv["pi"]), seed=int(kv["seed"])))
                continue
            raise ValueError(f"unrecognized directive {fields[0]!r}")
        except (ValueError, KeyError) as exc:
            raise ConfigurationError(f"config line {lineno}: {exc}") from exc
    if not components:
        raise ConfigurationError("config defines no components")
    try:
        cut_seq = CutSequence(tuple(cuts))
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    return TwiceTwoFacedConfig(cut_seq, tuple(components))


def render_config(config: TwiceTwoFacedConfig) -> str:
    lines = [f"cut {c}" for c in config.cuts.cuts]
    lines += [f"component order={c.order} pi={c.pi!r} seed={c.seed}"
              for c in config.components]
    return "\n".join(lines) + "\n"


def load_config(path) -> TwiceTwoFacedConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def whiten(seq: BitSequence, mask_spec, source: BitSource | None = None) -> BitSequence:
    """XOR the input with a freshly generated mask of equal length.

    `mask_spec` is either a KernelSpec (requires a bit source for the
    mask) or a TwiceTwoFacedConfig (self-seeded).
    """
    n = len(seq)
    if isinstance(mask_spec, KernelSpec):
        if source is None:
            raise ValueError("a bit source is required for a kernel mask")
        state = init_uniform(mask_spec, source)
        mask = generate(state, n, UniformRealSource(source))
    elif isinstance(mask_spec, TwiceTwoFacedConfig):
        mask = twice_two_faced_from_config(mask_spec, n)
    else:
        raise TypeError("mask_spec must be a KernelSpec or TwiceTwoFacedConfig")
    return xor_streams(seq, mask)
