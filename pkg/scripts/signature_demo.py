#!/usr/bin/env python3
"""Show the two faces of an order-k stream.

Generates a long sample, then prints the block-frequency battery across
block lengths: uniformity is accepted up to the order and rejected just
past it, even though the stream's entropy rate is far below 1 bit.
"""
import argparse

from twofaced.generator import (exact_conditional_entropy, generate,
                                init_uniform, limit_entropy)
from twofaced.kernels import KernelSpec, Variant
from twofaced.sources import CounterBitSource, UniformRealSource
from twofaced.stats import analyze, report_text


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--pi", type=float, default=0.2)
    ap.add_argument("--length", type=int, default=10 ** 6)
    ap.add_argument("--seed", type=int, default=9)
    ap.add_argument("--alpha", type=float, default=1e-4)
    args = ap.parse_args()

    kernel = KernelSpec(Variant.PLAIN, args.order, args.pi)
    print(f"kernel: order={args.order} pi={args.pi} seed={args.seed}")
    print(f"entropy rate: {limit_entropy(args.pi):.6f} bits/letter "
          f"(h_m = 1 exactly for m <= {args.order})")
    for m in (args.order, args.order + 1):
        print(f"exact h_{m} = {exact_conditional_entropy(kernel, m):.6f}")

    source = CounterBitSource(args.seed)
    state = init_uniform(kernel, source)
    seq = generate(state, args.length, UniformRealSource(source))
    print(f"\nblock-frequency battery on {args.length} sampled bits "
          f"(alpha = {args.alpha:g}):")
    print(report_text(analyze(seq, args.order + 1), args.alpha), end="")


if __name__ == "__main__":
    main()
