"""Command-line front end over the shared stream formats.

Commands compose through pipes: `gen` emits a kernel stream, `transform`
rewrites stdin through the conversion, `combine` XORs two inputs or
builds the growing-order combination from a config file, `whiten` masks
stdin, `analyze` prints block statistics, and `expand` stretches a seed.
Streams are read and written in one of the formats ascii01 (default),
packed, or hex.

Every stochastic command requires an explicit entropy flag (`--seed`,
`--os-entropy`, or `--entropy-file`); there is no silent
nondeterminism.  Exit codes: 0 success, 2 usage error, 1 runtime error.
"""
from __future__ import annotations

import argparse
import sys

from . import combine as combine_mod
from . import stats as stats_mod
from .bitseq import FORMATS, BitSequence, decode_stream, encode_stream
from .errors import CapacityError, ConfigurationError, SourceExhaustedError
from .expander import ExpanderConfig, expand
from .generator import generate, init_fixed, init_uniform
from .kernels import KernelSpec, Variant
from .sources import (CounterBitSource, FileBitSource, OSBitSource,
                      UniformRealSource)
from .transform import inverse_transform, transform


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="ascii01",
                        help="stream format for input and output (default ascii01)")


def _add_entropy_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--seed", type=int, default=None, metavar="U64",
                       help="deterministic counter-mode source")
    group.add_argument("--os-entropy", action="store_true",
                       help="use operating-system entropy (not reproducible)")
    group.add_argument("--entropy-file", metavar="PATH", default=None,
                       help="replay bits from a packed-bits file")


def _entropy_source(args, parser: argparse.ArgumentParser):
    if args.seed is not None:
        return CounterBitSource(args.seed)
    if args.os_entropy:
        return OSBitSource()
    if args.entropy_file is not None:
        return FileBitSource(args.entropy_file)
    parser.error("an entropy flag is required: --seed, --os-entropy, or --entropy-file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twofaced",
        description="Generate, transform, combine, analyze, and expand bit streams "
                    "with exactly uniform short-block statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a kernel-distributed stream")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--pi", type=float, required=True)
    p.add_argument("--variant", choices=["plain", "bar"], default="plain")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--init", metavar="BITS", default=None,
                   help="fixed initial window (default: drawn uniformly)")
    _add_entropy_flags(p)
    _add_format(p)

    p = sub.add_parser("transform", help="apply the conversion to stdin")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--init", metavar="BITS", required=True,
                   help="initial window of length order")
    p.add_argument("--variant", choices=["plain", "bar"], default="plain")
    p.add_argument("--inverse", action="store_true",
                   help="invert the conversion instead")
    _add_format(p)

    p = sub.add_parser("combine", help="XOR two streams or build a combined stream")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--xor-with", metavar="PATH",
                      help="XOR stdin with the stream stored at PATH")
    mode.add_argument("--config", metavar="PATH",
                      help="growing-order combination config file")
    p.add_argument("--length", type=int, default=None,
                   help="output length (required with --config)")
    _add_format(p)

    p = sub.add_parser("whiten", help="XOR stdin with a generated mask")
    mask = p.add_mutually_exclusive_group(required=True)
    mask.add_argument("--order", type=int, default=None,
                      help="kernel mask order (with --pi)")
    mask.add_argument("--config", metavar="PATH",
                      help="growing-order combination config file")
    p.add_argument("--pi", type=float, default=None)
    p.add_argument("--variant", choices=["plain", "bar"], default="plain")
    _add_entropy_flags(p)
    _add_format(p)

    p = sub.add_parser("analyze", help="block-frequency report for stdin")
    p.add_argument("--min-block", type=int, default=1)
    p.add_argument("--max-block", type=int, required=True)
    p.add_argument("--alpha", type=float, default=1e-4,
                   help="rejection threshold for the text report")
    p.add_argument("--csv", action="store_true", help="machine-readable output")
    _add_format(p)

    p = sub.add_parser("expand", help="stretch a short seed into a long stream")
    seed = p.add_mutually_exclusive_group(required=True)
    seed.add_argument("--seed-hex", metavar="HEX", help="seed bits, hex-encoded")
    seed.add_argument("--seed-file", metavar="PATH", help="seed bits, packed file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--precision", type=int, default=62)
    _add_format(p)

    return parser


def _read_input(stdin, fmt: str) -> BitSequence:
    return decode_stream(stdin.read(), fmt)


def _write_output(stdout, seq: BitSequence, fmt: str) -> None:
    stdout.write(encode_stream(seq, fmt))
    if fmt != "packed":
        stdout.write(b"\n")


def _variant(name: str) -> Variant:
    return Variant.BAR if name == "bar" else Variant.PLAIN


def _cmd_gen(args, parser, stdin, stdout) -> int:
    kernel = KernelSpec(_variant(args.variant), args.order, args.pi)
    source = _entropy_source(args, parser)
    if args.init is not None:
        state = init_fixed(kernel, args.init)
    else:
        state = init_uniform(kernel, source)
    out = generate(state, args.length, UniformRealSource(source))
    _write_output(stdout, out, args.format)
    return 0


def _cmd_transform(args, parser, stdin, stdout) -> int:
    v = BitSequence.from_ascii01(args.init)
    if args.order is not None and args.order != len(v):
        parser.error(f"--init length {len(v)} does not match --order {args.order}")
    seq = _read_input(stdin, args.format)
    op = inverse_transform if args.inverse else transform
    _write_output(stdout, op(seq, v, _variant(args.variant)), args.format)
    return 0


def _cmd_combine(args, parser, stdin, stdout) -> int:
    if args.config is not None:
        if args.length is None:
            parser.error("--length is required with --config")
        config = combine_mod.load_config(args.config)
        out = combine_mod.twice_two_faced_from_config(config, args.length)
    else:
        seq = _read_input(stdin, args.format)
        with open(args.xor_with, "rb") as fh:
            other = decode_stream(fh.read(), args.format)
        out = combine_mod.xor_streams(seq, other)
    _write_output(stdout, out, args.format)
    return 0


def _cmd_whiten(args, parser, stdin, stdout) -> int:
    seq = _read_input(stdin, args.format)
    if args.config is not None:
        mask_spec = combine_mod.load_config(args.config)
        out = combine_mod.whiten(seq, mask_spec)
    else:
        if args.pi is None:
            parser.error("--pi is required with --order")
        kernel = KernelSpec(_variant(args.variant), args.order, args.pi)
        out = combine_mod.whiten(seq, kernel, _entropy_source(args, parser))
    _write_output(stdout, out, args.format)
    return 0


def _cmd_analyze(args, parser, stdin, stdout) -> int:
    seq = _read_input(stdin, args.format)
    results = stats_mod.analyze(seq, args.max_block, args.min_block)
    if args.csv:
        text = stats_mod.report_csv(results)
    else:
        text = stats_mod.report_text(results, args.alpha)
    stdout.write(text.encode("ascii"))
    return 0


def _cmd_expand(args, parser, stdin, stdout) -> int:
    if args.seed_hex is not None:
        seed = BitSequence.from_hex(args.seed_hex)
    else:
        with open(args.seed_file, "rb") as fh:
            seed = BitSequence.from_packed(fh.read())
    config = ExpanderConfig(args.order, args.length, args.precision)
    _write_output(stdout, expand(seed, config), args.format)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "transform": _cmd_transform,
    "combine": _cmd_combine,
    "whiten": _cmd_whiten,
    "analyze": _cmd_analyze,
    "expand": _cmd_expand,
}


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    """Parse and execute one command over binary byte streams."""
    stdin = stdin if stdin is not None else sys.stdin.buffer
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, parser, stdin, stdout)
    except SystemExit as exc:  # parser.error from semantic validation
        return int(exc.code or 0)
    except (ValueError, CapacityError, ConfigurationError, SourceExhaustedError,
            OSError) as exc:
        print(f"twofaced {args.command}: {exc}", file=stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
