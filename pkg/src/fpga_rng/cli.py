"""Command-line driver: generate, transmit, capture, analyze, pipeline.

Paths given as ``-`` mean stdin/stdout.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import analysis, uart
from .datapath import DEFAULT_CAPTURE_INTERVAL, GeneratorState, SamplerConfig, run_sampled
from .entropy import EntropyConfig
from .prng import Algorithm

DEFAULT_ENTROPY = "synthetic:seed=1,mean=2048,sigma=512"
DEFAULT_WORDS = 490_000

PIPELINE_FILES = {
    "generated": "rand.hex",
    "stream": "uart.bin",
    "captured": "capture.hex",
    "image": "bitmap.pgm",
    "report": "report.txt",
}


def _read_bytes(path):
    if str(path) == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_bytes(path, data):
    if str(path) == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _read_hex(path):
    if str(path) == "-":
        return uart.parse_hex(sys.stdin.read(), source="<stdin>")
    return uart.read_hex_file(path)


def generate_words(alg, entropy, n, interval=DEFAULT_CAPTURE_INTERVAL):
    if n < 1:
        raise ValueError("n must be >= 1")
    source = EntropyConfig.parse(entropy).open() if isinstance(entropy, str) else entropy.open()
    state = GeneratorState(alg=Algorithm.parse(alg))
    _, words = run_sampled(state, source, SamplerConfig(interval), n)
    return words


def cmd_generate(alg, entropy, n, out, interval=DEFAULT_CAPTURE_INTERVAL):
    words = generate_words(alg, entropy, n, interval)
    _write_bytes(out, uart.format_hex(words).encode("ascii"))
    return words


def cmd_transmit(hex_in, out):
    words = _read_hex(hex_in)
    data = uart.words_to_stream(words)
    _write_bytes(out, data)
    return data


def cmd_capture(raw_in, out):
    words = uart.stream_to_words(_read_bytes(raw_in))
    _write_bytes(out, uart.format_hex(words).encode("ascii"))
    return words


def cmd_analyze(hex_in, image, report=None, width=analysis.DEFAULT_WIDTH,
                height=analysis.DEFAULT_HEIGHT):
    words = _read_hex(hex_in)
    bitmap, stats = analysis.analyze(words, width, height)
    analysis.write_image(bitmap, image)
    if report is not None:
        _write_bytes(report, stats.to_text().encode("ascii"))
    return stats


def cmd_pipeline(outdir, alg="xorshift", entropy=DEFAULT_ENTROPY, n=DEFAULT_WORDS,
                 interval=DEFAULT_CAPTURE_INTERVAL, width=analysis.DEFAULT_WIDTH,
                 height=analysis.DEFAULT_HEIGHT):
    """Generate, transmit, capture and analyze, keeping every stage's file."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {k: outdir / v for k, v in PIPELINE_FILES.items()}
    words = cmd_generate(alg, entropy, n, paths["generated"], interval)
    cmd_transmit(paths["generated"], paths["stream"])
    captured = cmd_capture(paths["stream"], paths["captured"])
    if not np.array_equal(captured, words):
        raise RuntimeError("captured words differ from generated words")
    stats = cmd_analyze(paths["captured"], paths["image"], paths["report"], width, height)
    return paths, stats


def build_parser():
    p = argparse.ArgumentParser(prog="fpga-rng", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def gen_opts(sp):
        sp.add_argument("--alg", default="xorshift", choices=[a.value for a in Algorithm])
        sp.add_argument("--entropy", default=DEFAULT_ENTROPY,
                        help="replay:PATH | os | synthetic:seed=S,mean=M,sigma=G")
        sp.add_argument("--n", type=int, default=DEFAULT_WORDS, help="words to emit")
        sp.add_argument("--interval", type=int, default=DEFAULT_CAPTURE_INTERVAL,
                        help="clock cycles per transmitted word")

    def img_opts(sp):
        sp.add_argument("--width", type=int, default=analysis.DEFAULT_WIDTH)
        sp.add_argument("--height", type=int, default=analysis.DEFAULT_HEIGHT)

    sp = sub.add_parser("generate", help="run the datapath and write a hex file")
    gen_opts(sp)
    sp.add_argument("-o", "--output", default="-")

    sp = sub.add_parser("transmit", help="hex file to raw UART byte stream")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("-o", "--output", default="-")

    sp = sub.add_parser("capture", help="raw UART byte stream to hex file")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("-o", "--output", default="-")

    sp = sub.add_parser("analyze", help="threshold bitmap and statistics")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--image", default="bitmap.pgm")
    sp.add_argument("--report", default="-")
    img_opts(sp)

    sp = sub.add_parser("pipeline", help="generate, transmit, capture, analyze")
    gen_opts(sp)
    img_opts(sp)
    sp.add_argument("--outdir", default="rng-out")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.command == "generate":
                cmd_generate(args.alg, args.entropy, args.n, args.output, args.interval)
            elif args.command == "transmit":
                cmd_transmit(args.input, args.output)
            elif args.command == "capture":
                cmd_capture(args.input, args.output)
            elif args.command == "analyze":
                cmd_analyze(args.input, args.image, args.report, args.width, args.height)
            elif args.command == "pipeline":
                paths, stats = cmd_pipeline(args.outdir, args.alg, args.entropy, args.n,
                                            args.interval, args.width, args.height)
                for p in paths.values():
                    print(p)
                sys.stdout.write(stats.to_text())
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except (OSError, ValueError, RuntimeError) as e:
        print(f"fpga-rng {args.command}: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
