"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 malformed input or container,
3 integrity failure.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from . import analysis, bench, image_io
from .cipher import (
    Ciphertext,
    decrypt,
    default_workers,
    dumps_ciphertext,
    encrypt,
    loads_ciphertext,
)
from .codec import CipherParams
from .errors import ConfigurationError, IntegrityError, ScytaleError

log = logging.getLogger("scytale")

KEY_ENV = "SCYTALE_KEY"
EXIT_OK, EXIT_USAGE, EXIT_MALFORMED, EXIT_INTEGRITY = 0, 1, 2, 3

DISCLAIMER = (
    "Research cipher built on the reversible Critters cellular automaton. "
    "It is unauthenticated, unaudited, and not suitable for protecting real data."
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _hex_byte(text: str) -> int:
    try:
        value = int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a hex byte, got {text!r}")
    if not 0 <= value <= 255:
        raise argparse.ArgumentTypeError(f"pad byte out of range: {text!r}")
    return value


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _resolve_key(args) -> int:
    key = args.key
    if key is None:
        raw = os.environ.get(KEY_ENV)
        if raw is None:
            raise UsageError(f"--key is required (or set {KEY_ENV})")
        try:
            key = int(raw)
        except ValueError:
            raise UsageError(f"{KEY_ENV} must be a decimal integer")
    if key < 0:
        raise UsageError("key must be >= 0")
    if key == 0 and not getattr(args, "allow_zero_key", False):
        raise UsageError("key 0 leaves the plaintext unchanged; pass --allow-zero-key to permit it")
    return key


def _workers(args) -> int | None:
    return default_workers() if getattr(args, "parallel_chunks", False) else None


def cmd_encrypt(args) -> int:
    params = CipherParams(key=_resolve_key(args), block_size=args.block_size, pad_byte=args.pad)
    data = _read(args.input)
    if data and data[-1] == params.pad_byte:
        log.warning(
            "input ends in pad byte 0x%02x; trailing copies of it will be lost on decryption",
            params.pad_byte,
        )
    _write(args.output, dumps_ciphertext(encrypt(data, params, workers=_workers(args))))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = _resolve_key(args)
    ct = loads_ciphertext(_read(args.input))
    block_size = ct.block_size if args.block_size is None else args.block_size
    params = CipherParams(key=key, block_size=block_size, pad_byte=args.pad)
    _write(args.output, decrypt(ct, params, workers=_workers(args)))
    return EXIT_OK


def cmd_export_image(args) -> int:
    ct = loads_ciphertext(_read(args.input))
    squares = image_io.ciphertext_to_squares(ct)
    _write(args.output, image_io.dumps_image_container(squares, ct.block_size))
    if args.pgm_dir:
        paths = image_io.export_pgm_dir(squares, args.pgm_dir)
        log.info("wrote %d PGM files to %s", len(paths), args.pgm_dir)
    return EXIT_OK


def cmd_import_image(args) -> int:
    block_size, squares = image_io.loads_image_container(_read(args.input))
    ct = image_io.squares_to_ciphertext(squares, block_size)
    _write(args.output, dumps_ciphertext(ct))
    return EXIT_OK


def cmd_avalanche(args) -> int:
    params = CipherParams(key=_resolve_key(args), block_size=args.block_size, pad_byte=args.pad)
    report = analysis.avalanche_report(_read(args.input), params, args.trials, args.seed)
    print(report.to_text())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            report.write_csv(fh)
    return EXIT_OK


def _emit_bench(records, args) -> int:
    for r in records:
        print(
            f"length={r.string_length:>8}  K={r.iterations:>3}  "
            f"runtime={r.runtime:.6f}s  reps={r.repetitions}  {r.mode}/{r.backend}"
        )
    if args.csv:
        if args.csv == "-":
            bench.emit_csv(records, sys.stdout)
        else:
            with open(args.csv, "w", newline="") as fh:
                bench.emit_csv(records, fh)
    return EXIT_OK


def cmd_bench_length(args) -> int:
    records = bench.length_sweep(
        args.lengths, args.keys, args.block_size, args.repetitions, args.seed,
        workers=_workers(args), backend=args.backend,
    )
    return _emit_bench(records, args)


def cmd_bench_iterations(args) -> int:
    records = bench.iteration_sweep(
        args.length, args.iterations, args.block_size, args.repetitions, args.seed,
        workers=_workers(args), backend=args.backend,
    )
    return _emit_bench(records, args)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scytale", description=DISCLAIMER)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def key_opts(p, block_default=8):
        p.add_argument("--key", type=int, help=f"iteration count (private key); falls back to ${KEY_ENV}")
        p.add_argument("--block-size", type=int, default=block_default, help="bytes per chunk (even)")
        p.add_argument("--pad", type=_hex_byte, default=0, help="pad byte in hex (default 00)")
        p.add_argument("--allow-zero-key", action="store_true", help="permit the identity key 0")

    def io_opts(p):
        p.add_argument("--in", dest="input", required=True, help="input path, '-' for stdin")
        p.add_argument("--out", dest="output", required=True, help="output path, '-' for stdout")

    p = sub.add_parser("encrypt", help="encrypt bytes into a SCYT container", description=DISCLAIMER)
    key_opts(p)
    io_opts(p)
    p.add_argument("--parallel-chunks", action="store_true")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a SCYT container", description=DISCLAIMER)
    key_opts(p, block_default=None)
    io_opts(p)
    p.add_argument("--parallel-chunks", action="store_true")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("export-image", help="render SCYT chunks as a SCYI image container")
    io_opts(p)
    p.add_argument("--pgm-dir", help="also write one PGM file per chunk here")
    p.set_defaults(func=cmd_export_image)

    p = sub.add_parser("import-image", help="convert a SCYI image container back to SCYT")
    io_opts(p)
    p.set_defaults(func=cmd_import_image)

    p = sub.add_parser("analyze", help="diffusion analysis")
    asub = p.add_subparsers(dest="analysis", required=True, parser_class=_Parser)
    a = asub.add_parser("avalanche", help="one-byte-flip similarity trials")
    key_opts(a)
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--trials", type=int, default=100)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--csv", help="write per-trial CSV here")
    a.set_defaults(func=cmd_avalanche)

    p = sub.add_parser("bench", help="runtime sweeps")
    bsub = p.add_subparsers(dest="sweep", required=True, parser_class=_Parser)

    def bench_opts(b):
        b.add_argument("--block-size", type=int, default=8)
        b.add_argument("--repetitions", type=int, default=3)
        b.add_argument("--seed", type=int, default=0)
        b.add_argument("--csv", help="write CSV here ('-' for stdout)")
        b.add_argument("--parallel-chunks", action="store_true")
        b.add_argument("--backend", choices=("numba", "numpy"), default=None)

    b = bsub.add_parser("length", help="runtime vs plaintext length")
    b.add_argument("--lengths", type=_int_list, default=list(bench.DEFAULT_LENGTHS))
    b.add_argument("--keys", type=_int_list, default=list(bench.DEFAULT_LENGTH_KEYS))
    bench_opts(b)
    b.set_defaults(func=cmd_bench_length)

    b = bsub.add_parser("iterations", help="runtime vs iteration count")
    b.add_argument("--length", type=int, default=bench.DEFAULT_SWEEP_LENGTH)
    b.add_argument("--iterations", type=_int_list, default=list(bench.DEFAULT_ITERATIONS))
    bench_opts(b)
    b.set_defaults(func=cmd_bench_iterations)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="scytale: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, ConfigurationError) as exc:
        print(f"scytale: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"scytale: integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (ScytaleError, OSError) as exc:
        print(f"scytale: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
