"""Command-line front end.

Exit codes: 0 success, 1 I/O or format error, 2 usage error.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import bench, kat, selftest, sha3
from .errors import KatFormatError, MeasurementError, ParameterError

CHUNK = 1 << 16
_HEX = re.compile(r"^[0-9A-Fa-f]*$")


class UsageError(Exception):
    pass


def decode_hex(text: str, what: str = "hex input") -> bytes:
    # no whitespace or odd-length tolerance: a crypto tool should not guess
    if len(text) % 2 or not _HEX.match(text):
        raise UsageError(f"{what} must be an even-length string of hex digits")
    return bytes.fromhex(text)


def _feed(ctx, args) -> None:
    if args.hex is not None:
        if args.file is not None:
            raise UsageError("give either a file or --hex, not both")
        ctx.update(decode_hex(args.hex))
        return
    if args.file in (None, "-"):
        stream = sys.stdin.buffer
        for chunk in iter(lambda: stream.read(CHUNK), b""):
            ctx.update(chunk)
        return
    with open(args.file, "rb") as fh:
        for chunk in iter(lambda: fh.read(CHUNK), b""):
            ctx.update(chunk)


def cmd_hash(args) -> int:
    ctx = sha3.new(args.variant, mode=args.mode)
    _feed(ctx, args)
    print(ctx.finalize(args.variant).hex())
    return 0


def cmd_xof(args) -> int:
    if args.out_bytes < 1:
        raise UsageError("--out-bytes must be at least 1")
    ctx = sha3.new(args.variant, mode=args.mode)
    _feed(ctx, args)
    print(ctx.finalize(8 * args.out_bytes).hex())
    return 0


def cmd_mac(args) -> int:
    key = decode_hex(args.key, "--key")
    if not key:
        raise UsageError("--key must not be empty")
    ctx = sha3.mac_context(args.variant, key, args.mode)
    _feed(ctx, args)
    print(ctx.finalize(args.variant).hex())
    return 0


def cmd_kat(args) -> int:
    records = kat.load_kat(args.kat_file)
    summary = kat.run_kat(records, args.variant, args.mode)
    for rec, got in summary.failures:
        print(f"FAIL Len={rec.len} (line {rec.line}): expected {rec.md.hex()} got {got.hex()}")
    if summary.total == 0:
        print(f"warning: {args.kat_file} contains no test vectors", file=sys.stderr)
    print(f"passed={summary.passed} failed={summary.failed} skipped={summary.skipped}")
    return 0 if summary.ok else 1


def cmd_bench(args) -> int:
    report = bench.rate_scaling_report(args.message_bytes, args.repetitions, args.cpu_hz,
                                       runs=args.runs, warmup=args.warmup, mode=args.mode)
    print(report.csv() if args.machine_readable else report.table())
    return 0


def cmd_selftest(args) -> int:
    checks = selftest.run_selftest()
    for check in checks:
        status = "ok  " if check.ok else "FAIL"
        print(f"{status} {check.name}" + (f": {check.detail}" if check.detail else ""))
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pykeccak", description="Keccak / SHA-3 hashing tool")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        p.add_argument("--variant", type=int, choices=[224, 256, 384, 512], default=256,
                       help="output length n in bits (default 256)")
        p.add_argument("--mode", choices=[m.value for m in sha3.DomainMode], default="keccak",
                       help="keccak: original pad10*1 (default); fips202: SHA-3 domain bits")
        if with_input:
            p.add_argument("file", nargs="?", help="input file, or - for stdin (default stdin)")
            p.add_argument("--hex", help="hex-encoded message instead of a file")

    p = sub.add_parser("hash", help="fixed-length digest")
    common(p)
    p.set_defaults(func=cmd_hash)

    p = sub.add_parser("xof", help="arbitrary-length output")
    common(p)
    p.add_argument("--out-bytes", type=int, required=True)
    p.set_defaults(func=cmd_xof)

    p = sub.add_parser("mac", help="prefix MAC H(key || message)")
    common(p)
    p.add_argument("--key", required=True, help="hex-encoded key")
    p.set_defaults(func=cmd_mac)

    p = sub.add_parser("kat", help="verify a known-answer-test file")
    common(p, with_input=False)
    p.add_argument("kat_file")
    p.set_defaults(func=cmd_kat)

    p = sub.add_parser("bench", help="throughput of all four variants")
    p.add_argument("--mode", choices=[m.value for m in sha3.DomainMode], default="keccak")
    p.add_argument("--message-bytes", type=int, default=1 << 20)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--runs", type=int, default=bench.DEFAULT_RUNS)
    p.add_argument("--warmup", type=int, default=bench.DEFAULT_WARMUP)
    p.add_argument("--cpu-hz", type=int, help="clock frequency, enables the cycles/byte column")
    p.add_argument("--machine-readable", action="store_true", help="emit CSV: " + bench.CSV_HEADER)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="run built-in smoke checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"pykeccak: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KatFormatError, MeasurementError) as exc:
        print(f"pykeccak: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
