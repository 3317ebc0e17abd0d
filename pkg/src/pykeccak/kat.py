"""Reader and runner for known-answer-test files (``Len`` / ``Msg`` / ``MD`` records)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import KatFormatError
from .sha3 import DomainMode, as_mode, as_variant, keccak_hash

_LINE = re.compile(r"^\s*(\w+)\s*=\s*(\S*)\s*$")
_HEX = re.compile(r"^[0-9A-Fa-f]*$")


@dataclass
class KatRecord:
    len: int  # message length in bits
    msg: bytes
    md: bytes
    line: int = 0

    @property
    def byte_aligned(self) -> bool:
        return self.len % 8 == 0


def _hex(value: str, lineno: int) -> bytes:
    if len(value) % 2 or not _HEX.match(value):
        raise KatFormatError(f"line {lineno}: {value[:20]!r} is not an even-length hex string")
    return bytes.fromhex(value)


def parse_kat(text: str) -> list[KatRecord]:
    records = []
    current: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", "[")):
            continue
        m = _LINE.match(line)
        if m is None:
            raise KatFormatError(f"line {lineno}: expected 'key = value', got {line[:40]!r}")
        key, value = m.groups()
        if key == "Len":
            if current is not None:
                raise KatFormatError(f"line {lineno}: record at line {current['line']} has no MD")
            try:
                bits = int(value)
            except ValueError:
                raise KatFormatError(f"line {lineno}: Len {value!r} is not an integer") from None
            if bits < 0:
                raise KatFormatError(f"line {lineno}: negative Len")
            current = {"line": lineno, "len": bits, "msg": None}
        elif key in ("Msg", "MD"):
            if current is None:
                raise KatFormatError(f"line {lineno}: {key} before any Len")
            data = _hex(value, lineno)
            if key == "Msg":
                current["msg"] = data
                continue
            bits = current["len"]
            msg = current["msg"]
            if bits == 0:
                msg = b""
            elif msg is None:
                raise KatFormatError(f"line {lineno}: record at line {current['line']} has no Msg")
            elif bits % 8 == 0 and len(msg) != bits // 8:
                raise KatFormatError(f"line {current['line']}: Msg has {len(msg)} bytes but Len = {bits}")
            records.append(KatRecord(bits, msg, data, current["line"]))
            current = None
    if current is not None:
        raise KatFormatError(f"record at line {current['line']} is missing MD")
    return records


def load_kat(path) -> list[KatRecord]:
    return parse_kat(Path(path).read_text())


@dataclass
class KatSummary:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)  # (record, computed digest)

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.skipped

    @property
    def ok(self) -> bool:
        return self.failed == 0


def run_kat(records, variant, mode=DomainMode.KECCAK) -> KatSummary:
    """Check byte-aligned records against ``keccak_hash``; other records are counted as skipped."""
    v, m = as_variant(variant), as_mode(mode)
    summary = KatSummary()
    for rec in records:
        if not rec.byte_aligned:
            summary.skipped += 1
            continue
        got = keccak_hash(v, rec.msg, m)
        if got == rec.md:
            summary.passed += 1
        else:
            summary.failed += 1
            summary.failures.append((rec, got))
    return summary
