"""Fixed-output Keccak/SHA-3 variants, XOF, prefix MAC and the extension-attack simulator."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

from .errors import ParameterError
from .sponge import HashContext, SpongeParams, _padding, absorb, squeeze
from .state import KeccakState, new_state, xor_rate_block


class Variant(enum.IntEnum):
    """Output length n in bits; capacity is 2n and rate 1600 - 2n."""

    KECCAK_224 = 224
    KECCAK_256 = 256
    KECCAK_384 = 384
    KECCAK_512 = 512

    @property
    def n(self) -> int:
        return int(self)

    @property
    def c(self) -> int:
        return 2 * self.n

    @property
    def r(self) -> int:
        return 1600 - self.c


class DomainMode(str, enum.Enum):
    KECCAK = "keccak"
    FIPS202 = "fips202"

    @property
    def delimiter(self) -> int:
        # fips202 appends the bits 0,1 before pad10*1: LSB-first 0b110
        return 0x01 if self is DomainMode.KECCAK else 0x06


def as_variant(variant) -> Variant:
    try:
        return Variant(int(variant))
    except (ValueError, TypeError):
        raise ParameterError(f"unsupported output length {variant!r}; choose 224, 256, 384 or 512") from None


def as_mode(mode) -> DomainMode:
    try:
        return DomainMode(mode)
    except ValueError:
        raise ParameterError(f"unknown domain mode {mode!r}") from None


def params_for(variant) -> SpongeParams:
    v = as_variant(variant)
    return SpongeParams(b=1600, r=v.r, c=v.c, w=64, rounds=24)


def new(variant, data: bytes = b"", mode=DomainMode.KECCAK) -> HashContext:
    """Streaming context for ``variant``; ``finalize(out_bits)`` returns the digest."""
    ctx = HashContext(params_for(variant), delimiter=as_mode(mode).delimiter)
    if data:
        ctx.update(data)
    return ctx


def keccak_hash(variant, message: bytes, mode=DomainMode.KECCAK) -> bytes:
    v = as_variant(variant)
    return new(v, message, mode).finalize(v.n)


def keccak_xof(variant, message: bytes, out_bits: int, mode=DomainMode.KECCAK) -> bytes:
    return new(variant, message, mode).finalize(out_bits)


def mac_context(variant, key: bytes, mode=DomainMode.KECCAK) -> HashContext:
    """Streaming prefix MAC: a context that has already absorbed ``key``."""
    if not key:
        raise ParameterError("MAC key must not be empty")
    return new(variant, key, mode)


def prefix_mac(variant, key: bytes, message: bytes, mode=DomainMode.KECCAK) -> bytes:
    """Tag = H(key || message).  No nested HMAC is needed since the sponge does not leak its capacity."""
    v = as_variant(variant)
    return mac_context(v, key, mode).update(message).finalize(v.n)


# ------------------------------------------------------------- length extension

def _continue_from(variant: Variant, state: KeccakState, suffix: bytes, mode: DomainMode) -> bytes:
    ctx = HashContext(params_for(variant), delimiter=mode.delimiter, state=state)
    return ctx.update(suffix).finalize(variant.n)


def forge_extension(variant, digest: bytes, suffix: bytes, mode=DomainMode.KECCAK) -> bytes:
    """The Merkle-Damgard style forgery: resume hashing from what the digest reveals.

    Only the first n bits of the rate are known to the attacker; the rest of
    the rate and the whole capacity are guessed as zero.
    """
    v = as_variant(variant)
    rb = v.r // 8
    start = xor_rate_block(new_state(64), bytes(digest) + bytes(rb - len(digest)), v.r)
    return _continue_from(v, start, suffix, as_mode(mode))


@dataclass
class ExtensionReport:
    variant: Variant
    mode: DomainMode
    trials: int
    forgeries: int
    control_successes: int

    @property
    def resistant(self) -> bool:
        return self.forgeries == 0

    @property
    def control_ok(self) -> bool:
        return self.control_successes == self.trials


def demonstrate_extension_resistance(variant, trials: int, mode=DomainMode.KECCAK,
                                     randbytes=os.urandom) -> ExtensionReport:
    """Run ``trials`` simulated length-extension attacks on prefix_mac.

    Each trial also runs a positive control in which the attacker is handed
    the full post-absorption state; that forgery must always succeed, which
    shows the simulator itself is sound.
    """
    if trials < 1:
        raise ParameterError("need at least one trial")
    v, m = as_variant(variant), as_mode(mode)
    params = params_for(v)
    forgeries = controls = 0
    for _ in range(trials):
        key = randbytes(16)
        message = randbytes(1 + randbytes(1)[0] % 200)
        suffix = randbytes(1 + randbytes(1)[0] % 64)

        full_state = absorb(params, key + message, delimiter=m.delimiter)
        tag = squeeze(full_state, params, v.n)
        glue = _padding(len(key) + len(message), params.rate_bytes, m.delimiter)

        target = prefix_mac(v, key, message + glue + suffix, m)
        if forge_extension(v, tag, suffix, m) == target:
            forgeries += 1
        if _continue_from(v, full_state, suffix, m) == target:
            controls += 1
    return ExtensionReport(v, m, trials, forgeries, controls)
