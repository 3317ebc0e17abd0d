"""Sponge construction over Keccak-f: pad10*1, absorb, squeeze, streaming context."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextStateError, PaddingError, ParameterError
from .permutation import keccak_f, round_count
from .state import KeccakState, extract_rate_bytes, lane_log, new_state, xor_rate_block

# First padding byte.  Bits below the lowest '1' of the pad carry domain
# separation bits (LSB first): 0x01 is plain pad10*1, 0x06 prepends "01".
KECCAK_DELIMITER = 0x01


@dataclass(frozen=True)
class SpongeParams:
    b: int
    r: int
    c: int
    w: int
    rounds: int

    def __post_init__(self):
        ell = lane_log(self.w)
        if self.b != 25 * self.w or self.b != self.r + self.c:
            raise ParameterError(f"need b = r + c = 25w, got b={self.b} r={self.r} c={self.c} w={self.w}")
        if not 0 < self.r < self.b or self.r % 8:
            raise ParameterError(f"rate {self.r} must be a positive multiple of 8 below {self.b}")
        if self.rounds != 12 + 2 * ell:
            raise ParameterError(f"Keccak-f[{self.b}] has {12 + 2 * ell} rounds, not {self.rounds}")

    @classmethod
    def from_rate(cls, r: int, w: int = 64) -> "SpongeParams":
        b = 25 * w
        return cls(b=b, r=r, c=b - r, w=w, rounds=round_count(w))

    @property
    def rate_bytes(self) -> int:
        return self.r // 8


def _check_delimiter(delimiter: int) -> None:
    if not 0 < delimiter < 0x80:
        raise ParameterError(f"delimiter byte must be in 0x01..0x7f, got {delimiter:#x}")


def _padding(msg_len: int, rate_bytes: int, delimiter: int = KECCAK_DELIMITER) -> bytes:
    q = rate_bytes - msg_len % rate_bytes
    pad = bytearray(q)
    pad[0] = delimiter
    pad[-1] |= 0x80
    return bytes(pad)


def pad10star1(message: bytes, r: int) -> bytes:
    """Append '1', the fewest '0's, then '1' so the length is a multiple of r bits."""
    if r <= 0 or r % 8:
        raise ParameterError(f"rate {r} must be a positive multiple of 8")
    return bytes(message) + _padding(len(message), r // 8)


def unpad10star1(padded: bytes, r: int) -> bytes:
    if r <= 0 or r % 8:
        raise ParameterError(f"rate {r} must be a positive multiple of 8")
    rb = r // 8
    n = len(padded)
    if n == 0 or n % rb:
        raise PaddingError(f"padded length {n} is not a positive multiple of {rb}")
    last = padded[-1]
    if last == 0x81:
        return bytes(padded[:-1])
    if last != 0x80:
        raise PaddingError(f"last byte {last:#04x} is not a pad10*1 terminator")
    i = n - 2
    floor = n - rb
    while i >= floor and padded[i] == 0:
        i -= 1
    if i < floor or padded[i] != 0x01:
        raise PaddingError("no '1' marker opening the pad in the final block")
    return bytes(padded[:i])


class HashContext:
    """Incremental sponge: ``update`` any number of times, ``finalize`` once, then ``squeeze`` more.

    ``permutation_calls`` counts Keccak-f invocations.  With 64-bit lanes and
    a lane-aligned rate the compiled permutation is used; otherwise the
    generic step mappings run.
    """

    def __init__(self, params: SpongeParams, *, delimiter: int = KECCAK_DELIMITER,
                 state: KeccakState | None = None, accelerated: bool | None = None):
        _check_delimiter(delimiter)
        eligible = params.w == 64 and params.r % 64 == 0
        if accelerated is None:
            accelerated = eligible
        elif accelerated and not eligible:
            raise ParameterError("compiled path needs w=64 and a rate that is a whole number of lanes")
        if state is not None and state.w != params.w:
            raise ParameterError(f"state lane width {state.w} does not match params w={params.w}")
        self.params = params
        self.delimiter = delimiter
        self.permutation_calls = 0
        self._rb = params.rate_bytes
        self._accelerated = accelerated
        self._buffer = bytearray()
        self._finalized = False
        self._offset = 0
        if accelerated:
            from . import _native
            self._native = _native
            self._lanes = np.array(state.lanes if state is not None else [0] * 25, dtype=np.uint64)
        else:
            self._lanes = state if state is not None else new_state(params.w)

    @classmethod
    def from_absorbed(cls, params: SpongeParams, state: KeccakState, **kwargs) -> "HashContext":
        """A context already in the squeezing phase, positioned at the start of ``state``'s rate."""
        ctx = cls(params, state=state, **kwargs)
        ctx._finalized = True
        return ctx

    @property
    def finalized(self) -> bool:
        return self._finalized

    @property
    def state(self) -> KeccakState:
        """Snapshot of the full internal state (pending buffered bytes excluded)."""
        if self._accelerated:
            return KeccakState(tuple(int(v) for v in self._lanes), 64)
        return self._lanes

    def copy(self) -> "HashContext":
        other = object.__new__(HashContext)
        other.__dict__.update(self.__dict__)
        other._buffer = bytearray(self._buffer)
        if self._accelerated:
            other._lanes = self._lanes.copy()
        return other

    # -- internals

    def _permute(self):
        if self._accelerated:
            self._native.permute(self._lanes)
        else:
            self._lanes = keccak_f(self._lanes)
        self.permutation_calls += 1

    def _absorb_blocks(self, data) -> int:
        """Absorb the whole rate blocks at the front of ``data``; returns bytes consumed."""
        rb = self._rb
        if self._accelerated:
            n = self._native.absorb_blocks(self._lanes, data, rb)
            self.permutation_calls += n
            return n * rb
        used = len(data) - len(data) % rb
        for off in range(0, used, rb):
            self._lanes = xor_rate_block(self._lanes, bytes(data[off:off + rb]), self.params.r)
            self._permute()
        return used

    def _rate(self) -> bytes:
        if self._accelerated:
            return self._lanes.astype("<u8").tobytes()[:self._rb]
        return extract_rate_bytes(self._lanes, self.params.r)

    # -- public API

    def update(self, chunk) -> "HashContext":
        if self._finalized:
            raise ContextStateError("cannot update a finalized context")
        data = memoryview(chunk).cast("B")
        buf = self._buffer
        if buf:
            take = min(self._rb - len(buf), len(data))
            buf += data[:take]
            data = data[take:]
            if len(buf) < self._rb:
                return self
            self._absorb_blocks(bytes(buf))
            buf.clear()
        used = self._absorb_blocks(data)
        buf += data[used:]
        return self

    def _absorb_final(self):
        if self._finalized:
            raise ContextStateError("context already finalized")
        block = bytes(self._buffer) + _padding(len(self._buffer), self._rb, self.delimiter)
        self._absorb_blocks(block)
        self._buffer.clear()
        self._finalized = True

    def finalize(self, out_bits: int) -> bytes:
        """Pad, absorb the last block and return the first ``out_bits`` bits of output."""
        self._absorb_final()
        return self.squeeze(out_bits)

    def squeeze(self, out_bits: int) -> bytes:
        """Continue the output stream; a permutation runs only when a fresh block is needed."""
        if not self._finalized:
            raise ContextStateError("finalize the context before squeezing")
        if out_bits <= 0 or out_bits % 8:
            raise ParameterError(f"output length must be a positive multiple of 8 bits, got {out_bits}")
        need = out_bits // 8
        out = bytearray()
        while need:
            if self._offset == self._rb:
                self._permute()
                self._offset = 0
            take = min(need, self._rb - self._offset)
            out += self._rate()[self._offset:self._offset + take]
            self._offset += take
            need -= take
        return bytes(out)


def absorb(params: SpongeParams, message: bytes, *, delimiter: int = KECCAK_DELIMITER) -> KeccakState:
    """Pad ``message`` and fold its blocks into the zero state."""
    ctx = HashContext(params, delimiter=delimiter)
    ctx.update(message)
    ctx._absorb_final()
    return ctx.state


def squeeze(state: KeccakState, params: SpongeParams, out_bits: int) -> bytes:
    return HashContext.from_absorbed(params, state).squeeze(out_bits)


def sponge_hash(params: SpongeParams, message: bytes, out_bits: int, *,
                delimiter: int = KECCAK_DELIMITER) -> bytes:
    return HashContext(params, delimiter=delimiter).update(message).finalize(out_bits)
