"""The 5x5 lane state and its bit-ordering conventions.

State bit ``i`` lives in lane ``i // w`` at in-lane position ``i % w``.
Lanes are numbered ``x + 5*y`` and serialize little-endian, so byte ``k`` of
a serialized state holds state bits ``8k .. 8k+7`` with bit ``j`` of the byte
being state bit ``8k + j``.  This is the layout the official test vectors
assume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AlignmentError, ParameterError

LANE_WIDTHS = (1, 2, 4, 8, 16, 32, 64)


def lane_log(w: int) -> int:
    """Return log2(w), raising ParameterError for unsupported lane widths."""
    if w not in LANE_WIDTHS:
        raise ParameterError(f"lane width must be one of {LANE_WIDTHS}, got {w!r}")
    return w.bit_length() - 1


def lane_index(x: int, y: int) -> int:
    return (x % 5) + 5 * (y % 5)


@dataclass(frozen=True)
class KeccakState:
    """Immutable 5x5 grid of w-bit lanes, stored flat in ``x + 5*y`` order.

    Lanes are normally Python ints.  The step mappings only use bitwise
    operators, so a state whose lanes are equally-shaped numpy integer arrays
    evaluates the permutation on many states at once; such batch states skip
    the range check.
    """

    lanes: tuple
    w: int = 64

    def __post_init__(self):
        lane_log(self.w)
        if len(self.lanes) != 25:
            raise ParameterError(f"state needs 25 lanes, got {len(self.lanes)}")
        mask = (1 << self.w) - 1
        for v in self.lanes:
            if isinstance(v, int) and not 0 <= v <= mask:
                raise ParameterError(f"lane value {v:#x} does not fit in {self.w} bits")

    @property
    def b(self) -> int:
        return 25 * self.w

    def lane(self, x: int, y: int):
        return self.lanes[lane_index(x, y)]

    def grid(self) -> list[list[int]]:
        """Lanes as ``grid[x][y]``."""
        return [[self.lanes[x + 5 * y] for y in range(5)] for x in range(5)]

    def to_int(self) -> int:
        """The whole state as one b-bit integer (state bit i is integer bit i)."""
        acc = 0
        for i, v in enumerate(self.lanes):
            acc |= int(v) << (i * self.w)
        return acc

    @classmethod
    def from_int(cls, value: int, w: int = 64) -> "KeccakState":
        lane_log(w)
        mask = (1 << w) - 1
        return cls(tuple((value >> (i * w)) & mask for i in range(25)), w)

    def to_bytes(self) -> bytes:
        if self.b % 8:
            raise AlignmentError(f"a {self.b}-bit state is not byte aligned")
        return self.to_int().to_bytes(self.b // 8, "little")

    @classmethod
    def from_bytes(cls, data: bytes, w: int = 64) -> "KeccakState":
        return cls(tuple(bytes_to_lane_words(data, w)), w)

    def popcount(self) -> int:
        return sum(bin(int(v)).count("1") for v in self.lanes)


def new_state(w: int = 64) -> KeccakState:
    """All-zero state of lane width ``w``."""
    lane_log(w)
    return KeccakState((0,) * 25, w)


def bytes_to_lane_words(data: bytes, w: int) -> list[int]:
    lane_log(w)
    nbits = 8 * len(data)
    if nbits % w:
        raise AlignmentError(f"{len(data)} bytes is not a whole number of {w}-bit lanes")
    value = int.from_bytes(data, "little")
    mask = (1 << w) - 1
    return [(value >> (k * w)) & mask for k in range(nbits // w)]


def lane_words_to_bytes(words: Sequence[int], w: int) -> bytes:
    lane_log(w)
    nbits = w * len(words)
    if nbits % 8:
        raise AlignmentError(f"{len(words)} lanes of {w} bits is not a whole number of bytes")
    value = 0
    for k, v in enumerate(words):
        value |= int(v) << (k * w)
    return value.to_bytes(nbits // 8, "little")


def _check_rate(r: int, w: int) -> None:
    if r <= 0 or r % 8 or r >= 25 * w:
        raise ParameterError(f"rate {r} must be a positive multiple of 8 below {25 * w}")


def xor_rate_block(state: KeccakState, block: bytes, r: int) -> KeccakState:
    """XOR an r-bit block into the first r bits of the state; capacity bits are untouched."""
    _check_rate(r, state.w)
    if len(block) != r // 8:
        raise AlignmentError(f"rate block must be {r // 8} bytes, got {len(block)}")
    value = state.to_int() ^ int.from_bytes(block, "little")
    return KeccakState.from_int(value, state.w)


def extract_rate_bytes(state: KeccakState, r: int) -> bytes:
    """The first r bits of the state, serialized as r/8 bytes."""
    _check_rate(r, state.w)
    return (state.to_int() & ((1 << r) - 1)).to_bytes(r // 8, "little")
