"""Keccak-f[25w]: the five step mappings, their constants, and the round loop.

Every step is written with ``^ & ~ << >> |`` only, so it runs unchanged on
int lanes or on numpy-array lanes (one array element per independent state).
The batch form is what makes the exhaustive w=1 bijectivity check cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BijectivityError, ParameterError
from .state import KeccakState, lane_log

MAX_ROUNDS = 24


@dataclass(frozen=True)
class ConstantTables:
    w: int
    round_constants: tuple  # 24 entries, each < 2**w
    rho_offsets: tuple  # rho_offsets[x][y]


def round_count(w: int) -> int:
    return 12 + 2 * lane_log(w)


def lfsr_bit(t: int) -> int:
    """Output bit rc(t) of the LFSR with feedback polynomial x^8+x^6+x^5+x^4+1."""
    t %= 255
    reg = 1
    for _ in range(t):
        reg <<= 1
        if reg & 0x100:
            reg ^= 0x171
    return reg & 1


def generate_round_constants(w: int = 64) -> tuple:
    ell = lane_log(w)
    table = []
    for i in range(MAX_ROUNDS):
        rc = 0
        for j in range(ell + 1):
            rc |= lfsr_bit(j + 7 * i) << ((1 << j) - 1)
        table.append(rc)
    return tuple(table)


def generate_rho_offsets(w: int = 64) -> tuple:
    lane_log(w)
    grid = [[0] * 5 for _ in range(5)]
    x, y = 1, 0
    for t in range(24):
        grid[x][y] = ((t + 1) * (t + 2) // 2) % w
        x, y = y, (2 * x + 3 * y) % 5
    return tuple(tuple(col) for col in grid)


_TABLES: dict[int, ConstantTables] = {}


def constant_tables(w: int = 64) -> ConstantTables:
    """Cached, immutable constant tables for lane width ``w``."""
    tables = _TABLES.get(w)
    if tables is None:
        tables = ConstantTables(w, generate_round_constants(w), generate_rho_offsets(w))
        _TABLES[w] = tables
    return tables


def _rot(v, n: int, w: int):
    n %= w
    if n == 0:
        return v
    return ((v << n) | (v >> (w - n))) & ((1 << w) - 1)


def theta(state: KeccakState) -> KeccakState:
    a, w = state.lanes, state.w
    c = [a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20] for x in range(5)]
    d = [c[(x - 1) % 5] ^ _rot(c[(x + 1) % 5], 1, w) for x in range(5)]
    return KeccakState(tuple(a[i] ^ d[i % 5] for i in range(25)), w)


def rho(state: KeccakState, offsets=None) -> KeccakState:
    w = state.w
    if offsets is None:
        offsets = constant_tables(w).rho_offsets
    a = state.lanes
    return KeccakState(tuple(_rot(a[i], offsets[i % 5][i // 5], w) for i in range(25)), w)


def pi(state: KeccakState) -> KeccakState:
    a = state.lanes
    out = [None] * 25
    for x in range(5):
        for y in range(5):
            out[y + 5 * ((2 * x + 3 * y) % 5)] = a[x + 5 * y]
    return KeccakState(tuple(out), state.w)


def chi(state: KeccakState) -> KeccakState:
    a, mask = state.lanes, (1 << state.w) - 1
    out = []
    for y in range(0, 25, 5):
        row = a[y:y + 5]
        out.extend(row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5] & mask) for x in range(5))
    return KeccakState(tuple(out), state.w)


def iota(state: KeccakState, round_index: int, constants=None) -> KeccakState:
    w = state.w
    if not 0 <= round_index < round_count(w):
        raise ParameterError(f"round index {round_index} outside 0..{round_count(w) - 1}")
    if constants is None:
        constants = constant_tables(w).round_constants
    a = state.lanes
    return KeccakState((a[0] ^ constants[round_index],) + a[1:], w)


def keccak_round(state: KeccakState, round_index: int, tables: ConstantTables | None = None) -> KeccakState:
    if tables is None:
        tables = constant_tables(state.w)
    state = pi(rho(theta(state), tables.rho_offsets))
    return iota(chi(state), round_index, tables.round_constants)


def keccak_f(state: KeccakState) -> KeccakState:
    """Apply all 12 + 2*log2(w) rounds."""
    tables = constant_tables(state.w)
    for i in range(round_count(state.w)):
        state = keccak_round(state, i, tables)
    return state


# ---------------------------------------------------------------- batch / bijectivity

def _batch_dtype(w: int):
    return {1: np.uint8, 2: np.uint8, 4: np.uint8, 8: np.uint8,
            16: np.uint16, 32: np.uint32, 64: np.uint64}[w]


def keccak_f_batch(lanes: np.ndarray, w: int) -> np.ndarray:
    """Run keccak_f on every row of an ``(n, 25)`` lane array."""
    lanes = np.asarray(lanes, dtype=_batch_dtype(w))
    state = KeccakState(tuple(np.ascontiguousarray(lanes[:, i]) for i in range(25)), w)
    state = keccak_f(state)
    return np.stack(state.lanes, axis=1)


def _exhaustive_w1(chunk_bits: int) -> bool:
    total = 1 << 25
    chunk = 1 << min(chunk_bits, 25)
    images = np.empty(total, dtype=np.uint32)
    shifts = np.arange(25, dtype=np.uint32)
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.uint32)
        lanes = ((idx[:, None] >> shifts) & 1).astype(np.uint8)
        out = keccak_f_batch(lanes, 1)
        images[start:start + chunk] = (out.astype(np.uint32) << shifts).sum(axis=1, dtype=np.uint32)
    counts = np.bincount(images, minlength=total)
    if np.all(counts == 1):
        return True
    image = int(np.flatnonzero(counts > 1)[0])
    first, second = (int(v) for v in np.flatnonzero(images == image)[:2])
    raise BijectivityError(first, second, image)


def _sampled(w: int, samples: int, seed: int) -> bool:
    rng = np.random.default_rng(seed)
    mask = (1 << w) - 1
    dtype = _batch_dtype(w)
    inputs = np.unique(rng.integers(0, mask, size=(samples, 25), dtype=np.uint64, endpoint=True), axis=0)
    while len(inputs) < samples:
        extra = rng.integers(0, mask, size=(samples - len(inputs), 25), dtype=np.uint64, endpoint=True)
        inputs = np.unique(np.concatenate([inputs, extra]), axis=0)
    inputs = inputs.astype(dtype)
    images = keccak_f_batch(inputs, w)
    uniq, first_pos, counts = np.unique(images, axis=0, return_index=True, return_counts=True)
    if len(uniq) == len(images):
        return True
    dup = uniq[np.flatnonzero(counts > 1)[0]]
    rows = np.flatnonzero((images == dup).all(axis=1))[:2]
    first, second = (tuple(int(v) for v in inputs[k]) for k in rows)
    raise BijectivityError(first, second, tuple(int(v) for v in dup))


def check_bijectivity(w: int, samples: int = 1_000_000, seed: int = 0, chunk_bits: int = 21) -> bool:
    """Confirm keccak_f[25w] has no collisions.

    w=1 enumerates all 2**25 states; larger widths hash ``samples`` distinct
    random states.  Returns True, or raises BijectivityError carrying the
    colliding inputs.
    """
    lane_log(w)
    if w == 1:
        return _exhaustive_w1(chunk_bits)
    if samples < 2:
        raise ParameterError("sampled bijectivity check needs at least 2 inputs")
    return _sampled(w, samples, seed)
