"""Compiled Keccak-f[1600] used by the sponge for 64-bit lanes.

The round is fully unrolled over 25 scalar lanes with rho and pi fused.
Constants come from ``permutation.constant_tables``, so both code paths
share one source of truth.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numba import njit

from .permutation import ConstantTables, constant_tables, round_count


@lru_cache(maxsize=8)
def _arrays(tables: ConstantTables):
    rc = np.array(tables.round_constants, dtype=np.uint64)
    ro = np.array([tables.rho_offsets[i % 5][i // 5] for i in range(25)], dtype=np.uint64)
    # lane 0 is never rotated; every other offset must be nonzero so t >> (64 - n) stays defined
    assert ro[1:].min() > 0
    return rc, ro


def tables64():
    return _arrays(constant_tables(64))


@njit(cache=True)
def _permute(a, rc, ro, rounds):
    one = np.uint64(1)
    s63 = np.uint64(63)
    s64 = np.uint64(64)
    a00 = a[0]
    a01 = a[1]
    a02 = a[2]
    a03 = a[3]
    a04 = a[4]
    a05 = a[5]
    a06 = a[6]
    a07 = a[7]
    a08 = a[8]
    a09 = a[9]
    a10 = a[10]
    a11 = a[11]
    a12 = a[12]
    a13 = a[13]
    a14 = a[14]
    a15 = a[15]
    a16 = a[16]
    a17 = a[17]
    a18 = a[18]
    a19 = a[19]
    a20 = a[20]
    a21 = a[21]
    a22 = a[22]
    a23 = a[23]
    a24 = a[24]
    r01 = ro[1]
    r02 = ro[2]
    r03 = ro[3]
    r04 = ro[4]
    r05 = ro[5]
    r06 = ro[6]
    r07 = ro[7]
    r08 = ro[8]
    r09 = ro[9]
    r10 = ro[10]
    r11 = ro[11]
    r12 = ro[12]
    r13 = ro[13]
    r14 = ro[14]
    r15 = ro[15]
    r16 = ro[16]
    r17 = ro[17]
    r18 = ro[18]
    r19 = ro[19]
    r20 = ro[20]
    r21 = ro[21]
    r22 = ro[22]
    r23 = ro[23]
    r24 = ro[24]
    for rnd in range(rounds):
        # theta
        c0 = a00 ^ a05 ^ a10 ^ a15 ^ a20
        c1 = a01 ^ a06 ^ a11 ^ a16 ^ a21
        c2 = a02 ^ a07 ^ a12 ^ a17 ^ a22
        c3 = a03 ^ a08 ^ a13 ^ a18 ^ a23
        c4 = a04 ^ a09 ^ a14 ^ a19 ^ a24
        d0 = c4 ^ ((c1 << one) | (c1 >> s63))
        d1 = c0 ^ ((c2 << one) | (c2 >> s63))
        d2 = c1 ^ ((c3 << one) | (c3 >> s63))
        d3 = c2 ^ ((c4 << one) | (c4 >> s63))
        d4 = c3 ^ ((c0 << one) | (c0 >> s63))
        # rho and pi: lane (x, y) lands at (y, 2x + 3y)
        b00 = a00 ^ d0
        t = a01 ^ d1
        b10 = (t << r01) | (t >> (s64 - r01))
        t = a02 ^ d2
        b20 = (t << r02) | (t >> (s64 - r02))
        t = a03 ^ d3
        b05 = (t << r03) | (t >> (s64 - r03))
        t = a04 ^ d4
        b15 = (t << r04) | (t >> (s64 - r04))
        t = a05 ^ d0
        b16 = (t << r05) | (t >> (s64 - r05))
        t = a06 ^ d1
        b01 = (t << r06) | (t >> (s64 - r06))
        t = a07 ^ d2
        b11 = (t << r07) | (t >> (s64 - r07))
        t = a08 ^ d3
        b21 = (t << r08) | (t >> (s64 - r08))
        t = a09 ^ d4
        b06 = (t << r09) | (t >> (s64 - r09))
        t = a10 ^ d0
        b07 = (t << r10) | (t >> (s64 - r10))
        t = a11 ^ d1
        b17 = (t << r11) | (t >> (s64 - r11))
        t = a12 ^ d2
        b02 = (t << r12) | (t >> (s64 - r12))
        t = a13 ^ d3
        b12 = (t << r13) | (t >> (s64 - r13))
        t = a14 ^ d4
        b22 = (t << r14) | (t >> (s64 - r14))
        t = a15 ^ d0
        b23 = (t << r15) | (t >> (s64 - r15))
        t = a16 ^ d1
        b08 = (t << r16) | (t >> (s64 - r16))
        t = a17 ^ d2
        b18 = (t << r17) | (t >> (s64 - r17))
        t = a18 ^ d3
        b03 = (t << r18) | (t >> (s64 - r18))
        t = a19 ^ d4
        b13 = (t << r19) | (t >> (s64 - r19))
        t = a20 ^ d0
        b14 = (t << r20) | (t >> (s64 - r20))
        t = a21 ^ d1
        b24 = (t << r21) | (t >> (s64 - r21))
        t = a22 ^ d2
        b09 = (t << r22) | (t >> (s64 - r22))
        t = a23 ^ d3
        b19 = (t << r23) | (t >> (s64 - r23))
        t = a24 ^ d4
        b04 = (t << r24) | (t >> (s64 - r24))
        # chi
        a00 = b00 ^ (~b01 & b02)
        a01 = b01 ^ (~b02 & b03)
        a02 = b02 ^ (~b03 & b04)
        a03 = b03 ^ (~b04 & b00)
        a04 = b04 ^ (~b00 & b01)
        a05 = b05 ^ (~b06 & b07)
        a06 = b06 ^ (~b07 & b08)
        a07 = b07 ^ (~b08 & b09)
        a08 = b08 ^ (~b09 & b05)
        a09 = b09 ^ (~b05 & b06)
        a10 = b10 ^ (~b11 & b12)
        a11 = b11 ^ (~b12 & b13)
        a12 = b12 ^ (~b13 & b14)
        a13 = b13 ^ (~b14 & b10)
        a14 = b14 ^ (~b10 & b11)
        a15 = b15 ^ (~b16 & b17)
        a16 = b16 ^ (~b17 & b18)
        a17 = b17 ^ (~b18 & b19)
        a18 = b18 ^ (~b19 & b15)
        a19 = b19 ^ (~b15 & b16)
        a20 = b20 ^ (~b21 & b22)
        a21 = b21 ^ (~b22 & b23)
        a22 = b22 ^ (~b23 & b24)
        a23 = b23 ^ (~b24 & b20)
        a24 = b24 ^ (~b20 & b21)
        # iota
        a00 ^= rc[rnd]
    a[0] = a00
    a[1] = a01
    a[2] = a02
    a[3] = a03
    a[4] = a04
    a[5] = a05
    a[6] = a06
    a[7] = a07
    a[8] = a08
    a[9] = a09
    a[10] = a10
    a[11] = a11
    a[12] = a12
    a[13] = a13
    a[14] = a14
    a[15] = a15
    a[16] = a16
    a[17] = a17
    a[18] = a18
    a[19] = a19
    a[20] = a20
    a[21] = a21
    a[22] = a22
    a[23] = a23
    a[24] = a24


@njit(cache=True)
def _absorb(a, words, rate_lanes, rc, ro, rounds):
    nblocks = words.shape[0] // rate_lanes
    for blk in range(nblocks):
        base = blk * rate_lanes
        for i in range(rate_lanes):
            a[i] ^= words[base + i]
        _permute(a, rc, ro, rounds)
    return nblocks


ROUNDS = round_count(64)


def permute(a: np.ndarray) -> None:
    """In-place Keccak-f[1600] on a length-25 uint64 array."""
    rc, ro = tables64()
    _permute(a, rc, ro, ROUNDS)


def absorb_blocks(a: np.ndarray, data, rate_bytes: int) -> int:
    """XOR-and-permute every whole rate block of ``data`` into ``a``; returns the block count."""
    usable = len(data) - len(data) % rate_bytes
    if usable == 0:
        return 0
    words = np.frombuffer(data, dtype="<u8", count=usable // 8)
    if words.dtype != np.uint64:
        words = words.astype(np.uint64)
    rc, ro = tables64()
    return int(_absorb(a, words, rate_bytes // 8, rc, ro, ROUNDS))
