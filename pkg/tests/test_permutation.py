import math
import random

import numpy as np
import pytest

import reference
from pykeccak import _native
from pykeccak.errors import BijectivityError, ParameterError
from pykeccak.permutation import (chi, check_bijectivity, constant_tables, generate_rho_offsets,
                                  generate_round_constants, iota, keccak_f, keccak_f_batch, keccak_round,
                                  pi, rho, round_count, theta)
from pykeccak.state import KeccakState, new_state

# Published Keccak-f[1600] tables, as printed in the reference implementations.
PUBLISHED_RC = [
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
]
# indexed [x + 5y]
PUBLISHED_RHO = [0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39,
                 41, 45, 15, 21, 8, 18, 2, 61, 56, 14]

WIDTHS = [1, 2, 4, 8, 16, 32, 64]


def rand_state(rng, w=64):
    return KeccakState(tuple(rng.getrandbits(w) for _ in range(25)), w)


def xor(a, b):
    return KeccakState(tuple(x ^ y for x, y in zip(a.lanes, b.lanes)), a.w)


def popcounts(s):
    return [bin(v).count("1") for v in s.lanes]


# ---------------------------------------------------------------- constants

def test_round_constants_match_published_table():
    assert list(generate_round_constants(64)) == PUBLISHED_RC


@pytest.mark.parametrize("w", WIDTHS)
def test_round_constants_match_bit_level_lfsr(w):
    table = generate_round_constants(w)
    assert len(table) == 24
    for i, rc in enumerate(table):
        bits = reference.round_constant_bits(i, w)
        assert rc == sum(b << z for z, b in enumerate(bits))


@pytest.mark.parametrize("w", WIDTHS)
def test_round_constant_structure(w):
    table = generate_round_constants(w)
    assert table[0] == 1
    allowed = sum(1 << (2 ** j - 1) for j in range(w.bit_length()))
    for rc in table:
        assert rc & ~allowed == 0
        assert rc < 2 ** w
    # narrower tables are the 64-bit constants truncated to w bits
    assert [rc & (2 ** w - 1) for rc in PUBLISHED_RC] == list(table)


def test_rho_offsets_match_published_table():
    grid = generate_rho_offsets(64)
    assert [grid[i % 5][i // 5] for i in range(25)] == PUBLISHED_RHO
    assert grid[1][0] == 1


@pytest.mark.parametrize("w", WIDTHS)
def test_rho_offsets_reduce_mod_w(w):
    grid = generate_rho_offsets(w)
    assert grid[0][0] == 0
    assert [grid[i % 5][i // 5] for i in range(25)] == [o % w for o in PUBLISHED_RHO]
    if w == 1:
        assert all(o == 0 for col in grid for o in col)


def test_round_counts():
    assert round_count(64) == 24
    assert round_count(1) == 12
    assert [round_count(w) for w in WIDTHS] == [12, 14, 16, 18, 20, 22, 24]


# ---------------------------------------------------------------- theta

def test_theta_zero():
    assert theta(new_state(64)) == new_state(64)


def test_theta_single_bit_spreads_to_eleven_bits():
    for i in range(25):
        for z in range(64):
            lanes = [0] * 25
            lanes[i] = 1 << z
            assert theta(KeccakState(tuple(lanes), 64)).popcount() == 11


def test_theta_linear(rng):
    for _ in range(200):
        a, b = rand_state(rng), rand_state(rng)
        assert theta(xor(a, b)) == xor(theta(a), theta(b))


# ---------------------------------------------------------------- rho / pi

def test_rho_basic(rng):
    assert rho(new_state(64)) == new_state(64)
    for _ in range(100):
        s = rand_state(rng)
        t = rho(s)
        assert t.lane(0, 0) == s.lane(0, 0)
        assert popcounts(t) == popcounts(s)


def lane_map_order():
    """Order of the lane permutation (x, y) -> (y, 2x + 3y), from its cycle structure."""
    step = {(x, y): (y, (2 * x + 3 * y) % 5) for x in range(5) for y in range(5)}
    seen, order = set(), 1
    for start in step:
        if start in seen:
            continue
        length, p = 0, start
        while True:
            seen.add(p)
            p = step[p]
            length += 1
            if p == start:
                break
        order = math.lcm(order, length)
    return order


def test_pi_order(rng):
    assert lane_map_order() == 24
    s = rand_state(rng)
    t = s
    for k in range(1, 25):
        t = pi(t)
        assert (t == s) == (k == 24)


def test_pi_relabels_lanes(rng):
    s = rand_state(rng)
    t = pi(s)
    assert t.lane(0, 0) == s.lane(0, 0)
    assert sorted(t.lanes) == sorted(s.lanes)
    for x in range(5):
        for y in range(5):
            assert t.lane(y, 2 * x + 3 * y) == s.lane(x, y)


# ---------------------------------------------------------------- chi

def test_chi_fixed_points():
    assert chi(new_state(64)) == new_state(64)
    ones = KeccakState((2 ** 64 - 1,) * 25, 64)
    assert chi(ones) == ones


@pytest.mark.parametrize("w", [1, 8, 64])
def test_chi_row_bijective_every_position(w):
    for y in range(5):
        for z in range(w):
            images = set()
            for v in range(32):
                lanes = [0] * 25
                for x in range(5):
                    lanes[x + 5 * y] = ((v >> x) & 1) << z
                out = chi(KeccakState(tuple(lanes), w))
                row = tuple((out.lanes[x + 5 * y] >> z) & 1 for x in range(5))
                others = [v for i, v in enumerate(out.lanes) if i // 5 != y]
                assert not any(others)
                assert all(out.lanes[x + 5 * y] & ~(1 << z) == 0 for x in range(5))
                images.add(row)
            assert len(images) == 32


# ---------------------------------------------------------------- iota

def test_iota_round_zero_sets_bit_zero():
    s = iota(new_state(64), 0)
    assert s.lanes == (1,) + (0,) * 24


def test_iota_involution_and_locality(rng):
    for i in range(24):
        s = rand_state(rng)
        t = iota(s, i)
        assert t.lanes[1:] == s.lanes[1:]
        assert iota(t, i) == s


@pytest.mark.parametrize("w,bad", [(64, 24), (64, -1), (1, 12)])
def test_iota_round_range(w, bad):
    with pytest.raises(ParameterError):
        iota(new_state(w), bad)


# ---------------------------------------------------------------- full permutation

def test_zero_state_trace_matches_bit_level_reference():
    trace = reference.keccak_p_trace([0] * 1600, 64)
    s = new_state(64)
    tables = constant_tables(64)
    for i in range(24):
        s = keccak_round(s, i, tables)
        assert s.lanes == reference.bits_to_lanes(trace[i + 1], 64), f"round {i}"
    assert s.lane(0, 0) == 0xF1258F7940E1DDE7


@pytest.mark.parametrize("w", WIDTHS)
def test_keccak_f_matches_reference_all_widths(w):
    rng = random.Random(w)
    for _ in range(3):
        s = rand_state(rng, w)
        expect = reference.keccak_p(reference.lanes_to_bits(s.lanes, w), w)
        assert keccak_f(s).lanes == reference.bits_to_lanes(expect, w)


def test_step_order(rng):
    s = rand_state(rng)
    t = s
    for i in range(24):
        t = iota(chi(pi(rho(theta(t)))), i)
    assert keccak_f(s) == t


def test_fused_compiled_path_matches_steps(rng):
    for _ in range(200):
        s = rand_state(rng)
        a = np.array(s.lanes, dtype=np.uint64)
        _native.permute(a)
        assert tuple(int(v) for v in a) == keccak_f(s).lanes


def test_batch_matches_scalar(rng):
    for w in (1, 8, 64):
        states = [rand_state(rng, w) for _ in range(20)]
        out = keccak_f_batch(np.array([s.lanes for s in states], dtype=np.uint64), w)
        for s, row in zip(states, out):
            assert tuple(int(v) for v in row) == keccak_f(s).lanes


def _compose(order, s, i):
    steps = {"theta": theta, "rho": rho, "pi": pi, "chi": chi, "iota": lambda st: iota(st, i)}
    for name in order:
        s = steps[name](s)
    return s


CANON = ["theta", "rho", "pi", "chi", "iota"]


@pytest.mark.parametrize("pair,w", [((0, 1), 64), ((1, 2), 64), ((2, 3), 1), ((3, 4), 1)])
def test_swapping_adjacent_steps_changes_permutation(pair, w, rng):
    # at w=1 rho is the identity, so swaps that involve rho are checked at w=64
    swapped = list(CANON)
    a, b = pair
    swapped[a], swapped[b] = swapped[b], swapped[a]
    differ = 0
    for _ in range(100):
        s = rand_state(rng, w)
        x, y = s, s
        for i in range(round_count(w)):
            x, y = _compose(CANON, x, i), _compose(swapped, y, i)
        differ += x != y
    assert differ > 0


def test_rho_swap_is_invisible_at_w1(rng):
    s = rand_state(rng, 1)
    assert rho(s) == s


def test_bijectivity_sampled_small():
    assert check_bijectivity(8, samples=2000)
    assert check_bijectivity(64, samples=500)


def test_bijectivity_reports_collision(monkeypatch):
    import pykeccak.permutation as perm

    def crushed(lanes, w):
        return np.zeros_like(np.asarray(lanes, dtype=np.uint8))

    monkeypatch.setattr(perm, "keccak_f_batch", crushed)
    with pytest.raises(BijectivityError) as info:
        check_bijectivity(2, samples=100)
    assert info.value.first != info.value.second


@pytest.mark.slow
def test_bijectivity_w2_million():
    assert check_bijectivity(2, samples=1_000_000)
