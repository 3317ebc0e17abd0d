"""Quick built-in checks run by ``pykeccak selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .permutation import chi, keccak_f
from .sha3 import DomainMode, Variant, keccak_hash
from .sponge import pad10star1, unpad10star1
from .state import KeccakState

# Digests of the empty message, from the official KAT files.
EMPTY_DIGESTS = {
    (224, DomainMode.KECCAK): "f71837502ba8e10837bdd8d365adb85591895602fc552b48b7390abd",
    (256, DomainMode.KECCAK): "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470",
    (384, DomainMode.KECCAK): "2c23146a63a29acf99e73b88f8c24eaa7dc60aa771780ccc006afbfa8fe2479b"
                              "2dd2b21362337441ac12b515911957ff",
    (512, DomainMode.KECCAK): "0eab42de4c3ceb9235fc91acffe746b29c29a8c366b7c60e4e67c466f36a4304"
                              "c00fa9caf9d87976ba469bcbe06713b435f091ef2769fb160cdab33d3670680e",
    (224, DomainMode.FIPS202): "6b4e03423667dbb73b6e15454f0eb1abd4597f9a1b078e3f5b5a6bc7",
    (256, DomainMode.FIPS202): "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a",
    (384, DomainMode.FIPS202): "0c63a75b845e4f7d01107d852e4c2485c51a50aaaa94fc61995e71bbee983a2a"
                               "c3713831264adb47fb6bd1e058d5f004",
    (512, DomainMode.FIPS202): "a69f73cca23a9ac5c8b567dc185a756e97c982164fe25859e0d1dcc1475c80a6"
                               "15b2123af1f5f94c11e3e9402c3ac558f500199d95b6d3e301758586281dcd26",
}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _chi_row_bijective() -> bool:
    images = set()
    for value in range(32):
        lanes = tuple((value >> x) & 1 for x in range(5)) + (0,) * 20
        out = chi(KeccakState(lanes, 1))
        images.add(sum(bit << x for x, bit in enumerate(out.lanes[:5])))
    return len(images) == 32


def _padding_round_trip(count: int, rng: random.Random) -> bool:
    for _ in range(count):
        msg = rng.randbytes(rng.randrange(0, 300))
        r = 8 * rng.choice((144, 136, 104, 72))
        if unpad10star1(pad10star1(msg, r), r) != msg:
            return False
    return True


def _compiled_matches_generic(rng: random.Random) -> bool:
    from . import _native
    import numpy as np

    lanes = tuple(rng.getrandbits(64) for _ in range(25))
    a = np.array(lanes, dtype=np.uint64)
    _native.permute(a)
    return tuple(int(v) for v in a) == keccak_f(KeccakState(lanes, 64)).lanes


def run_selftest(seed: int = 2012) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for (n, mode), expected in EMPTY_DIGESTS.items():
        got = keccak_hash(Variant(n), b"", mode).hex()
        checks.append(Check(f"empty-message {mode.value}-{n}", got == expected,
                            "" if got == expected else f"got {got}"))
    checks.append(Check("chi row bijectivity (32 values)", _chi_row_bijective()))
    checks.append(Check("pad10*1 round trip (200 messages)", _padding_round_trip(200, rng)))
    checks.append(Check("compiled permutation matches step mappings", _compiled_matches_generic(rng)))
    return checks
