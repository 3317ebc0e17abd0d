"""Keccak sponge construction and the SHA-3 fixed-output variants."""

from .errors import (AlignmentError, BijectivityError, ContextStateError, KatFormatError,
                     KeccakError, MeasurementError, PaddingError, ParameterError)
from .permutation import keccak_f
from .sha3 import (DomainMode, Variant, demonstrate_extension_resistance, keccak_hash, keccak_xof,
                   mac_context, new, params_for, prefix_mac)
from .sponge import HashContext, SpongeParams, pad10star1, sponge_hash, unpad10star1
from .state import KeccakState, new_state

__version__ = "0.1.0"

__all__ = [
    "AlignmentError", "BijectivityError", "ContextStateError", "DomainMode", "HashContext",
    "KatFormatError", "KeccakError", "KeccakState", "MeasurementError", "PaddingError",
    "ParameterError", "SpongeParams", "Variant", "demonstrate_extension_resistance", "keccak_f",
    "keccak_hash", "keccak_xof", "mac_context", "new", "new_state", "pad10star1", "params_for",
    "prefix_mac", "sponge_hash", "unpad10star1",
]
