"""
Codecs robust to substitutions and to lost segments
"""

from .deletion import DeletionCode, decode_with_bursts, robust_decode_del, robust_encode_del
from .redundancy import (
    ROBUST_MODELS,
    decode_model,
    delta_redundancy,
    encode_model,
    robust_message_len,
)
from .substitution import SubstitutionCode, decode_with_state, robust_decode_sub, robust_encode_sub
from .windows import build_Z, classify_window, ind_prime, reconstruct, reconstruct_segments

__all__ = [
    "DeletionCode",
    "decode_with_bursts",
    "robust_decode_del",
    "robust_encode_del",
    "ROBUST_MODELS",
    "decode_model",
    "delta_redundancy",
    "encode_model",
    "robust_message_len",
    "SubstitutionCode",
    "decode_with_state",
    "robust_decode_sub",
    "robust_encode_sub",
    "build_Z",
    "classify_window",
    "ind_prime",
    "reconstruct",
    "reconstruct_segments",
]
