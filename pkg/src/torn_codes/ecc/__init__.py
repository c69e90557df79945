"""
Finite fields, Reed-Solomon codes and burst-erasure codes
"""

from .bec import BecCode, bec_decode, bec_encode, make_bec_code
from .bursts import burst_confusability_check
from .field import GaloisField, extension_field, get_field
from .reed_solomon import ReedSolomonCode, rs_decode, rs_encode

__all__ = [
    "BecCode",
    "bec_decode",
    "bec_encode",
    "make_bec_code",
    "burst_confusability_check",
    "GaloisField",
    "extension_field",
    "get_field",
    "ReedSolomonCode",
    "rs_decode",
    "rs_encode",
]
