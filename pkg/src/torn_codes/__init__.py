"""
torn-codes

Codes for the adversarial torn-paper channel: a stored string is cut into
unordered pieces of length between Lmin and Lmax and must still be decoded.
Includes multi-strand, substitution-robust and deletion-robust variants, a
pilot-interleaved construction, a channel simulator and bound evaluators.
"""

__version__ = "0.1.0"

from .coding.codec import decode, encode
from .core.config import TornCodesConfig
from .core.params import CodeParams, derive_params

__all__ = [
    "CodeParams",
    "TornCodesConfig",
    "decode",
    "derive_params",
    "encode",
]
