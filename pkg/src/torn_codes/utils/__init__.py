"""
File framing and text formats
"""

from .framing import (
    bytes_to_symbols,
    capacity_bytes,
    digits_per_byte,
    frame_message,
    symbols_to_bytes,
)
from .textio import read_codeword, read_segments, write_codeword, write_segments

__all__ = [
    "bytes_to_symbols",
    "capacity_bytes",
    "digits_per_byte",
    "frame_message",
    "symbols_to_bytes",
    "read_codeword",
    "read_segments",
    "write_codeword",
    "write_segments",
]
