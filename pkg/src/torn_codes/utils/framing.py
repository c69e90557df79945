"""
Byte framing for q-ary messages

Each byte becomes D base-q digits, most significant first, where D is the
smallest width with q^D >= 256. For q = 2 this is eight bits MSB-first and
for q = 4 four 2-bit symbols.
"""

from typing import Tuple

from ..core.exceptions import ParameterError
from ..core.params import ceil_log
from ..core.sequences import QString


def digits_per_byte(q: int) -> int:
    if q < 2:
        raise ParameterError(f"Alphabet size must be at least 2, got {q}")
    return ceil_log(256, q)


def bytes_to_symbols(data: bytes, q: int) -> QString:
    width = digits_per_byte(q)
    symbols = []
    for byte in data:
        digits = []
        for _ in range(width):
            byte, digit = divmod(byte, q)
            digits.append(digit)
        symbols.extend(reversed(digits))
    return QString.trusted(tuple(symbols), q)


def symbols_to_bytes(x: QString, length: int) -> bytes:
    """Inverse of bytes_to_symbols for the first `length` bytes of x"""
    width = digits_per_byte(x.q)
    if length * width > len(x):
        raise ParameterError(f"{len(x)} symbols cannot hold {length} bytes")
    out = bytearray()
    for start in range(0, length * width, width):
        value = 0
        for digit in x.symbols[start : start + width]:
            value = value * x.q + digit
        if value > 255:
            raise ParameterError(f"Symbols at {start} encode {value}, not a byte")
        out.append(value)
    return bytes(out)


def frame_message(data: bytes, q: int, message_len: int) -> Tuple[QString, int]:
    """Zero-pad the framed bytes to a codec message; returns the message and byte count"""
    framed = bytes_to_symbols(data, q)
    if len(framed) > message_len:
        capacity = message_len // digits_per_byte(q)
        raise ParameterError(
            f"Message of {len(data)} bytes exceeds the code capacity of {capacity} bytes"
        )
    padded = framed.symbols + (0,) * (message_len - len(framed))
    return QString.trusted(padded, q), len(data)


def capacity_bytes(q: int, message_len: int) -> int:
    return message_len // digits_per_byte(q)
