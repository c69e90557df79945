"""
Systematic burst-erasure codes

Both codes interleave the codeword (message followed by redundancy) into
``depth`` classes by position modulo depth. A burst of at most depth erasures
touches every class at most once, so a class that tolerates t erasures makes the
code tolerate t bursts.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence

from ..core.exceptions import ConfigurationError, DecodingError, ParameterError
from ..core.sequences import QString
from .field import GaloisField, extension_field, prime_power
from .reed_solomon import ReedSolomonCode

logger = logging.getLogger(__name__)

BEC_KINDS = ("interleaved_parity", "interleaved_rs")


@dataclass(frozen=True)
class BecCode:
    """Corrects t erasure bursts of length <= depth"""

    kind: str
    depth: int
    t: int
    message_len: int
    q: int = 2

    def __post_init__(self) -> None:
        if self.kind not in BEC_KINDS:
            raise ConfigurationError(f"BEC kind must be one of: {list(BEC_KINDS)}")
        if self.depth < 1 or self.message_len < 1:
            raise ConfigurationError("BEC depth and message length must be positive")
        if self.kind == "interleaved_parity" and self.t != 1:
            raise ConfigurationError("Interleaved parity corrects exactly one burst (t=1)")
        if self.t < 0:
            raise ConfigurationError("Burst budget must be non-negative")
        if self.kind == "interleaved_rs" and prime_power(self.q) is None:
            raise ConfigurationError(f"Interleaved RS needs a prime-power q, got {self.q}")

    @property
    def row_len(self) -> int:
        """Message symbols in the fullest interleaved class"""
        return -(-self.message_len // self.depth)

    @cached_property
    def pack(self) -> int:
        """Alphabet symbols per field element of the row code"""
        if self.kind == "interleaved_parity":
            return 1
        pack = 1
        while -(-self.row_len // pack) + self.t > self.q**pack:
            pack += 1
        return pack

    @property
    def redundancy(self) -> int:
        if self.kind == "interleaved_parity":
            return self.depth
        return self.t * self.pack * self.depth

    @property
    def length(self) -> int:
        return self.message_len + self.redundancy

    @cached_property
    def row_field(self) -> GaloisField:
        return extension_field(self.q, self.pack)

    def class_positions(self, residue: int) -> List[int]:
        return list(range(residue, self.length, self.depth))


def make_bec_code(kind: str, depth: int, t: int, message_len: int, q: int = 2) -> BecCode:
    if kind == "auto":
        kind = "interleaved_parity" if t == 1 else "interleaved_rs"
    return BecCode(kind, depth, t, message_len, q)


def _pack(symbols: Sequence[int], q: int, width: int) -> List[int]:
    padded = list(symbols) + [0] * (-len(symbols) % width)
    out = []
    for start in range(0, len(padded), width):
        value = 0
        for symbol in padded[start : start + width]:
            value = value * q + symbol
        out.append(value)
    return out


def _unpack(values: Sequence[int], q: int, width: int) -> List[int]:
    out: List[int] = []
    for value in values:
        digits = []
        for _ in range(width):
            value, digit = divmod(value, q)
            digits.append(digit)
        out.extend(reversed(digits))
    return out


def bec_encode(message: QString, code: BecCode) -> QString:
    """Systematic redundancy symbols for the message"""
    if len(message) != code.message_len:
        raise ConfigurationError(
            f"BEC message must have length {code.message_len}, got {len(message)}"
        )
    if message.q != code.q:
        raise ParameterError(f"Alphabet mismatch: q={message.q} vs q={code.q}")
    symbols = message.symbols
    redundancy = [0] * code.redundancy
    if code.kind == "interleaved_parity":
        for i in range(code.redundancy):
            residue = (code.message_len + i) % code.depth
            redundancy[i] = sum(symbols[residue : code.message_len : code.depth]) % code.q
        return QString.trusted(tuple(redundancy), code.q)

    for residue in range(code.depth):
        positions = code.class_positions(residue)
        data = [symbols[p] for p in positions if p < code.message_len]
        parity_slots = [p - code.message_len for p in positions if p >= code.message_len]
        row = _pack(data, code.q, code.pack)
        rs = ReedSolomonCode(code.row_field, len(row) + code.t, len(row)) if row else None
        parity = rs.encode(row)[len(row) :] if rs else [0] * code.t
        for slot, symbol in zip(parity_slots, _unpack(parity, code.q, code.pack)):
            redundancy[slot] = symbol
    return QString.trusted(tuple(redundancy), code.q)


def bec_decode(word: Sequence[Optional[int]], code: BecCode) -> QString:
    """Recover the message from a codeword with erasures marked None"""
    if len(word) != code.length:
        raise ParameterError(f"BEC word must have length {code.length}, got {len(word)}")
    recovered = list(word)
    for residue in range(code.depth):
        positions = code.class_positions(residue)
        missing = [p for p in positions if recovered[p] is None]
        if not missing:
            continue
        if code.kind == "interleaved_parity":
            if len(missing) > 1:
                raise DecodingError(
                    f"Class {residue} has {len(missing)} erasures, parity corrects one",
                    {"row": residue, "erasures": len(missing)},
                )
            lost = missing[0]
            parity = next(p for p in positions if p >= code.message_len)
            data_sum = sum(
                recovered[p]  # type: ignore[misc]
                for p in positions
                if p < code.message_len and p != lost
            )
            if lost == parity:
                recovered[lost] = data_sum % code.q
            else:
                recovered[lost] = (recovered[parity] - data_sum) % code.q  # type: ignore[operator]
            continue
        _decode_rs_row(recovered, positions, residue, code)
    message = recovered[: code.message_len]
    return QString.trusted(tuple(message), code.q)  # type: ignore[arg-type]


def _decode_rs_row(
    recovered: List[Optional[int]], positions: List[int], residue: int, code: BecCode
) -> None:
    data_positions = [p for p in positions if p < code.message_len]
    parity_positions = [p for p in positions if p >= code.message_len]
    width = code.pack
    elements: List[Optional[int]] = []
    groups: List[List[int]] = []
    for chunk_positions in (data_positions, parity_positions):
        for start in range(0, len(chunk_positions), width):
            group = chunk_positions[start : start + width]
            groups.append(group)
            values = [recovered[p] for p in group]
            if any(v is None for v in values):
                elements.append(None)
            else:
                elements.append(_pack(values, code.q, width)[0])  # type: ignore[arg-type]
    dimension = -(-len(data_positions) // width)
    if dimension == 0:
        for p in parity_positions:
            recovered[p] = 0
        return
    erased = sum(1 for e in elements if e is None)
    if erased > code.t:
        raise DecodingError(
            f"Class {residue} has {erased} erased elements, budget {code.t}",
            {"row": residue, "erasures": erased},
        )
    rs = ReedSolomonCode(code.row_field, dimension + code.t, dimension)
    message = rs.decode(elements)
    codeword = rs.encode(message)
    for group, value in zip(groups, codeword):
        digits = _unpack([value], code.q, width)
        for p, digit in zip(group, digits):
            recovered[p] = digit
