"""
Substitution-robust torn-paper codec

The message is split into M = kK - 2t blocks of m symbols and extended by a
systematic Reed-Solomon code whose symbols are whole payload blocks, so a
wrongly recovered block costs one error and a lost block one erasure. Blocks
are then laid out exactly as by the noiseless encoder.

When GF(q^m) is too large for table arithmetic, each block is split into
columns of at least ceil(log_q(kK)) symbols and every column gets its own
Reed-Solomon code over a smaller field; a bad block still damages at most one
symbol per column code.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..coding.codec import Codeword, encode as noiseless_encode
from ..coding.rll import get_scheme
from ..core.exceptions import ConfigurationError, CorruptionError, DecodingError, ParameterError
from ..core.params import CodeParams, ceil_log
from ..core.sequences import QString, SegmentCollection, concat_all
from ..ecc.field import MAX_FIELD_ORDER, extension_field, prime_power
from ..ecc.reed_solomon import ReedSolomonCode
from .windows import ReconstructionState, reconstruct_segments

logger = logging.getLogger(__name__)


def _to_int(symbols: Sequence[int], q: int) -> int:
    value = 0
    for symbol in symbols:
        value = value * q + symbol
    return value


def _to_symbols(value: int, q: int, width: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(width):
        value, digit = divmod(value, q)
        digits.append(digit)
    return tuple(reversed(digits))


def column_widths(m: int, q: int, blocks: int) -> Tuple[int, ...]:
    """Split of an m-symbol block into columns whose fields hold `blocks` points"""
    if q**m <= MAX_FIELD_ORDER:
        return (m,)
    minimum = max(1, ceil_log(blocks, q))
    columns = max(1, m // minimum)
    base, extra = divmod(m, columns)
    return (base + 1,) * extra + (base,) * (columns - extra)


@dataclass(frozen=True)
class SubstitutionCode:
    """Outer Reed-Solomon layer correcting t corrupted blocks"""

    params: CodeParams
    t: int

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ParameterError(f"Error budget must be non-negative, got {self.t}")
        if self.params.total_blocks - 2 * self.t < 1:
            raise ParameterError(
                f"kK - 2t >= 1 violated: {self.params.total_blocks} - {2 * self.t}"
            )
        if self.t and prime_power(self.params.q) is None:
            raise ConfigurationError(
                f"Reed-Solomon outer code needs a prime-power q, got {self.params.q}"
            )
        if self.t:
            too_small = [w for w in self.widths if self.params.q**w < self.params.total_blocks]
            if too_small:
                raise ConfigurationError(
                    f"Field GF({self.params.q}^{min(too_small)}) has fewer than "
                    f"kK = {self.params.total_blocks} elements; need m >= log_q(kK)"
                )

    @property
    def message_blocks(self) -> int:
        return self.params.total_blocks - 2 * self.t

    @property
    def message_len(self) -> int:
        return self.message_blocks * self.params.payload_len

    @cached_property
    def widths(self) -> Tuple[int, ...]:
        return column_widths(self.params.payload_len, self.params.q, self.params.total_blocks)

    @cached_property
    def column_codes(self) -> List[ReedSolomonCode]:
        return [
            ReedSolomonCode(
                extension_field(self.params.q, width),
                self.params.total_blocks,
                self.message_blocks,
            )
            for width in self.widths
        ]

    def _columns(self, block: Sequence[int]) -> List[int]:
        out, start = [], 0
        for width in self.widths:
            out.append(_to_int(block[start : start + width], self.params.q))
            start += width
        return out

    def _block(self, values: Sequence[int]) -> Tuple[int, ...]:
        symbols: Tuple[int, ...] = ()
        for width, value in zip(self.widths, values):
            symbols += _to_symbols(value, self.params.q, width)
        return symbols

    def extend(self, x: QString) -> QString:
        """Systematic outer encoding: kK payload blocks, the first M equal to x"""
        if len(x) != self.message_len:
            raise ParameterError(f"Message must have length {self.message_len}, got {len(x)}")
        if x.q != self.params.q:
            raise ParameterError(f"Message alphabet q={x.q} does not match q={self.params.q}")
        if not self.t:
            return x
        m = self.params.payload_len
        rows = [self._columns(x.symbols[b * m : (b + 1) * m]) for b in range(self.message_blocks)]
        codewords = [
            code.encode([row[c] for row in rows]) for c, code in enumerate(self.column_codes)
        ]
        blocks = [
            self._block([codeword[b] for codeword in codewords])
            for b in range(self.params.total_blocks)
        ]
        return QString.trusted(tuple(s for block in blocks for s in block), x.q)

    def contract(self, blocks: Sequence[Optional[Tuple[int, ...]]]) -> QString:
        """Recover the message from kK payload blocks with erasures marked None"""
        q = self.params.q
        if not self.t:
            if any(b is None for b in blocks):
                lost = [i for i, b in enumerate(blocks) if b is None]
                raise DecodingError(f"Blocks {lost} erased without outer code", {"erased": lost})
            return concat_all((QString.trusted(b, q) for b in blocks), q)  # type: ignore[arg-type]
        columns: List[List[Optional[int]]] = [[] for _ in self.widths]
        for block in blocks:
            values = self._columns(block) if block is not None else [None] * len(self.widths)
            for c, value in enumerate(values):
                columns[c].append(value)
        messages = []
        for c, code in enumerate(self.column_codes):
            try:
                messages.append(code.decode(columns[c]))
            except DecodingError as exc:
                exc.diagnostics.setdefault("column", c)
                raise
        symbols = tuple(
            s
            for b in range(self.message_blocks)
            for s in self._block([message[b] for message in messages])
        )
        return QString.trusted(symbols, q)


@dataclass
class SubstitutionOutcome:
    message: QString
    state: ReconstructionState
    rll_failures: List[int]

    @property
    def erasures(self) -> int:
        return self.state.erasures


def robust_encode_sub(x: QString, params: CodeParams, t: int) -> Codeword:
    """Outer Reed-Solomon extension followed by the noiseless layout"""
    code = SubstitutionCode(params, t)
    return noiseless_encode(code.extend(x), params)


def decode_with_state(
    received: SegmentCollection, params: CodeParams, t: int
) -> SubstitutionOutcome:
    """Reconstruct, strip the RLL layer and run the outer decoder"""
    code = SubstitutionCode(params, t)
    state = reconstruct_segments(received, params)
    scheme = get_scheme(params.rll, params.f, params.q)
    payloads: List[Optional[Tuple[int, ...]]] = []
    rll_failures = []
    for number in range(params.total_blocks):
        block = state.block(number)
        if block is None:
            payloads.append(None)
            continue
        try:
            payloads.append(scheme.decode(block.symbols))
        except CorruptionError:
            rll_failures.append(number)
            state.erase_block(number)
            payloads.append(None)
    logger.debug(
        f"Outer decode with {state.erasures} erased blocks, including "
        f"{len(rll_failures)} RLL failures, {state.collisions} collisions"
    )
    try:
        message = code.contract(payloads)
    except DecodingError as exc:
        exc.diagnostics.update(
            erased_blocks=state.erasures,
            rll_failures=len(rll_failures),
            collisions=state.collisions,
        )
        raise
    return SubstitutionOutcome(message, state, rll_failures)


def robust_decode_sub(received: SegmentCollection, params: CodeParams, t: int) -> QString:
    return decode_with_state(received, params, t).message


def substitution_layout(params: CodeParams, t: int) -> Dict[str, int]:
    code = SubstitutionCode(params, t)
    return {
        "t": t,
        "message_blocks": code.message_blocks,
        "message_len": code.message_len,
        "columns": len(code.widths),
    }
