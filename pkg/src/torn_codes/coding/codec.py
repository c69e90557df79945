"""
Noiseless torn-paper codec

Each strand is cut into periods of Lmin symbols. Period i carries an encoded
Gray index, the marker 1 0^f 1 and an RLL-encoded payload block; the last period
carries a zero block and the strand is completed by n mod Lmin zeros. A segment
reveals its own position from the first marker in its Lmin-prefix.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from ..core.exceptions import CorruptionError, DecodingError, ParameterError
from ..core.params import CodeParams
from ..core.sequences import (
    QString,
    SegmentCollection,
    complete_marker_offsets,
    concat_all,
    cyclic_marker_offsets,
    marker_symbols,
    zero_suffix_length,
)
from .indexing import build_encoded_index, decode_index_word
from .rll import get_scheme, rll_decode, rll_encode

logger = logging.getLogger(__name__)


class Region(str, Enum):
    INDEX = "index"
    MARKER = "marker"
    PAYLOAD = "payload"
    TERMINAL = "terminal"


@dataclass(frozen=True)
class Codeword:
    """One or more encoded strands"""

    strands: Tuple[QString, ...]
    params: CodeParams

    @property
    def symbols(self) -> Tuple[int, ...]:
        return tuple(s for strand in self.strands for s in strand.symbols)

    def with_symbols(self, symbols: Sequence[int]) -> "Codeword":
        """Same layout, replaced content (used for noisy copies)"""
        n = self.params.n
        strands = tuple(
            QString.trusted(tuple(symbols[j * n : (j + 1) * n]), self.params.q)
            for j in range(self.params.k)
        )
        return Codeword(strands, self.params)

    def to_text(self, acgt: bool = False) -> str:
        return "\n".join(strand.to_text(acgt) for strand in self.strands)


class Placement(NamedTuple):
    index: int
    global_offset: int
    segment: QString


class Discard(NamedTuple):
    reason: str
    segment: QString


@lru_cache(maxsize=64)
def layout(params: CodeParams) -> Tuple[Tuple[Region, Optional[int]], ...]:
    """Region and payload-block id of every global codeword position"""
    roles: List[Tuple[Region, Optional[int]]] = []
    for strand in range(params.k):
        for segment in range(params.num_blocks + 1):
            roles.extend([(Region.INDEX, None)] * params.alpha)
            roles.extend([(Region.MARKER, None)] * params.marker_len)
            if segment < params.num_blocks:
                block = strand * params.num_blocks + segment
                roles.extend([(Region.PAYLOAD, block)] * params.block_len)
            else:
                roles.extend([(Region.TERMINAL, None)] * params.block_len)
        roles.extend([(Region.TERMINAL, None)] * params.tail_len)
    return tuple(roles)


@lru_cache(maxsize=64)
def skeleton(params: CodeParams) -> Tuple[Optional[int], ...]:
    """Message-independent symbols of a codeword, None at payload positions"""
    marker = marker_symbols(params.f)
    out: List[Optional[int]] = []
    for strand in range(params.k):
        for segment in range(params.num_blocks + 1):
            rank = params.rank_of(strand, segment)
            out.extend(build_encoded_index(rank, params).padded.symbols)
            out.extend(marker)
            if segment < params.num_blocks:
                out.extend([None] * params.block_len)
            else:
                out.extend([0] * params.block_len)
        out.extend([0] * params.tail_len)
    return tuple(out)


def encode_blocks(blocks: Sequence[QString], params: CodeParams) -> Codeword:
    """Assemble strands from already RLL-constrained payload blocks"""
    if len(blocks) != params.total_blocks:
        raise ParameterError(
            f"Expected {params.total_blocks} payload blocks, got {len(blocks)}"
        )
    marker = params.marker
    strands = []
    for strand in range(params.k):
        parts: List[QString] = []
        for segment in range(params.num_blocks):
            block = blocks[strand * params.num_blocks + segment]
            if len(block) != params.block_len:
                raise ParameterError(
                    f"Payload block must have length {params.block_len}, got {len(block)}"
                )
            parts += [build_encoded_index(params.rank_of(strand, segment), params).padded]
            parts += [marker, block]
        last = params.rank_of(strand, params.num_blocks)
        parts += [build_encoded_index(last, params).padded, marker]
        parts += [QString.zeros(params.block_len + params.tail_len, params.q)]
        strands.append(concat_all(parts, params.q))
    return Codeword(tuple(strands), params)


def encode(x: QString, params: CodeParams) -> Codeword:
    """Encode K*m*k message symbols into k strands of length n"""
    if len(x) != params.message_len:
        raise ParameterError(
            f"Message must have length {params.message_len}, got {len(x)}"
        )
    if x.q != params.q:
        raise ParameterError(f"Message alphabet q={x.q} does not match q={params.q}")
    scheme = get_scheme(params.rll, params.f, params.q)
    m = params.payload_len
    blocks = [
        rll_encode(scheme, x[b * m : (b + 1) * m], params.block_len)
        for b in range(params.total_blocks)
    ]
    return encode_blocks(blocks, params)


def is_terminal_prefix(prefix: Sequence[int], params: CodeParams) -> bool:
    """Lmin-prefixes starting inside the last period end in a long zero run"""
    return zero_suffix_length(prefix) > max(params.f, params.block_len - 1)


def index_window(prefix: Sequence[int], j: int, params: CodeParams) -> Tuple[Tuple[int, ...], int]:
    """The alpha-window preceding a marker at offset j of an Lmin-window

    Returns the window and the anchor, the offset at which the decoded index
    ends inside the window. A marker at offset 0 leaves the whole preceding
    index at the tail of the window.
    """
    alpha, lmin = params.alpha, params.lmin
    if j >= alpha:
        return tuple(prefix[j - alpha : j]), j
    word = tuple(prefix[lmin - (alpha - j) : lmin]) + tuple(prefix[:j])
    return word, (j if j else lmin)


def offset_from_index(index: int, anchor: int, params: CodeParams) -> Optional[int]:
    start = params.locate_rank(index)
    if start is None:
        return None
    return start + params.alpha - anchor


def locate(u: QString, params: CodeParams) -> Union[Placement, Discard]:
    """Recover the position of a noiseless segment"""
    if len(u) < params.lmin:
        return Discard("shorter than Lmin", u)
    prefix = u.symbols[: params.lmin]
    if is_terminal_prefix(prefix, params):
        return Discard("terminal zero suffix", u)
    complete = complete_marker_offsets(prefix, params.f)
    if complete:
        j = complete[0]
    else:
        cyclic = cyclic_marker_offsets(prefix, params.f)
        if not cyclic:
            raise CorruptionError("No marker occurrence in the Lmin-prefix")
        j = cyclic[0]
    word, anchor = index_window(prefix, j, params)
    index = decode_index_word(QString.trusted(word, params.q), params)
    offset = offset_from_index(index, anchor, params)
    if offset is None:
        raise CorruptionError(f"Decoded index {index} is not assigned")
    strand = offset // params.n if offset >= 0 else -1
    if strand < 0 or offset + len(u) > (strand + 1) * params.n:
        raise CorruptionError(f"Segment placed outside its strand at {offset}")
    return Placement(index, offset, u)


class Decoder:
    """Noiseless decoder; placements of repeated segment contents are memoized"""

    def __init__(self, params: CodeParams):
        self.params = params
        self.scheme = get_scheme(params.rll, params.f, params.q)
        self._cache: Dict[Tuple[int, ...], Union[Placement, Discard]] = {}

    def locate(self, u: QString) -> Union[Placement, Discard]:
        result = self._cache.get(u.symbols)
        if result is None:
            result = locate(u, self.params)
            self._cache[u.symbols] = result
        return result

    def fill(self, received: SegmentCollection) -> List[Optional[int]]:
        """Write every located segment into a skeleton-initialized array"""
        array = list(skeleton(self.params))
        discards = 0
        for u in received:
            try:
                result = self.locate(u)
            except CorruptionError as exc:
                raise DecodingError(
                    f"Segment could not be located: {exc}", {"segment": u.to_text()}
                ) from exc
            if isinstance(result, Discard):
                discards += 1
                logger.debug(f"Discarded segment of length {len(u)}: {result.reason}")
                continue
            start = result.global_offset
            for position, symbol in enumerate(u.symbols, start):
                current = array[position]
                if current is None:
                    array[position] = symbol
                elif current != symbol:
                    raise DecodingError(
                        f"Conflicting placement at position {position}",
                        {"position": position, "offset": start},
                    )
        logger.debug(f"Placed {len(received) - discards} segments, {discards} discarded")
        return array

    def extract(self, array: Sequence[Optional[int]], blocks: int) -> List[QString]:
        """Payload blocks y_0 ... y_{blocks-1}"""
        params = self.params
        out = []
        for block in range(blocks):
            start = params.block_start(block)
            symbols = array[start : start + params.block_len]
            if any(s is None for s in symbols):
                raise DecodingError(
                    f"Payload block {block} is not fully covered", {"block": block}
                )
            out.append(QString.trusted(tuple(symbols), params.q))  # type: ignore[arg-type]
        return out

    def unconstrain(self, blocks: Sequence[QString]) -> QString:
        payload = []
        for number, block in enumerate(blocks):
            try:
                payload.append(rll_decode(self.scheme, block))
            except CorruptionError as exc:
                raise DecodingError(
                    f"Block {number} is not an RLL codeword: {exc}", {"block": number}
                ) from exc
        return concat_all(payload, self.params.q)

    def decode(self, received: SegmentCollection) -> QString:
        array = self.fill(received)
        return self.unconstrain(self.extract(array, self.params.total_blocks))


def decode(received: SegmentCollection, params: CodeParams) -> QString:
    return Decoder(params).decode(received)


def code_redundancy(params: CodeParams) -> int:
    return params.n * params.k - params.num_blocks * params.payload_len * params.k
