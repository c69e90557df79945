"""
Window classification and collision-aware reconstruction

Received segments are cut into non-overlapping windows of Lmin symbols (the
last one absorbs the remainder). A window is placed only when its marker
occurrences and encoded indices are consistent with a single position;
inconsistent windows are dropped and their blocks end up erased.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from ..coding.codec import Region, index_window, layout, offset_from_index, skeleton
from ..coding.indexing import decode_index_word, gray_rank, has_valid_parity, strip_padding
from ..core.exceptions import CorruptionError
from ..core.params import CodeParams
from ..core.sequences import (
    MarkerKind,
    QString,
    SegmentCollection,
    complete_marker_offsets,
    cyclic_marker_offsets,
    zero_suffix_length,
)

logger = logging.getLogger(__name__)


class Window(NamedTuple):
    """Lmin-scale piece of a received segment"""

    symbols: QString
    segment: int
    offset: int


class Classification(str, Enum):
    NOT_A_DECODABLE = "not_a_decodable"
    INVALID = "a_decodable_invalid"
    VALID = "valid"


@dataclass(frozen=True)
class Validity:
    classification: Classification
    reason: str = ""
    marker_offset: Optional[int] = None
    index_kind: Optional[MarkerKind] = None
    index: Optional[int] = None
    global_offset: Optional[int] = None

    @property
    def is_valid(self) -> bool:
        return self.classification is Classification.VALID


class BlockStatus(str, Enum):
    UNTOUCHED = "untouched"
    PARTIAL = "filled_partial"
    COMPLETE = "filled_complete"
    ERASED = "erased"


@dataclass
class ReconstructionState:
    """Partially recovered codeword with per-block bookkeeping"""

    params: CodeParams
    symbols: List[Optional[int]]
    status: List[BlockStatus]
    collisions: int = 0
    placed: int = 0
    wrong_blocks: Optional[int] = None
    notes: Dict[str, int] = field(default_factory=dict)

    @property
    def erased_blocks(self) -> List[int]:
        return [b for b, s in enumerate(self.status) if s is BlockStatus.ERASED]

    @property
    def erasures(self) -> int:
        return len(self.erased_blocks)

    def block(self, number: int) -> Optional[QString]:
        """Content of a recovered block, None when erased"""
        if self.status[number] is BlockStatus.ERASED:
            return None
        start = self.params.block_start(number)
        values = self.symbols[start : start + self.params.block_len]
        return QString.trusted(tuple(values), self.params.q)  # type: ignore[arg-type]

    def erase_block(self, number: int) -> None:
        start = self.params.block_start(number)
        self.symbols[start : start + self.params.block_len] = [None] * self.params.block_len
        self.status[number] = BlockStatus.ERASED

    def count_wrong_blocks(self, truth: Sequence[int]) -> int:
        """Blocks recovered with content differing from a known codeword"""
        wrong = 0
        size = self.params.block_len
        for number, status in enumerate(self.status):
            if status is not BlockStatus.COMPLETE:
                continue
            start = self.params.block_start(number)
            if tuple(self.symbols[start : start + size]) != tuple(truth[start : start + size]):
                wrong += 1
        self.wrong_blocks = wrong
        return wrong


def split_windows(u: QString, lmin: int, segment: int = 0) -> List[Window]:
    """Non-overlapping Lmin-pieces of u; the last piece has length in [Lmin, 2Lmin)"""
    pieces = len(u) // lmin
    windows = []
    for number in range(pieces):
        start = number * lmin
        end = len(u) if number == pieces - 1 else start + lmin
        windows.append(Window(u[start:end], segment, start))
    return windows


def _occurrences(w: Sequence[int], params: CodeParams) -> Tuple[List[int], List[int], List[int]]:
    """Complete markers, cyclic markers of the Lmin-prefix and of the Lmin-suffix"""
    lmin, f = params.lmin, params.f
    complete = complete_marker_offsets(w, f)
    prefix = cyclic_marker_offsets(w[:lmin], f)
    suffix: List[int] = []
    if len(w) > lmin:
        shift = len(w) - lmin
        suffix = [shift + j for j in cyclic_marker_offsets(w[shift:], f)]
    return complete, prefix, suffix


def _select_markers(
    w: Sequence[int], params: CodeParams
) -> Tuple[Optional[List[int]], Optional[MarkerKind], str]:
    complete, prefix, suffix = _occurrences(w, params)
    lmin = params.lmin
    if len(complete) == 1:
        return complete, MarkerKind.COMPLETE, ""
    if not complete:
        if zero_suffix_length(w[:lmin]) > max(params.f, params.block_len - 1):
            return None, None, "terminal zero suffix"
        if prefix:
            return [prefix[0]], MarkerKind.CYCLIC, ""
        if suffix:
            return [suffix[0]], MarkerKind.CYCLIC, ""
        return None, None, "no marker occurrence"
    if len(complete) > 2:
        return None, None, f"{len(complete)} complete markers"
    pairs = [(a, b) for a in complete for b in complete if b - a == lmin]
    pairs += [(a, b) for a in complete for b in suffix if b - a == lmin]
    if len(pairs) != 1:
        return None, None, f"{len(pairs)} marker pairs at distance Lmin"
    return list(pairs[0]), MarkerKind.COMPLETE, ""


def _gray_value(word: Sequence[int], params: CodeParams) -> int:
    extended = strip_padding(word, params)
    return gray_rank(QString.trusted(extended[:-1], params.q))


def _placement(
    index: int, anchor: int, length: int, params: CodeParams
) -> Optional[int]:
    offset = offset_from_index(index, anchor, params)
    if offset is None or offset < 0:
        return None
    strand = offset // params.n
    if offset + length > (strand + 1) * params.n:
        return None
    return offset


def classify_window(w: Window, params: CodeParams) -> Validity:
    """Decide whether a window may be placed, and where"""
    symbols = w.symbols.symbols
    alpha = params.alpha
    markers, kind, reason = _select_markers(symbols, params)
    if markers is None:
        return Validity(Classification.NOT_A_DECODABLE, reason)

    complete_indices = [p for p in markers if p >= alpha]
    first = markers[0]
    if not complete_indices:
        word, anchor = index_window(symbols[: params.lmin], first, params)
        try:
            index = decode_index_word(QString.trusted(word, params.q), params)
        except CorruptionError as exc:
            return Validity(Classification.INVALID, str(exc), first, MarkerKind.CYCLIC)
        chosen, chosen_kind = anchor, MarkerKind.CYCLIC
    else:
        words = {p: symbols[p - alpha : p] for p in complete_indices}
        correct = [p for p in complete_indices if has_valid_parity(words[p], params)]
        if not correct:
            return Validity(Classification.INVALID, "parity check failed", first, kind)
        if len(complete_indices) == 2 and len(correct) == 2:
            low, high = (_gray_value(words[p], params) for p in complete_indices)
            if high != low + 1:
                return Validity(
                    Classification.INVALID, "indices are not consecutive", first, kind
                )
        chosen = correct[0]
        chosen_kind = MarkerKind.COMPLETE
        index = _gray_value(words[chosen], params)

    offset = _placement(index, chosen, len(symbols), params)
    if offset is None:
        return Validity(Classification.INVALID, f"index {index} out of range", chosen, chosen_kind)
    return Validity(Classification.VALID, "", chosen, chosen_kind, index, offset)


def ind_prime(w: Window, params: CodeParams) -> Tuple[int, int]:
    """Index and global offset of a valid window"""
    validity = classify_window(w, params)
    if not validity.is_valid:
        raise CorruptionError(f"Window is not valid: {validity.reason}")
    return validity.index, validity.global_offset  # type: ignore[return-value]


class Placed(NamedTuple):
    window: Window
    global_offset: int


def build_Z(received: Iterable[QString], params: CodeParams) -> Dict[int, List[Placed]]:
    """Map each decoded index to every distinct valid window claiming it

    Windows are ordered shortest first, then lexicographically. Identical
    windows at the same offset are kept once. Two windows claiming one index
    with different content are both placed, so their disagreement shows up
    as a collision in reconstruct.
    """
    zmap: Dict[int, List[Placed]] = {}
    counts = {c: 0 for c in Classification}
    for number, u in enumerate(received):
        for w in split_windows(u, params.lmin, number):
            validity = classify_window(w, params)
            counts[validity.classification] += 1
            if not validity.is_valid:
                logger.debug(f"Dropped window of segment {number}: {validity.reason}")
                continue
            candidate = Placed(w, validity.global_offset)  # type: ignore[arg-type]
            claims = zmap.setdefault(validity.index, [])  # type: ignore[arg-type]
            if any(
                p.global_offset == candidate.global_offset and p.window.symbols == w.symbols
                for p in claims
            ):
                continue
            claims.append(candidate)
    for index, claims in zmap.items():
        claims.sort(key=lambda p: p.window.symbols.sort_key())
        if len(claims) > 1:
            logger.debug(f"Index {index} claimed by {len(claims)} distinct windows")
    logger.debug(f"Window classification: { {c.value: n for c, n in counts.items()} }")
    return zmap


def reconstruct(zmap: Dict[int, List[Placed]], params: CodeParams) -> ReconstructionState:
    """Write placed windows into the skeleton; collisions erase whole blocks"""
    roles = layout(params)
    symbols = list(skeleton(params))
    status = [BlockStatus.UNTOUCHED] * params.total_blocks
    state = ReconstructionState(params, symbols, status)

    for index in sorted(zmap):
        for placed in zmap[index]:
            state.placed += 1
            start = placed.global_offset
            for position, symbol in enumerate(placed.window.symbols.symbols, start):
                region, block = roles[position]
                if region is not Region.PAYLOAD or block is None:
                    continue
                if status[block] is BlockStatus.ERASED:
                    continue
                current = symbols[position]
                if current is None:
                    symbols[position] = symbol
                    status[block] = BlockStatus.PARTIAL
                elif current != symbol:
                    state.collisions += 1
                    logger.debug(f"Collision at position {position}, erasing block {block}")
                    state.erase_block(block)

    for block, current in enumerate(status):
        if current is BlockStatus.ERASED:
            continue
        start = params.block_start(block)
        if any(s is None for s in symbols[start : start + params.block_len]):
            state.erase_block(block)
        else:
            status[block] = BlockStatus.COMPLETE
    return state


def reconstruct_segments(received: SegmentCollection, params: CodeParams) -> ReconstructionState:
    return reconstruct(build_Z(received, params), params)
