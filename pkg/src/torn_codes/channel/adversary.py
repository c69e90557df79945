"""
Adversarial torn-paper channel

Every strategy emits a valid (Lmin, Lmax)-segmentation of each strand. The
pieces are shuffled with a seeded permutation before they are handed over, so
the receiver never learns their order or origin.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..coding.codec import Codeword, Region, layout
from ..coding.indexing import data_positions
from ..core.exceptions import ParameterError
from ..core.params import CodeParams
from ..core.sequences import QString, SegmentCollection

logger = logging.getLogger(__name__)

STRATEGIES = (
    "uniform_random_cuts",
    "all_lmin",
    "marker_straddle",
    "index_straddle",
    "greedy_short",
    "scripted",
)
CORRUPTION_TARGETS = ("random", "index", "marker", "parity", "payload")
DELETION_MODES = ("random", "adjacent")

# Independent numpy streams per channel stage
_TEAR, _SHUFFLE, _CORRUPT, _DELETE = range(4)


def stage_rng(seed: Optional[int], stage: int) -> np.random.Generator:
    """Generator for one stage of a trial, independent of the other stages"""
    entropy = [stage] if seed is None else [int(seed), stage]
    return np.random.default_rng(np.random.SeedSequence(entropy))


class AdversaryStrategy(BaseModel):
    """How the adversary cuts, corrupts and drops"""

    model_config = ConfigDict(frozen=True)

    kind: str = Field(default="uniform_random_cuts", description="Segmentation strategy")
    seed: Optional[int] = Field(default=None, description="64-bit seed")
    cuts: Optional[Tuple[Tuple[int, ...], ...]] = Field(
        default=None, description="Scripted piece lengths, one list per strand"
    )
    target: str = Field(default="random", description="Substitution target region")
    deletion_mode: str = Field(default="random", description="random or adjacent")

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        if v not in STRATEGIES:
            raise ValueError(f"Strategy must be one of: {list(STRATEGIES)}")
        return v

    @field_validator("target")
    @classmethod
    def validate_target(cls, v: str) -> str:
        if v not in CORRUPTION_TARGETS:
            raise ValueError(f"Corruption target must be one of: {list(CORRUPTION_TARGETS)}")
        return v

    @field_validator("deletion_mode")
    @classmethod
    def validate_deletion_mode(cls, v: str) -> str:
        if v not in DELETION_MODES:
            raise ValueError(f"Deletion mode must be one of: {list(DELETION_MODES)}")
        return v


@dataclass(frozen=True)
class TornPiece:
    """A received segment together with where it was cut from"""

    segment: QString
    strand: int
    start: int


@dataclass(frozen=True)
class TearResult:
    pieces: Tuple[TornPiece, ...]

    @property
    def segments(self) -> SegmentCollection:
        return SegmentCollection.of(piece.segment for piece in self.pieces)

    @property
    def shuffled(self) -> List[QString]:
        """Segments in channel order"""
        return [piece.segment for piece in self.pieces]


def validate_pattern(pattern: Sequence[int], length: int, lmin: int, lmax: int) -> None:
    if sum(pattern) != length:
        raise ParameterError(f"Cut lengths sum to {sum(pattern)}, strand has {length}")
    for number, piece in enumerate(pattern):
        last = number == len(pattern) - 1
        if piece < 1 or piece > lmax or (not last and piece < lmin):
            raise ParameterError(
                f"Piece {number} of length {piece} violates the ({lmin}, {lmax}) constraint"
            )


def _random_pattern(length: int, lmin: int, lmax: int, rng: np.random.Generator) -> List[int]:
    pattern: List[int] = []
    remaining = length
    while remaining > 0:
        if remaining <= lmax and (remaining <= lmin or rng.random() < 0.5):
            pattern.append(remaining)
            break
        upper = min(lmax, remaining - 1)
        piece = int(rng.integers(lmin, upper + 1))
        pattern.append(piece)
        remaining -= piece
    return pattern


def _all_lmin_pattern(length: int, lmin: int) -> List[int]:
    full, rest = divmod(length, lmin)
    return [lmin] * full + ([rest] if rest else [])


def _greedy_short_pattern(
    length: int, lmin: int, lmax: int, rng: np.random.Generator
) -> List[int]:
    """One random-length piece, then the shortest legal pieces"""
    if length <= lmax:
        return [length]
    first = int(rng.integers(lmin, min(lmax, length - 1) + 1))
    return [first] + _all_lmin_pattern(length - first, lmin)


def _straddle_pattern(
    length: int,
    lmin: int,
    lmax: int,
    inside: Set[int],
    rng: np.random.Generator,
) -> List[int]:
    """Prefer cut positions strictly inside the targeted regions"""
    pattern: List[int] = []
    position = 0
    while length - position > 0:
        remaining = length - position
        if remaining <= lmax:
            pattern.append(remaining)
            break
        window = range(position + lmin, min(position + lmax, length - 1) + 1)
        hits = [c for c in window if c in inside]
        if hits:
            cut = hits[0]
        else:
            cut = int(rng.integers(window.start, window.stop))
        pattern.append(cut - position)
        position = cut
    return pattern


def _region_cuts(params: CodeParams, strand: int, region: Region) -> Set[int]:
    """Strand-local cut positions that fall strictly inside a region"""
    roles = layout(params)[strand * params.n : (strand + 1) * params.n]
    return {
        p
        for p in range(1, params.n)
        if roles[p][0] == region and roles[p - 1][0] == region
    }


def cut_pattern(
    strategy: AdversaryStrategy,
    params: CodeParams,
    strand: int,
    rng: np.random.Generator,
) -> List[int]:
    n, lmin, lmax = params.n, params.lmin, params.lmax
    kind = strategy.kind
    if kind == "all_lmin":
        return _all_lmin_pattern(n, lmin)
    if kind == "greedy_short":
        return _greedy_short_pattern(n, lmin, lmax, rng)
    if kind == "marker_straddle":
        return _straddle_pattern(n, lmin, lmax, _region_cuts(params, strand, Region.MARKER), rng)
    if kind == "index_straddle":
        return _straddle_pattern(n, lmin, lmax, _region_cuts(params, strand, Region.INDEX), rng)
    if kind == "scripted":
        if not strategy.cuts:
            raise ParameterError("Scripted strategy needs cut lists")
        pattern = list(strategy.cuts[strand % len(strategy.cuts)])
        validate_pattern(pattern, n, lmin, lmax)
        return pattern
    return _random_pattern(n, lmin, lmax, rng)


def tear_pieces(z: Codeword, strategy: AdversaryStrategy) -> TearResult:
    """Cut every strand and shuffle the pieces"""
    params = z.params
    rng = stage_rng(strategy.seed, _TEAR)
    pieces: List[TornPiece] = []
    for number, strand in enumerate(z.strands):
        start = 0
        for piece in cut_pattern(strategy, params, number, rng):
            pieces.append(TornPiece(strand[start : start + piece], number, start))
            start += piece
    order = stage_rng(strategy.seed, _SHUFFLE).permutation(len(pieces))
    logger.debug(f"Tore {params.k} strands into {len(pieces)} pieces with {strategy.kind}")
    return TearResult(tuple(pieces[int(i)] for i in order))


def tear(z: Codeword, strategy: AdversaryStrategy) -> SegmentCollection:
    return tear_pieces(z, strategy).segments


def _target_positions(params: CodeParams, target: str) -> List[int]:
    roles = layout(params)
    if target == "random":
        return list(range(params.codeword_len))
    if target == "parity":
        parity = data_positions(params.alpha, params.f)[-1]
        return [
            strand * params.n + segment * params.lmin + parity
            for strand in range(params.k)
            for segment in range(params.num_blocks + 1)
        ]
    region = Region(target)
    return [p for p, (role, _) in enumerate(roles) if role == region]


def corrupt_positions(
    z: Codeword, t_sub: int, seed: Optional[int], target: str = "random"
) -> Tuple[Codeword, Tuple[int, ...]]:
    """Change exactly min(t_sub, #targets) symbols, each to a different value"""
    if t_sub < 0:
        raise ParameterError(f"Substitution count must be non-negative, got {t_sub}")
    if target not in CORRUPTION_TARGETS:
        raise ParameterError(f"Corruption target must be one of: {list(CORRUPTION_TARGETS)}")
    if not t_sub:
        return z, ()
    rng = stage_rng(seed, _CORRUPT)
    pool = _target_positions(z.params, target)
    if t_sub > len(pool):
        logger.warning(f"Only {len(pool)} {target} positions for {t_sub} substitutions")
    chosen = sorted(int(p) for p in rng.choice(pool, size=min(t_sub, len(pool)), replace=False))
    symbols = list(z.symbols)
    q = z.params.q
    for position in chosen:
        symbols[position] = (symbols[position] + int(rng.integers(1, q))) % q
    logger.debug(f"Corrupted positions {chosen} ({target})")
    return z.with_symbols(symbols), tuple(chosen)


def corrupt(z: Codeword, t_sub: int, seed: Optional[int], target: str = "random") -> QString:
    corrupted, _ = corrupt_positions(z, t_sub, seed, target)
    return QString.trusted(corrupted.symbols, z.params.q)


def delete_pieces(
    torn: TearResult, t_del: int, seed: Optional[int], mode: str = "random"
) -> Tuple[TearResult, Tuple[TornPiece, ...]]:
    """Drop t_del pieces; adjacent mode drops consecutive pieces of one strand"""
    count = len(torn.pieces)
    if not 0 <= t_del <= count:
        raise ParameterError(f"Cannot delete {t_del} of {count} segments")
    if mode not in DELETION_MODES:
        raise ParameterError(f"Deletion mode must be one of: {list(DELETION_MODES)}")
    if not t_del:
        return torn, ()
    rng = stage_rng(seed, _DELETE)
    if mode == "adjacent":
        ordered = sorted(range(count), key=lambda i: (torn.pieces[i].strand, torn.pieces[i].start))
        first = int(rng.integers(0, count - t_del + 1))
        dropped = set(ordered[first : first + t_del])
    else:
        dropped = {int(i) for i in rng.choice(count, size=t_del, replace=False)}
    kept = tuple(p for i, p in enumerate(torn.pieces) if i not in dropped)
    removed = tuple(torn.pieces[i] for i in sorted(dropped))
    logger.debug(f"Deleted {t_del} segments ({mode}) at {[(p.strand, p.start) for p in removed]}")
    return TearResult(kept), removed


def delete_segments(
    T: SegmentCollection, t_del: int, seed: Optional[int], mode: str = "random"
) -> SegmentCollection:
    """Remove t_del members of an unordered collection

    Without placements, adjacent mode falls back to a seeded choice.
    """
    if not 0 <= t_del <= len(T):
        raise ParameterError(f"Cannot delete {t_del} of {len(T)} segments")
    if not t_del:
        return T
    rng = stage_rng(seed, _DELETE)
    dropped = {int(i) for i in rng.choice(len(T), size=t_del, replace=False)}
    return SegmentCollection.of(s for i, s in enumerate(T.segments) if i not in dropped)
