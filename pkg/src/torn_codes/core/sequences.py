"""
Sequences over a finite alphabet, segmentation spectra and marker search

Every codec in the package moves data around as :class:`QString` values. The
torn-paper channel output is a :class:`SegmentCollection`, an unordered
multiset of such strings.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Set, Tuple

from .exceptions import ParameterError, ResourceLimitError

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10**7

ACGT_ALPHABET = "ACGT"
_ACGT_TO_SYMBOL = {base: value for value, base in enumerate(ACGT_ALPHABET)}


@dataclass(frozen=True)
class QString:
    """Immutable string over the alphabet Z_q"""

    symbols: Tuple[int, ...]
    q: int = 2

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ParameterError(f"Alphabet size must be at least 2, got {self.q}")
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        for symbol in self.symbols:
            if not 0 <= symbol < self.q:
                raise ParameterError(f"Symbol {symbol} outside alphabet [0, {self.q})")

    @classmethod
    def trusted(cls, symbols: Tuple[int, ...], q: int) -> "QString":
        """Build without validation; callers guarantee the alphabet invariant"""
        instance = object.__new__(cls)
        object.__setattr__(instance, "symbols", symbols)
        object.__setattr__(instance, "q", q)
        return instance

    @classmethod
    def from_text(cls, text: str, q: int = 2) -> "QString":
        """Parse the one-character-per-symbol text form (ACGT accepted for q=4)"""
        text = text.strip()
        if q == 4 and text and set(text) <= set(ACGT_ALPHABET):
            return cls(tuple(_ACGT_TO_SYMBOL[base] for base in text), q)
        if q > 10:
            raise ParameterError("Text form is only defined for q <= 10")
        try:
            return cls(tuple(int(char) for char in text), q)
        except ValueError as exc:
            raise ParameterError(f"Invalid symbol text: {text!r}") from exc

    @classmethod
    def zeros(cls, length: int, q: int = 2) -> "QString":
        return cls.trusted((0,) * length, q)

    @classmethod
    def ones(cls, length: int, q: int = 2) -> "QString":
        return cls.trusted((1,) * length, q)

    def to_text(self, acgt: bool = False) -> str:
        if acgt:
            if self.q != 4:
                raise ParameterError("ACGT rendering requires q = 4")
            return "".join(ACGT_ALPHABET[s] for s in self.symbols)
        if self.q > 10:
            raise ParameterError("Text form is only defined for q <= 10")
        return "".join(str(s) for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, item):  # type: ignore[no-untyped-def]
        if isinstance(item, slice):
            return QString.trusted(self.symbols[item], self.q)
        return self.symbols[item]

    def __add__(self, other: "QString") -> "QString":
        return concat(self, other)

    def __str__(self) -> str:
        return self.to_text() if self.q <= 10 else repr(self.symbols)

    @property
    def support(self) -> Tuple[int, ...]:
        """Positions holding a nonzero symbol"""
        return tuple(i for i, s in enumerate(self.symbols) if s)

    @property
    def weight(self) -> int:
        """Hamming weight"""
        return sum(1 for s in self.symbols if s)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.symbols), self.symbols)


def concat(a: QString, b: QString) -> QString:
    if a.q != b.q:
        raise ParameterError(f"Alphabet mismatch: q={a.q} vs q={b.q}")
    return QString.trusted(a.symbols + b.symbols, a.q)


def concat_all(parts: Iterable[QString], q: int) -> QString:
    symbols: List[int] = []
    for part in parts:
        if part.q != q:
            raise ParameterError(f"Alphabet mismatch: q={part.q} vs q={q}")
        symbols.extend(part.symbols)
    return QString.trusted(tuple(symbols), q)


def hamming_distance(x: QString, y: QString) -> int:
    if len(x) != len(y):
        raise ParameterError("Hamming distance needs equal lengths")
    return sum(1 for a, b in zip(x.symbols, y.symbols) if a != b)


def hamming_perturb(x: QString, error_vector: QString) -> QString:
    """Add an error vector componentwise in Z_q"""
    if len(x) != len(error_vector):
        raise ParameterError(
            f"Error vector length {len(error_vector)} does not match {len(x)}"
        )
    if x.q != error_vector.q:
        raise ParameterError(f"Alphabet mismatch: q={x.q} vs q={error_vector.q}")
    q = x.q
    return QString.trusted(
        tuple((a + e) % q for a, e in zip(x.symbols, error_vector.symbols)), q
    )


@dataclass(frozen=True)
class SegmentCollection:
    """Multiset of segments; equality ignores order and respects multiplicity"""

    segments: Tuple[QString, ...] = field(default=())

    def __post_init__(self) -> None:
        canonical = tuple(sorted(self.segments, key=QString.sort_key))
        object.__setattr__(self, "segments", canonical)

    @classmethod
    def of(cls, segments: Iterable[QString]) -> "SegmentCollection":
        return cls(tuple(segments))

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[QString]:
        return iter(self.segments)

    def counts(self) -> Dict[Tuple[int, ...], int]:
        return dict(Counter(segment.symbols for segment in self.segments))

    def union(self, other: "SegmentCollection") -> "SegmentCollection":
        return SegmentCollection(self.segments + other.segments)

    @property
    def total_length(self) -> int:
        return sum(len(segment) for segment in self.segments)


@dataclass(frozen=True)
class ErrorBudget:
    """Noise budget of one codec configuration"""

    t_sub: int = 0
    t_del: int = 0

    def __post_init__(self) -> None:
        if self.t_sub < 0 or self.t_del < 0:
            raise ParameterError("Error budgets must be non-negative")
        if self.t_sub and self.t_del:
            raise ParameterError(
                "Substitutions and segment deletions cannot be combined in one budget"
            )

    @property
    def total(self) -> int:
        return self.t_sub + self.t_del


def iter_cut_patterns(length: int, lmin: int, lmax: int) -> Iterator[Tuple[int, ...]]:
    """Yield every list of segment lengths forming an (lmin, lmax)-segmentation"""
    if not 1 <= lmin <= lmax:
        raise ParameterError(f"Need 1 <= Lmin <= Lmax, got Lmin={lmin}, Lmax={lmax}")
    if length < 1:
        return

    def extend(remaining: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if remaining <= lmax:
            yield prefix + (remaining,)
        for cut in range(lmin, min(lmax, remaining - 1) + 1):
            yield from extend(remaining - cut, prefix + (cut,))

    yield from extend(length, ())


def count_segmentations(length: int, lmin: int, lmax: int) -> int:
    """Number of cut patterns (not deduplicated as multisets)"""

    @lru_cache(maxsize=None)
    def count(remaining: int) -> int:
        total = 1 if remaining <= lmax else 0
        for cut in range(lmin, min(lmax, remaining - 1) + 1):
            total += count(remaining - cut)
        return total

    return count(length) if length >= 1 else 0


def cut(x: QString, pattern: Sequence[int]) -> List[QString]:
    """Split x into consecutive pieces of the given lengths"""
    if sum(pattern) != len(x):
        raise ParameterError(f"Cut lengths sum to {sum(pattern)}, expected {len(x)}")
    pieces = []
    position = 0
    for size in pattern:
        pieces.append(x[position : position + size])
        position += size
    return pieces


def enumerate_segmentations(
    x: QString, lmin: int, lmax: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Set[SegmentCollection]:
    """The (lmin, lmax)-segmentation spectrum of x"""
    if not 1 <= lmin <= lmax <= len(x):
        raise ParameterError(
            f"Need 1 <= Lmin <= Lmax <= |x|, got {lmin}, {lmax}, {len(x)}"
        )
    patterns = count_segmentations(len(x), lmin, lmax)
    if patterns > cap:
        raise ResourceLimitError(
            f"Spectrum has {patterns} cut patterns, above the enumeration cap {cap}"
        )
    logger.debug(f"Enumerating {patterns} cut patterns of a length-{len(x)} string")
    return {
        SegmentCollection.of(cut(x, pattern))
        for pattern in iter_cut_patterns(len(x), lmin, lmax)
    }


def exact_segmentation(x: QString, length: int) -> SegmentCollection:
    if length < 1:
        raise ParameterError("Segment length must be positive")
    return SegmentCollection.of(
        x[start : start + length] for start in range(0, len(x), length)
    )


def exact_segmentation_multi(strands: Iterable[QString], length: int) -> SegmentCollection:
    """Exact segmentation of every strand, unioned"""
    pieces: List[QString] = []
    for strand in strands:
        pieces.extend(exact_segmentation(strand, length).segments)
    return SegmentCollection.of(pieces)


def enumerate_segmentations_multi(
    strands: Sequence[QString], lmin: int, lmax: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Set[SegmentCollection]:
    """Spectrum of a multiset of strands: one segmentation per strand, unioned"""
    spectrum: Set[SegmentCollection] = {SegmentCollection()}
    for strand in strands:
        strand_spectrum = enumerate_segmentations(strand, lmin, lmax, cap)
        if len(spectrum) * len(strand_spectrum) > cap:
            raise ResourceLimitError("Multi-strand spectrum exceeds the enumeration cap")
        spectrum = {left.union(right) for left in spectrum for right in strand_spectrum}
    return spectrum


class MarkerKind(str, Enum):
    COMPLETE = "complete"
    CYCLIC = "cyclic"


class MarkerOccurrence(NamedTuple):
    offset: int
    kind: MarkerKind


@lru_cache(maxsize=64)
def marker_symbols(f: int) -> Tuple[int, ...]:
    """The separator pattern 1 0^f 1"""
    return (1,) + (0,) * f + (1,)


def complete_marker_offsets(symbols: Sequence[int], f: int) -> List[int]:
    marker = marker_symbols(f)
    width = f + 2
    return [
        j
        for j in range(len(symbols) - width + 1)
        if symbols[j] == 1 and tuple(symbols[j : j + width]) == marker
    ]


def cyclic_marker_offsets(symbols: Sequence[int], f: int) -> List[int]:
    """Offsets of markers that wrap from the end of the string to its start"""
    marker = marker_symbols(f)
    width = f + 2
    length = len(symbols)
    offsets = []
    for j in range(max(length - width + 1, 0), length):
        wrapped = tuple(symbols[j:]) + tuple(symbols[: width - (length - j)])
        if wrapped == marker:
            offsets.append(j)
    return offsets


def find_marker_occurrences(u: QString, f: int) -> List[MarkerOccurrence]:
    if len(u) < f + 2:
        raise ParameterError(f"Marker search needs |u| >= {f + 2}, got {len(u)}")
    occurrences = [
        MarkerOccurrence(j, MarkerKind.COMPLETE)
        for j in complete_marker_offsets(u.symbols, f)
    ]
    occurrences.extend(
        MarkerOccurrence(j, MarkerKind.CYCLIC) for j in cyclic_marker_offsets(u.symbols, f)
    )
    return occurrences


def zero_suffix_length(symbols: Sequence[int]) -> int:
    run = 0
    for symbol in reversed(symbols):
        if symbol:
            break
        run += 1
    return run


def max_zero_run(symbols: Sequence[int]) -> int:
    longest = run = 0
    for symbol in symbols:
        run = run + 1 if symbol == 0 else 0
        longest = max(longest, run)
    return longest
