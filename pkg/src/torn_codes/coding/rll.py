"""
Run-length-limited block encoders

Every scheme maps m payload symbols to N output symbols such that the output
starts with the symbol 1 and contains no run of f zeros.
"""

import logging
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Dict, List, Tuple, Type

from ..core.exceptions import CorruptionError, ParameterError
from ..core.sequences import QString, max_zero_run

logger = logging.getLogger(__name__)


class RllScheme(ABC):
    """Base class for run-length-limited block codes"""

    name: str = ""

    def __init__(self, f: int, q: int = 2):
        if f < 2:
            raise ParameterError(f"Run-length parameter f must be at least 2, got {f}")
        self.f = f
        self.q = q

    @abstractmethod
    def payload_len(self, block_len: int) -> int:
        """Number of payload symbols m carried by an output block of length N"""

    @abstractmethod
    def encode(self, payload: Tuple[int, ...], block_len: int) -> Tuple[int, ...]:
        """Encode raw symbols; callers have checked the payload length"""

    @abstractmethod
    def decode(self, block: Tuple[int, ...]) -> Tuple[int, ...]:
        """Inverse of encode; raises CorruptionError outside the image"""

    def __repr__(self) -> str:
        return f"{type(self).__name__}(f={self.f}, q={self.q})"


class StuffingRll(RllScheme):
    """Literal 1 at every output position divisible by f, payload elsewhere"""

    name = "stuffing"

    def payload_len(self, block_len: int) -> int:
        return block_len - -(-block_len // self.f)

    def encode(self, payload: Tuple[int, ...], block_len: int) -> Tuple[int, ...]:
        out: List[int] = []
        source = iter(payload)
        for position in range(block_len):
            out.append(1 if position % self.f == 0 else next(source))
        return tuple(out)

    def decode(self, block: Tuple[int, ...]) -> Tuple[int, ...]:
        payload = []
        for position, symbol in enumerate(block):
            if position % self.f == 0:
                if symbol != 1:
                    raise CorruptionError(
                        f"Stuffed position {position} holds {symbol}, expected 1"
                    )
            else:
                payload.append(symbol)
        return tuple(payload)


class EnumerativeRll(RllScheme):
    """Lexicographic ranking over all admissible blocks

    Admissible blocks start with 1 and have no run of f zeros. The payload,
    read as a base-q integer, is mapped to the admissible block of that rank, so
    the redundancy is the minimum possible for a fixed-length block code with
    these constraints.
    """

    name = "sequence_replacement"

    def _completions(self, length: int, run: int) -> int:
        return _count_completions(self.q, self.f, length, run)

    def payload_len(self, block_len: int) -> int:
        if block_len < 1:
            return 0
        admissible = self._completions(block_len - 1, 0)
        m, power = 0, self.q
        while power <= admissible:
            m += 1
            power *= self.q
        return m

    def encode(self, payload: Tuple[int, ...], block_len: int) -> Tuple[int, ...]:
        rank = 0
        for symbol in payload:
            rank = rank * self.q + symbol
        out = [1]
        run = 0
        for position in range(1, block_len):
            remaining = block_len - position - 1
            for symbol in range(self.q):
                next_run = run + 1 if symbol == 0 else 0
                count = self._completions(remaining, next_run) if next_run < self.f else 0
                if rank < count:
                    out.append(symbol)
                    run = next_run
                    break
                rank -= count
        return tuple(out)

    def decode(self, block: Tuple[int, ...]) -> Tuple[int, ...]:
        if not block or block[0] != 1:
            raise CorruptionError("Block must start with 1")
        if max_zero_run(block) >= self.f:
            raise CorruptionError(f"Block contains a zero run of length >= {self.f}")
        rank = 0
        run = 0
        for position in range(1, len(block)):
            remaining = len(block) - position - 1
            for symbol in range(block[position]):
                next_run = run + 1 if symbol == 0 else 0
                if next_run < self.f:
                    rank += self._completions(remaining, next_run)
            run = run + 1 if block[position] == 0 else 0
        m = self.payload_len(len(block))
        if rank >= self.q**m:
            raise CorruptionError(f"Block rank {rank} lies outside the payload range")
        digits = []
        for _ in range(m):
            rank, digit = divmod(rank, self.q)
            digits.append(digit)
        return tuple(reversed(digits))


@lru_cache(maxsize=None)
def _count_completions(q: int, f: int, length: int, run: int) -> int:
    """Strings of the given length with no f-run of zeros after a current zero run"""
    if length == 0:
        return 1
    total = (q - 1) * _count_completions(q, f, length - 1, 0)
    if run + 1 < f:
        total += _count_completions(q, f, length - 1, run + 1)
    return total


SCHEMES: Dict[str, Type[RllScheme]] = {
    StuffingRll.name: StuffingRll,
    EnumerativeRll.name: EnumerativeRll,
}


@lru_cache(maxsize=128)
def get_scheme(name: str, f: int, q: int = 2) -> RllScheme:
    if name not in SCHEMES:
        raise ParameterError(
            f"Unsupported RLL scheme '{name}'. Supported: {', '.join(sorted(SCHEMES))}"
        )
    return SCHEMES[name](f, q)


def rll_encode(scheme: RllScheme, x: QString, block_len: int) -> QString:
    expected = scheme.payload_len(block_len)
    if len(x) != expected:
        raise ParameterError(
            f"{scheme.name} payload must have length {expected} for N={block_len}, "
            f"got {len(x)}"
        )
    return QString.trusted(scheme.encode(x.symbols, block_len), x.q)


def rll_decode(scheme: RllScheme, y: QString) -> QString:
    return QString.trusted(scheme.decode(y.symbols), y.q)
