"""
Pilot-interleaved torn-paper codes

A codeword interleaves a pilot stream (a piece of a de Bruijn sequence) with
M - 1 data streams that share no s-window with the pilot. Any piece of M*s
symbols then contains exactly one phase whose s symbols occur in the pilot,
and their position in the pilot fixes the position of the piece.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Hashable, List, Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.exceptions import CorruptionError, ParameterError, SamplingError
from ..core.sequences import QString
from .debruijn import DEFAULT_MAX_LENGTH, GENERATORS, de_bruijn

logger = logging.getLogger(__name__)


def _is_power(value: int, base: int) -> bool:
    while value > 1 and value % base == 0:
        value //= base
    return value == 1


class PilotConfig(BaseModel):
    """Interleaving parameters of a pilot code"""

    model_config = ConfigDict(frozen=True)

    q: int = Field(default=2, description="Alphabet size")
    n: int = Field(description="Codeword length")
    pilot_m: int = Field(default=4, description="Interleaved streams, pilot included")
    s: int = Field(description="De Bruijn order and location window length")
    method: str = Field(default="lyndon", description="De Bruijn generator: lyndon or prefer_high")
    max_length: int = Field(default=DEFAULT_MAX_LENGTH, description="Budget for q^s")

    @field_validator("method")
    @classmethod
    def validate_method(cls, v: str) -> str:
        if v not in GENERATORS:
            raise ValueError(f"De Bruijn method must be one of: {sorted(GENERATORS)}")
        return v

    @field_validator("pilot_m")
    @classmethod
    def validate_pilot_m(cls, v: int) -> int:
        if v < 2:
            raise ValueError("Interleave count must be greater than 1")
        return v

    @model_validator(mode="after")
    def check_sizes(self) -> "PilotConfig":
        if self.n % self.pilot_m:
            raise ValueError(f"n = {self.n} is not a multiple of M = {self.pilot_m}")
        if not _is_power(self.stream_len, self.q):
            raise ValueError(f"n/M = {self.stream_len} is not an integer power of q = {self.q}")
        if self.q**self.s < self.stream_len:
            raise ValueError(f"s >= log_q(n/M) violated: s = {self.s}")
        if self.s > self.stream_len:
            raise ValueError(f"s = {self.s} exceeds the stream length {self.stream_len}")
        return self

    @property
    def stream_len(self) -> int:
        return self.n // self.pilot_m

    @property
    def min_segment(self) -> int:
        """Shortest piece guaranteed to locate, M*s"""
        return self.pilot_m * self.s

    def union_bound(self) -> float:
        """1 - (n/M)^2 q^-s, lower bound on the acceptance probability"""
        return 1.0 - self.stream_len**2 * float(self.q) ** (-self.s)


def window_keys(symbols: Sequence[int], s: int, q: int) -> List[Hashable]:
    """Hashable key of every s-window, in order of start position"""
    if len(symbols) < s:
        return []
    if q**s < 2**62:
        array = np.asarray(symbols, dtype=np.int64)
        weights = q ** np.arange(s - 1, -1, -1, dtype=np.int64)
        return [int(v) for v in sliding_window_view(array, s) @ weights]
    return [tuple(symbols[i : i + s]) for i in range(len(symbols) - s + 1)]


def perp(x: QString, y: QString, s: int) -> bool:
    """True when no s-window of x starting in [0, L-s) equals one of y"""
    if len(x) != len(y):
        raise ParameterError("perp needs strings of equal length")
    if x.q != y.q:
        raise ParameterError(f"Alphabet mismatch: q={x.q} vs q={y.q}")
    starts = len(x) - s
    if starts <= 0:
        return True
    left = set(window_keys(x.symbols, s, x.q)[:starts])
    return not any(key in left for key in window_keys(y.symbols, s, y.q)[:starts])


def pilot_interleave(pilot: QString, streams: Sequence[QString]) -> QString:
    """Position j carries symbol j // M of stream j mod M; stream 0 is the pilot"""
    columns = [pilot, *streams]
    length = len(pilot)
    if any(len(stream) != length for stream in columns):
        raise ParameterError("All interleaved streams must have the pilot's length")
    if any(stream.q != pilot.q for stream in columns):
        raise ParameterError("All interleaved streams must share the alphabet")
    matrix = np.array([stream.symbols for stream in columns], dtype=np.int64)
    return QString.trusted(tuple(int(v) for v in matrix.T.reshape(-1)), pilot.q)


def deinterleave(z: QString, pilot_m: int) -> List[QString]:
    if len(z) % pilot_m:
        raise ParameterError(f"Length {len(z)} is not a multiple of M = {pilot_m}")
    return [QString.trusted(z.symbols[r::pilot_m], z.q) for r in range(pilot_m)]


@dataclass
class OpSampler:
    """Rejection sampler for streams sharing no s-window with the pilot

    Every window start is checked, including the last one, so sampled streams
    can never be confused with the pilot during location.
    """

    pilot: QString
    s: int
    seed: Optional[int] = None
    max_tries: int = 10_000
    attempts: int = 0
    accepted: int = 0
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = np.random.default_rng(self.seed)
        self._forbidden = set(window_keys(self.pilot.symbols, self.s, self.pilot.q))

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempts if self.attempts else math.nan

    def accepts(self, candidate: Sequence[int]) -> bool:
        keys = window_keys(candidate, self.s, self.pilot.q)
        return not any(key in self._forbidden for key in keys)

    def draw(self) -> QString:
        length, q = len(self.pilot), self.pilot.q
        for _ in range(self.max_tries):
            self.attempts += 1
            candidate = tuple(int(v) for v in self.rng.integers(0, q, size=length))
            if self.accepts(candidate):
                self.accepted += 1
                return QString.trusted(candidate, q)
        raise SamplingError(
            f"No stream accepted after {self.max_tries} attempts "
            f"(rate so far {self.acceptance_rate:.3g})"
        )


def sample_Op(p: QString, s: int, seed: Optional[int] = None, max_tries: int = 10_000) -> QString:
    return OpSampler(p, s, seed, max_tries).draw()


class PilotCode:
    """Pilot, its window index and a sampler of data streams"""

    def __init__(self, config: PilotConfig):
        self.config = config

    @cached_property
    def pilot(self) -> QString:
        config = self.config
        sequence = de_bruijn(config.q, config.s, config.method, config.max_length)
        return sequence[: config.stream_len]

    @cached_property
    def positions(self) -> Dict[Hashable, int]:
        keys = window_keys(self.pilot.symbols, self.config.s, self.config.q)
        index = {key: position for position, key in enumerate(keys)}
        if len(index) != len(keys):
            raise CorruptionError("Pilot windows are not unique")
        return index

    def sampler(self, seed: Optional[int] = None, max_tries: int = 10_000) -> OpSampler:
        return OpSampler(self.pilot, self.config.s, seed, max_tries)

    def sample_codeword(self, seed: Optional[int] = None) -> QString:
        sampler = self.sampler(seed)
        streams = [sampler.draw() for _ in range(self.config.pilot_m - 1)]
        return pilot_interleave(self.pilot, streams)

    def locate(self, u: QString) -> int:
        return pilot_locate(u, self)


def pilot_locate(u: QString, code: PilotCode) -> int:
    """Offset of a codeword piece of length >= M*s"""
    config = code.config
    m, s = config.pilot_m, config.s
    if len(u) < config.min_segment:
        raise ParameterError(f"Piece of length {len(u)} is shorter than M*s = {config.min_segment}")
    matches = []
    for phase in range(m):
        word = u.symbols[phase : phase + m * s : m]
        key = window_keys(word, s, config.q)[0]
        position = code.positions.get(key)
        if position is not None:
            matches.append(position * m - phase)
    if len(matches) != 1:
        raise CorruptionError(f"{len(matches)} phases match the pilot, expected exactly one")
    logger.debug(f"Located piece of length {len(u)} at offset {matches[0]}")
    return matches[0]
