"""
Code parameter derivation and validation

A :class:`CodeParams` value is the single source of truth for every size used by
the encoders, decoders, channel simulator and bound evaluators.
"""

import logging
import math
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..coding.rll import SCHEMES, get_scheme
from .exceptions import ParameterError
from .sequences import QString, marker_symbols

logger = logging.getLogger(__name__)

RECORD_FIELDS = ("q", "n", "k", "Lmin", "Lmax", "f", "I", "alpha", "K", "N", "m", "marker_len")


def ceil_log(value: int, base: int) -> int:
    """Smallest e >= 0 with base**e >= value"""
    exponent, power = 0, 1
    while power < value:
        power *= base
        exponent += 1
    return exponent


def padded_length(data_len: int, f: int) -> int:
    """Length after inserting a 1 at every position divisible by f"""
    return -(-f * data_len // (f - 1))


def _derive(q: int, n: int, k: int, lmin: int, lmax: int, f: int, rll: str) -> Dict[str, Any]:
    for name, value in (("n", n), ("k", k), ("Lmin", lmin), ("Lmax", lmax), ("f", f)):
        if value < 1:
            raise ParameterError(f"{name} must be positive, got {value}")
    if q < 2:
        raise ParameterError(f"q >= 2 violated: q = {q}")
    if f < 2:
        raise ParameterError(f"f >= 2 violated: f = {f}")
    if not lmin <= lmax <= n:
        raise ParameterError(f"Lmin <= Lmax <= n violated: {lmin}, {lmax}, {n}")
    if rll not in SCHEMES:
        raise ParameterError(f"RLL scheme must be one of: {sorted(SCHEMES)}")

    stride = -(-n // lmin)
    num_blocks = n // lmin - 1
    if num_blocks < 1:
        raise ParameterError(f"K >= 1 violated: K = floor(n/Lmin) - 1 = {num_blocks}")
    ranks = (k - 1) * stride + num_blocks + 1
    index_len = max(1, ceil_log(ranks, q))
    alpha = padded_length(index_len + 1, f)
    block_len = lmin - alpha - f - 2
    if block_len < f:
        raise ParameterError(
            f"N >= f violated: N = Lmin - alpha - f - 2 = {lmin} - {alpha} - {f} - 2 "
            f"= {block_len} < {f}"
        )
    if q**index_len < ranks:
        raise ParameterError(f"q^I >= {ranks} violated with I = {index_len}")
    payload_len = get_scheme(rll, f, q).payload_len(block_len)
    if payload_len < 1:
        raise ParameterError(f"m >= 1 violated: scheme {rll} leaves m = {payload_len}")
    return dict(
        q=q,
        n=n,
        k=k,
        lmin=lmin,
        lmax=lmax,
        f=f,
        index_len=index_len,
        alpha=alpha,
        num_blocks=num_blocks,
        block_len=block_len,
        payload_len=payload_len,
        marker_len=f + 2,
        rll=rll,
    )


class CodeParams(BaseModel):
    """Validated parameter bundle with all derived quantities"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    q: int = Field(description="Alphabet size")
    n: int = Field(description="Strand length in symbols")
    k: int = Field(default=1, description="Number of strands")
    lmin: int = Field(alias="Lmin", description="Minimum segment length")
    lmax: int = Field(alias="Lmax", description="Maximum segment length")
    f: int = Field(description="Forbidden zero-run length")
    index_len: int = Field(alias="I", description="Gray index length")
    alpha: int = Field(description="Encoded index length")
    num_blocks: int = Field(alias="K", description="Information blocks per strand")
    block_len: int = Field(alias="N", description="Encoded block length")
    payload_len: int = Field(alias="m", description="Information block length")
    marker_len: int = Field(description="Marker length f + 2")
    rll: str = Field(default="stuffing", description="RLL scheme name")

    @model_validator(mode="after")
    def check_derivation(self) -> "CodeParams":
        expected = _derive(self.q, self.n, self.k, self.lmin, self.lmax, self.f, self.rll)
        for name, value in expected.items():
            if getattr(self, name) != value:
                raise ValueError(
                    f"Field {name} = {getattr(self, name)} disagrees with derived {value}"
                )
        return self

    @property
    def stride(self) -> int:
        """Ranks reserved per strand, ceil(n / Lmin)"""
        return -(-self.n // self.lmin)

    @property
    def tail_len(self) -> int:
        return self.n % self.lmin

    @property
    def skeleton_len(self) -> int:
        return self.alpha + self.marker_len

    @property
    def num_ranks(self) -> int:
        return (self.k - 1) * self.stride + self.num_blocks + 1

    @property
    def message_len(self) -> int:
        return self.num_blocks * self.payload_len * self.k

    @property
    def total_blocks(self) -> int:
        return self.num_blocks * self.k

    @property
    def codeword_len(self) -> int:
        return self.n * self.k

    @property
    def marker(self) -> QString:
        return QString.trusted(marker_symbols(self.f), self.q)

    def rank_of(self, strand: int, segment: int) -> int:
        return strand * self.stride + segment

    def locate_rank(self, rank: int) -> Optional[int]:
        """Global start position of the period carrying rank, None if unassigned"""
        if rank < 0:
            return None
        strand, segment = divmod(rank, self.stride)
        if strand >= self.k or segment > self.num_blocks:
            return None
        return strand * self.n + segment * self.lmin

    def block_start(self, block: int) -> int:
        """Global position of payload block y_i (blocks numbered across strands)"""
        strand, segment = divmod(block, self.num_blocks)
        return strand * self.n + segment * self.lmin + self.skeleton_len

    def to_record(self) -> Dict[str, int]:
        """Flat integer record keyed by the documented field names"""
        return self.model_dump(by_alias=True, exclude={"rll"})

    @classmethod
    def from_record(cls, record: Dict[str, Any], rll: str = "stuffing") -> "CodeParams":
        try:
            return cls.model_validate({**record, "rll": rll})
        except ValidationError as exc:
            raise ParameterError(f"Invalid parameter record: {exc}") from exc


def derive_params(
    q: int, n: int, k: int, lmin: int, lmax: int, f: int, rll: str = "stuffing"
) -> CodeParams:
    """Derive and validate all parameters of a torn-paper code"""
    derived = _derive(q, n, k, lmin, lmax, f, rll)
    logger.debug(f"Derived parameters: {derived}")
    return CodeParams(**derived)


def asymptotic_a(params: CodeParams) -> float:
    """Density parameter a with Lmin = a * log_q(n k)"""
    return params.lmin / math.log(params.n * params.k, params.q)


def suggest_f(n: int, q: int = 2) -> int:
    """Heuristic run-length parameter round(sqrt(log_q n)); no optimality claimed"""
    return max(2, round(math.sqrt(math.log(n, q))))
