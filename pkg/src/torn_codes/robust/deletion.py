"""
Segment-deletion-robust torn-paper codec

The first kK - rho payload blocks carry RLL-encoded data y*. A systematic
burst-erasure code protects y*; its redundancy w is stuffed with a 1 at every
position divisible by f and spread over the last rho blocks. A missing segment
becomes a burst of at most `depth` erased payload symbols once index and marker
positions are stripped.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..coding.codec import Codeword, Decoder, encode as noiseless_encode, encode_blocks
from ..coding.rll import get_scheme, rll_decode, rll_encode
from ..core.exceptions import CorruptionError, DecodingError, ParameterError
from ..core.params import CodeParams, padded_length
from ..core.sequences import QString, SegmentCollection, concat_all
from ..ecc.bec import BecCode, bec_decode, bec_encode, make_bec_code

logger = logging.getLogger(__name__)


def payload_burst_bound(params: CodeParams) -> int:
    """Most payload symbols a single segment of length <= Lmax can hold"""
    full, rest = divmod(params.lmax, params.lmin)
    return full * params.block_len + min(rest, params.block_len)


def hat_lmax(params: CodeParams) -> int:
    """Lmax - ceil(Lmax / Lmin) * (alpha + f + 2); may undercount at small sizes"""
    return params.lmax - -(-params.lmax // params.lmin) * params.skeleton_len


def stuff(symbols: Sequence[int], f: int) -> Tuple[int, ...]:
    """Insert a 1 at every position divisible by f"""
    source = iter(symbols)
    return tuple(
        1 if p % f == 0 else next(source) for p in range(padded_length(len(symbols), f))
    )


def unstuff(symbols: Sequence[Optional[int]], f: int) -> List[Optional[int]]:
    return [s for p, s in enumerate(symbols) if p % f]


def erasure_bursts(word: Sequence[Optional[int]]) -> List[Tuple[int, int]]:
    """Maximal runs of erasures as (start, length)"""
    bursts: List[Tuple[int, int]] = []
    start = None
    for position, symbol in enumerate(list(word) + [0]):
        if symbol is None and start is None:
            start = position
        elif symbol is not None and start is not None:
            bursts.append((start, position - start))
            start = None
    return bursts


@dataclass(frozen=True)
class DeletionCode:
    """Layout of the burst-erasure protected payload"""

    params: CodeParams
    t: int
    bec_kind: str = "auto"

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ParameterError(f"Deletion budget must be non-negative, got {self.t}")
        if self.t:
            self._fitted

    @property
    def depth(self) -> int:
        return payload_burst_bound(self.params)

    @cached_property
    def _fitted(self) -> Tuple[int, Optional[BecCode]]:
        return self._fit()

    def _fit(self) -> Tuple[int, Optional[BecCode]]:
        """Smallest rho whose blocks hold the stuffed redundancy of its own BEC"""
        params = self.params
        if not self.t:
            return 0, None
        for rho in range(1, params.total_blocks):
            message_len = (params.total_blocks - rho) * params.block_len
            code = make_bec_code(self.bec_kind, self.depth, self.t, message_len, params.q)
            stuffed = padded_length(code.redundancy, params.f)
            if -(-stuffed // params.block_len) <= rho:
                return rho, code
        raise ParameterError(
            f"kK - rho >= 1 violated: {params.total_blocks} blocks cannot hold the "
            f"redundancy of a {self.t}-burst code of depth {self.depth}"
        )

    @property
    def rho(self) -> int:
        return self._fitted[0]

    @property
    def bec(self) -> Optional[BecCode]:
        return self._fitted[1]

    @property
    def data_blocks(self) -> int:
        return self.params.total_blocks - self.rho

    @property
    def message_len(self) -> int:
        return self.data_blocks * self.params.payload_len

    @property
    def bec_redundancy(self) -> int:
        return self.bec.redundancy if self.bec else 0

    @property
    def stuffed_len(self) -> int:
        return padded_length(self.bec_redundancy, self.params.f) if self.bec else 0

    @property
    def formula_rho(self) -> int:
        """ceil(rho_BEC / N) * floor(f / (f - 1)), without the stuffing fit"""
        f = self.params.f
        return -(-self.bec_redundancy // self.params.block_len) * (f // (f - 1))

    def summary(self) -> Dict[str, object]:
        return {
            "t": self.t,
            "bec": self.bec.kind if self.bec else None,
            "depth": self.depth,
            "hat_lmax": hat_lmax(self.params),
            "rho": self.rho,
            "formula_rho": self.formula_rho,
            "bec_redundancy": self.bec_redundancy,
            "stuffed_len": self.stuffed_len,
            "message_len": self.message_len,
        }


def robust_encode_del(x: QString, params: CodeParams, t: int, bec: str = "auto") -> Codeword:
    code = DeletionCode(params, t, bec)
    if len(x) != code.message_len:
        raise ParameterError(f"Message must have length {code.message_len}, got {len(x)}")
    if x.q != params.q:
        raise ParameterError(f"Message alphabet q={x.q} does not match q={params.q}")
    if not t:
        return noiseless_encode(x, params)
    scheme = get_scheme(params.rll, params.f, params.q)
    m, size = params.payload_len, params.block_len
    blocks = [
        rll_encode(scheme, x[b * m : (b + 1) * m], size) for b in range(code.data_blocks)
    ]
    ystar = concat_all(blocks, params.q)
    w = bec_encode(ystar, code.bec)  # type: ignore[arg-type]
    wstar = stuff(w.symbols, params.f)
    wstar += (1,) * (code.rho * size - len(wstar))
    blocks += [
        QString.trusted(wstar[r * size : (r + 1) * size], params.q) for r in range(code.rho)
    ]
    logger.debug(f"Deletion encode: rho={code.rho}, |w|={len(w)}, |w*|={code.stuffed_len}")
    return encode_blocks(blocks, params)


@dataclass
class DeletionOutcome:
    message: QString
    bursts: List[Tuple[int, int]]


def decode_with_bursts(
    received: SegmentCollection, params: CodeParams, t: int, bec: str = "auto"
) -> DeletionOutcome:
    """Place every segment, erase the gaps and run the burst-erasure decoder"""
    code = DeletionCode(params, t, bec)
    decoder = Decoder(params)
    array = decoder.fill(received)
    size = params.block_len
    payload: List[Optional[int]] = []
    for block in range(params.total_blocks):
        start = params.block_start(block)
        payload.extend(array[start : start + size])
    data_len = code.data_blocks * size
    word = payload[:data_len] + unstuff(payload[data_len : data_len + code.stuffed_len], params.f)
    bursts = erasure_bursts(word)
    logger.debug(f"Deletion decode sees {len(bursts)} erasure bursts: {bursts}")
    if code.bec is None:
        if bursts:
            raise DecodingError(
                f"{len(bursts)} erased regions without a burst-erasure code",
                {"bursts": bursts},
            )
        ystar = QString.trusted(tuple(word), params.q)  # type: ignore[arg-type]
    else:
        try:
            ystar = bec_decode(word, code.bec)
        except DecodingError as exc:
            exc.diagnostics["bursts"] = bursts
            raise
    scheme = get_scheme(params.rll, params.f, params.q)
    parts = []
    for number in range(code.data_blocks):
        try:
            parts.append(rll_decode(scheme, ystar[number * size : (number + 1) * size]))
        except CorruptionError as exc:
            raise DecodingError(
                f"Block {number} is not an RLL codeword: {exc}", {"block": number}
            ) from exc
    return DeletionOutcome(concat_all(parts, params.q), bursts)


def robust_decode_del(
    received: SegmentCollection, params: CodeParams, t: int, bec: str = "auto"
) -> QString:
    return decode_with_bursts(received, params, t, bec).message
