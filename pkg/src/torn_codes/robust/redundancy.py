"""
Error-model dispatch and the extra redundancy of the robust codecs
"""

from typing import Literal

from ..coding.codec import Codeword, code_redundancy
from ..coding.codec import decode as noiseless_decode
from ..coding.codec import encode as noiseless_encode
from ..core.exceptions import ParameterError, TornCodesError
from ..core.params import CodeParams
from ..core.sequences import QString, SegmentCollection
from .deletion import DeletionCode, robust_decode_del, robust_encode_del
from .substitution import SubstitutionCode, robust_decode_sub, robust_encode_sub

RobustModel = Literal["none", "substitution", "deletion"]
ROBUST_MODELS = ("none", "substitution", "deletion")


def _check_model(model: str) -> None:
    if model not in ROBUST_MODELS:
        raise ParameterError(f"Robust model must be one of: {list(ROBUST_MODELS)}")


def robust_message_len(params: CodeParams, t: int, model: str, bec: str = "auto") -> int:
    _check_model(model)
    if model == "substitution":
        return SubstitutionCode(params, t).message_len
    if model == "deletion":
        return DeletionCode(params, t, bec).message_len
    return params.message_len


def encode_model(
    x: QString, params: CodeParams, model: str, t: int = 0, bec: str = "auto"
) -> Codeword:
    _check_model(model)
    if model == "substitution":
        return robust_encode_sub(x, params, t)
    if model == "deletion":
        return robust_encode_del(x, params, t, bec)
    return noiseless_encode(x, params)


def decode_model(
    received: SegmentCollection, params: CodeParams, model: str, t: int = 0, bec: str = "auto"
) -> QString:
    _check_model(model)
    if model == "substitution":
        return robust_decode_sub(received, params, t)
    if model == "deletion":
        return robust_decode_del(received, params, t, bec)
    return noiseless_decode(received, params)


def delta_redundancy(params: CodeParams, t: int, model: str, bec: str = "auto") -> int:
    """Symbols of redundancy added on top of the noiseless code

    Substitution adds 2t blocks of m symbols, deletion adds rho blocks; the
    value is computed from the message lengths and checked against that
    decomposition.
    """
    measured = params.codeword_len - robust_message_len(params, t, model, bec)
    delta = measured - code_redundancy(params)
    if model == "substitution":
        expected = 2 * t * params.payload_len
    elif model == "deletion":
        expected = DeletionCode(params, t, bec).rho * params.payload_len
    else:
        expected = 0
    if delta != expected:
        raise TornCodesError(f"Redundancy {delta} disagrees with decomposition {expected}")
    return delta
