"""
Exception hierarchy for torn-paper coding
"""

from typing import Any, Dict, Optional


class TornCodesError(Exception):
    """Base class for all library errors"""


class ParameterError(TornCodesError, ValueError):
    """Invalid parameters, lengths or alphabets"""


class ConfigurationError(ParameterError):
    """Infeasible code configuration (field too small, non prime-power alphabet)"""


class CorruptionError(TornCodesError):
    """Input lies outside the image of an encoder"""


class DecodingError(TornCodesError):
    """Decoder could not recover the message"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


class ResourceLimitError(TornCodesError):
    """A configured enumeration or memory budget was exceeded"""


class SamplingError(TornCodesError):
    """Rejection sampling ran out of attempts"""
