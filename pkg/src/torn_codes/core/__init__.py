"""
Core types: q-ary strings, segment multisets, parameters and errors

Kept free of re-exports from ``params`` so that the coding package can import
it without a cycle.
"""

from .exceptions import (
    ConfigurationError,
    CorruptionError,
    DecodingError,
    ParameterError,
    ResourceLimitError,
    SamplingError,
    TornCodesError,
)
from .sequences import ErrorBudget, QString, SegmentCollection

__all__ = [
    "ConfigurationError",
    "CorruptionError",
    "DecodingError",
    "ParameterError",
    "ResourceLimitError",
    "SamplingError",
    "TornCodesError",
    "ErrorBudget",
    "QString",
    "SegmentCollection",
]
