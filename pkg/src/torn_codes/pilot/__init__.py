"""
Pilot-interleaved codes located through a de Bruijn pilot
"""

from .code import (
    PilotCode,
    PilotConfig,
    deinterleave,
    perp,
    pilot_interleave,
    pilot_locate,
    sample_Op,
)
from .debruijn import de_bruijn

__all__ = [
    "PilotCode",
    "PilotConfig",
    "deinterleave",
    "perp",
    "pilot_interleave",
    "pilot_locate",
    "sample_Op",
    "de_bruijn",
]
