"""
Adversarial channel simulation and seeded trials
"""

from .adversary import AdversaryStrategy, corrupt, delete_segments, tear
from .trial import SweepGrid, SweepRow, TrialConfig, TrialReport, run_trial, run_trials, sweep

__all__ = [
    "AdversaryStrategy",
    "corrupt",
    "delete_segments",
    "tear",
    "SweepGrid",
    "SweepRow",
    "TrialConfig",
    "TrialReport",
    "run_trial",
    "run_trials",
    "sweep",
]
