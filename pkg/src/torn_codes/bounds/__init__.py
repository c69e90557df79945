"""
Redundancy and rate bound evaluators
"""

from .evaluators import (
    BoundReport,
    BoundValue,
    bound_report,
    counting_lower_bound,
    deletion_delta_t1,
    deletion_delta_t2,
    implementation_red,
    lower_bound_error_term,
    marker_code_redundancy,
    marker_code_redundancy_sqrt,
    pilot_order_local,
    pilot_order_union,
    pilot_rate_local,
    pilot_rate_union,
    rate_cap,
    redundancy_lower_bound,
    stuffing_adjusted_red,
    substitution_code_redundancy,
)

__all__ = [
    "BoundReport",
    "BoundValue",
    "bound_report",
    "counting_lower_bound",
    "deletion_delta_t1",
    "deletion_delta_t2",
    "implementation_red",
    "lower_bound_error_term",
    "marker_code_redundancy",
    "marker_code_redundancy_sqrt",
    "pilot_order_local",
    "pilot_order_union",
    "pilot_rate_local",
    "pilot_rate_union",
    "rate_cap",
    "redundancy_lower_bound",
    "stuffing_adjusted_red",
    "substitution_code_redundancy",
]
