"""
Numeric evaluators for redundancy and rate bounds

All logarithms are base q. Formulas that hold only up to o(1) or O(.) terms
are evaluated without them; the dropped term is reported as its own value
and never added in.
"""

import logging
import math
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field
from rich.console import Console
from rich.table import Table

from ..coding.codec import code_redundancy
from ..core.exceptions import ParameterError, ResourceLimitError
from ..core.params import CodeParams, asymptotic_a
from ..robust.deletion import hat_lmax

logger = logging.getLogger(__name__)

MAX_COUNTING_TERMS = 1 << 16

BoundKind = Literal["exact", "asymptotic"]


def log_q(value: float, q: int = 2) -> float:
    return math.log(value) / math.log(q)


def _positive(**values: float) -> None:
    for name, value in values.items():
        if value <= 0:
            raise ParameterError(f"{name} must be positive, got {value}")


def redundancy_lower_bound(n: int, k: int, a: float, q: int = 2) -> float:
    """nk(1/a - a log(k)/n), the finite part of the redundancy lower bound"""
    _positive(n=n, k=k, a=a)
    if a < 1:
        raise ParameterError(f"a >= 1 violated: a = {a}")
    return n * k * (1 / a - a * log_q(k, q) / n)


def lower_bound_error_term(n: int, k: int, q: int = 2) -> float:
    """nk log log(nk) / log(nk), the order of the dropped term"""
    _positive(n=n, k=k)
    log_nk = log_q(n * k, q)
    if log_nk <= 1:
        return math.nan
    return n * k * log_q(log_nk, q) / log_nk


def _log_binom(top_extra: int, base: int, q: int) -> float:
    """log_q C(base + top_extra, top_extra) for a small top_extra and any base"""
    if top_extra > MAX_COUNTING_TERMS:
        raise ResourceLimitError(
            f"Counting check needs {top_extra} terms, budget is {MAX_COUNTING_TERMS}"
        )
    total = sum(math.log(base + i) for i in range(1, top_extra + 1))
    return (total - math.lgamma(top_extra + 1)) / math.log(q)


def counting_lower_bound(n: int, k: int, lmin: int, q: int = 2) -> float:
    """log|X| - log C(k ceil(n/Lmin) + q^Lmin, q^Lmin), before simplification

    |X| counts multisets of k strands of length n; the binomial bounds the
    number of distinct segment multisets an adversarial tearing can leave.
    """
    _positive(n=n, k=k, lmin=lmin)
    pieces = k * -(-n // lmin)
    total = _log_binom(k, q**n - 1, q)
    return total - _log_binom(pieces, q**lmin, q)


def rate_cap(a: float) -> float:
    """1 - 1/a, the asymptotic rate cap"""
    if a < 1:
        raise ParameterError(f"a >= 1 violated: a = {a}")
    return 1 - 1 / a


def marker_code_redundancy(n: int, a: float, f: int, q: int = 2, k: int = 1) -> float:
    """k (n/a)(1 + f/log(nk) + 1/f) with the o(1) term dropped"""
    _positive(n=n, a=a, k=k)
    if f < 2:
        raise ParameterError(f"f >= 2 violated: f = {f}")
    return k * n / a * (1 + f / log_q(n * k, q) + 1 / f)


def marker_code_redundancy_sqrt(n: int, a: float, q: int = 2, k: int = 1) -> float:
    """The same bound at f = sqrt(log n): k (n/a)(1 + 2/sqrt(log(nk)))"""
    _positive(n=n, a=a, k=k)
    return k * n / a * (1 + 2 / math.sqrt(log_q(n * k, q)))


def implementation_red(params: CodeParams) -> int:
    """k((n mod Lmin) + Lmin + K(Lmin - m)), exact for the implemented code"""
    return params.k * (
        params.tail_len
        + params.lmin
        + params.num_blocks * (params.lmin - params.payload_len)
    )


def stuffing_adjusted_red(params: CodeParams) -> int:
    """Redundancy of the construction with 1-stuffed payload blocks"""
    overhead = params.skeleton_len + -(-params.block_len // params.f)
    return params.k * (params.tail_len + params.lmin + params.num_blocks * overhead)


def pilot_order_union(n: int, pilot_m: int, delta: float, q: int = 2) -> int:
    """s = ceil((2 + delta) log(n/M))"""
    _positive(n=n, pilot_m=pilot_m, delta=delta)
    return math.ceil((2 + delta) * log_q(n / pilot_m, q))


def pilot_rate_union(n: int, pilot_m: int, delta: float) -> float:
    """1 - 1/M - (M-1)L^-delta / (n(1 - L^-delta)) with L = n/M"""
    _positive(n=n, pilot_m=pilot_m, delta=delta)
    stream = n / pilot_m
    if stream <= 1:
        raise ParameterError(f"n/M > 1 violated: n/M = {stream}")
    shrink = stream ** (-delta)
    return 1 - 1 / pilot_m - (pilot_m - 1) * shrink / (n * (1 - shrink))


def pilot_order_local(n: int, pilot_m: int, q: int = 2) -> int:
    """s = ceil(log L + log log L + log(3e)) with L = n/M"""
    _positive(n=n, pilot_m=pilot_m)
    log_stream = log_q(n / pilot_m, q)
    if log_stream <= 0:
        raise ParameterError(f"n/M > 1 violated: n/M = {n / pilot_m}")
    return math.ceil(log_stream + log_q(log_stream, q) + log_q(3 * math.e, q))


def pilot_rate_local(n: int, pilot_m: int, q: int = 2) -> float:
    """(1 - 1/M)(1 - log(e) / (2s)) with the order s of the dependency-graph regime"""
    s = pilot_order_local(n, pilot_m, q)
    return (1 - 1 / pilot_m) * (1 - log_q(math.e, q) / (2 * s))


def substitution_code_redundancy(n: int, a: float, t: int, q: int = 2) -> float:
    """(n/a)(1 + 2/sqrt(log n)) + 2t((a-1) log n - 2 sqrt(log n))"""
    _positive(n=n, a=a)
    log_n = log_q(n, q)
    root = math.sqrt(log_n)
    return n / a * (1 + 2 / root) + 2 * t * ((a - 1) * log_n - 2 * root)


def deletion_delta_t1(params: CodeParams) -> float:
    """hat(Lmax) f/(f-1), extra redundancy for one deleted segment"""
    f = params.f
    return hat_lmax(params) * f / (f - 1)


def deletion_delta_t2(params: CodeParams) -> float:
    """(hat(Lmax) + log n) f/(f-1), extra redundancy for two deleted segments"""
    f = params.f
    return (hat_lmax(params) + log_q(params.n, params.q)) * f / (f - 1)


class BoundValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    value: float
    kind: BoundKind
    note: str = ""


class BoundReport(BaseModel):
    """Bound evaluations for one parameter set"""

    schema_version: int = Field(default=1, alias="schema")
    params: Dict[str, int] = Field(description="Derived parameter record")
    rll: str = Field(default="stuffing")
    a: float = Field(description="Lmin / log_q(nk)")
    t: int = Field(default=0, description="Error budget used by the robust bounds")
    values: List[BoundValue] = Field(default_factory=list)

    model_config = ConfigDict(populate_by_name=True)

    def add(self, name: str, value: float, kind: BoundKind, note: str = "") -> None:
        self.values.append(BoundValue(name=name, value=value, kind=kind, note=note))

    def get(self, name: str) -> Optional[BoundValue]:
        return next((v for v in self.values if v.name == name), None)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def print_summary(self, console: Optional[Console] = None) -> None:
        console = console or Console()
        table = Table(title=f"Bounds (a = {self.a:.3f}, t = {self.t})")
        table.add_column("Bound", style="cyan")
        table.add_column("Value", justify="right")
        table.add_column("Kind")
        table.add_column("Note", style="dim")
        for value in self.values:
            style = "green" if value.kind == "exact" else "yellow"
            table.add_row(
                value.name, f"{value.value:.4f}", f"[{style}]{value.kind}[/{style}]", value.note
            )
        console.print(table)


def bound_report(
    params: CodeParams,
    t: int = 0,
    pilot_m: Optional[int] = None,
    delta: float = 1.0,
) -> BoundReport:
    """Evaluate every bound that applies to `params`"""
    a = asymptotic_a(params)
    n, k, q = params.n, params.k, params.q
    report = BoundReport(params=params.to_record(), rll=params.rll, a=a, t=t)

    red = implementation_red(params)
    if red != code_redundancy(params):
        logger.warning(f"Redundancy decomposition {red} disagrees with the codec")
    report.add("implementation_red", red, "exact", "k((n mod Lmin) + Lmin + K(Lmin - m))")
    report.add("implementation_rate", 1 - red / (n * k), "exact")
    report.add("stuffing_adjusted_red", stuffing_adjusted_red(params), "exact")

    if a >= 1:
        lower = redundancy_lower_bound(n, k, a, q)
        report.add("redundancy_lower_bound", lower, "asymptotic", "O term dropped")
        report.add("rate_cap", rate_cap(a), "asymptotic", "o(1) dropped")
    else:
        logger.warning(f"a = {a:.3f} < 1; skipping the lower bound and rate cap")
    report.add(
        "lower_bound_error_term",
        lower_bound_error_term(n, k, q),
        "asymptotic",
        "order of the O term",
    )
    try:
        report.add("counting_lower_bound", counting_lower_bound(n, k, params.lmin, q), "exact")
    except ResourceLimitError as exc:
        logger.info(f"Skipping counting check: {exc}")

    upper = marker_code_redundancy(n, a, params.f, q, k)
    report.add("marker_code_redundancy", upper, "asymptotic", "o(1) dropped")
    upper_sqrt = marker_code_redundancy_sqrt(n, a, q, k)
    report.add("marker_code_redundancy_sqrt", upper_sqrt, "asymptotic", "f = sqrt(log n)")

    if t:
        report.add(
            "substitution_code_redundancy",
            substitution_code_redundancy(n, a, t, q),
            "asymptotic",
            "o terms dropped",
        )
        if t == 1:
            report.add("deletion_delta", deletion_delta_t1(params), "asymptotic")
        elif t == 2:
            report.add("deletion_delta", deletion_delta_t2(params), "asymptotic")

    if pilot_m:
        report.add(
            "pilot_rate_union",
            pilot_rate_union(n, pilot_m, delta),
            "exact",
            f"s = {pilot_order_union(n, pilot_m, delta, q)}",
        )
        report.add(
            "pilot_rate_local",
            pilot_rate_local(n, pilot_m, q),
            "asymptotic",
            f"s = {pilot_order_local(n, pilot_m, q)}",
        )
    logger.debug(f"Evaluated {len(report.values)} bounds")
    return report
