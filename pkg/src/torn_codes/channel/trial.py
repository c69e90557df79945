"""
Seeded end-to-end trials and parameter sweeps

A trial draws a message, encodes it, passes the codeword through the
adversarial channel and decodes. Everything random is derived from the trial
seed, so a report carries all it needs to be replayed.
"""

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from rich.console import Console
from rich.table import Table

from ..coding.codec import decode as noiseless_decode
from ..core.exceptions import DecodingError, TornCodesError
from ..core.params import CodeParams, derive_params
from ..core.sequences import QString
from ..robust.deletion import decode_with_bursts
from ..robust.redundancy import ROBUST_MODELS, encode_model, robust_message_len
from ..robust.substitution import decode_with_state
from .adversary import AdversaryStrategy, corrupt_positions, delete_pieces, stage_rng, tear_pieces

logger = logging.getLogger(__name__)

MESSAGE_STAGE = 4
SWEEP_COLUMNS = ("n", "Lmin", "f", "t", "strategy", "trials", "successes", "redundancy", "rate")


class TrialConfig(BaseModel):
    """One seeded experiment"""

    model_config = ConfigDict(frozen=True)

    params: CodeParams
    model: str = Field(default="none", description="none, substitution or deletion")
    t: int = Field(default=0, description="Error budget the code is built for")
    noise: Optional[int] = Field(default=None, description="Errors applied; defaults to t")
    bec: str = Field(default="auto", description="Burst-erasure code for the deletion model")
    strategy: AdversaryStrategy = Field(default_factory=AdversaryStrategy)
    seed: int = Field(default=0, description="Trial seed")

    @field_validator("model")
    @classmethod
    def validate_model(cls, v: str) -> str:
        if v not in ROBUST_MODELS:
            raise ValueError(f"Error model must be one of: {list(ROBUST_MODELS)}")
        return v

    @property
    def applied(self) -> int:
        if self.model == "none":
            return 0
        return self.t if self.noise is None else self.noise


class TrialReport(BaseModel):
    """Outcome and diagnostics of one trial"""

    schema_version: int = Field(default=1, alias="schema")
    seed: int
    strategy: Dict[str, Any]
    params: Dict[str, int]
    rll: str = "stuffing"
    model: str
    t: int
    noise: int = 0
    bec: str = "auto"
    success: bool = False
    equal: bool = False
    segments: int = 0
    collisions: Optional[int] = None
    erasures: Optional[int] = None
    wrong_blocks: Optional[int] = None
    guarantee_holds: Optional[bool] = None
    corrupted_positions: List[int] = Field(default_factory=list)
    deleted: List[Tuple[int, int]] = Field(default_factory=list)
    bursts: List[Tuple[int, int]] = Field(default_factory=list)
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    errors: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    model_config = ConfigDict(populate_by_name=True)

    def add_error(self, error: str) -> None:
        self.errors.append(error)
        logger.error(error)

    def add_warning(self, warning: str) -> None:
        self.warnings.append(warning)
        logger.warning(warning)

    def to_json_line(self) -> str:
        return self.model_dump_json(by_alias=True)

    def to_config(self) -> TrialConfig:
        """Configuration that replays this trial"""
        return TrialConfig(
            params=CodeParams.from_record(self.params, self.rll),
            model=self.model,
            t=self.t,
            noise=self.noise,
            bec=self.bec,
            strategy=AdversaryStrategy(**self.strategy),
            seed=self.seed,
        )

    def print_summary(self, console: Optional[Console] = None) -> None:
        console = console or Console()
        table = Table(title=f"Trial seed={self.seed}")
        table.add_column("Field", style="cyan")
        table.add_column("Value")
        status = "[green]success[/green]" if self.success else "[red]failure[/red]"
        table.add_row("Result", status)
        table.add_row("Model", f"{self.model} (t={self.t}, applied={self.noise})")
        table.add_row("Strategy", str(self.strategy.get("kind")))
        table.add_row("Segments", str(self.segments))
        if self.erasures is not None:
            table.add_row("Erasures e / wrong blocks s", f"{self.erasures} / {self.wrong_blocks}")
        if self.bursts:
            table.add_row("Erasure bursts", str(self.bursts))
        console.print(table)
        for error in self.errors:
            console.print(f"❌ {error}", style="red")
        for warning in self.warnings:
            console.print(f"⚠️  {warning}", style="yellow")


def random_message(length: int, q: int, seed: int) -> QString:
    rng = stage_rng(seed, MESSAGE_STAGE)
    return QString.trusted(tuple(int(v) for v in rng.integers(0, q, size=length)), q)


def run_trial(config: TrialConfig) -> TrialReport:
    params = config.params
    strategy = config.strategy.model_copy(update={"seed": config.seed})
    report = TrialReport(
        seed=config.seed,
        strategy=strategy.model_dump(),
        params=params.to_record(),
        rll=params.rll,
        model=config.model,
        t=config.t,
        noise=config.applied,
        bec=config.bec,
    )
    budget = 2 * min(config.applied, config.t)
    try:
        x = random_message(
            robust_message_len(params, config.t, config.model, config.bec), params.q, config.seed
        )
        z = encode_model(x, params, config.model, config.t, config.bec)
        sent = z
        if config.model == "substitution":
            sent, positions = corrupt_positions(z, config.applied, config.seed, strategy.target)
            report.corrupted_positions = list(positions)
        torn = tear_pieces(sent, strategy)
        if config.model == "deletion":
            torn, removed = delete_pieces(
                torn, config.applied, config.seed, strategy.deletion_mode
            )
            report.deleted = [(p.strand, p.start) for p in removed]
        received = torn.segments
        report.segments = len(received)

        if config.model == "substitution":
            outcome = decode_with_state(received, params, config.t)
            state = outcome.state
            report.collisions = state.collisions
            report.erasures = outcome.erasures
            report.wrong_blocks = state.count_wrong_blocks(z.symbols)
            report.guarantee_holds = 2 * report.wrong_blocks + report.erasures <= budget
            decoded = outcome.message
        elif config.model == "deletion":
            result = decode_with_bursts(received, params, config.t, config.bec)
            report.bursts = result.bursts
            decoded = result.message
        else:
            decoded = noiseless_decode(received, params)
        report.equal = decoded == x
        report.success = report.equal
        if not report.equal:
            report.add_error("Decoded message differs from the original")
    except DecodingError as exc:
        report.diagnostics = exc.diagnostics
        report.add_error(f"Decoding failed: {exc}")
    except TornCodesError as exc:
        report.add_error(f"Trial could not run: {exc}")
    if report.guarantee_holds is False and config.applied <= config.t:
        report.add_warning(
            f"2s + e = {2 * (report.wrong_blocks or 0) + (report.erasures or 0)} "
            f"exceeds 2 min(applied, t) = {budget}"
        )
    logger.debug(f"Trial seed={config.seed} success={report.success}")
    return report


def run_trials(configs: Iterable[TrialConfig], max_workers: int = 1) -> List[TrialReport]:
    """Run trials, concurrently when asked; reports come back sorted by seed"""
    configs = list(configs)
    if max_workers <= 1:
        reports = [run_trial(config) for config in configs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            reports = list(executor.map(run_trial, configs))
    return sorted(reports, key=lambda r: (r.seed, r.strategy.get("kind", "")))


def derive_seed(base: int, *path: int) -> int:
    """Independent 63-bit seed for a position in a sweep"""
    state = np.random.SeedSequence([base, *path]).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


class SweepGrid(BaseModel):
    """Grid of code parameters and strategies"""

    q: int = 2
    k: int = 1
    n: List[int] = Field(default_factory=lambda: [124])
    lmin: List[int] = Field(default_factory=lambda: [15])
    f: List[int] = Field(default_factory=lambda: [3])
    t: List[int] = Field(default_factory=lambda: [0])
    strategies: List[str] = Field(default_factory=lambda: ["uniform_random_cuts"])
    model: str = "none"
    bec: str = "auto"
    lmax_ratio: float = Field(default=4 / 3, description="Lmax = min(n, floor(ratio * Lmin))")
    rll: str = "stuffing"
    trials: int = 10
    seed: int = 0

    @field_validator("model")
    @classmethod
    def validate_model(cls, v: str) -> str:
        if v not in ROBUST_MODELS:
            raise ValueError(f"Error model must be one of: {list(ROBUST_MODELS)}")
        return v

    @field_validator("lmax_ratio")
    @classmethod
    def validate_ratio(cls, v: float) -> float:
        if v < 1:
            raise ValueError("Lmax ratio must be at least 1")
        return v

    def points(self) -> List[Tuple[int, int, int, int, str]]:
        return [
            (n, lmin, f, t, strategy)
            for n in self.n
            for lmin in self.lmin
            for f in self.f
            for t in self.t
            for strategy in self.strategies
        ]


class SweepRow(BaseModel):
    n: int
    lmin: int = Field(alias="Lmin")
    f: int
    t: int
    strategy: str
    trials: int
    successes: int
    redundancy: int
    rate: float

    model_config = ConfigDict(populate_by_name=True)

    def as_csv(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)


def sweep(grid: SweepGrid, max_workers: int = 1) -> List[SweepRow]:
    rows: List[SweepRow] = []
    for number, (n, lmin, f, t, strategy) in enumerate(grid.points()):
        lmax = min(n, int(grid.lmax_ratio * lmin))
        try:
            params = derive_params(grid.q, n, grid.k, lmin, lmax, f, grid.rll)
            message_len = robust_message_len(params, t, grid.model, grid.bec)
            adversary = AdversaryStrategy(kind=strategy)
        except (TornCodesError, ValueError) as exc:
            logger.warning(f"Skipping grid point n={n}, Lmin={lmin}, f={f}, t={t}: {exc}")
            continue
        configs = [
            TrialConfig(
                params=params,
                model=grid.model,
                t=t,
                bec=grid.bec,
                strategy=adversary,
                seed=derive_seed(grid.seed, number, trial),
            )
            for trial in range(grid.trials)
        ]
        reports = run_trials(configs, max_workers)
        redundancy = params.codeword_len - message_len
        rows.append(
            SweepRow(
                n=n,
                Lmin=lmin,
                f=f,
                t=t,
                strategy=strategy,
                trials=len(reports),
                successes=sum(1 for r in reports if r.success),
                redundancy=redundancy,
                rate=message_len / params.codeword_len,
            )
        )
        logger.info(f"Grid point n={n}, Lmin={lmin}, f={f}, t={t}, {strategy}: done")
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=SWEEP_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_csv())


def print_sweep(rows: Sequence[SweepRow], console: Optional[Console] = None) -> None:
    console = console or Console()
    table = Table(title="Sweep")
    for column in SWEEP_COLUMNS:
        table.add_column(column, justify="right" if column != "strategy" else "left")
    for row in rows:
        values = row.as_csv()
        values["rate"] = f"{row.rate:.4f}"
        table.add_row(*(str(values[c]) for c in SWEEP_COLUMNS))
    console.print(table)
