"""
Main CLI entry point for torn-paper coding
"""

import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ..bounds import bound_report
from ..channel.adversary import (
    STRATEGIES,
    AdversaryStrategy,
    CORRUPTION_TARGETS,
    DELETION_MODES,
    corrupt_positions,
    delete_pieces,
    tear_pieces,
)
from ..channel.trial import SweepGrid, TrialConfig, print_sweep, run_trials, sweep, write_sweep_csv
from ..coding.codec import Codeword
from ..core.config import (
    SCHEMA_VERSION,
    CodeSection,
    RobustSection,
    TornCodesConfig,
    load_code_section,
    section_from_envelope,
)
from ..core.exceptions import CorruptionError, DecodingError, ResourceLimitError, TornCodesError
from ..core.params import CodeParams
from ..core.sequences import SegmentCollection
from ..robust.redundancy import ROBUST_MODELS, decode_model, encode_model, robust_message_len
from ..utils.framing import capacity_bytes, digits_per_byte, frame_message, symbols_to_bytes
from ..utils.textio import read_codeword, read_segments, write_codeword, write_segments

# Setup rich console
console = Console()
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_UNEXPECTED, EXIT_VALIDATION, EXIT_DECODE, EXIT_IO = 0, 1, 2, 3, 4

DEFAULT_PARAMS = "q=2,n=124,k=1,lmin=15,lmax=20,f=3"


def setup_logging(verbose: bool) -> None:
    """Setup logging with rich handler"""
    level = logging.DEBUG if verbose else logging.INFO

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
    )


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (DecodingError, CorruptionError)):
        return EXIT_DECODE
    if isinstance(exc, OSError):
        return EXIT_IO
    if isinstance(exc, (ValidationError, ValueError, ResourceLimitError)):
        return EXIT_VALIDATION
    return EXIT_UNEXPECTED


def fail(exc: BaseException, action: str, verbose: bool = False) -> None:
    code = exit_code_for(exc)
    console.print(f"❌ {action} failed: {exc}", style="red")
    if isinstance(exc, DecodingError) and exc.diagnostics:
        record = {"schema": SCHEMA_VERSION, "error": str(exc), "diagnostics": exc.diagnostics}
        console.print(json.dumps(record, default=str))
    if verbose and code == EXIT_UNEXPECTED:
        console.print_exception()
    sys.exit(code)


def resolve_code(config: Optional[str], params: Optional[str]) -> CodeSection:
    if params:
        return load_code_section(params)
    if config:
        return TornCodesConfig.from_file(config).code
    return load_code_section(DEFAULT_PARAMS)


def resolve_robust(
    config: Optional[str], model: Optional[str], t: Optional[int], bec: Optional[str]
) -> RobustSection:
    base = TornCodesConfig.from_file(config).robust if config else RobustSection()
    updates = {k: v for k, v in (("model", model), ("t", t), ("bec", bec)) if v is not None}
    return RobustSection(**{**base.model_dump(), **updates})


def parse_cuts(values: Sequence[str]) -> Optional[Tuple[Tuple[int, ...], ...]]:
    if not values:
        return None
    try:
        return tuple(tuple(int(v) for v in value.split(",") if v.strip()) for value in values)
    except ValueError as exc:
        raise click.BadParameter(f"Cut lists are comma-separated integers: {exc}")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.version_option(version="0.1.0", prog_name="torn-codes")
@click.pass_context
def cli(ctx: click.Context, verbose: bool) -> None:
    """
    Codes for the adversarial torn-paper channel

    Encode data into strands that survive being torn into unordered pieces of
    length between Lmin and Lmax, simulate the channel and evaluate bounds.

    Examples:
        torn-codes encode --in data.bin --out codeword.txt
        torn-codes tear --in codeword.txt --out segments.txt --seed 7
        torn-codes decode --in segments.txt --out data.out --length 1
        torn-codes trial --model substitution --t 1 --seed 3
        torn-codes bounds --params q=2,n=1024,lmin=40,lmax=60,f=4
    """
    setup_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


_params_option = click.option(
    "--params", "-p", help="Inline parameters (q=2,n=124,lmin=15,...) or a TOML config path"
)
_config_option = click.option("--config", "-c", type=click.Path(), help="Configuration file")
_model_option = click.option("--model", type=click.Choice(ROBUST_MODELS), help="Error model")
_t_option = click.option("--t", "t", type=int, help="Error budget of the code")
_bec_option = click.option(
    "--bec",
    type=click.Choice(["auto", "interleaved_parity", "interleaved_rs"]),
    help="Burst-erasure code for the deletion model",
)


@cli.command()
@_params_option
@_config_option
@_model_option
@_t_option
@_bec_option
@click.option("--in", "in_path", required=True, type=click.Path(), help="Message file")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Codeword file")
@click.option("--acgt", is_flag=True, help="Write q=4 strands as ACGT")
@click.pass_context
def encode(
    ctx: click.Context,
    params: Optional[str],
    config: Optional[str],
    model: Optional[str],
    t: Optional[int],
    bec: Optional[str],
    in_path: str,
    out_path: str,
    acgt: bool,
) -> None:
    """Encode a binary message file into a codeword text file"""
    try:
        section = resolve_code(config, params)
        robust = resolve_robust(config, model, t, bec)
        code_params = section.derive()
        data = Path(in_path).read_bytes()
        message_len = robust_message_len(code_params, robust.t, robust.model, robust.bec)
        x, length = frame_message(data, code_params.q, message_len)
        codeword = encode_model(x, code_params, robust.model, robust.t, robust.bec)
        header = TornCodesConfig(code=section, robust=robust).envelope()
        header["framing"] = {"bytes": length, "digits_per_byte": digits_per_byte(code_params.q)}
        write_codeword(out_path, codeword.strands, header, acgt)
        console.print(
            f"✅ Encoded {length} bytes into {code_params.k} strand(s) of {code_params.n} "
            f"symbols: {out_path}",
            style="green",
        )
    except Exception as e:
        fail(e, "Encoding", ctx.obj["verbose"])


@cli.command()
@_params_option
@_config_option
@_model_option
@_t_option
@_bec_option
@click.option("--in", "in_path", required=True, type=click.Path(), help="Segments file")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Message file")
@click.option("--length", type=int, help="Original message length in bytes")
@click.pass_context
def decode(
    ctx: click.Context,
    params: Optional[str],
    config: Optional[str],
    model: Optional[str],
    t: Optional[int],
    bec: Optional[str],
    in_path: str,
    out_path: str,
    length: Optional[int],
) -> None:
    """Decode a segments file back into the message file"""
    try:
        code_params = resolve_code(config, params).derive()
        robust = resolve_robust(config, model, t, bec)
        segments = read_segments(in_path, code_params.q)
        received = SegmentCollection.of(segments)
        x = decode_model(received, code_params, robust.model, robust.t, robust.bec)
        if length is None:
            length = capacity_bytes(code_params.q, len(x))
        Path(out_path).write_bytes(symbols_to_bytes(x, length))
        console.print(
            f"✅ Decoded {len(segments)} segments into {length} bytes: {out_path}", style="green"
        )
    except Exception as e:
        fail(e, "Decoding", ctx.obj["verbose"])


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(), help="Codeword file")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Segments file")
@click.option("--strategy", type=click.Choice(STRATEGIES), default="uniform_random_cuts")
@click.option("--seed", type=int, default=0, help="Channel seed")
@click.option("--cuts", multiple=True, help="Scripted piece lengths per strand, e.g. 15,20,15")
@click.option("--t-sub", type=int, default=0, help="Symbols to substitute")
@click.option("--target", type=click.Choice(CORRUPTION_TARGETS), default="random")
@click.option("--t-del", type=int, default=0, help="Segments to delete")
@click.option("--deletion-mode", type=click.Choice(DELETION_MODES), default="random")
@click.pass_context
def tear(
    ctx: click.Context,
    in_path: str,
    out_path: str,
    strategy: str,
    seed: int,
    cuts: List[str],
    t_sub: int,
    target: str,
    t_del: int,
    deletion_mode: str,
) -> None:
    """Pass a codeword file through the adversarial channel"""
    try:
        header, strands = read_codeword(in_path)
        code_params: CodeParams = section_from_envelope(header).derive()
        adversary = AdversaryStrategy(
            kind=strategy,
            seed=seed,
            cuts=parse_cuts(cuts),
            target=target,
            deletion_mode=deletion_mode,
        )
        codeword = Codeword(tuple(strands), code_params)
        codeword, positions = corrupt_positions(codeword, t_sub, seed, target)
        torn = tear_pieces(codeword, adversary)
        torn, removed = delete_pieces(torn, t_del, seed, deletion_mode)
        count = write_segments(out_path, torn.shuffled)
        console.print(
            f"✅ Wrote {count} segments ({len(positions)} substitutions, "
            f"{len(removed)} deletions): {out_path}",
            style="green",
        )
    except Exception as e:
        fail(e, "Tearing", ctx.obj["verbose"])


@cli.command()
@_params_option
@_config_option
@_model_option
@_t_option
@_bec_option
@click.option("--noise", type=int, help="Errors applied per trial (default: t)")
@click.option("--strategy", type=click.Choice(STRATEGIES), help="Segmentation strategy")
@click.option("--cuts", multiple=True, help="Scripted piece lengths per strand")
@click.option("--target", type=click.Choice(CORRUPTION_TARGETS), help="Substitution target")
@click.option("--deletion-mode", type=click.Choice(DELETION_MODES), help="Deletion mode")
@click.option("--seed", type=int, help="Seed of the first trial")
@click.option("--trials", type=int, help="Number of trials")
@click.option("--max-workers", type=int, help="Worker threads")
@click.option("--out", "out_path", type=click.Path(), help="JSON lines report file")
@click.pass_context
def trial(
    ctx: click.Context,
    params: Optional[str],
    config: Optional[str],
    model: Optional[str],
    t: Optional[int],
    bec: Optional[str],
    noise: Optional[int],
    strategy: Optional[str],
    cuts: List[str],
    target: Optional[str],
    deletion_mode: Optional[str],
    seed: Optional[int],
    trials: Optional[int],
    max_workers: Optional[int],
    out_path: Optional[str],
) -> None:
    """Run seeded encode, tear and decode experiments"""
    try:
        base = TornCodesConfig.from_file(config) if config else TornCodesConfig()
        code_params = resolve_code(config, params).derive()
        robust = resolve_robust(config, model, t, bec)
        channel = base.channel
        adversary = AdversaryStrategy(
            kind=strategy or channel.strategy,
            cuts=parse_cuts(cuts) or channel.cuts,
            target=target or channel.target,
            deletion_mode=deletion_mode or channel.deletion_mode,
        )
        first = channel.seed if seed is None else seed
        count = trials or base.run.trials
        configs = [
            TrialConfig(
                params=code_params,
                model=robust.model,
                t=robust.t,
                noise=noise,
                bec=robust.bec,
                strategy=adversary,
                seed=first + number,
            )
            for number in range(count)
        ]
        reports = run_trials(configs, max_workers or base.run.max_workers)
    except Exception as e:
        fail(e, "Trial", ctx.obj["verbose"])
        return

    lines = [report.to_json_line() for report in reports]
    if out_path:
        try:
            Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as e:
            fail(e, "Writing the report")
    else:
        click.echo("\n".join(lines))
    if len(reports) == 1:
        reports[0].print_summary(console)
    successes = sum(1 for r in reports if r.success)
    style = "green" if successes == len(reports) else "red"
    console.print(f"{successes}/{len(reports)} trials decoded exactly", style=style)
    if successes != len(reports):
        sys.exit(EXIT_DECODE)


@cli.command(name="sweep")
@click.option("--q", type=int, default=2, help="Alphabet size")
@click.option("--k", type=int, default=1, help="Number of strands")
@click.option("--n", "n_values", type=int, multiple=True, help="Strand lengths")
@click.option("--lmin", "lmin_values", type=int, multiple=True, help="Minimum segment lengths")
@click.option("--f", "f_values", type=int, multiple=True, help="Run-length parameters")
@click.option("--t", "t_values", type=int, multiple=True, help="Error budgets")
@click.option("--strategy", "strategies", type=click.Choice(STRATEGIES), multiple=True)
@click.option("--model", type=click.Choice(ROBUST_MODELS), default="none")
@click.option("--lmax-ratio", type=float, default=4 / 3, help="Lmax = ratio * Lmin")
@click.option("--trials", type=int, default=10, help="Trials per grid point")
@click.option("--seed", type=int, default=0, help="Sweep seed")
@click.option("--max-workers", type=int, default=1, help="Worker threads")
@click.option("--out", "out_path", type=click.Path(), help="CSV output file")
@click.pass_context
def sweep_command(
    ctx: click.Context,
    q: int,
    k: int,
    n_values: Tuple[int, ...],
    lmin_values: Tuple[int, ...],
    f_values: Tuple[int, ...],
    t_values: Tuple[int, ...],
    strategies: Tuple[str, ...],
    model: str,
    lmax_ratio: float,
    trials: int,
    seed: int,
    max_workers: int,
    out_path: Optional[str],
) -> None:
    """Success rates and redundancies over a parameter grid"""
    try:
        values = {
            "n": list(n_values),
            "lmin": list(lmin_values),
            "f": list(f_values),
            "t": list(t_values),
            "strategies": list(strategies),
        }
        grid = SweepGrid(
            q=q,
            k=k,
            model=model,
            lmax_ratio=lmax_ratio,
            trials=trials,
            seed=seed,
            **{key: value for key, value in values.items() if value},
        )
        with console.status(f"Running {len(grid.points())} grid points..."):
            rows = sweep(grid, max_workers)
        if out_path:
            write_sweep_csv(rows, Path(out_path))
            console.print(f"✅ Wrote {len(rows)} rows: {out_path}", style="green")
        print_sweep(rows, console)
    except Exception as e:
        fail(e, "Sweep", ctx.obj["verbose"])


@cli.command()
@_params_option
@_config_option
@click.option("--t", "t", type=int, default=0, help="Error budget for the robust bounds")
@click.option("--pilot-m", type=int, help="Interleave count for the pilot rates")
@click.option("--delta", type=float, default=1.0, help="Pilot order slack")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@click.option("--out", "out_path", type=click.Path(), help="Write the JSON report here")
@click.pass_context
def bounds(
    ctx: click.Context,
    params: Optional[str],
    config: Optional[str],
    t: int,
    pilot_m: Optional[int],
    delta: float,
    fmt: str,
    out_path: Optional[str],
) -> None:
    """Evaluate redundancy and rate bounds for one parameter set"""
    try:
        code_params = resolve_code(config, params).derive()
        report = bound_report(code_params, t=t, pilot_m=pilot_m, delta=delta)
        if out_path:
            Path(out_path).write_text(report.to_json(), encoding="utf-8")
        if fmt == "json":
            click.echo(report.to_json())
        else:
            report.print_summary(console)
    except Exception as e:
        fail(e, "Bound evaluation", ctx.obj["verbose"])


@cli.command()
@click.argument("output_path", type=click.Path())
@click.option("--params", "-p", help="Inline code parameters to store")
@click.option("--model", type=click.Choice(ROBUST_MODELS), default="none")
@click.option("--t", "t", type=int, default=0)
def init_config(output_path: str, params: Optional[str], model: str, t: int) -> None:
    """Initialize a configuration file with default settings"""
    try:
        config_path = Path(output_path)

        if config_path.exists():
            if not click.confirm(f"Configuration file {config_path} already exists. Overwrite?"):
                console.print("❌ Configuration file creation cancelled.", style="yellow")
                return

        default_config = TornCodesConfig(
            code=load_code_section(params or DEFAULT_PARAMS),
            robust=RobustSection(model=model, t=t),
        )
        default_config.code.derive()
        default_config.save_to_file(config_path)

        console.print(f"✅ Configuration file created: {config_path}", style="green")
    except Exception as e:
        fail(e, "Creating the configuration file")


@cli.command()
@_params_option
@_config_option
def info(params: Optional[str], config: Optional[str]) -> None:
    """Show the derived parameters of a code"""
    try:
        code_params = resolve_code(config, params).derive()
    except Exception as e:
        fail(e, "Parameter derivation")
        return
    table = Table(title="Derived parameters")
    table.add_column("Field", style="cyan")
    table.add_column("Value", justify="right")
    for name, value in code_params.to_record().items():
        table.add_row(name, str(value))
    table.add_row("rll", code_params.rll)
    table.add_row("message_len", str(code_params.message_len))
    console.print(table)


def main() -> None:
    """Main entry point for the CLI"""
    try:
        cli(obj={})
    except TornCodesError as e:
        fail(e, "torn-codes")


if __name__ == "__main__":
    main()
