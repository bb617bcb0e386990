#!/usr/bin/env python3
"""
CLI entry point for hyperwalk.
"""
import logging
import sys
from typing import Optional

import click
from pydantic import BaseModel, ValidationError

from hyperwalk.config import get_settings
from hyperwalk.constants import EXIT_INTERNAL, EXIT_OK, EXIT_REFUSED, EXIT_USAGE
from hyperwalk.exceptions import (
    GraphError,
    InvalidUsageError,
    LevelOutOfRangeError,
    NotSelfCenteredError,
    SearchBoundError,
)
from hyperwalk.logging_context import configure_logging, run_context
from hyperwalk.models import RunConfig, SearchConfig
from hyperwalk.services import AnalysisService

logger = logging.getLogger("hyperwalk.cli")

# Errors caused by what the user typed rather than by the engine
USAGE_ERRORS = (click.UsageError, InvalidUsageError, ValidationError, LevelOutOfRangeError, SearchBoundError, GraphError)


def graph_options(func):
    """Options shared by every command that works on one graph."""
    func = click.option("-w", "--workers", type=int, default=None, help="Thread-pool width (default from HYPERWALK_WORKERS)")(func)
    func = click.option("-f", "--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Report format")(func)
    func = click.option("-L", "--max-level", type=int, default=None, help="Truncation level for infinite graphs")(func)
    func = click.option("-b", "--base", type=str, default=None, help="Base point: vertex id, word or 'x,y' key")(func)
    func = click.option("-g", "--graph", "graph", type=str, required=True, help="Graph spec, e.g. prism:6, tree:3, file:g.json")(func)
    return func


def emit(service: AnalysisService, report: BaseModel, fmt: str) -> None:
    if fmt == "json":
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(service.format_text(report))


@click.group(help="Hypergroups from random walks on distance-partitioned graphs")
@click.option("-v", "--verbose", is_flag=True, help="Log debug output to stderr")
def cli(verbose: bool):
    configure_logging("DEBUG" if verbose else get_settings().log_level)


@cli.command(help="Metrics, distance partition and convolution table for one base point")
@graph_options
def analyze(graph: str, base: Optional[str], max_level: Optional[int], fmt: str, workers: Optional[int]):
    config = RunConfig(graph=graph, base=base, max_level=max_level, format=fmt, workers=workers or get_settings().workers)
    service = AnalysisService(config.workers)
    with run_context("analyze"):
        report = service.analyze(config.graph, config.base, config.max_level)
    emit(service, report, config.format)
    return EXIT_OK


@cli.command(help="Hypergroup productivity verdict")
@graph_options
@click.option("--all-basepoints", is_flag=True, help="Classify every base point of a finite graph")
def check(graph: str, base: Optional[str], max_level: Optional[int], fmt: str, workers: Optional[int], all_basepoints: bool):
    config = RunConfig(graph=graph, base=base, max_level=max_level, format=fmt, workers=workers or get_settings().workers)
    if all_basepoints and config.base is not None and config.base != "all":
        raise click.UsageError("--all-basepoints and --base are mutually exclusive")
    everything = all_basepoints or config.base == "all"
    service = AnalysisService(config.workers)
    with run_context("check"):
        report = service.check(config.graph, None if everything else config.base, config.max_level, everything)
    emit(service, report, config.format)
    return EXIT_OK


@cli.command(help="Distance-regularity, intersection numbers and scheme identities")
@graph_options
def drg(graph: str, base: Optional[str], max_level: Optional[int], fmt: str, workers: Optional[int]):
    config = RunConfig(graph=graph, base=base, max_level=max_level, format=fmt, workers=workers or get_settings().workers)
    service = AnalysisService(config.workers)
    with run_context("drg"):
        report = service.drg(config.graph, config.base, config.max_level)
    emit(service, report, config.format)
    return EXIT_OK


@cli.command(help="Monte Carlo estimate of one convolution row")
@graph_options
@click.option("--i", "i", type=int, required=True, help="First jump length")
@click.option("--j", "j", type=int, required=True, help="Second jump length")
@click.option("-n", "--samples", type=int, default=None, help="Number of simulated walks")
@click.option("-s", "--seed", type=int, default=None, help="Random seed")
def mc(
    graph: str,
    base: Optional[str],
    max_level: Optional[int],
    fmt: str,
    workers: Optional[int],
    i: int,
    j: int,
    samples: Optional[int],
    seed: Optional[int],
):
    settings = get_settings()
    config = RunConfig(
        graph=graph,
        base=base,
        max_level=max_level,
        format=fmt,
        workers=workers or settings.workers,
        samples=settings.samples if samples is None else samples,
        seed=settings.seed if seed is None else seed,
    )
    service = AnalysisService(config.workers)
    with run_context("mc"):
        report = service.mc(config.graph, i, j, config.base, config.samples, config.seed)
    emit(service, report, config.format)
    return EXIT_OK


@cli.command(help="Exhaustive search over small connected regular graphs")
@click.option("--order", type=int, required=True, help="Number of vertices (at most 10)")
@click.option("--degree", type=int, required=True, help="Common vertex degree")
@click.option("--productive", is_flag=True, help="Keep graphs whose every base point is productive")
@click.option("--mixed", is_flag=True, help="Keep graphs with some but not all base points productive")
@click.option("-f", "--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Report format")
@click.option("-w", "--workers", type=int, default=None, help="Thread-pool width")
def search(order: int, degree: int, productive: bool, mixed: bool, fmt: str, workers: Optional[int]):
    if productive and mixed:
        raise click.UsageError("--productive and --mixed are mutually exclusive")
    config = SearchConfig(
        order=order,
        degree=degree,
        productive=productive,
        mixed=mixed,
        format=fmt,
        workers=workers or get_settings().workers,
    )
    service = AnalysisService(config.workers)
    with run_context("search"):
        report = service.search(config)
    emit(service, report, config.format)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> None:
    """Run the CLI and map errors to exit codes: 0 ok, 1 internal, 2 refused, 3 usage."""
    try:
        result = cli.main(args=argv, prog_name="hyperwalk", standalone_mode=False)
    except NotSelfCenteredError as e:
        click.echo(f"Refused: {e}", err=True)
        code = EXIT_REFUSED
    except USAGE_ERRORS as e:
        message = e.format_message() if isinstance(e, click.ClickException) else str(e)
        click.echo(f"Error: {message}", err=True)
        code = EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        code = EXIT_INTERNAL
    except Exception as e:
        logger.debug("Internal error", exc_info=True)
        click.echo(f"Internal error: {e.__class__.__name__}: {e}", err=True)
        code = EXIT_INTERNAL
    else:
        code = result if isinstance(result, int) else EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
