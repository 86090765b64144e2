"""
CLI entry point for SNC Lab.

This module uses the `click` library to expose the checks of PairLab,
the fixtures and the search harness as command-line commands.

Can be run directly using:
    python -m snc_lab

Exit codes: 0 when the checked property holds, 1 when it fails or a
counterexample is found, 2 on malformed input or usage errors.
"""

import functools
import json
from pathlib import Path
from typing import Optional

import click
from loguru import logger

from snc_lab import PairLab
from snc_lab.fixtures import FIXTURE_IDS, load_fixture, verify_fixture
from snc_lab.pair_properties import InequalityReport, Variant
from snc_lab.search import EXHAUSTIVE, RANDOM, HypothesisMode, SearchConfig, run_search
from snc_lab.utils.errors import (
    DensityNotFoundError,
    DimensionError,
    DocumentError,
    PreconditionError,
    SNCLabError,
    TheoremViolatedError,
)
from snc_lab.utils.logging_config import enable_debug_logging
from snc_lab.utils.rationals import format_rational


def common_options(func):
    """Add ``--format`` and ``--debug`` to a command."""

    @click.option(
        "--format",
        "output_format",
        type=click.Choice(["text", "json"]),
        default="text",
        envvar="SNC_LAB_FORMAT",
        show_default=True,
        help="Output format (or set SNC_LAB_FORMAT env var)",
    )
    @click.option(
        "--debug/--no-debug",
        default=False,
        help="Enable debug logging [default: disabled]",
    )
    @functools.wraps(func)
    def wrapper(*args, output_format, debug, **kwargs):
        if debug:
            enable_debug_logging()
        try:
            return func(*args, output_format=output_format, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as e:
            logger.exception(f"An unexpected error occurred: {e}")
            click.echo(f"Error: {e}", err=True)
            raise click.Abort()

    return wrapper


def load_lab(path: str) -> PairLab:
    """
    Reads a pair document and returns a PairLab.
    Input problems become click.UsageError so they exit with code 2.
    """
    try:
        return PairLab.from_file(path)
    except DocumentError as e:
        logger.error(f"Malformed document {path}: {e}")
        raise click.UsageError(f"{path}: {e}")
    except (DimensionError, PreconditionError) as e:
        logger.error(f"Invalid instance in {path}: {e}")
        raise click.UsageError(f"{path}: {e}")
    except OSError as e:
        raise click.UsageError(f"Cannot read {path}: {e}")


def emit(output_format: str, data: dict, text: str) -> None:
    if output_format == "json":
        click.echo(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        click.echo(text)


def finish(ok: bool) -> None:
    click.get_current_context().exit(0 if ok else 1)


def report_text(report: InequalityReport, title: str) -> str:
    lines = [f"--- {title} ({report.variant.value}, {'weighted' if report.weighted else 'unweighted'}) ---"]
    for record in report.records:
        mark = "ok  " if record.satisfied else "FAIL"
        lines.append(
            f"  [{mark}] v{record.vertex + 1}: lhs {format_rational(record.lhs)}"
            f"  rhs {format_rational(record.rhs)}  margin {format_rational(record.margin)}"
        )
    satisfying = [v + 1 for v in report.satisfying_vertices]
    lines.append(f"Satisfying vertices: {satisfying if satisfying else 'none'}")
    return "\n".join(lines)


def write_or_echo(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Wrote {output}")
    else:
        click.echo(text)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(PairLab.VERSION, prog_name="snc-lab")
def cli():
    """SNC Lab - exact checks around the second neighbourhood conjecture for digraph pairs."""
    pass


@cli.group()
def fixtures():
    """The two weighted 6-vertex counterexamples."""
    pass


@fixtures.command("verify")
@click.argument("fixture_id", type=click.Choice([str(i) for i in FIXTURE_IDS]))
@common_options
def fixtures_verify(fixture_id, output_format):
    """Re-derive every claim about fixture FIXTURE_ID from its table."""
    result = verify_fixture(int(fixture_id))
    emit(output_format, result.to_dict(), result.summary())
    finish(result.ok)


@fixtures.command("export")
@click.argument("fixture_id", type=click.Choice([str(i) for i in FIXTURE_IDS]))
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to FILE instead of stdout")
@common_options
def fixtures_export(fixture_id, output, output_format):
    """Write fixture FIXTURE_ID as a pair document."""
    write_or_echo(load_fixture(int(fixture_id)).to_document().to_json(), output)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--variant",
    type=click.Choice([Variant.PRODUCT.value, Variant.UNION.value]),
    default=Variant.UNION.value,
    show_default=True,
    help="ab: C = AB; union: C = AB | BA",
)
@click.option("--unweighted", is_flag=True, default=False, help="Ignore the document weights")
@common_options
def check(path, variant, unweighted, output_format):
    """Per-vertex check of w(C(v)) >= w(A(v)) + w(B(v)) - w(v)."""
    lab = load_lab(path)
    try:
        report = lab.check(Variant(variant), unweighted=unweighted)
    except (DimensionError, PreconditionError) as e:
        raise click.UsageError(str(e))
    emit(output_format, report.to_dict(), report_text(report, f"{path}"))
    finish(report.holds)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@common_options
def hypotheses(path, output_format):
    """Report the identity and tournament-pair hypotheses and the inclusions."""
    lab = load_lab(path)
    result = lab.hypotheses()
    text = "\n".join(f"{name}: {'yes' if value else 'no'}" for name, value in result.items())
    emit(output_format, result, text)
    finish(result["identity"])


@cli.command("blow-up")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to FILE instead of stdout")
@common_options
def blow_up(path, output, output_format):
    """Blow up the pair by its positive integer weights."""
    lab = load_lab(path)
    try:
        blown, mapping = lab.blow_up()
    except (DimensionError, PreconditionError) as e:
        raise click.UsageError(str(e))
    write_or_echo(blown.to_document().to_json(), output)
    if output:
        emit(output_format, mapping.to_dict(), f"{mapping.total} blow-up vertices written to {output}")


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@common_options
def density(path, output_format):
    """Losing density of A without its loops."""
    lab = load_lab(path)
    try:
        result = lab.density()
    except PreconditionError as e:
        raise click.UsageError(str(e))
    except DensityNotFoundError as e:
        click.echo(str(e), err=True)
        finish(False)
        return
    text = "\n".join(
        f"  v{v + 1}: l = {format_rational(x)}  slack = {format_rational(s)}"
        for v, (x, s) in enumerate(zip(result.values, result.slack))
    )
    emit(output_format, result.to_dict(), f"--- losing density ---\n{text}")


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@common_options
def theorem(path, output_format):
    """Certificate for a tournament pair: density, per-vertex sets, aggregate and witness."""
    lab = load_lab(path)
    try:
        certificate = lab.theorem()
    except (DimensionError, PreconditionError) as e:
        raise click.UsageError(str(e))
    except TheoremViolatedError as e:
        logger.critical(f"{e}")
        click.echo(str(e), err=True)
        if e.instance is not None:
            click.echo(json.dumps(e.instance, ensure_ascii=False, indent=2), err=True)
        finish(False)
        return
    data = certificate.to_dict()
    lines = [
        f"Witness: v{data['witness']} (lhs {data['witness_lhs']} >= rhs {data['witness_rhs']})",
        f"Aggregate: {data['aggregate']}",
        f"Density: {', '.join(data['density']['values'])}",
    ]
    for record in data["vertices"]:
        lines.append(f"  v{record['vertex']}: l(S1) = {record['l_s1']}  l(S2) = {record['l_s2']}")
    emit(output_format, data, "\n".join(lines))


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--unweighted", is_flag=True, default=False, help="Ignore the document weights (SNP)")
@common_options
def wsnp(path, unweighted, output_format):
    """WSNP check on A without its loops, which must be oriented."""
    lab = load_lab(path)
    try:
        report = lab.wsnp(unweighted=unweighted)
    except (DimensionError, PreconditionError) as e:
        raise click.UsageError(str(e))
    emit(output_format, report.to_dict(), report_text(report, f"{path}"))
    finish(report.holds)


SEARCH_OPTIONS = [
    click.option("--n", "n", type=int, required=True, help="Vertex count"),
    click.option(
        "--variant",
        type=click.Choice([Variant.PRODUCT.value, Variant.UNION.value]),
        default=Variant.UNION.value,
        show_default=True,
    ),
    click.option(
        "--hypothesis",
        type=click.Choice([m.value for m in HypothesisMode]),
        default=HypothesisMode.IDENTITY.value,
        show_default=True,
        help="identity: A & B^T == I; subset: also A <= B; tournament: also A | B^T == V x V",
    ),
    click.option("--oracle", is_flag=True, default=False, help="Run the weight oracle on every pair"),
    click.option("--workers", type=int, default=None, help="Worker processes (or set SNC_LAB_WORKERS env var)"),
    click.option("--keep", type=int, default=None, help="Counterexamples kept in the report (or set SNC_LAB_KEEP)"),
    click.option("--save", type=click.Path(file_okay=False), default=None, help="Write each kept counterexample to DIR"),
    click.option("--progress/--no-progress", default=False, help="Show a progress bar"),
]


def search_options(func):
    for option in reversed(SEARCH_OPTIONS):
        func = option(func)
    return func


def run_campaign(config_kwargs: dict, save: Optional[str], output_format: str) -> None:
    try:
        config = SearchConfig(**config_kwargs)
    except (PreconditionError, ValueError) as e:
        raise click.UsageError(str(e))
    try:
        report = run_search(config)
    except SNCLabError as e:
        logger.critical(f"Search aborted: {e}")
        click.echo(str(e), err=True)
        finish(False)
        return

    if save:
        directory = Path(save)
        directory.mkdir(parents=True, exist_ok=True)
        for index, found in enumerate(report.counterexamples, start=1):
            (directory / f"counterexample_{index:03d}.json").write_text(
                found.to_document().to_json() + "\n", encoding="utf-8"
            )
        logger.info(f"Saved {len(report.counterexamples)} counterexamples to {directory}")

    text = "\n".join(
        [
            f"--- {config.mode} search, n={config.n}, {config.hypothesis.value}, {config.variant.value} ---",
            f"Pairs examined: {report.examined}",
            f"Counterexamples found: {report.found}",
            f"Wall time: {report.wall_time:.2f}s",
            f"Fingerprint: {report.fingerprint}",
        ]
    )
    emit(output_format, report.to_dict(), text)
    finish(report.found == 0)


@cli.group()
def search():
    """Counterexample search over small pairs."""
    pass


@search.command("exhaustive")
@search_options
@click.option(
    "--bound",
    type=int,
    default=None,
    help="Largest n allowed (or set SNC_LAB_EXHAUSTIVE_BOUND env var) [default: 4]",
)
@common_options
def search_exhaustive(n, variant, hypothesis, oracle, workers, keep, save, progress, bound, output_format):
    """Check every pair on N vertices allowed by the hypothesis."""
    run_campaign(
        dict(
            n=n,
            hypothesis=hypothesis,
            variant=variant,
            mode=EXHAUSTIVE,
            workers=workers,
            use_oracle=oracle,
            bound=bound,
            keep=keep,
            progress=progress,
        ),
        save,
        output_format,
    )


@search.command("random")
@search_options
@click.option("--seed", type=int, default=0, show_default=True, help="Generator seed")
@click.option("--iters", type=int, default=1000, show_default=True, help="Number of sampled pairs")
@common_options
def search_random(n, variant, hypothesis, oracle, workers, keep, save, progress, seed, iters, output_format):
    """Sample pairs on N vertices with a seeded generator."""
    run_campaign(
        dict(
            n=n,
            hypothesis=hypothesis,
            variant=variant,
            mode=RANDOM,
            seed=seed,
            iterations=iters,
            workers=workers,
            use_oracle=oracle,
            keep=keep,
            progress=progress,
        ),
        save,
        output_format,
    )


if __name__ == "__main__":
    cli()
