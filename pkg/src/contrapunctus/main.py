"""CLI entry point for Contrapunctus."""

import logging
import sys
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from contrapunctus import __version__
from contrapunctus.config import RunConfig, build_world, load_config
from contrapunctus.enums import LocalityStrategy, OutputFormat, Semantics, Variant
from contrapunctus.errors import ContrapunctusError, GoldenMismatchError
from contrapunctus.model.compare import (
    cross_table,
    kind_table,
    metrics_from_table,
    rule_recovery,
    trivial_metrics,
)
from contrapunctus.model.counterpoint import (
    all_verdicts,
    search,
    search_row,
    searches,
    summarize_verdicts,
    verdict_row,
)
from contrapunctus.reporting.golden import GoldenStore
from contrapunctus.reporting.tables import Row, render, render_rich, write_output
from contrapunctus.theory.reduction import (
    classify_all,
    derived_rule_crosscheck,
    reduced_row,
    summarize_reduced,
)
from contrapunctus.theory.strict import (
    enumerate_strict_representatives,
    strict_row,
    summarize_strict,
)
from contrapunctus.verify import run_checks

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
GOLDEN_EXTENSIONS = {
    OutputFormat.CSV: "csv",
    OutputFormat.JSON: "jsonl",
    OutputFormat.MARKDOWN: "md",
    OutputFormat.TABLE: "csv",
}
SEARCH_SUMMARY_COLUMNS = ["k", "variant", "strategy", "score", "successor_count"]


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv; always on stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


class ContrapunctusGroup(click.Group):
    """Click group mapping failures to exit codes.

    Usage and validation errors exit with 1, golden-file drift with 2.
    """

    def parse_args(self, ctx: click.Context, args: list[str]) -> list[str]:
        try:
            return super().parse_args(ctx, args)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise
        except GoldenMismatchError as e:
            err_console.print(f"[red]Golden drift:[/red] {escape(str(e))}")
            ctx.exit(2)
        except ContrapunctusError as e:
            logger.debug("Command failed", exc_info=True)
            err_console.print(f"[red]Error:[/red] {escape(str(e))}")
            ctx.exit(1)


def _config(ctx: click.Context, **overrides: Any) -> RunConfig:
    return load_config(ctx.obj.get("config_path"), **overrides)


def _output_options(f: Any) -> Any:
    f = click.option("--golden", "golden_dir", type=click.Path(path_type=Path), default=None,
                     help="Compare output with golden files in this directory")(f)
    f = click.option("--update-golden", is_flag=True, help="Rewrite the golden files")(f)
    f = click.option("--summary", is_flag=True, help="Emit aggregate counts only")(f)
    f = click.option("--out", type=click.Path(path_type=Path), default=None,
                     help="Output file (default: stdout)")(f)
    f = click.option("--format", "output_format",
                     type=click.Choice([o.value for o in OutputFormat]), default=None,
                     help="Output format")(f)
    return f


def _world_options(f: Any) -> Any:
    f = click.option("--scale", "scale_path", type=click.Path(path_type=Path), default=None,
                     help="YAML scale file")(f)
    f = click.option("--dichotomy", "dichotomy_path", type=click.Path(path_type=Path),
                     default=None, help="YAML dichotomy file")(f)
    f = click.option("--n", "modulus", type=int, default=None, help="Modulus")(f)
    f = click.option("--jobs", type=int, default=None, help="Worker threads")(f)
    return f


def emit(rows: list[Row], config: RunConfig, artifact: str, update_golden: bool = False,
         title: str | None = None, columns: list[str] | None = None) -> None:
    """Write rows in the configured format and check them against golden files."""
    fmt = config.output_format
    if fmt is OutputFormat.TABLE:
        render_rich(rows, console, title=title, columns=columns)
        text = render(rows, OutputFormat.CSV, columns)
    else:
        text = render(rows, fmt, columns)
        write_output(text, config.out)

    if config.golden_dir is None:
        return
    store = GoldenStore(config.golden_dir)
    name = f"{artifact}.{GOLDEN_EXTENSIONS[fmt]}"
    if update_golden:
        store.write(name, text)
        err_console.print(f"[green]Updated golden file[/green] {escape(name)}")
    else:
        store.assert_clean({name: text})


def _count_rows(summary: dict[str, Any]) -> list[Row]:
    """Flatten a nested summary dict into (group, name, count) rows."""
    rows: list[Row] = []
    for group, value in summary.items():
        if isinstance(value, dict):
            rows.extend({"group": group, "name": k, "count": v} for k, v in value.items())
        else:
            rows.append({"group": group, "name": group, "count": value})
    return rows


@click.group(cls=ContrapunctusGroup)
@click.version_option(version=__version__, prog_name="contrapunctus")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="Flat YAML config file")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logging")
@click.pass_context
def cli(ctx: click.Context, config_path: Path | None, verbose: int) -> None:
    """Contrapunctus - first-species counterpoint as finite algebra.

    Enumerates and classifies the strict and reduced styles, runs the
    counterpoint model and its variations, and compares the two.
    """
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


@cli.group(cls=ContrapunctusGroup, name="enumerate")
def enumerate_cmd() -> None:
    """Enumerate strict or reduced progressions with their labels."""


@enumerate_cmd.command("strict")
@_output_options
@click.pass_context
def enumerate_strict(ctx: click.Context, output_format: str | None, out: Path | None,
                     summary: bool, update_golden: bool, golden_dir: Path | None) -> None:
    """All strict-style representatives (c = 0) with category and kinds."""
    config = _config(ctx, output_format=output_format, out=out, summary=summary or None,
                     golden_dir=golden_dir)
    rows = enumerate_strict_representatives()
    if config.summary:
        data = _count_rows(summarize_strict(label for _, label in rows).to_dict())
        emit(data, config, "strict-summary", update_golden, title="Strict style")
    else:
        emit([strict_row(p, label) for p, label in rows], config, "strict", update_golden,
             title="Strict style")


def _reduced(ctx: click.Context, output_format: str | None, out: Path | None, summary: bool,
             update_golden: bool, golden_dir: Path | None, artifact: str) -> None:
    config = _config(ctx, output_format=output_format, out=out, summary=summary or None,
                     golden_dir=golden_dir)
    rows = classify_all()
    if config.summary:
        data = _count_rows(summarize_reduced(rows).to_dict())
        emit(data, config, f"{artifact}-summary", update_golden, title="Reduced style")
    else:
        emit([reduced_row(r, label) for r, label in rows], config, artifact, update_golden,
             title="Reduced style")


@enumerate_cmd.command("reduced")
@_output_options
@click.pass_context
def enumerate_reduced_cmd(ctx: click.Context, output_format: str | None, out: Path | None,
                          summary: bool, update_golden: bool, golden_dir: Path | None) -> None:
    """All diatonic reduced progressions with their labels."""
    _reduced(ctx, output_format, out, summary, update_golden, golden_dir, "reduced")


@cli.group(cls=ContrapunctusGroup)
def classify() -> None:
    """Classify progressions."""


@classify.command("reduced")
@_output_options
@click.option("--crosscheck", is_flag=True, help="Compare with the derived closed-form rules")
@click.pass_context
def classify_reduced_cmd(ctx: click.Context, output_format: str | None, out: Path | None,
                         summary: bool, update_golden: bool, golden_dir: Path | None,
                         crosscheck: bool) -> None:
    """Label reduced progressions from their strict preimages."""
    if not crosscheck:
        _reduced(ctx, output_format, out, summary, update_golden, golden_dir, "classify")
        return
    config = _config(ctx, output_format=output_format, out=out, golden_dir=golden_dir)
    report = derived_rule_crosscheck()
    rows: list[Row] = [{"check": "progressions", "value": report.checked}]
    rows.append({"check": "disagreements", "value": len(report.disagreements)})
    rows.extend({"check": f"general {k}", "value": v} for k, v in report.general_kinds.items())
    emit(rows, config, "crosscheck", update_golden, title="Derived rules")
    for d in report.disagreements:
        err_console.print(f"[yellow]Disagreement:[/yellow] {escape(str(d))}")
    if not report.ok:
        ctx.exit(1)


@cli.command()
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=None)
@click.option("--k", "k", type=int, default=None, help="A single consonance")
@click.option("--all", "all_k", is_flag=True, help="Every consonance")
@click.option("--strategy", type=click.Choice([s.value for s in LocalityStrategy]),
              default=None, help="Override the variant's locality strategy")
@_world_options
@_output_options
@click.pass_context
def model(ctx: click.Context, variant: str | None, k: int | None, all_k: bool,
          strategy: str | None, jobs: int | None, modulus: int | None,
          dichotomy_path: Path | None, scale_path: Path | None, output_format: str | None,
          out: Path | None, summary: bool, update_golden: bool,
          golden_dir: Path | None) -> None:
    """Contrapuntal symmetries and admitted successors of k t."""
    if (k is None) == (not all_k):
        raise click.UsageError("give exactly one of --k or --all")
    config = _config(ctx, variant=variant, jobs=jobs, modulus=modulus,
                     dichotomy_path=dichotomy_path, scale_path=scale_path,
                     output_format=output_format, out=out, summary=summary or None,
                     golden_dir=golden_dir)
    world = build_world(config)
    locality = LocalityStrategy(strategy) if strategy else None
    if k is not None:
        results = [search(k, config.variant, world, locality)]
    else:
        results = searches(config.variant, world, locality, config.jobs)
    name = f"model-{config.variant.value}"
    columns: list[str] | None = None
    if config.summary:
        name, columns = f"{name}-summary", SEARCH_SUMMARY_COLUMNS
    emit([search_row(r) for r in results], config, name, update_golden,
         title=f"Contrapuntal symmetries ({config.variant.value})", columns=columns)


@cli.command()
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=None)
@_world_options
@_output_options
@click.pass_context
def verdicts(ctx: click.Context, variant: str | None, jobs: int | None, modulus: int | None,
             dichotomy_path: Path | None, scale_path: Path | None, output_format: str | None,
             out: Path | None, summary: bool, update_golden: bool,
             golden_dir: Path | None) -> None:
    """Allowed, forbidden or non-polarized, per progression."""
    config = _config(ctx, variant=variant, jobs=jobs, modulus=modulus,
                     dichotomy_path=dichotomy_path, scale_path=scale_path,
                     output_format=output_format, out=out, summary=summary or None,
                     golden_dir=golden_dir)
    world = build_world(config)
    rows = all_verdicts(config.variant, world, jobs=config.jobs)
    name = f"verdicts-{config.variant.value}"
    if config.summary:
        counts = summarize_verdicts(v for _, v in rows)
        data = [{"verdict": key, "count": value} for key, value in counts.items()]
        emit(data, config, f"{name}-summary", update_golden, title="Verdicts")
    else:
        emit([verdict_row(p, v) for p, v in rows], config, name, update_golden,
             title=f"Verdicts ({config.variant.value})")


@cli.command()
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=None)
@click.option("--semantics", type=click.Choice([s.value for s in Semantics]), default=None)
@click.option("--kinds", is_flag=True, help="Verdicts per inadmissible and bad kind")
@click.option("--recovery", is_flag=True, help="Rules recovered from the verdicts")
@click.option("--jobs", type=int, default=None, help="Worker threads")
@_output_options
@click.pass_context
def compare(ctx: click.Context, variant: str | None, semantics: str | None, kinds: bool,
            recovery: bool, jobs: int | None, output_format: str | None, out: Path | None,
            summary: bool, update_golden: bool, golden_dir: Path | None) -> None:
    """Cross-tabulate reduced-style labels against model verdicts."""
    config = _config(ctx, variant=variant, semantics=semantics, jobs=jobs,
                     output_format=output_format, out=out, summary=summary or None,
                     golden_dir=golden_dir)
    v, s = config.variant, config.semantics
    name = f"compare-{v.value}-{s.value}"

    if kinds:
        emit(kind_table(v, config.jobs).rows(), config, f"kinds-{v.value}", update_golden,
             title=f"Kinds ({v.value})")
        return
    if recovery:
        report = rule_recovery(v, config.jobs).to_dict()
        rows = [{"rule": key, "value": value} for key, value in report.items()]
        emit(rows, config, f"recovery-{v.value}", update_golden, title="Rule recovery")
        return

    table = cross_table(v, s, config.jobs)
    metrics = metrics_from_table(table)
    if config.summary:
        baseline = trivial_metrics(s)
        rows = [
            {"model": v.value, "semantics": s.value, **metrics.to_dict()},
            {"model": "trivial", "semantics": s.value, **baseline.to_dict()},
        ]
        emit(rows, config, f"{name}-summary", update_golden, title="Matches")
        err_console.print(f"matches={metrics.matches} mismatches={metrics.mismatches}")
    else:
        emit(table.rows(), config, name, update_golden, title=f"{v.value} / {s.value}")


@cli.command()
@click.option("--jobs", type=int, default=None, help="Worker threads")
@click.option("--check", "names", multiple=True, help="Run only these checks")
@click.pass_context
def verify(ctx: click.Context, jobs: int | None, names: tuple[str, ...]) -> None:
    """Run the full invariant suite; exit 1 if any check fails."""
    config = _config(ctx, jobs=jobs)
    results = run_checks(config.jobs, list(names) or None)

    table = Table(title="Invariant checks")
    table.add_column("Check", style="cyan")
    table.add_column("Result", justify="center")
    table.add_column("Detail")
    for r in results:
        status = "[green]PASS[/green]" if r.passed else "[red]FAIL[/red]"
        table.add_row(r.name, status, escape(r.detail))
    console.print(table)

    failed = [r for r in results if not r.passed]
    if failed:
        console.print(f"[bold red]{len(failed)}/{len(results)} checks failed[/bold red]")
        ctx.exit(1)
    console.print(f"[bold green]All {len(results)} checks passed[/bold green]")


if __name__ == "__main__":
    cli()
