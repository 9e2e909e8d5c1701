"""
chromatic-forge — CLI Interface.

Click front door for every module. Results are deterministic JSON on
standard output; progress, summaries and errors go to a Rich console on
standard error.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
from rich import box
from rich.panel import Panel
from rich.table import Table

from chromatic_forge.__version__ import __version__
from chromatic_forge.config import Command, ForgeConfig, RunConfig
from chromatic_forge.core.errors import ChromaticForgeError, ExhaustionError, ParseError, PremiseError
from chromatic_forge.core.graph import Graph, is_bipartite, is_outerplanar, parse_graph_spec
from chromatic_forge.core.perm import automorphism_group, parse_element, parse_group_spec, quotient, subgroups
from chromatic_forge.core.poly import ChromaticEngine, chromatic, orbital_chromatic
from chromatic_forge.core.roots import format_rational, format_root, isolate_real_roots
from chromatic_forge.forge.bounds import (
    check_root_bound,
    check_reduction_hypothesis,
    cyclic_pair_partition,
    reflection_partition,
    singleton_partition,
)
from chromatic_forge.forge.constructor import forge
from chromatic_forge.forge.gadgets import list_gadgets
from chromatic_forge.forge.premise import find_premise
from chromatic_forge.reporters.json_reporter import JSONReporter, dumps, dumps_line
from chromatic_forge.utils.logger import console, get_logger, setup_logging
from chromatic_forge.verify.families import verify_paths_and_cycles
from chromatic_forge.verify.outerplanar import CorpusSummary, verify_corpus, verify_outerplanar_graph

logger = get_logger("cli")

BANNER = """
[bold cyan]  chromatic-forge[/bold cyan]
[dim]  Orbital chromatic roots, counterexamples and certificates  •  v{version}[/dim]
"""

PARTITIONS = {
    "singleton": singleton_partition,
    "pairs": cyclic_pair_partition,
    "reflections": reflection_partition,
}


def show_banner() -> None:
    console.print(BANNER.format(version=__version__))


# ── Dispatch ───────────────────────────────────────────────────────────


@dataclass
class RunOutcome:
    """Exit status plus either one JSON document or a list of JSON-lines records."""

    exit_code: int = 0
    payload: Optional[Dict[str, Any]] = None
    lines: List[Dict[str, Any]] = field(default_factory=list)

    def render(self, indent: int) -> str:
        if self.payload is not None:
            return dumps(self.payload, indent)
        return "\n".join(dumps_line(record) for record in self.lines)


def _input_graph(rc: RunConfig) -> Graph:
    if rc.input is None:
        raise ParseError(f"{rc.command.value} needs an INPUT graph")
    return parse_graph_spec(rc.input)


def _width(rc: RunConfig, config: ForgeConfig) -> Fraction:
    raw = rc.options.get("width")
    if raw is None:
        return config.roots.width
    try:
        width = Fraction(str(raw))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"--width must be a rational like 1/1024: {e}") from e
    if width <= 0:
        raise ParseError("--width must be positive")
    return width


def _group(rc: RunConfig, config: ForgeConfig, g: Graph):
    return parse_group_spec(
        list(rc.options.get("group") or ()), g, vertex_limit=config.limits.automorphism_vertex_limit
    )


def _cmd_chrom(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    p = chromatic(g, engine)
    return RunOutcome(payload={"graph": g.to_dict(), "chromatic": p.to_dict(), "expression": str(p)})


def _cmd_orbital(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    group = _group(rc, config, g)
    op = orbital_chromatic(g, group, engine)
    return RunOutcome(
        payload={
            "graph": g.to_dict(),
            "group": group.to_dict(),
            "orbital": op.to_dict(),
            "expression": str(op),
        }
    )


def _cmd_quotient(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    spec = rc.options.get("element")
    if not spec:
        raise ParseError("quotient needs --element")
    p = parse_element(spec, g.num_vertices)
    reduced = quotient(g, p)
    return RunOutcome(
        payload={
            "graph": g.to_dict(),
            "element": p.to_list(),
            "orbits": [list(o) for o in p.orbits()],
            "quotient": reduced.to_dict(),
        }
    )


def _cmd_aut(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    aut = automorphism_group(g, vertex_limit=config.limits.automorphism_vertex_limit)
    payload: Dict[str, Any] = {"graph": g.to_dict(), "group": aut.to_dict()}
    if rc.options.get("subgroups"):
        subs = subgroups(aut, order_limit=config.limits.subgroup_order_limit)
        payload["subgroups"] = [s.to_dict() for s in subs]
    return RunOutcome(payload=payload)


def _cmd_roots(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    p = chromatic(g, engine)
    report = isolate_real_roots(p, _width(rc, config))
    return RunOutcome(
        payload={
            "graph": g.to_dict(),
            "chromatic": p.to_dict(),
            "roots": report.to_dict(),
            "max_root": format_root(report.max_root()),
            "multiplicities": [[format_root(r), k] for r, k in report.multiplicities()],
        }
    )


def _cmd_forge(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    group = _group(rc, config, g)
    premise = find_premise(g, group, engine)
    if premise is None:
        raise PremiseError("no forge premise: smallest quotient not unique or never negative above the chromatic roots")
    s_max = rc.options.get("s_max")
    if s_max is None:
        s_max = config.forge.s_max
    gadget = rc.options.get("gadget") or config.forge.gadget
    result = forge(premise, s_max=s_max, gadget=gadget, engine=engine, width=_width(rc, config))
    payload = result.to_dict()
    payload["base"] = g.to_dict()
    payload["group"] = group.to_dict()
    return RunOutcome(payload=payload)


def _cmd_check_bound(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    group = _group(rc, config, g)
    payload: Dict[str, Any] = {"graph": g.to_dict(), "group": group.to_dict()}
    payload["bound"] = check_root_bound(g, group, engine).to_dict()
    name = rc.options.get("partition")
    if name:
        if name not in PARTITIONS:
            raise ParseError(f"unknown partition '{name}' (known: {', '.join(sorted(PARTITIONS))})")
        payload["reduction"] = check_reduction_hypothesis(g, group, PARTITIONS[name](group), engine).to_dict()
    return RunOutcome(payload=payload)


def _cmd_outerplanar(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    g = _input_graph(rc)
    bip = is_bipartite(g)
    return RunOutcome(
        payload={
            "graph": g.to_dict(),
            "outerplanar": is_outerplanar(g),
            "bipartite": bip.is_bipartite,
            "odd_cycle": list(bip.odd_cycle) if bip.odd_cycle else None,
        }
    )


def _cmd_verify_outerplanar(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    limits = config.limits
    max_vertices = rc.options.get("max_vertices")
    if max_vertices is None:
        report = verify_outerplanar_graph(
            _input_graph(rc),
            vertex_limit=limits.automorphism_vertex_limit,
            subgroup_limit=limits.subgroup_order_limit,
            strict=False,
            engine=engine,
        )
        return RunOutcome(exit_code=70 if report.discrepancies else 0, payload=report.to_dict())

    summary = CorpusSummary(max_vertices=max_vertices)
    lines = []
    for report in verify_corpus(
        max_vertices,
        workers=rc.options.get("workers") or config.engine.workers,
        sample=rc.options.get("sample"),
        seed=rc.options.get("seed") or 0,
        corpus_limit=limits.corpus_vertex_limit,
        vertex_limit=limits.automorphism_vertex_limit,
        subgroup_limit=limits.subgroup_order_limit,
    ):
        summary.add(report)
        lines.append(report.to_dict())
    lines.append(summary.to_dict())
    _display_corpus_summary(summary)
    return RunOutcome(exit_code=70 if summary.discrepancies else 0, lines=lines)


def _cmd_families(rc: RunConfig, config: ForgeConfig, engine: ChromaticEngine) -> RunOutcome:
    reports = verify_paths_and_cycles(rc.options.get("max_n") or 12, engine)
    ok = all(r.all_hold and r.reduction_passes and r.case_table_agrees for r in reports)
    _display_families(reports)
    return RunOutcome(
        exit_code=0 if ok else 70,
        payload={"all_pass": ok, "reports": [r.to_dict() for r in reports]},
    )


_HANDLERS: Dict[Command, Callable[[RunConfig, ForgeConfig, ChromaticEngine], RunOutcome]] = {
    Command.CHROM: _cmd_chrom,
    Command.ORBITAL: _cmd_orbital,
    Command.QUOTIENT: _cmd_quotient,
    Command.AUT: _cmd_aut,
    Command.ROOTS: _cmd_roots,
    Command.FORGE: _cmd_forge,
    Command.CHECK_BOUND: _cmd_check_bound,
    Command.OUTERPLANAR: _cmd_outerplanar,
    Command.VERIFY_OUTERPLANAR: _cmd_verify_outerplanar,
    Command.FAMILIES: _cmd_families,
}


def _error_payload(error: ChromaticForgeError) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": type(error).__name__, "message": str(error)}
    if isinstance(error, ExhaustionError):
        payload["s_max"] = error.s_max
        payload["trajectory"] = [[s, format_rational(v)] for s, v in error.trajectory]
    return payload


def run(rc: RunConfig, config: ForgeConfig) -> RunOutcome:
    """Dispatch one command; library errors become their exit status plus an error document."""
    engine = ChromaticEngine(use_cache=config.engine.chromatic_cache)
    logger.debug(f"Running {rc.command.value} on {rc.input!r}", extra={"command": rc.command.value})
    try:
        return _HANDLERS[rc.command](rc, config, engine)
    except ChromaticForgeError as e:
        logger.error(f"{type(e).__name__}: {e}", extra={"command": rc.command.value})
        return RunOutcome(exit_code=e.exit_code, payload=_error_payload(e))


# ── Display helpers ────────────────────────────────────────────────────


def _display_corpus_summary(summary: CorpusSummary) -> None:
    style = "green" if summary.discrepancies == 0 else "red"
    console.print(
        Panel(
            f"[bold]Graphs: {summary.graphs}[/bold]  (odd cycle: {summary.odd_cycle_graphs})\n"
            f"Subgroups checked: {summary.subgroups}\n"
            f"[verdict.holds]Bound holds: {summary.verdicts_true}[/verdict.holds]  "
            f"[verdict.fails]Bound fails: {summary.verdicts_false}[/verdict.fails]\n"
            f"Incomplete subgroup lists: {summary.incomplete_subgroup_lists}\n"
            f"[bold {style}]Discrepancies: {summary.discrepancies}[/bold {style}]",
            title=f"Outerplanar corpus, up to {summary.max_vertices} vertices",
            border_style=style,
        )
    )


def _display_families(reports) -> None:
    table = Table(title="Paths and cycles", box=box.ROUNDED, header_style="bold cyan")
    table.add_column("Family", style="bold")
    table.add_column("n", justify="right")
    table.add_column("|Aut|", justify="right")
    table.add_column("Subgroups", justify="right")
    table.add_column("Bound")
    table.add_column("Reduction")
    table.add_column("Case table")
    for r in reports:
        table.add_row(
            r.family,
            str(r.n),
            str(r.automorphism_order),
            str(len(r.subgroup_verdicts)),
            "[verdict.holds]holds[/verdict.holds]" if r.all_hold else "[verdict.fails]FAILS[/verdict.fails]",
            "pass" if r.reduction_passes else "fail",
            "agrees" if r.case_table_agrees else "differs",
        )
    console.print(table)


# ── Main CLI Group ─────────────────────────────────────────────────────


class ForgeGroup(click.Group):
    """Click group whose usage errors exit 64 with a JSON error document, like every other parse failure."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):  # type: ignore[override]
        try:
            rv = super().main(
                args=args, prog_name=prog_name, complete_var=complete_var, standalone_mode=False, **extra
            )
        except click.UsageError as e:
            e.show()
            error = ParseError(e.format_message())
            logger.error(f"ParseError: {error}")
            click.echo(dumps(_error_payload(error)))
            code = error.exit_code
        except click.ClickException as e:
            e.show()
            code = e.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = 1
        else:
            code = rv if isinstance(rv, int) else 0
        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=ForgeGroup, invoke_without_command=True)
@click.version_option(version=__version__, prog_name="chromatic-forge")
@click.option("--config", "-c", "config_path", type=click.Path(exists=True), help="Path to YAML config file")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]), default=None)
@click.option("--log-file", type=click.Path(), default=None, help="Log file path")
@click.option("--json-log", is_flag=True, help="Write the log file as JSON lines")
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Optional[str],
    log_level: Optional[str],
    log_file: Optional[str],
    json_log: bool,
) -> None:
    """chromatic-forge — chromatic and orbital chromatic polynomials.

    Compute polynomials, quotients and automorphism groups, isolate real
    roots exactly, forge graphs whose orbital roots exceed their chromatic
    roots, and verify root bounds over paths, cycles and outerplanar graphs.
    """
    ctx.ensure_object(dict)
    overrides = {"log_level": log_level} if log_level else {}
    config = ForgeConfig.load(config_path, **overrides)
    setup_logging(level=config.log_level, log_file=log_file, json_log=json_log)
    ctx.obj["config"] = config

    if ctx.invoked_subcommand is None:
        show_banner()
        console.print("[dim]Run [bold]chromatic-forge --help[/bold] to see available commands.[/dim]\n")


def _execute(ctx: click.Context, rc: RunConfig, output: Optional[str] = None) -> None:
    config: ForgeConfig = ctx.obj["config"]
    outcome = run(rc, config)
    text = outcome.render(config.reporting.indent)
    if output:
        reporter = JSONReporter(config.reporting.output_dir, indent=config.reporting.indent)
        if outcome.payload is not None:
            path = reporter.generate(outcome.payload, output)
        else:
            path = reporter.generate_lines(outcome.lines, output)
        console.print(f"Report saved: [bold]{path}[/bold]")
    else:
        click.echo(text)
    ctx.exit(outcome.exit_code)


_group_option = click.option(
    "--group",
    "-g",
    multiple=True,
    help="Group generators: antipodal, rot:k, flip:k, full, trivial, Group JSON or a file (repeatable)",
)
_output_option = click.option("--output", "-o", type=click.Path(), default=None, help="Write JSON to this file")
_width_option = click.option("--width", default=None, help="Isolating interval width, e.g. 1/1024")


@cli.command()
@click.argument("input_spec", metavar="INPUT")
@_output_option
@click.pass_context
def chrom(ctx: click.Context, input_spec: str, output: Optional[str]) -> None:
    """Chromatic polynomial of INPUT."""
    _execute(ctx, RunConfig(command=Command.CHROM, input=input_spec), output)


@cli.command()
@click.argument("input_spec", metavar="INPUT")
@_group_option
@_output_option
@click.pass_context
def orbital(ctx: click.Context, input_spec: str, group: Tuple[str, ...], output: Optional[str]) -> None:
    """Orbital chromatic polynomial of INPUT under a group (default: all automorphisms)."""
    _execute(ctx, RunConfig(command=Command.ORBITAL, input=input_spec, options={"group": group}), output)


@cli.command(name="quotient")
@click.argument("input_spec", metavar="INPUT")
@click.option("--element", "-e", required=True, help="antipodal, rot:k, flip:k or a JSON image list")
@_output_option
@click.pass_context
def quotient_cmd(ctx: click.Context, input_spec: str, element: str, output: Optional[str]) -> None:
    """Quotient of INPUT by one automorphism."""
    _execute(ctx, RunConfig(command=Command.QUOTIENT, input=input_spec, options={"element": element}), output)


@cli.command()
@click.argument("input_spec", metavar="INPUT")
@click.option("--subgroups", "with_subgroups", is_flag=True, help="Also list every subgroup")
@_output_option
@click.pass_context
def aut(ctx: click.Context, input_spec: str, with_subgroups: bool, output: Optional[str]) -> None:
    """Automorphism group of INPUT."""
    rc = RunConfig(command=Command.AUT, input=input_spec, options={"subgroups": with_subgroups})
    _execute(ctx, rc, output)


@cli.command()
@click.argument("input_spec", metavar="INPUT")
@_width_option
@_output_option
@click.pass_context
def roots(ctx: click.Context, input_spec: str, width: Optional[str], output: Optional[str]) -> None:
    """Real roots of the chromatic polynomial of INPUT."""
    _execute(ctx, RunConfig(command=Command.ROOTS, input=input_spec, options={"width": width}), output)


@cli.command(name="forge")
@click.argument("input_spec", metavar="INPUT")
@_group_option
@click.option("--smax", "s_max", type=int, default=None, help="Largest s to try")
@click.option("--gadget", default=None, help=f"Gadget family ({', '.join(list_gadgets())})")
@_width_option
@_output_option
@click.pass_context
def forge_cmd(
    ctx: click.Context,
    input_spec: str,
    group: Tuple[str, ...],
    s_max: Optional[int],
    gadget: Optional[str],
    width: Optional[str],
    output: Optional[str],
) -> None:
    """Forge a graph whose orbital polynomial has a root above all chromatic roots."""
    options = {"group": group, "s_max": s_max, "gadget": gadget, "width": width}
    _execute(ctx, RunConfig(command=Command.FORGE, input=input_spec, options=options), output)


@cli.command(name="check-bound")
@click.argument("input_spec", metavar="INPUT")
@_group_option
@click.option("--partition", type=click.Choice(sorted(PARTITIONS)), default=None,
              help="Also check block sums over this partition of the group")
@_output_option
@click.pass_context
def check_bound(
    ctx: click.Context, input_spec: str, group: Tuple[str, ...], partition: Optional[str], output: Optional[str]
) -> None:
    """Is every orbital root at most the largest chromatic root?"""
    options = {"group": group, "partition": partition}
    _execute(ctx, RunConfig(command=Command.CHECK_BOUND, input=input_spec, options=options), output)


@cli.command()
@click.argument("input_spec", metavar="INPUT")
@_output_option
@click.pass_context
def outerplanar(ctx: click.Context, input_spec: str, output: Optional[str]) -> None:
    """Outerplanarity, bipartiteness and an odd-cycle witness for INPUT."""
    _execute(ctx, RunConfig(command=Command.OUTERPLANAR, input=input_spec), output)


@cli.command(name="verify-outerplanar")
@click.argument("input_spec", metavar="[INPUT]", required=False)
@click.option("--max-vertices", type=int, default=None, help="Run the whole corpus up to this many vertices")
@click.option("--workers", type=int, default=None, help="Worker processes")
@click.option("--sample", type=int, default=None, help="Verify only this many corpus graphs")
@click.option("--seed", type=int, default=0, help="Sampling seed (never changes a verdict)")
@_output_option
@click.pass_context
def verify_outerplanar_cmd(
    ctx: click.Context,
    input_spec: Optional[str],
    max_vertices: Optional[int],
    workers: Optional[int],
    sample: Optional[int],
    seed: int,
    output: Optional[str],
) -> None:
    """Verify outerplanar root sets and bounds for INPUT, or for the corpus with --max-vertices."""
    options = {"max_vertices": max_vertices, "workers": workers, "sample": sample, "seed": seed}
    _execute(ctx, RunConfig(command=Command.VERIFY_OUTERPLANAR, input=input_spec, options=options), output)


@cli.command()
@click.option("--max-n", type=int, default=12, help="Largest path and cycle length")
@_output_option
@click.pass_context
def families(ctx: click.Context, max_n: int, output: Optional[str]) -> None:
    """Sweep paths and cycles: bounds, reduction blocks and the quotient case table."""
    _execute(ctx, RunConfig(command=Command.FAMILIES, options={"max_n": max_n}), output)


# ── Version Command ────────────────────────────────────────────────────


@cli.command()
def version() -> None:
    """Display version and environment information."""
    show_banner()

    table = Table(box=box.SIMPLE, show_header=False)
    table.add_column("Key", style="bold cyan")
    table.add_column("Value")

    table.add_row("Version", __version__)
    table.add_row("Python", sys.version.split()[0])
    table.add_row("Platform", sys.platform)

    import networkx
    import sympy

    table.add_row("networkx", networkx.__version__)
    table.add_row("sympy", sympy.__version__)
    table.add_row("Gadgets", ", ".join(list_gadgets()))
    console.print(table)


# ── Init Command ───────────────────────────────────────────────────────


SAMPLE_CONFIG = """# chromatic-forge configuration
# Environment variables override this file, e.g. CHROMFORGE_FORGE__S_MAX=16

log_level: INFO

limits:
  automorphism_vertex_limit: 16   # backtracking search cap
  subgroup_order_limit: 48        # larger groups: cyclic subgroups + the group itself
  corpus_vertex_limit: 9          # outerplanar corpus cap

roots:
  isolation_width: "1/1024"

forge:
  s_max: 64
  gadget: hns

engine:
  chromatic_cache: false
  workers: 1

reporting:
  indent: 2
  output_dir: ./reports
"""


@cli.command()
@click.option("--output", "-o", default="chromatic-forge.yaml", help="Config file output path")
def init(output: str) -> None:
    """Generate a sample configuration file."""
    Path(output).write_text(SAMPLE_CONFIG)
    console.print(f"Configuration file created: [bold]{output}[/bold]")
    console.print("[dim]Edit the file and pass it with --config.[/dim]")


def main() -> None:
    """Entry point for the CLI."""
    cli(obj={})


if __name__ == "__main__":
    main()
