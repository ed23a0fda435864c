"""Command line surface: generate groups, decide isomorphism, compute automorphism groups, run acceptance."""

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import typer
from colorama import Fore, Style
from pydantic import BaseModel

from src.config import get_settings, override_settings
from src.errors import AGroupError, ParseError, ResourceExhausted
from src.groups.cayley import CayleyGroup
from src.groups.io import format_group, read_group
from src.harness.acceptance import read_manifest, run_acceptance
from src.harness.dsl import build_group
from src.logger import configure_logging
from src.reductions.problems import grp_acount, grp_apart, grp_icount, grp_imap, grp_iso
from src.structure.autgroup import aut_agroup
from src.structure.bruteforce import aut_bruteforce, oracle_iso

EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3

app = typer.Typer(add_completion=False, no_args_is_help=True, help=__doc__)


class State(BaseModel):
    json_output: bool = False


class VerdictPayload(BaseModel):
    command: str
    groups: list[str]
    verdict: bool
    certificate: Optional[list[int]] = None


class CountPayload(BaseModel):
    command: str
    groups: list[str]
    count: int


class AutPayload(BaseModel):
    command: str
    group: str
    order: int
    generators: list[list[int]]
    methods: list[str]
    exact: bool


class PartitionPayload(BaseModel):
    command: str
    group: str
    orbits: list[list[int]]


def _state(ctx: typer.Context) -> State:
    return ctx.obj if isinstance(ctx.obj, State) else State()


def _fail(err: Exception, code: int) -> None:
    typer.echo(Fore.RED + f"{type(err).__name__}: {err}" + Style.RESET_ALL, err=True)
    raise typer.Exit(code)


@contextmanager
def reported() -> Iterator[None]:
    """Map package errors to exit codes: parse 2, resource 3, anything else deliberate 1."""
    try:
        yield
    except ParseError as err:
        _fail(err, EXIT_PARSE)
    except ResourceExhausted as err:
        _fail(err, EXIT_RESOURCE)
    except AGroupError as err:
        _fail(err, EXIT_ERROR)


def load_group(source: str) -> CayleyGroup:
    """A group file path, or a construction expression."""
    path = Path(source)
    if path.is_file():
        return read_group(path)
    return build_group(source)


def _emit(state: State, payload: BaseModel, text: str, positive: Optional[bool] = None) -> None:
    if state.json_output:
        typer.echo(json.dumps(payload.model_dump(), sort_keys=True))
        return
    if positive is None:
        typer.echo(text)
    else:
        typer.echo((Fore.GREEN if positive else Fore.YELLOW) + text + Style.RESET_ALL)


@app.callback()
def main(
    ctx: typer.Context,
    json_output: bool = typer.Option(False, "--json", help="Machine-readable output."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for randomized steps."),
    max_order: Optional[int] = typer.Option(None, "--max-order", help="Cap for direct factorization."),
    oracle_budget: Optional[int] = typer.Option(None, "--oracle-budget", help="Node budget for brute-force search."),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="loguru level for stderr."),
):
    settings = override_settings(seed=seed, max_order=max_order, oracle_budget=oracle_budget, log_level=log_level)
    configure_logging(settings.log_level)
    ctx.obj = State(json_output=json_output)


@app.command()
def gen(
    expr: str = typer.Argument(..., help="Construction expression, e.g. 'direct(sym(3), alt(4))'."),
    output: Optional[Path] = typer.Option(None, "-o", "--output", help="Group file to write; stdout if omitted."),
):
    """Build a group from an expression and write its table."""
    with reported():
        text = format_group(build_group(expr))
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text)


@app.command()
def iso(
    ctx: typer.Context,
    first: str,
    second: str,
    method: str = typer.Option("acount", help="acount (counting identity) or apart (orbit invariance)."),
):
    """Decide whether two groups are isomorphic."""
    with reported():
        verdict = grp_iso(load_group(first), load_group(second), method=method)
    text = "isomorphic" if verdict else "not isomorphic"
    _emit(_state(ctx), VerdictPayload(command="iso", groups=[first, second], verdict=verdict), text, verdict)


@app.command()
def imap(ctx: typer.Context, first: str, second: str):
    """Print an isomorphism as the image of every element, if one exists."""
    with reported():
        hom = grp_imap(load_group(first), load_group(second))
    certificate = None if hom is None else [int(x) for x in hom.images]
    text = "not isomorphic" if hom is None else "isomorphic\n" + " ".join(map(str, certificate))
    payload = VerdictPayload(command="imap", groups=[first, second], verdict=hom is not None, certificate=certificate)
    _emit(_state(ctx), payload, text, hom is not None)


@app.command()
def icount(ctx: typer.Context, first: str, second: str):
    """Count the isomorphisms between two groups."""
    with reported():
        count = grp_icount(load_group(first), load_group(second))
    _emit(_state(ctx), CountPayload(command="icount", groups=[first, second], count=count), f"isomorphisms: {count}")


@app.command()
def acount(ctx: typer.Context, group: str):
    """Count the automorphisms of a group."""
    with reported():
        count = grp_acount(load_group(group))
    _emit(_state(ctx), CountPayload(command="acount", groups=[group], count=count), f"automorphisms: {count}")


@app.command()
def apart(ctx: typer.Context, group: str):
    """Partition the elements into automorphism orbits."""
    with reported():
        orbits = [sorted(int(x) for x in orbit) for orbit in grp_apart(load_group(group))]
    orbits.sort()
    text = "\n".join(" ".join(map(str, orbit)) for orbit in orbits)
    _emit(_state(ctx), PartitionPayload(command="apart", group=group, orbits=orbits), text)


def _aut_text(payload: AutPayload) -> str:
    lines = [f"|Aut| = {payload.order}", f"methods: {' > '.join(payload.methods)}"]
    if not payload.exact:
        lines.append("note: randomized unit-group generation was used")
    lines.extend(" ".join(map(str, phi)) for phi in payload.generators)
    return "\n".join(lines)


@app.command()
def aut(ctx: typer.Context, group: str):
    """Automorphism group of an A-group by recursion along characteristic complements."""
    with reported():
        result = aut_agroup(load_group(group))
    payload = AutPayload(
        command="aut",
        group=group,
        order=result.order(),
        generators=[[int(x) for x in phi] for phi in result.aut.generators],
        methods=result.levels,
        exact=result.exact,
    )
    _emit(_state(ctx), payload, _aut_text(payload))


@app.command("oracle-iso")
def oracle_iso_command(ctx: typer.Context, first: str, second: str):
    """Isomorphism by brute-force backtracking over generator images."""
    with reported():
        hom = oracle_iso(load_group(first), load_group(second), get_settings().oracle_budget)
    certificate = None if hom is None else [int(x) for x in hom.images]
    text = "not isomorphic" if hom is None else "isomorphic\n" + " ".join(map(str, certificate))
    payload = VerdictPayload(command="oracle-iso", groups=[first, second], verdict=hom is not None, certificate=certificate)
    _emit(_state(ctx), payload, text, hom is not None)


@app.command("oracle-aut")
def oracle_aut_command(ctx: typer.Context, group: str):
    """Automorphism group by brute-force backtracking."""
    with reported():
        perm_group = aut_bruteforce(load_group(group), get_settings().oracle_budget)
    payload = AutPayload(
        command="oracle-aut",
        group=group,
        order=perm_group.order(),
        generators=[[int(x) for x in phi] for phi in perm_group.generators],
        methods=["brute-force"],
        exact=True,
    )
    _emit(_state(ctx), payload, _aut_text(payload))


@app.command()
def accept(
    ctx: typer.Context,
    manifest: Path = typer.Argument(..., exists=True, dir_okay=False, help="Lines of 'expr ; key=value ; ...'."),
    timings: bool = typer.Option(False, "--timings", help="Add wall-clock seconds per criterion."),
):
    """Run a manifest against the brute-force oracles; exit 1 if any criterion fails."""
    with reported():
        report = run_acceptance(read_manifest(manifest), base_dir=manifest.parent, timings=timings)
    failures = int((~report["passed"].astype(bool)).sum())
    if _state(ctx).json_output:
        typer.echo(json.dumps(report.to_dict(orient="records"), sort_keys=True))
    elif len(report):
        typer.echo(report.to_string(index=False))
    summary = f"{len(report) - failures}/{len(report)} criteria passed"
    if not _state(ctx).json_output:
        typer.echo((Fore.GREEN if failures == 0 else Fore.RED) + summary + Style.RESET_ALL)
    if failures:
        raise typer.Exit(EXIT_ERROR)
