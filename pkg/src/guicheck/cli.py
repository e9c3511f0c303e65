"""Command-line front end.

Exit codes: 0 every checked spec satisfied, 1 at least one violated,
2 usage/parse/resolve error, 3 internal error or budget exceeded.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Iterable

import click

from .errors import BudgetExceeded, GuicheckError
from .flatten import FlattenedSpec, resolve_spec
from .oracle import OracleUnsupported, brute_force_check
from .solver import DEFAULT_BUDGET, LogEvent, check_spec
from .speclang import SpecDoc, format_doc, parse_specs
from .stdlib import IOFailure, load_library
from .trace import TraceDoc, parse_trace

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def render_log(events: Iterable[LogEvent]) -> str:
    return "".join(f"{e.depth} {e.name}: {e.message}\n" for e in events)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"{path}: {exc.strerror or exc}") from None


def _load_inputs(spec_path, trace_path, name, lib_dirs, allow_override) -> tuple[list[FlattenedSpec], TraceDoc]:
    spec_text = _read(spec_path)
    trace_text = _read(trace_path)
    try:
        doc: SpecDoc = parse_specs(spec_text)
    except GuicheckError as exc:
        raise _Fail(EXIT_USAGE, f"{spec_path}: {exc}") from None
    try:
        trace = parse_trace(trace_text)
    except GuicheckError as exc:
        raise _Fail(EXIT_USAGE, f"{trace_path}: {exc}") from None
    try:
        lib = load_library(lib_dirs, allow_override)
        names = [name] if name else list(doc.names)
        if not names:
            raise _Fail(EXIT_USAGE, f"{spec_path}: no specifications found")
        return [resolve_spec(n, doc, lib) for n in names], trace
    except GuicheckError as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None


def _section(name: str, body: str, several: bool) -> str:
    return f"# {name}\n{body}" if several else body


def _run(fn) -> None:
    try:
        code = fn()
    except _Fail as exc:
        click.echo(f"error: {exc.message}", err=True)
        code = exc.code
    except BudgetExceeded as exc:
        click.echo(f"error: {exc}", err=True)
        code = EXIT_INTERNAL
    except GuicheckError as exc:
        # e.g. a TypeMismatch surfacing while solving: the spec is at fault
        click.echo(f"error: {exc}", err=True)
        code = EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - last-resort guard, reported as exit 3
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        code = EXIT_INTERNAL
    sys.exit(code)


def _common(f):
    opts = [
        click.option("--spec", "spec_path", required=True, help="Specification file (.gspec)."),
        click.option("--trace", "trace_path", required=True, help="Trace file (.gtrace)."),
        click.option("--name", default=None, help="Check only this spec (default: every spec in the file)."),
        click.option("--lib", "lib_dirs", multiple=True, help="Extra library directory; repeatable."),
        click.option("--allow-override", is_flag=True, help="Let library specs replace builtins."),
        click.option("--verbose", is_flag=True, help="Print the solver log."),
        click.option("--report", "report_path", default=None, help="Write the machine report here."),
        click.option("--budget", default=DEFAULT_BUDGET, show_default=True,
                     type=click.IntRange(min=1), help="Tuple expansion budget."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


@click.group()
def cli():
    """Check rendered GUI traces against layout specifications."""


@cli.command()
@_common
def check(spec_path, trace_path, name, lib_dirs, allow_override, verbose, report_path, budget):
    """Run the solver on every selected spec."""

    def go():
        specs, trace = _load_inputs(spec_path, trace_path, name, lib_dirs, allow_override)
        several = len(specs) > 1
        reports, code = [], EXIT_OK
        for spec in specs:
            verdict = check_spec(spec, trace, budget)
            if verbose:
                click.echo(render_log(verdict.log), nl=False)
            reports.append(_section(spec.name, verdict.report(), several))
            if not verdict.satisfied:
                click.echo(f"{spec.name}: specification not met", err=True)
                code = EXIT_VIOLATED
        text = "".join(reports)
        if report_path:
            _write(report_path, text)
        click.echo(text, nl=False)
        return code

    _run(go)


@cli.command()
@_common
@click.option("--enumerate", "enumerate_", is_flag=True, help="List every satisfying assignment.")
def oracle(spec_path, trace_path, name, lib_dirs, allow_override, verbose, report_path, budget, enumerate_):
    """Brute-force the selected specs and compare with the solver."""

    def go():
        specs, trace = _load_inputs(spec_path, trace_path, name, lib_dirs, allow_override)
        several = len(specs) > 1
        out, code = [], EXIT_OK
        for spec in specs:
            try:
                result = brute_force_check(spec, trace, budget)
            except OracleUnsupported as exc:
                raise _Fail(EXIT_USAGE, f"{spec.name}: {exc}") from None
            verdict = check_spec(spec, trace, budget)
            if verbose:
                click.echo(render_log(verdict.log), nl=False)
            agree = verdict.satisfied == result.satisfied and (
                not result.satisfied or verdict.expanded() == set(result.assignments)
            )
            lines = []
            if enumerate_:
                paths = [s.path for s in spec.slots]
                for a in sorted(result.assignments):
                    lines.append(" ".join(f"{p}={trace[i].name}" for p, i in zip(paths, a)))
            lines.append(f"assignments: {len(result.assignments)}")
            lines.append(f"solver: {'agrees' if agree else 'DISAGREES'}")
            lines.append("SATISFIED" if result.satisfied else "VIOLATED")
            out.append(_section(spec.name, "\n".join(lines) + "\n", several))
            if not agree:
                click.echo(f"{spec.name}: solver and oracle disagree", err=True)
                code = EXIT_INTERNAL
            elif not result.satisfied:
                click.echo(f"{spec.name}: specification not met", err=True)
                code = max(code, EXIT_VIOLATED)
        text = "".join(out)
        if report_path:
            _write(report_path, text)
        click.echo(text, nl=False)
        return code

    _run(go)


@cli.command()
@click.argument("file")
def fmt(file):
    """Pretty-print a .gspec file to stdout."""

    def go():
        try:
            doc = parse_specs(_read(file))
        except GuicheckError as exc:
            raise _Fail(EXIT_USAGE, f"{file}: {exc}") from None
        click.echo(format_doc(doc), nl=False)
        return EXIT_OK

    _run(go)


@cli.group()
def stdlib():
    """Inspect the spec library."""


@stdlib.command("list")
@click.option("--lib", "lib_dirs", multiple=True, help="Extra library directory; repeatable.")
@click.option("--allow-override", is_flag=True)
def stdlib_list(lib_dirs, allow_override):
    """List available library specs and where they come from."""

    def go():
        try:
            lib = load_library(lib_dirs, allow_override)
        except (IOFailure, GuicheckError) as exc:
            raise _Fail(EXIT_USAGE, str(exc)) from None
        for n in lib:
            click.echo(f"{n}\t{lib.source(n)}")
        return EXIT_OK

    _run(go)


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"{path}: {exc.strerror or exc}") from None


def main(argv: list[str] | None = None) -> None:
    # click reports its own usage errors with exit code 2, matching ours
    cli.main(args=argv, prog_name="guicheck")


if __name__ == "__main__":
    main()
