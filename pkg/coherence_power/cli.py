"""Command-line front end for coherence and coherence-power computations."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, TextIO

import colorlog

from .const import (
    DEFAULT_CIRCLE_POINTS,
    DEFAULT_SEED,
    DEFAULT_SWEEP_STEPS,
    DEFAULT_TORUS_POINTS,
    ExitCode,
    Measure,
    PowerKind,
)
from .core.channels import Channel
from .core.coherence import Observable, coherence
from .core.oracle import SearchConfig
from .core.power import (
    PowerResult,
    closed_form_power,
    cohering_power,
    decohering_power,
)
from .exceptions import (
    CoherencePowerError,
    SearchDimensionError,
    SpecError,
    UnsupportedError,
)
from .figures import (
    FIGURES,
    SweepSpec,
    Table,
    format_cell,
    run_sweep,
    table_records,
    write_csv,
)
from .helpers import parse_direction
from .specs import load_channel_spec, parse_channel, parse_observable, parse_state
from .verify import SUITE_ALL, SUITES, CheckResult, run_suites

_LOGGER = logging.getLogger(__name__)

FORMAT_TEXT = "text"
FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMATS = (FORMAT_TEXT, FORMAT_JSON, FORMAT_CSV)
STDOUT = "-"

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"


def setup_logging(verbosity: int) -> None:
    """Install a coloured console handler on the root logger."""
    level = {-1: logging.WARNING, 0: logging.INFO}.get(verbosity, logging.DEBUG)
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level)


def _search_config(args: argparse.Namespace) -> SearchConfig:
    try:
        return SearchConfig(
            circle_points=args.circle_points, torus_points=args.torus_points
        )
    except ValueError as err:
        raise SpecError("search", str(err)) from err


def _witness(result: PowerResult) -> Any:
    if isinstance(result.witness, tuple):
        return list(result.witness)
    return result.witness


def _emit(out: TextIO, fmt: str, record: dict[str, Any], text: str) -> None:
    if fmt == FORMAT_JSON:
        json.dump(record, out, sort_keys=False)
        out.write("\n")
    elif fmt == FORMAT_CSV:
        row = tuple(_cell(v) for v in record.values())
        write_csv(out, Table(tuple(record), [row]))
    else:
        out.write(text + "\n")


def _cell(value: Any) -> float | str:
    if value is None:
        return ""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, list):
        return ";".join(format_cell(float(v)) for v in value)
    return str(value)


def _write_output(out: TextIO, args: argparse.Namespace, table: Table) -> None:
    if args.output == STDOUT:
        _write_table(out, args.format, table)
        return
    with Path(args.output).open("w", encoding="utf-8", newline="") as stream:
        _write_table(stream, args.format, table)
    _LOGGER.info("Wrote %d rows to %s", len(table.rows), args.output)


def _write_table(out: TextIO, fmt: str, table: Table) -> None:
    if fmt == FORMAT_JSON:
        json.dump(table_records(table), out)
        out.write("\n")
    else:
        write_csv(out, table)


# ==================== coherence ====================


def cmd_coherence(args: argparse.Namespace, out: TextIO) -> ExitCode:
    """Print the coherence of a state in the eigenbasis of an observable."""
    rho = parse_state(args.state)
    k = parse_observable(args.obs)
    measure = Measure(args.measure)
    value = coherence(rho, k, measure)
    record = {
        "value": value.value,
        "measure": str(measure),
        "basis": value.basis_label,
    }
    text = (
        f"{measure} coherence {format_cell(value.value)} "
        f"(basis {value.basis_label})"
    )
    _emit(out, args.format, record, text)
    return ExitCode.OK


# ==================== power ====================


def _numeric_power(
    channel: Channel,
    k: Observable,
    measure: Measure,
    kind: PowerKind,
    search: SearchConfig,
) -> PowerResult:
    if kind is PowerKind.COHERING:
        return cohering_power(channel, k, measure)
    return decohering_power(channel, k, measure, search)


def _power_text(label: str, result: PowerResult) -> str:
    witness = _witness(result)
    shown = "-" if witness is None else witness
    return (
        f"{label}: {format_cell(result.value)} "
        f"(method {result.method}, witness {shown})"
    )


def cmd_power(args: argparse.Namespace, out: TextIO) -> ExitCode:
    """
    Print the cohering or decohering power of a channel.

    The closed form is used when the channel belongs to an analyzed family,
    the numeric definition otherwise. ``--certify`` computes both and prints
    their gap.
    """
    channel = parse_channel(args.channel)
    k = parse_observable(args.k, "k") if args.k else parse_observable(args.obs or "z")
    measure, kind = Measure(args.measure), PowerKind(args.kind)
    search = _search_config(args)

    closed = closed_form_power(channel, k, measure, kind)
    numeric = None
    if closed is None or args.certify:
        numeric = _numeric_power(channel, k, measure, kind, search)
    primary = closed or numeric
    if primary is None:
        msg = "No power could be computed"
        raise UnsupportedError(msg)

    record: dict[str, Any] = {
        "channel": channel.label,
        "basis": k.label,
        "measure": str(measure),
        "kind": str(kind),
        "value": primary.value,
        "method": str(primary.method),
        "witness": _witness(primary),
    }
    lines = [
        f"{kind} power of '{channel.label}' ({measure}, basis {k.label})",
        _power_text("value", primary),
    ]
    if args.certify:
        gap = None
        if closed is not None and numeric is not None:
            gap = abs(closed.value - numeric.value)
        record["closed_form"] = None if closed is None else closed.value
        record["numeric"] = None if numeric is None else numeric.value
        record["gap"] = gap
        if closed is None:
            lines.append("closed form: none for this channel")
        elif numeric is not None:
            lines.append(_power_text("numeric", numeric))
            lines.append(f"gap: {format_cell(gap or 0.0)}")
    _emit(out, args.format, record, "\n".join(lines))
    return ExitCode.OK


# ==================== figure ====================


def cmd_figure(args: argparse.Namespace, out: TextIO) -> ExitCode:
    """Write the data of a figure as CSV (or JSON records)."""
    _write_output(out, args, FIGURES[args.name]())
    return ExitCode.OK


# ==================== verify ====================


def cmd_verify(args: argparse.Namespace, out: TextIO) -> ExitCode:
    """Run verification suites; exit 1 when any check fails."""
    search = _search_config(args)
    results: list[CheckResult] = run_suites([args.suite], args.seed, search)
    failed = [r for r in results if not r.passed]
    if args.format == FORMAT_JSON:
        records = [
            {
                "name": r.name,
                "deviation": r.deviation,
                "tolerance": r.tolerance,
                "passed": r.passed,
                "informational": r.informational,
            }
            for r in results
        ]
        json.dump(records, out)
        out.write("\n")
    else:
        for result in results:
            out.write(result.line() + "\n")
        out.write(f"{len(results)} checks, {len(failed)} failed\n")
    if failed:
        _LOGGER.warning("%d of %d checks failed", len(failed), len(results))
        return ExitCode.VERIFICATION_FAILED
    return ExitCode.OK


# ==================== sweep ====================


def _sweep_spec(args: argparse.Namespace) -> SweepSpec:
    texts = args.k or ["x", "y", "z"]
    try:
        directions = [parse_direction(text) for text in texts]
    except ValueError as err:
        raise SpecError("k", str(err)) from err
    return SweepSpec(
        channel=load_channel_spec(args.channel),
        parameter=args.param,
        lo=args.lo,
        hi=args.hi,
        steps=args.steps,
        directions=directions,
        direction_labels=[text.strip() for text in texts],
        measure=Measure(args.measure),
        kind=PowerKind(args.kind),
        search=_search_config(args),
    )


def cmd_sweep(args: argparse.Namespace, out: TextIO) -> ExitCode:
    """Sweep one channel parameter and write the powers per direction."""
    _write_output(out, args, run_sweep(_sweep_spec(args), args.threads))
    return ExitCode.OK


# ==================== Parser ====================


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_mutually_exclusive_group()
    group.add_argument(
        "-v", "--verbose", action="store_const", const=1, default=0, dest="verbosity"
    )
    group.add_argument(
        "-q", "--quiet", action="store_const", const=-1, dest="verbosity"
    )
    common.add_argument("--format", choices=FORMATS, default=FORMAT_TEXT)
    return common


def _add_search_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--circle-points", type=int, default=DEFAULT_CIRCLE_POINTS)
    parser.add_argument("--torus-points", type=int, default=DEFAULT_TORUS_POINTS)


def _add_power_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--measure", choices=list(Measure), default=Measure.SKEW)
    parser.add_argument("--kind", choices=list(PowerKind), default=PowerKind.COHERING)
    _add_search_arguments(parser)


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with all subcommands."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="coherence-power",
        description="Coherence and cohering/decohering power of quantum channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coh = sub.add_parser("coherence", parents=[common], help="Coherence of a state")
    coh.add_argument("--state", required=True, help="plus, bloch:x,y,z, ket:a,b")
    coh.add_argument("--obs", default="z", help="Pauli name or direction")
    coh.add_argument("--measure", choices=list(Measure), default=Measure.SKEW)
    coh.set_defaults(handler=cmd_coherence)

    power = sub.add_parser("power", parents=[common], help="Power of a channel")
    power.add_argument("--channel", required=True, help="Name, JSON or JSON file")
    basis = power.add_mutually_exclusive_group()
    basis.add_argument("--k", help="Qubit direction or axis name")
    basis.add_argument("--obs", help="Pauli name such as z or xz (default z)")
    power.add_argument("--certify", action="store_true")
    _add_power_arguments(power)
    power.set_defaults(handler=cmd_power)

    figure = sub.add_parser("figure", parents=[common], help="Write figure data")
    figure.add_argument("name", choices=sorted(FIGURES))
    figure.add_argument("output", nargs="?", default=STDOUT)
    figure.set_defaults(handler=cmd_figure)

    verify = sub.add_parser("verify", parents=[common], help="Run verification")
    verify.add_argument("--suite", choices=[SUITE_ALL, *SUITES], default=SUITE_ALL)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_search_arguments(verify)
    verify.set_defaults(handler=cmd_verify)

    sweep = sub.add_parser("sweep", parents=[common], help="Sweep a parameter")
    sweep.add_argument("--channel", required=True, help="JSON template or file")
    sweep.add_argument("--param", required=True)
    sweep.add_argument("--lo", type=float, required=True)
    sweep.add_argument("--hi", type=float, required=True)
    sweep.add_argument("--steps", type=int, default=DEFAULT_SWEEP_STEPS)
    sweep.add_argument("--k", action="append", help="Direction, repeatable")
    sweep.add_argument("--output", default=STDOUT)
    sweep.add_argument("--threads", type=int)
    _add_power_arguments(sweep)
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run the CLI and return the exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbosity)
    if args.format == FORMAT_TEXT and args.command in ("figure", "sweep"):
        args.format = FORMAT_CSV
    try:
        return int(args.handler(args, out or sys.stdout))
    except SpecError as err:
        _LOGGER.error("%s", err)  # noqa: TRY400
        return ExitCode.SPEC_ERROR
    except (UnsupportedError, SearchDimensionError) as err:
        _LOGGER.error("Unsupported: %s", err)  # noqa: TRY400
        return ExitCode.UNSUPPORTED
    except CoherencePowerError as err:
        _LOGGER.error("Invalid input: %s", err)  # noqa: TRY400
        return ExitCode.SPEC_ERROR
    except OSError as err:
        _LOGGER.error("I/O error: %s", err)  # noqa: TRY400
        return ExitCode.IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
