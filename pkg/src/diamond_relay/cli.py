"""Command-line frontend: analyze, bound, certify, sweep.

Machine-readable output (JSON or flat CSV) goes to stdout or --output;
everything human-oriented goes to stderr. Exit codes: 0 on success (and on a
certified instance), 1 when certify ran fine but the instance is not
certified, 2 on any input problem.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from pathlib import Path
from typing import IO, Sequence

from .channel_model import ChannelSpec, LinkCapacities, derive_capacities, induced_capacities
from .cutset_lp import solve_bound
from .errors import DiamondRelayError, DomainError
from .experiments import (
    Conditioning,
    ExponentialUnitMean,
    LogUniform,
    SweepConfig,
    iter_records,
    summarize,
    write_records_csv,
    write_summary_json,
)
from .optimality import certify_capacities
from .sr_rate import sr_rate_min_form

EXIT_OK = 0
EXIT_UNCERTIFIED = 1
EXIT_INPUT_ERROR = 2

_CAPACITY_FIELDS = ("c01", "c02", "c13", "c23")
_OPTIONAL_CAPACITY_FIELDS = ("c012", "c123")
_SPEC_FIELDS = frozenset(
    (
        "g01",
        "g02",
        "g13",
        "g23",
        "sigma1_sq",
        "sigma2_sq",
        "sigma3_sq",
        "p_s",
        "p_r1",
        "p_r2",
    )
)

_CONDITIONING_BY_FLAG = {
    "unconditioned": Conditioning.UNCONDITIONED,
    "force-product-equal": Conditioning.FORCE_PRODUCT_EQUAL,
    "force-mirrored": Conditioning.FORCE_MIRRORED,
}


def _load_input(raw: str) -> dict[str, object]:
    """--input accepts a file path, inline JSON, or - for stdin."""
    if raw == "-":
        text = sys.stdin.read()
    elif raw.lstrip()[:1] in ("{", "["):
        text = raw
    else:
        try:
            text = Path(raw).read_text()
        except OSError as exc:
            raise DomainError(f"cannot read input file {raw}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError(f"input must be a JSON object, got {type(data).__name__}")
    return data


def _capacities_from_input(data: dict[str, object]) -> LinkCapacities:
    """Accept either a gain-space channel spec or a capacity-space object."""
    if _SPEC_FIELDS & set(data):
        return derive_capacities(ChannelSpec.from_dict(data))
    if any(key in data for key in _CAPACITY_FIELDS + _OPTIONAL_CAPACITY_FIELDS):
        allowed = set(_CAPACITY_FIELDS) | set(_OPTIONAL_CAPACITY_FIELDS)
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise DomainError(f"unknown capacity field(s): {', '.join(unknown)}")
        missing = sorted(set(_CAPACITY_FIELDS) - set(data))
        if missing:
            raise DomainError(f"missing capacity field(s): {', '.join(missing)}")
        return induced_capacities(
            data["c01"],  # type: ignore[arg-type]
            data["c02"],  # type: ignore[arg-type]
            data["c13"],  # type: ignore[arg-type]
            data["c23"],  # type: ignore[arg-type]
            c012=data.get("c012"),  # type: ignore[arg-type]
            c123=data.get("c123"),  # type: ignore[arg-type]
        )
    raise DomainError(
        "input must be a channel spec (g01, ..., p_r2) or link capacities (c01, c02, c13, c23)"
    )


def _format_scalar(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _flatten(payload: dict[str, object], prefix: str = "") -> dict[str, object]:
    flat: dict[str, object] = {}
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value, start=1):
                flat[f"{name}.{i}"] = item
        else:
            flat[name] = value
    return flat


def _open_output(path: str | None):
    if path is None:
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _write_payload(payload: dict[str, object], args: argparse.Namespace) -> None:
    with _open_output(args.output) as stream:
        if args.format == "json":
            json.dump(payload, stream, indent=2)
            stream.write("\n")
        else:
            flat = _flatten(payload)
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(flat.keys())
            writer.writerow([_format_scalar(v) for v in flat.values()])


def _cmd_analyze(args: argparse.Namespace) -> int:
    caps = _capacities_from_input(_load_input(args.input))
    rate = sr_rate_min_form(caps)
    _write_payload({"capacities": caps.to_dict(), "sr_rate": rate.to_dict()}, args)
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace) -> int:
    caps = _capacities_from_input(_load_input(args.input))
    _write_payload(solve_bound(caps).to_dict(), args)
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    caps = _capacities_from_input(_load_input(args.input))
    report = certify_capacities(caps)
    _write_payload(report.to_dict(), args)
    return EXIT_OK if report.capacity_certified else EXIT_UNCERTIFIED


def _parse_distribution(text: str) -> ExponentialUnitMean | LogUniform:
    if text == "exponential":
        return ExponentialUnitMean()
    if text.startswith("log-uniform:"):
        parts = text.split(":", 1)[1].split(",")
        if len(parts) != 2:
            raise DomainError("log-uniform takes two bounds, as in log-uniform:0.1,10")
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainError(f"log-uniform bounds must be numbers, got {text!r}") from None
        return LogUniform(lo, hi)
    raise DomainError(
        f"unknown distribution {text!r}; use 'exponential' or 'log-uniform:lo,hi'"
    )


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = SweepConfig(
        n_samples=args.n,
        seed=args.seed,
        gain_distribution=_parse_distribution(args.distribution),
        conditioning=_CONDITIONING_BY_FLAG[args.conditioning],
    )
    records = list(iter_records(config))
    summary = summarize(config, records)
    if args.output is not None:
        with open(args.output, "w", newline="") as stream:
            write_records_csv(config, records, stream)
        summary_path = Path(args.output).with_suffix(".summary.json")
        with open(summary_path, "w") as stream:
            write_summary_json(summary, stream)
    else:
        write_records_csv(config, records, sys.stdout)
        write_summary_json(summary, sys.stderr)
    return EXIT_OK


def _add_instance_io(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input",
        required=True,
        help="channel instance: path to a JSON file, inline JSON, or - for stdin",
    )
    parser.add_argument("--output", default=None, help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diamond-relay",
        description=(
            "Successive-relaying rates, half-duplex cut-set bounds, and capacity "
            "certification for the diamond relay channel."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="link capacities and the achievable rate")
    _add_instance_io(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("bound", help="half-duplex cut-set upper bound")
    _add_instance_io(p)
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser(
        "certify", help="check whether the alternating schedule achieves the bound"
    )
    _add_instance_io(p)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("sweep", help="seeded Monte Carlo sweep: CSV records plus a JSON summary")
    p.add_argument("--n", type=int, default=100, help="number of instances")
    p.add_argument("--seed", type=int, default=0, help="64-bit sweep seed")
    p.add_argument(
        "--conditioning",
        choices=tuple(_CONDITIONING_BY_FLAG),
        default="unconditioned",
    )
    p.add_argument(
        "--distribution",
        default="exponential",
        help="gain law: 'exponential' or 'log-uniform:lo,hi'",
    )
    p.add_argument(
        "--output",
        default=None,
        help=(
            "CSV path; the summary goes next to it with a .summary.json suffix. "
            "Without this, CSV goes to stdout and the summary to stderr."
        ),
    )
    p.set_defaults(handler=_cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DiamondRelayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
