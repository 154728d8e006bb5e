"""Command line front end: run the analyses, emit CSV tables and SVG diagrams.

Subcommands: dispersion, adder, gates, bus, distributed, amdahl.  All
outputs are deterministic; the environment variable TEMPOGRAPH_SPEED
overrides the default interaction speed (m/s) wherever meters are read.
Exit codes: 0 success, 1 bad input or file problem, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .bus import simulate_bus, sweep_cores
from .dispersion import history_table
from .distributed import efficiency_surface, simulate_distributed
from .errors import InvalidInputError
from .fileio import (
    format_bus_csv,
    format_distributed_csv,
    format_history_csv,
    format_surface_csv,
    format_sweep_csv,
    format_timeline_csv,
    read_bus_scenario,
    read_distributed_scenario,
    read_netlist,
    read_processor_csv,
)
from .gates import build_one_bit_adder, completion_times, demo_placement, simulate
from .render import RenderSpec, render_bus_svg, render_distributed_svg, render_timeline_svg
from .timespace import DEFAULT_INTERACTION_SPEED

SPEED_ENV_VAR = "TEMPOGRAPH_SPEED"


def _effective_speed(flag_value: Optional[float]) -> float:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(SPEED_ENV_VAR)
    if env is not None and env.strip():
        try:
            return float(env)
        except ValueError:
            raise InvalidInputError(
                f"{SPEED_ENV_VAR} must be a number, got {env!r}"
            ) from None
    return DEFAULT_INTERACTION_SPEED


def _parse_floats(text: str, what: str) -> List[float]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError:
            raise InvalidInputError(f"{what}: not a number: {token!r}") from None
    if not values:
        raise InvalidInputError(f"{what}: empty list")
    return values


def _parse_counts(text: str) -> List[int]:
    """Core counts as '1-16' or a comma list like '1,2,4,8'."""
    text = text.strip()
    if "-" in text and "," not in text:
        lo_text, _, hi_text = text.partition("-")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise InvalidInputError(f"bad count range {text!r}") from None
        if lo < 1 or hi < lo:
            raise InvalidInputError(f"bad count range {text!r}")
        return list(range(lo, hi + 1))
    counts = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            counts.append(int(token))
        except ValueError:
            raise InvalidInputError(f"bad count {token!r}") from None
    if not counts or any(n < 1 for n in counts):
        raise InvalidInputError(f"bad count list {text!r}")
    return counts


def _write(path_text: str, content: str) -> None:
    Path(path_text).write_text(content)


def _cmd_dispersion(args) -> None:
    specs = read_processor_csv(args.input)
    rows = history_table(specs, _effective_speed(args.speed))
    _write(args.out, format_history_csv(rows))
    print(f"wrote {args.out} ({len(rows)} rows)")


def _cmd_adder(args) -> None:
    netlist = build_one_bit_adder(
        placement=demo_placement(args.layout),
        operating_time=args.op_time,
        stimuli={"a": args.a, "b": args.b, "cin": args.cin},
    )
    timeline = simulate(netlist)
    svg = render_timeline_svg(
        timeline, netlist, RenderSpec(title=f"1-bit adder, {args.layout} layout")
    )
    _write(args.out, svg)
    csv_path = args.csv if args.csv else str(Path(args.out).with_suffix(".csv"))
    _write(csv_path, format_timeline_csv(timeline))
    for name, completion in sorted(completion_times(timeline, netlist.outputs).items()):
        print(f"{name} = {completion.value} settled at t={completion.time}")
    print(f"wrote {args.out} and {csv_path}")


def _cmd_gates(args) -> None:
    netlist = read_netlist(args.netlist)
    timeline = simulate(netlist, emit_undefined=args.emit_undefined)
    _write(args.out, format_timeline_csv(timeline))
    if args.svg:
        _write(args.svg, render_timeline_svg(timeline, netlist, RenderSpec(title="gate timeline")))
    for name, completion in sorted(completion_times(timeline, netlist.outputs).items()):
        state = f"settled at t={completion.time}" if completion.settled else "never settled"
        print(f"{name} = {completion.value} {state}")
    print(f"wrote {args.out} ({len(timeline)} events)")


def _cmd_bus(args) -> None:
    scenario = read_bus_scenario(args.scenario)
    if args.sweep:
        if args.svg:
            raise InvalidInputError("--svg applies to a single run, not to --sweep")
        pairs = sweep_cores(scenario, _parse_counts(args.sweep))
        _write(args.out, format_sweep_csv(pairs))
        print(f"wrote {args.out} ({len(pairs)} core counts)")
        return
    timeline = simulate_bus(scenario)
    _write(args.out, format_bus_csv(timeline))
    if args.svg:
        _write(args.svg, render_bus_svg(timeline, scenario, RenderSpec(title="shared bus")))
    print(f"grant order: {' '.join(timeline.grant_order)}")
    print(f"total completion: {timeline.total_completion}")
    print(f"wrote {args.out}")


def _cmd_distributed(args) -> None:
    scenario = read_distributed_scenario(args.scenario)
    result = simulate_distributed(scenario)
    _write(args.out, format_distributed_csv(result))
    if args.svg:
        _write(
            args.svg,
            render_distributed_svg(result, scenario, RenderSpec(title="distributed run")),
        )
    print(f"total time: {result.total_time}")
    print(f"critical fellow: {result.critical_fellow}")
    print(f"wrote {args.out}")


def _cmd_amdahl(args) -> None:
    alphas = _parse_floats(args.alpha, "--alpha")
    ns = _parse_floats(args.n, "--n")
    surface = efficiency_surface(alphas, ns)
    _write(args.out, format_surface_csv(alphas, ns, surface))
    print(f"wrote {args.out} ({len(alphas) * len(ns)} rows)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tempograph",
        description="Temporal-behavior analyses of placed computing systems.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("dispersion", help="score processor records from a CSV file")
    p.add_argument("--input", required=True, help="processor CSV "
                   "(name,year,transistors,die_area_mm2,clock_mhz)")
    p.add_argument("--out", required=True, help="history CSV to write")
    p.add_argument("--speed", type=float, default=None,
                   help="interaction speed in m/s (default 3e8, or TEMPOGRAPH_SPEED)")
    p.set_defaults(func=_cmd_dispersion)

    p = sub.add_parser("adder", help="simulate the demo 1-bit adder and draw it")
    p.add_argument("--layout", choices=("left", "right"), default="left",
                   help="XOR2 at (-1,0) or (+1,0)")
    p.add_argument("--out", required=True, help="SVG to write")
    p.add_argument("--csv", default=None,
                   help="timeline CSV to write (default: --out with .csv suffix)")
    p.add_argument("--op-time", type=float, default=1.0, help="gate operating time")
    p.add_argument("--a", type=int, choices=(0, 1), default=1)
    p.add_argument("--b", type=int, choices=(0, 1), default=1)
    p.add_argument("--cin", type=int, choices=(0, 1), default=0)
    p.set_defaults(func=_cmd_adder)

    p = sub.add_parser("gates", help="simulate a netlist file")
    p.add_argument("--netlist", required=True, help="netlist text file")
    p.add_argument("--out", required=True, help="timeline CSV to write")
    p.add_argument("--svg", default=None, help="also draw the timeline to this SVG")
    p.add_argument("--emit-undefined", action="store_true",
                   help="include Undefined-valued output changes in the timeline")
    p.set_defaults(func=_cmd_gates)

    p = sub.add_parser("bus", help="simulate cores contending for a shared bus")
    p.add_argument("--scenario", required=True, help="bus scenario JSON")
    p.add_argument("--out", required=True, help="CSV to write")
    p.add_argument("--svg", default=None, help="also draw the run to this SVG")
    p.add_argument("--sweep", default=None,
                   help="replicate the single core over counts ('1-16' or '1,2,4') "
                        "and write completion times instead")
    p.set_defaults(func=_cmd_bus)

    p = sub.add_parser("distributed", help="simulate an orchestrated distributed run")
    p.add_argument("--scenario", required=True, help="distributed scenario JSON")
    p.add_argument("--out", required=True, help="CSV to write")
    p.add_argument("--svg", default=None, help="also draw the run to this SVG")
    p.set_defaults(func=_cmd_distributed)

    p = sub.add_parser("amdahl", help="tabulate the parallel efficiency surface")
    p.add_argument("--alpha", required=True, help="comma list of parallel fractions")
    p.add_argument("--n", required=True, help="comma list of unit counts")
    p.add_argument("--out", required=True, help="alpha,n,efficiency CSV to write")
    p.set_defaults(func=_cmd_amdahl)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments and run one subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (InvalidInputError, OSError) as exc:
        print(f"tempograph: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
