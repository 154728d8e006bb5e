"""On-disk formats: netlist text, JSON scenarios, CSV emission.

All formats are plain text so golden files diff cleanly.  Numbers are
written with '.' as the decimal separator in the shortest representation
that round-trips exactly, so re-parsing any emitted CSV recovers the
original values bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .bus import BusScenario, BusTimeline
from .dispersion import ProcessorSpec
from .distributed import DistributedResult, DistributedScenario
from .errors import FileFormatError
from .gates import GATE_KINDS, Gate, LogicValue, Netlist, Stimulus, TimedEvent
from .timespace import ComputingElement, TimePoint


def _fmt(value: Union[int, float]) -> str:
    if isinstance(value, bool):
        raise TypeError("boolean has no CSV number form")
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


# ---------------------------------------------------------------- netlist

def parse_netlist(text: str, source: str = "<netlist>") -> Netlist:
    """Parse the line-based netlist format.

    One statement per line, '#' starts a comment::

        INPUT <name> <x> <y>
        GATE <id> <AND|OR|XOR|NOT|BUF> <x> <y> <op_time> <out_net> <in_net...>
        OUTPUT <name> <net>
        SET <input_name> <time> <0|1>

    Coordinates and times are decimal time units (seconds).
    """
    inputs: Dict[str, TimePoint] = {}
    gates: List[Gate] = []
    outputs: Dict[str, str] = {}
    stimuli: List[Stimulus] = []

    def fail(lineno: int, message: str) -> FileFormatError:
        return FileFormatError(f"{source}, line {lineno}: {message}")

    def number(token: str, lineno: int, what: str) -> float:
        try:
            return float(token)
        except ValueError:
            raise fail(lineno, f"{what} must be a number, got {token!r}") from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0].upper()
        if keyword == "INPUT":
            if len(tokens) != 4:
                raise fail(lineno, "INPUT takes: name x y")
            name = tokens[1]
            if name in inputs:
                raise fail(lineno, f"duplicate input {name!r}")
            inputs[name] = TimePoint(number(tokens[2], lineno, "x"),
                                     number(tokens[3], lineno, "y"))
        elif keyword == "GATE":
            if len(tokens) < 8:
                raise fail(lineno, "GATE takes: id kind x y op_time out_net in_net...")
            kind = tokens[2].upper()
            if kind not in GATE_KINDS:
                raise fail(lineno, f"unknown gate kind {tokens[2]!r}")
            try:
                gates.append(Gate(
                    id=tokens[1],
                    kind=kind,
                    position=TimePoint(number(tokens[3], lineno, "x"),
                                       number(tokens[4], lineno, "y")),
                    operating_time=number(tokens[5], lineno, "op_time"),
                    inputs=tuple(tokens[7:]),
                    output_net=tokens[6],
                ))
            except ValueError as exc:
                raise fail(lineno, str(exc)) from None
        elif keyword == "OUTPUT":
            if len(tokens) != 3:
                raise fail(lineno, "OUTPUT takes: name net")
            if tokens[1] in outputs:
                raise fail(lineno, f"duplicate output {tokens[1]!r}")
            outputs[tokens[1]] = tokens[2]
        elif keyword == "SET":
            if len(tokens) != 4:
                raise fail(lineno, "SET takes: input_name time 0|1")
            if tokens[3] not in ("0", "1"):
                raise fail(lineno, f"stimulus value must be 0 or 1, got {tokens[3]!r}")
            value = LogicValue.ONE if tokens[3] == "1" else LogicValue.ZERO
            stimuli.append(Stimulus(tokens[1], number(tokens[2], lineno, "time"), value))
        else:
            raise fail(lineno, f"unknown statement {tokens[0]!r}")
    try:
        return Netlist(gates=tuple(gates), inputs=inputs, outputs=outputs,
                       stimuli=tuple(stimuli))
    except ValueError as exc:
        raise FileFormatError(f"{source}: {exc}") from None


def read_netlist(path: Union[str, Path]) -> Netlist:
    path = Path(path)
    return parse_netlist(path.read_text(), source=str(path))


# --------------------------------------------------------- processor CSV

PROCESSOR_CSV_HEADER = ("name", "year", "transistors", "die_area_mm2", "clock_mhz")


def read_processor_csv(path: Union[str, Path]) -> List[ProcessorSpec]:
    """Read processor records; die area in mm² and clock in MHz convert to SI."""
    path = Path(path)
    with path.open(newline="") as handle:
        rows = list(csv.reader(handle))
    rows = [row for row in rows if row]  # blank lines are harmless
    if not rows:
        raise FileFormatError(f"{path}: empty file, expected header "
                              + ",".join(PROCESSOR_CSV_HEADER))
    header = tuple(cell.strip() for cell in rows[0])
    if header != PROCESSOR_CSV_HEADER:
        raise FileFormatError(
            f"{path}: bad header {','.join(header)!r}, "
            f"expected {','.join(PROCESSOR_CSV_HEADER)!r}"
        )
    if len(rows) == 1:
        raise FileFormatError(f"{path}: no data rows after header")

    specs = []
    for rownum, row in enumerate(rows[1:], start=2):
        if len(row) != len(PROCESSOR_CSV_HEADER):
            raise FileFormatError(f"{path}, row {rownum}: expected "
                                  f"{len(PROCESSOR_CSV_HEADER)} fields, got {len(row)}")
        record = dict(zip(PROCESSOR_CSV_HEADER, (cell.strip() for cell in row)))

        def cell(column: str, convert, rownum=rownum, record=record):
            try:
                return convert(record[column])
            except ValueError:
                raise FileFormatError(
                    f"{path}, row {rownum}, column {column}: "
                    f"not a number: {record[column]!r}"
                ) from None

        try:
            specs.append(ProcessorSpec(
                name=record["name"],
                year=cell("year", int),
                transistor_count=cell("transistors", float),
                die_area=cell("die_area_mm2", float) * 1e-6,
                clock_frequency=cell("clock_mhz", float) * 1e6,
            ))
        except FileFormatError:
            raise
        except ValueError as exc:
            raise FileFormatError(f"{path}, row {rownum}: {exc}") from None
    return specs


# ------------------------------------------------------- JSON scenarios

def _json_object(path: Path):
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return data


def _num(obj: Mapping, key: str, context: str) -> float:
    if key not in obj:
        raise FileFormatError(f"{context}: missing key {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FileFormatError(f"{context}: key {key!r} must be a number, got {value!r}")
    return float(value)


def _point(obj: Mapping, context: str) -> TimePoint:
    return TimePoint(_num(obj, "x", context), _num(obj, "y", context),
                     _num(obj, "z", context) if "z" in obj else 0.0)


def read_bus_scenario(path: Union[str, Path]) -> BusScenario:
    """Read a bus scenario: cores[{x,y,t_p}], bus{x,y}, word_transfer_time."""
    path = Path(path)
    data = _json_object(path)
    if "cores" not in data or not isinstance(data["cores"], list):
        raise FileFormatError(f"{path}: missing list key 'cores'")
    if "bus" not in data or not isinstance(data["bus"], dict):
        raise FileFormatError(f"{path}: missing object key 'bus'")
    cores = []
    for i, core in enumerate(data["cores"]):
        context = f"{path}: cores[{i}]"
        if not isinstance(core, dict):
            raise FileFormatError(f"{context}: must be an object")
        cores.append(ComputingElement(
            id=str(core.get("id", f"core{i}")),
            position=_point(core, context),
            processing_time=_num(core, "t_p", context),
        ))
    try:
        return BusScenario(
            cores=tuple(cores),
            bus_position=_point(data["bus"], f"{path}: bus"),
            word_transfer_time=_num(data, "word_transfer_time", str(path)),
        )
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def read_distributed_scenario(path: Union[str, Path]) -> DistributedScenario:
    """Read a distributed scenario: orchestrator{x,y,t_init}, fellows[{x,y,work}],
    dispatch_time, collect_time, closing_time."""
    path = Path(path)
    data = _json_object(path)
    if "orchestrator" not in data or not isinstance(data["orchestrator"], dict):
        raise FileFormatError(f"{path}: missing object key 'orchestrator'")
    if "fellows" not in data or not isinstance(data["fellows"], list):
        raise FileFormatError(f"{path}: missing list key 'fellows'")
    orch_obj = data["orchestrator"]
    orchestrator = ComputingElement(
        id=str(orch_obj.get("id", "orchestrator")),
        position=_point(orch_obj, f"{path}: orchestrator"),
        processing_time=_num(orch_obj, "t_init", f"{path}: orchestrator"),
    )
    fellows = []
    for i, fellow in enumerate(data["fellows"]):
        context = f"{path}: fellows[{i}]"
        if not isinstance(fellow, dict):
            raise FileFormatError(f"{context}: must be an object")
        fellows.append(ComputingElement(
            id=str(fellow.get("id", f"fellow{i}")),
            position=_point(fellow, context),
            processing_time=_num(fellow, "work", context),
        ))
    try:
        return DistributedScenario(
            orchestrator=orchestrator,
            fellows=tuple(fellows),
            dispatch_time=_num(data, "dispatch_time", str(path)),
            collect_time=_num(data, "collect_time", str(path)),
            closing_time=_num(data, "closing_time", str(path)),
        )
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


# -------------------------------------------------------- CSV emission

def format_history_csv(rows: Sequence[Tuple[int, float, float, float]]) -> str:
    return _csv_text(
        ("year", "proc_transfer_rel", "cache_transfer_rel", "dispersion"),
        [(str(year), _fmt(proc), _fmt(cache), _fmt(disp))
         for year, proc, cache, disp in rows],
    )


def format_timeline_csv(timeline: Sequence[TimedEvent]) -> str:
    return _csv_text(
        ("time", "gate", "net", "value", "provisional"),
        [(_fmt(e.time), e.gate_id, e.net, str(e.value), "1" if e.provisional else "0")
         for e in timeline],
    )


def format_bus_csv(timeline: BusTimeline) -> str:
    return _csv_text(
        ("core", "request_sent", "request_arrived", "grant_issued",
         "grant_arrived", "data_at_bus", "message_done"),
        [(r.core_id, _fmt(r.request_sent), _fmt(r.request_arrived),
          _fmt(r.grant_issued), _fmt(r.grant_arrived),
          _fmt(r.data_arrived_at_bus), _fmt(r.message_done))
         for r in timeline.cores],
    )


def format_sweep_csv(pairs: Sequence[Tuple[int, float]]) -> str:
    return _csv_text(
        ("cores", "total_completion"),
        [(str(n), _fmt(total)) for n, total in pairs],
    )


def format_distributed_csv(result: DistributedResult) -> str:
    return _csv_text(
        ("fellow", "command_sent", "started", "finished", "result_arrived",
         "reception_start", "reception_end"),
        [(f.fellow_id, _fmt(f.command_sent), _fmt(f.started), _fmt(f.finished),
          _fmt(f.result_arrived), _fmt(f.reception_start), _fmt(f.reception_end))
         for f in result.fellows],
    )


def format_surface_csv(
    alphas: Sequence[float],
    ns: Sequence[float],
    surface,
) -> str:
    rows = []
    for i, alpha in enumerate(alphas):
        for j, n in enumerate(ns):
            rows.append((_fmt(float(alpha)), _fmt(float(n)), _fmt(float(surface[i][j]))))
    return _csv_text(("alpha", "n", "efficiency"), rows)
