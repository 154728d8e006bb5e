"""Event-driven simulation of logic gates placed in time-space.

Gates sit at time-space positions, so every net has a real travel time:
the Euclidean distance from the driving element to each consuming gate.
A stimulus on an input terminal starts signals moving; a gate re-evaluates
whenever an arrival changes what it sees and, if its output state changes,
emits a new value ``operating_time`` later.

Values are three-valued.  Before anything arrives a net is Undefined, and
Undefined propagates through the usual truth-table extension: AND with a
Zero input is Zero even if the other input is still Undefined, OR with a
One input is One, and otherwise any Undefined input yields Undefined.

Outputs also carry a provisional flag.  An output is final only once every
input of the gate has arrived and is itself final; a terminal value is
final only if it comes from the last stimulus on that terminal.  A gate
can therefore emit a perfectly definite but provisional value (computed
before a slow input arrived) and confirm or revise it later.  The returned
timeline keeps those provisional events visible; Undefined-valued changes
are dropped unless ``emit_undefined`` is set, and the flag never changes
what propagates inside the simulation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import CycleError, InvalidInputError, NetlistError
from .timespace import TimePoint, _require_finite


class LogicValue(Enum):
    UNDEFINED = "U"
    ZERO = "0"
    ONE = "1"

    def __str__(self) -> str:
        return self.value


GATE_KINDS = ("AND", "OR", "XOR", "NOT", "BUF")


def logic_eval(kind: str, values: Sequence[LogicValue]) -> LogicValue:
    """Three-valued evaluation of one gate kind over its input values."""
    if kind == "AND":
        if LogicValue.ZERO in values:
            return LogicValue.ZERO
        if LogicValue.UNDEFINED in values:
            return LogicValue.UNDEFINED
        return LogicValue.ONE
    if kind == "OR":
        if LogicValue.ONE in values:
            return LogicValue.ONE
        if LogicValue.UNDEFINED in values:
            return LogicValue.UNDEFINED
        return LogicValue.ZERO
    if kind == "XOR":
        if LogicValue.UNDEFINED in values:
            return LogicValue.UNDEFINED
        ones = sum(1 for v in values if v is LogicValue.ONE)
        return LogicValue.ONE if ones % 2 else LogicValue.ZERO
    if kind == "NOT":
        (v,) = values
        if v is LogicValue.UNDEFINED:
            return LogicValue.UNDEFINED
        return LogicValue.ZERO if v is LogicValue.ONE else LogicValue.ONE
    if kind == "BUF":
        (v,) = values
        return v
    raise InvalidInputError(f"unknown gate kind {kind!r}")


@dataclass(frozen=True)
class Gate:
    """One placed gate: where it sits, how long it works, what it drives."""

    id: str
    kind: str
    position: TimePoint
    operating_time: float
    inputs: Tuple[str, ...]
    output_net: str

    def __post_init__(self):
        if not self.id:
            raise NetlistError("gate id must be non-empty")
        if self.kind not in GATE_KINDS:
            raise NetlistError(f"gate {self.id}: unknown kind {self.kind!r}")
        object.__setattr__(self, "inputs", tuple(self.inputs))
        arity = len(self.inputs)
        if self.kind in ("NOT", "BUF"):
            if arity != 1:
                raise NetlistError(f"gate {self.id}: {self.kind} takes exactly 1 input")
        elif arity < 2:
            raise NetlistError(f"gate {self.id}: {self.kind} takes at least 2 inputs")
        if not self.output_net:
            raise NetlistError(f"gate {self.id}: output net must be non-empty")
        if self.output_net in self.inputs:
            raise NetlistError(f"gate {self.id}: output net feeds back into its own inputs")
        t = _require_finite("operating_time", self.operating_time)
        if t < 0.0:
            raise NetlistError(f"gate {self.id}: operating_time must be >= 0")
        object.__setattr__(self, "operating_time", t)


@dataclass(frozen=True)
class Stimulus:
    """A defined value applied to an input terminal at a given time."""

    input_name: str
    time: float
    value: LogicValue

    def __post_init__(self):
        if not self.input_name:
            raise NetlistError("stimulus input name must be non-empty")
        object.__setattr__(self, "time", _require_finite("stimulus time", self.time))
        if self.value not in (LogicValue.ZERO, LogicValue.ONE):
            raise NetlistError(
                f"stimulus on {self.input_name!r} must be Zero or One, got {self.value}"
            )


@dataclass(frozen=True)
class TimedEvent:
    """One gate output change: when, who, on which net, what, how firm."""

    time: float
    gate_id: str
    net: str
    value: LogicValue
    provisional: bool


@dataclass(frozen=True)
class Completion:
    """Settling record of one declared output."""

    time: Optional[float]
    value: LogicValue
    settled: bool


@dataclass(frozen=True)
class Netlist:
    """Placed gates, input terminals, declared outputs, and stimuli.

    Every net has exactly one driver: an input terminal drives the net of
    its own name, a gate drives its output net.  Construction validates
    references, driver uniqueness, and acyclicity.
    """

    gates: Tuple[Gate, ...]
    inputs: Mapping[str, TimePoint]
    outputs: Mapping[str, str]
    stimuli: Tuple[Stimulus, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "inputs", dict(self.inputs))
        object.__setattr__(self, "outputs", dict(self.outputs))
        object.__setattr__(self, "stimuli", tuple(self.stimuli))
        _validate(self)

    def element_positions(self) -> Dict[str, TimePoint]:
        """Positions of every element (terminals first, then gates)."""
        positions = dict(self.inputs)
        for gate in self.gates:
            positions[gate.id] = gate.position
        return positions

    def final_stimulus_times(self) -> Dict[str, float]:
        """Per terminal, the time of its last stimulus (the final value)."""
        last: Dict[str, float] = {}
        for stim in self.stimuli:
            prev = last.get(stim.input_name)
            if prev is None or stim.time > prev:
                last[stim.input_name] = stim.time
        return last


def _validate(netlist: Netlist) -> None:
    drivers: Dict[str, str] = {}
    for name in netlist.inputs:
        if not name:
            raise NetlistError("input terminal name must be non-empty")
        drivers[name] = name
    seen_ids = set(netlist.inputs)
    for gate in netlist.gates:
        if gate.id in seen_ids:
            raise NetlistError(f"duplicate element id {gate.id!r}")
        seen_ids.add(gate.id)
        if gate.output_net in drivers:
            raise NetlistError(f"net {gate.output_net!r} has more than one driver")
        drivers[gate.output_net] = gate.id
    for gate in netlist.gates:
        for net in gate.inputs:
            if net not in drivers:
                raise NetlistError(f"gate {gate.id}: input net {net!r} has no driver")
    for name, net in netlist.outputs.items():
        if not name:
            raise NetlistError("output name must be non-empty")
        if net not in drivers:
            raise NetlistError(f"output {name!r}: net {net!r} has no driver")
    seen_stimuli = set()
    for stim in netlist.stimuli:
        if stim.input_name not in netlist.inputs:
            raise NetlistError(f"stimulus on unknown input {stim.input_name!r}")
        key = (stim.input_name, stim.time)
        if key in seen_stimuli:
            raise NetlistError(
                f"conflicting stimuli on {stim.input_name!r} at t={stim.time!r}"
            )
        seen_stimuli.add(key)
    _reject_cycles(netlist, drivers)


def _reject_cycles(netlist: Netlist, drivers: Mapping[str, str]) -> None:
    gate_by_id = {gate.id: gate for gate in netlist.gates}
    # successors in signal direction: driver gate -> consuming gates
    succ: Dict[str, List[str]] = {gid: [] for gid in gate_by_id}
    for gate in netlist.gates:
        for net in gate.inputs:
            driver = drivers[net]
            if driver in gate_by_id:
                succ[driver].append(gate.id)
    color: Dict[str, int] = {}  # 1 = on stack, 2 = done
    for start in sorted(gate_by_id):
        if color.get(start):
            continue
        stack = [(start, iter(succ[start]))]
        color[start] = 1
        path = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                state = color.get(nxt)
                if state == 1:
                    raise CycleError(path[path.index(nxt):] + [nxt])
                if state is None:
                    color[nxt] = 1
                    path.append(nxt)
                    stack.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                path.pop()
                stack.pop()


def simulate(netlist: Netlist, emit_undefined: bool = False) -> List[TimedEvent]:
    """Run the netlist and return its timeline of gate output changes.

    The timeline is sorted by time, ties broken by (gate_id, net).  A gate
    emits whenever its evaluated (value, finality) pair differs from its
    last emission; unchanged outputs are suppressed.  Undefined-valued
    changes still propagate to downstream gates but only appear in the
    returned list when ``emit_undefined`` is set.
    """
    if not netlist.stimuli:
        raise InvalidInputError("simulate requires at least one stimulus")

    gate_by_id = {gate.id: gate for gate in netlist.gates}
    driver_pos: Dict[str, TimePoint] = dict(netlist.inputs)
    for gate in netlist.gates:
        driver_pos[gate.output_net] = gate.position
    sinks: Dict[str, List[Gate]] = {}
    for gate in sorted(netlist.gates, key=lambda g: g.id):
        for net in gate.inputs:
            sinks.setdefault(net, []).append(gate)

    last_stim = netlist.final_stimulus_times()
    # heap entries: (time, gate_id, net, seq, value, final); seq keeps
    # comparisons away from LogicValue and makes ties reproducible
    heap: List[Tuple[float, str, str, int, LogicValue, bool]] = []
    seq = 0
    for stim in netlist.stimuli:
        final = stim.time == last_stim[stim.input_name]
        origin = netlist.inputs[stim.input_name]
        for sink in sinks.get(stim.input_name, ()):
            arrival = stim.time + origin.distance_to(sink.position)
            heapq.heappush(heap, (arrival, sink.id, stim.input_name, seq, stim.value, final))
            seq += 1

    views: Dict[str, Dict[str, Tuple[LogicValue, bool]]] = {gid: {} for gid in gate_by_id}
    last_out: Dict[str, Tuple[LogicValue, bool]] = {
        gid: (LogicValue.UNDEFINED, False) for gid in gate_by_id
    }
    events: List[TimedEvent] = []

    while heap:
        time, gid, net, _, value, final = heapq.heappop(heap)
        view = views[gid]
        view[net] = (value, final)
        # batch every arrival that shares this evaluation instant and gate
        while heap and heap[0][0] == time and heap[0][1] == gid:
            _, _, net2, _, value2, final2 = heapq.heappop(heap)
            view[net2] = (value2, final2)

        gate = gate_by_id[gid]
        seen = [view.get(n) for n in gate.inputs]
        out_value = logic_eval(gate.kind, [s[0] if s else LogicValue.UNDEFINED for s in seen])
        out_final = all(s is not None and s[1] for s in seen)
        if (out_value, out_final) == last_out[gid]:
            continue
        last_out[gid] = (out_value, out_final)
        emit_time = time + gate.operating_time
        events.append(TimedEvent(emit_time, gid, gate.output_net, out_value, not out_final))
        for sink in sinks.get(gate.output_net, ()):
            arrival = emit_time + gate.position.distance_to(sink.position)
            heapq.heappush(heap, (arrival, sink.id, gate.output_net, seq, out_value, out_final))
            seq += 1

    if not emit_undefined:
        events = [e for e in events if e.value is not LogicValue.UNDEFINED]
    events.sort(key=lambda e: (e.time, e.gate_id, e.net))
    return events


def completion_times(
    timeline: Sequence[TimedEvent],
    outputs: Mapping[str, str],
) -> Dict[str, Completion]:
    """Per declared output, when (and whether) it settled.

    An output settles at its last non-provisional event; once final an
    output never changes again.  Outputs with only provisional events, or
    with no events at all on their net, are reported as never settled.
    """
    by_net: Dict[str, List[TimedEvent]] = {}
    for event in timeline:
        by_net.setdefault(event.net, []).append(event)
    result: Dict[str, Completion] = {}
    for name, net in outputs.items():
        events = by_net.get(net, [])
        finals = [e for e in events if not e.provisional]
        if finals:
            last = finals[-1]
            result[name] = Completion(last.time, last.value, True)
        elif events:
            result[name] = Completion(None, events[-1].value, False)
        else:
            result[name] = Completion(None, LogicValue.UNDEFINED, False)
    return result


ADDER_ELEMENTS = ("a", "b", "cin", "AND1", "XOR1", "AND2", "XOR2", "OR1")

StimulusSpec = Union[Sequence[Stimulus], Mapping[str, Union[int, LogicValue]], None]


def _as_value(value: Union[int, LogicValue]) -> LogicValue:
    if isinstance(value, LogicValue):
        return value
    if value in (0, 1):
        return LogicValue.ONE if value else LogicValue.ZERO
    raise InvalidInputError(f"logic value must be 0 or 1, got {value!r}")


def build_one_bit_adder(
    placement: Optional[Mapping[str, TimePoint]] = None,
    operating_time: float = 1.0,
    stimuli: StimulusSpec = None,
) -> Netlist:
    """A placed 1-bit full adder.

    Wiring: aANDb = a & b; aXORb = a ^ b; cinANDaXORb = cin & aXORb;
    sum = aXORb ^ cin; cout = aANDb | cinANDaXORb.

    ``placement`` must cover the inputs a, b, cin and the gates AND1,
    XOR1, AND2, XOR2, OR1; omit it to put everything at the origin.
    ``stimuli`` may be a mapping like ``{"a": 1, "b": 1, "cin": 0}``
    (all applied at t=0) or an explicit stimulus sequence.
    """
    if placement is None:
        placement = {name: TimePoint(0.0, 0.0) for name in ADDER_ELEMENTS}
    for name in ADDER_ELEMENTS:
        if name not in placement:
            raise InvalidInputError(f"placement is missing an entry for {name!r}")
    at = placement
    gates = (
        Gate("AND1", "AND", at["AND1"], operating_time, ("a", "b"), "aANDb"),
        Gate("XOR1", "XOR", at["XOR1"], operating_time, ("a", "b"), "aXORb"),
        Gate("AND2", "AND", at["AND2"], operating_time, ("cin", "aXORb"), "cinANDaXORb"),
        Gate("XOR2", "XOR", at["XOR2"], operating_time, ("aXORb", "cin"), "sum"),
        Gate("OR1", "OR", at["OR1"], operating_time, ("aANDb", "cinANDaXORb"), "cout"),
    )
    if stimuli is None:
        stim_tuple: Tuple[Stimulus, ...] = ()
    elif isinstance(stimuli, Mapping):
        stim_tuple = tuple(
            Stimulus(name, 0.0, _as_value(value)) for name, value in stimuli.items()
        )
    else:
        stim_tuple = tuple(stimuli)
    return Netlist(
        gates=gates,
        inputs={"a": at["a"], "b": at["b"], "cin": at["cin"]},
        outputs={"sum": "sum", "cout": "cout"},
        stimuli=stim_tuple,
    )


def demo_placement(layout: str = "left") -> Dict[str, TimePoint]:
    """The spread-out adder placement used by the bundled diagrams.

    Inputs sit on the y axis, gates at unit spacing on the x axis; the
    ``layout`` picks whether XOR2 sits at (-1,0) (left) or (+1,0) (right).
    The spacing is a presentation choice, not a physical claim.
    """
    if layout not in ("left", "right"):
        raise InvalidInputError(f"layout must be 'left' or 'right', got {layout!r}")
    xor2 = TimePoint(-1.0, 0.0) if layout == "left" else TimePoint(1.0, 0.0)
    return {
        "a": TimePoint(0.0, 1.0),
        "b": TimePoint(0.0, 2.0),
        "cin": TimePoint(0.0, 3.0),
        "AND1": TimePoint(1.0, 0.0),
        "XOR1": TimePoint(2.0, 0.0),
        "AND2": TimePoint(3.0, 0.0),
        "XOR2": xor2,
        "OR1": TimePoint(4.0, 0.0),
    }
