"""Temporal dependence diagrams as deterministic SVG text.

Every element (terminal, gate, core, orchestrator, ...) gets a vertical
lane, ordered left to right by its projected time-space position; the
vertical axis is time, increasing upward.  Solid green vertical arrows
are payload work, dashed ones are provisional outputs, slanted lines are
transfers between lanes, and idle waiting is simply the blank stretch of
a lane.  Output is plain SVG text, byte-identical across runs on the
same input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from .bus import BusScenario, BusTimeline
from .distributed import DistributedResult, DistributedScenario
from .errors import InvalidInputError
from .gates import Netlist, TimedEvent
from .timespace import TimePoint

#: The vocabulary of drawn things; idle is the deliberate absence of one.
ARROW_KINDS = ("payload", "transfer", "idle", "provisional")

_COLORS = {
    "payload": "#2e8b2e",
    "provisional": "#2e8b2e",
    "transfer": "#4a6fb5",
    "req": "#c0392b",
    "grant": "#c0392b",
    "lane": "#d8d8d8",
    "axis": "#444444",
    "text": "#333333",
}


@dataclass(frozen=True)
class RenderSpec:
    """Canvas size, axis labels, and the time-to-pixel mapping."""

    width: int = 640
    height: int = 480
    title: str = ""
    time_label: str = "time"
    space_label: str = "position"
    #: pixels per time unit; None fits the full time range to the canvas
    time_scale: Optional[float] = None
    #: lane ordering projects positions to x + y_shear * y
    y_shear: float = 0.35

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise InvalidInputError("render dimensions must be positive")
        if self.time_scale is not None and self.time_scale <= 0:
            raise InvalidInputError("time_scale must be positive")


@dataclass(frozen=True)
class Arrow:
    """One drawn arrow between lane/time endpoints."""

    kind: str
    src_label: str
    t0: float
    dst_label: str
    t1: float
    label: str = ""
    dashed: bool = False


def classify_event(event: TimedEvent) -> str:
    """Arrow class of a timeline event: provisional or payload."""
    return "provisional" if event.provisional else "payload"


_MARGIN_LEFT = 64
_MARGIN_RIGHT = 24
_MARGIN_TOP = 34
_MARGIN_BOTTOM = 46


class _Canvas:
    """Minimal SVG string builder with fixed-precision coordinates."""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts: List[str] = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        ]

    def line(self, x1, y1, x2, y2, stroke, width=1.5, dashed=False):
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" stroke-width="{width:g}"{dash}/>'
        )

    def arrow(self, x1, y1, x2, y2, stroke, width=1.5, dashed=False, head=6.0):
        self.line(x1, y1, x2, y2, stroke, width, dashed)
        length = math.hypot(x2 - x1, y2 - y1)
        if length == 0.0:
            return
        ux, uy = (x2 - x1) / length, (y2 - y1) / length
        px, py = -uy, ux
        bx, by = x2 - head * ux, y2 - head * uy
        self.parts.append(
            f'<polygon points="{x2:.2f},{y2:.2f} '
            f'{bx + 0.4 * head * px:.2f},{by + 0.4 * head * py:.2f} '
            f'{bx - 0.4 * head * px:.2f},{by - 0.4 * head * py:.2f}" '
            f'fill="{stroke}"/>'
        )

    def text(self, x, y, s, size=11, anchor="middle", fill=None, rotate=None):
        fill = fill or _COLORS["text"]
        transform = f' transform="rotate({rotate:g} {x:.2f} {y:.2f})"' if rotate is not None else ""
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" '
            f'font-size="{size:g}" text-anchor="{anchor}" fill="{fill}"{transform}>'
            f"{escape(s)}</text>"
        )

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _lane_order(positions: Mapping[str, TimePoint], y_shear: float) -> List[str]:
    return sorted(positions, key=lambda label: (positions[label].x + y_shear * positions[label].y, label))


def _tick_step(span: float, target: int = 6) -> float:
    if span <= 0.0:
        return 1.0
    raw = span / target
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0):
        if raw <= mult * power:
            return mult * power
    return 10.0 * power


def _draw_diagram(arrows: Sequence[Arrow], lane_labels: Sequence[str], spec: RenderSpec) -> str:
    if not arrows:
        raise InvalidInputError("nothing to draw: empty timeline")
    t_min = min(0.0, min(min(a.t0, a.t1) for a in arrows))
    t_max = max(max(a.t0, a.t1) for a in arrows)
    if t_max <= t_min:
        t_max = t_min + 1.0

    plot_h = spec.height - _MARGIN_TOP - _MARGIN_BOTTOM
    plot_w = spec.width - _MARGIN_LEFT - _MARGIN_RIGHT
    scale = spec.time_scale if spec.time_scale is not None else plot_h / (t_max - t_min)

    def y_of(t: float) -> float:
        return spec.height - _MARGIN_BOTTOM - (t - t_min) * scale

    gap = plot_w / max(1, len(lane_labels))
    lane_x = {label: _MARGIN_LEFT + gap * (i + 0.5) for i, label in enumerate(lane_labels)}

    canvas = _Canvas(spec.width, spec.height)
    if spec.title:
        canvas.text(spec.width / 2.0, 20.0, spec.title, size=14)

    # time axis with ticks
    x_axis = _MARGIN_LEFT - 14.0
    canvas.line(x_axis, y_of(t_min), x_axis, y_of(t_max), _COLORS["axis"], width=1)
    step = _tick_step(t_max - t_min)
    tick = math.ceil(t_min / step) * step
    while tick <= t_max + 1e-9 * step:
        canvas.line(x_axis - 3.0, y_of(tick), x_axis, y_of(tick), _COLORS["axis"], width=1)
        canvas.text(x_axis - 6.0, y_of(tick) + 3.5, f"{tick:g}", size=10, anchor="end")
        tick += step
    canvas.text(
        16.0, (y_of(t_min) + y_of(t_max)) / 2.0, spec.time_label, size=12, rotate=-90.0
    )

    # lane guides and labels
    for label in lane_labels:
        x = lane_x[label]
        canvas.line(x, y_of(t_min), x, y_of(t_max), _COLORS["lane"], width=1)
        canvas.text(x, spec.height - _MARGIN_BOTTOM + 16.0, label, size=11)
    canvas.text(
        _MARGIN_LEFT + plot_w / 2.0, spec.height - _MARGIN_BOTTOM + 34.0, spec.space_label, size=12
    )

    for arrow in arrows:
        x1, x2 = lane_x[arrow.src_label], lane_x[arrow.dst_label]
        y1, y2 = y_of(arrow.t0), y_of(arrow.t1)
        if (x1, y1) == (x2, y2):
            continue
        stroke = _COLORS.get(arrow.label) or _COLORS.get(arrow.kind) or _COLORS["transfer"]
        dashed = arrow.dashed or arrow.kind == "provisional"
        width = 2.2 if arrow.kind in ("payload", "provisional") else 1.4
        canvas.arrow(x1, y1, x2, y2, stroke, width=width, dashed=dashed)
        if arrow.label:
            canvas.text(
                (x1 + x2) / 2.0, (y1 + y2) / 2.0 - 4.0, arrow.label, size=9, fill=stroke
            )
    return canvas.finish()


def render_timeline_svg(
    timeline: Sequence[TimedEvent],
    netlist: Netlist,
    spec: Optional[RenderSpec] = None,
) -> str:
    """Diagram of a gate simulation: stimuli, transfers, gate work."""
    if not timeline:
        raise InvalidInputError("nothing to draw: empty timeline")
    spec = spec or RenderSpec()
    positions = netlist.element_positions()
    gate_by_id = {gate.id: gate for gate in netlist.gates}
    sinks: Dict[str, List[str]] = {}
    for gate in sorted(netlist.gates, key=lambda g: g.id):
        for net in gate.inputs:
            sinks.setdefault(net, []).append(gate.id)

    arrows: List[Arrow] = []
    last_stim = netlist.final_stimulus_times()
    for stim in netlist.stimuli:
        provisional = stim.time != last_stim[stim.input_name]
        origin = netlist.inputs[stim.input_name]
        for sink_id in sinks.get(stim.input_name, ()):
            arrival = stim.time + origin.distance_to(positions[sink_id])
            arrows.append(
                Arrow("transfer", stim.input_name, stim.time, sink_id, arrival,
                      label="", dashed=provisional)
            )
    for event in timeline:
        gate = gate_by_id[event.gate_id]
        arrows.append(
            Arrow(classify_event(event), event.gate_id, event.time - gate.operating_time,
                  event.gate_id, event.time, label=str(event.value))
        )
        for sink_id in sinks.get(event.net, ()):
            arrival = event.time + gate.position.distance_to(positions[sink_id])
            arrows.append(
                Arrow("transfer", event.gate_id, event.time, sink_id, arrival,
                      label="", dashed=event.provisional)
            )
    return _draw_diagram(arrows, _lane_order(positions, spec.y_shear), spec)


def render_bus_svg(
    timeline: BusTimeline,
    scenario: BusScenario,
    spec: Optional[RenderSpec] = None,
) -> str:
    """Diagram of bus contention: requests, grants, data, occupancy."""
    spec = spec or RenderSpec()
    bus_label = "bus"
    positions = {core.id: core.position for core in scenario.cores}
    if bus_label in positions:
        bus_label = "shared-bus"
    positions[bus_label] = scenario.bus_position

    arrows: List[Arrow] = []
    for record in timeline.cores:
        cid = record.core_id
        arrows.append(Arrow("payload", cid, 0.0, cid, record.request_sent))
        arrows.append(
            Arrow("transfer", cid, record.request_sent, bus_label, record.request_arrived,
                  label="req")
        )
        arrows.append(
            Arrow("transfer", bus_label, record.grant_issued, cid, record.grant_arrived,
                  label="grant")
        )
        arrows.append(
            Arrow("transfer", cid, record.grant_arrived, bus_label, record.data_arrived_at_bus,
                  label="data")
        )
        arrows.append(
            Arrow("payload", bus_label, record.data_arrived_at_bus, bus_label,
                  record.message_done)
        )
    return _draw_diagram([a for a in arrows if a.t1 > a.t0 or a.src_label != a.dst_label],
                         _lane_order(positions, spec.y_shear), spec)


def render_distributed_svg(
    result: DistributedResult,
    scenario: DistributedScenario,
    spec: Optional[RenderSpec] = None,
) -> str:
    """Diagram of one orchestrated run: dispatch, work, collect, close."""
    spec = spec or RenderSpec()
    orch = scenario.orchestrator.id
    positions = {fellow.id: fellow.position for fellow in scenario.fellows}
    positions[orch] = scenario.orchestrator.position

    arrows: List[Arrow] = [
        Arrow("payload", orch, 0.0, orch, scenario.orchestrator.processing_time)
    ]
    for fellow in result.fellows:
        arrows.append(
            Arrow("payload", orch, fellow.command_sent - scenario.dispatch_time,
                  orch, fellow.command_sent)
        )
        arrows.append(
            Arrow("transfer", orch, fellow.command_sent, fellow.fellow_id, fellow.started,
                  label="start")
        )
        arrows.append(
            Arrow("payload", fellow.fellow_id, fellow.started, fellow.fellow_id, fellow.finished)
        )
        arrows.append(
            Arrow("transfer", fellow.fellow_id, fellow.finished, orch, fellow.result_arrived,
                  label="res")
        )
        arrows.append(
            Arrow("payload", orch, fellow.reception_start, orch, fellow.reception_end)
        )
    arrows.append(Arrow("payload", orch, result.closing_start, orch, result.total_time))
    return _draw_diagram([a for a in arrows if a.t1 > a.t0 or a.src_label != a.dst_label],
                         _lane_order(positions, spec.y_shear), spec)
