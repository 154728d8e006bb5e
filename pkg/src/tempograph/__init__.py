"""Deterministic temporal-behavior modeling of placed computing systems.

Components are placed in a time-space coordinate system where every
coordinate is a signal travel time, making transfer delays first-class
alongside processing times.  On top of that sit four analyses: the
apparent processing time of communicating element pairs, a dispersion
merit scoring how strongly placement limits a processor, an event-driven
three-valued gate simulator, a shared-bus contention model, and an
orchestrated distributed model with its Amdahl efficiency surface.
"""

from .bus import (
    BusScenario,
    BusTimeline,
    CoreTimeline,
    replicate_cores,
    simulate_bus,
    sweep_cores,
)
from .dispersion import (
    DispersionReport,
    ProcessorSpec,
    TransferGeometry,
    dispersion_report,
    edvac_preset,
    history_table,
    max_distance,
    min_distance,
    report_from_geometry,
)
from .distributed import (
    AmdahlPoint,
    DistributedResult,
    DistributedScenario,
    FellowTiming,
    alpha_from_efficiency,
    amdahl_efficiency,
    efficiency_surface,
    point_from_measurement,
    simulate_distributed,
)
from .errors import CycleError, FileFormatError, InvalidInputError, NetlistError
from .fileio import (
    PROCESSOR_CSV_HEADER,
    format_bus_csv,
    format_distributed_csv,
    format_history_csv,
    format_surface_csv,
    format_sweep_csv,
    format_timeline_csv,
    parse_netlist,
    read_bus_scenario,
    read_distributed_scenario,
    read_netlist,
    read_processor_csv,
)
from .gates import (
    Completion,
    Gate,
    LogicValue,
    Netlist,
    Stimulus,
    TimedEvent,
    build_one_bit_adder,
    completion_times,
    demo_placement,
    logic_eval,
    simulate,
)
from .render import (
    ARROW_KINDS,
    Arrow,
    RenderSpec,
    classify_event,
    render_bus_svg,
    render_distributed_svg,
    render_timeline_svg,
)
from .timespace import (
    DEFAULT_INTERACTION_SPEED,
    ChainTiming,
    ComputingElement,
    InteractionSpeed,
    TimePoint,
    apparent_time,
    apparent_time_ratio,
    chain_two,
    meters_to_timepoint,
    transfer_time,
)

__version__ = "0.1.0"

__all__ = [
    "ARROW_KINDS",
    "AmdahlPoint",
    "Arrow",
    "BusScenario",
    "BusTimeline",
    "ChainTiming",
    "Completion",
    "ComputingElement",
    "CoreTimeline",
    "CycleError",
    "DEFAULT_INTERACTION_SPEED",
    "DispersionReport",
    "DistributedResult",
    "DistributedScenario",
    "FellowTiming",
    "FileFormatError",
    "Gate",
    "InteractionSpeed",
    "InvalidInputError",
    "LogicValue",
    "Netlist",
    "NetlistError",
    "PROCESSOR_CSV_HEADER",
    "ProcessorSpec",
    "RenderSpec",
    "Stimulus",
    "TimePoint",
    "TimedEvent",
    "TransferGeometry",
    "alpha_from_efficiency",
    "amdahl_efficiency",
    "apparent_time",
    "apparent_time_ratio",
    "build_one_bit_adder",
    "chain_two",
    "classify_event",
    "completion_times",
    "demo_placement",
    "dispersion_report",
    "edvac_preset",
    "efficiency_surface",
    "format_bus_csv",
    "format_distributed_csv",
    "format_history_csv",
    "format_surface_csv",
    "format_sweep_csv",
    "format_timeline_csv",
    "history_table",
    "logic_eval",
    "max_distance",
    "meters_to_timepoint",
    "min_distance",
    "parse_netlist",
    "point_from_measurement",
    "read_bus_scenario",
    "read_distributed_scenario",
    "read_netlist",
    "read_processor_csv",
    "render_bus_svg",
    "render_distributed_svg",
    "render_timeline_svg",
    "replicate_cores",
    "report_from_geometry",
    "simulate",
    "simulate_bus",
    "simulate_distributed",
    "sweep_cores",
    "transfer_time",
]
