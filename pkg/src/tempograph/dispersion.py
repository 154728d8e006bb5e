"""Dispersion of a processor: how spread out it is in units of its own speed.

A single number summarizes how strongly placement limits a design.  Take
the shortest and longest signal paths inside the device, turn them into
transfer times, and compare their geometric mean with the processing time
of one operation:

    dispersion = sqrt(t_t_min * t_t_max) / t_p

A compact slow machine scores low; a physically large or very fast one
scores high, meaning wiring dominates its temporal behavior.  The minimum
distance is estimated as the pitch of one switching element on the die,
``sqrt(area / count)``, and the maximum as the die diagonal scale
``sqrt(area)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .errors import InvalidInputError
from .timespace import DEFAULT_INTERACTION_SPEED, InteractionSpeed, _require_finite


@dataclass(frozen=True)
class ProcessorSpec:
    """Physical description of one processor generation."""

    name: str
    year: int
    transistor_count: float
    die_area: float  # m**2
    clock_frequency: float  # Hz

    def __post_init__(self):
        if not self.name:
            raise InvalidInputError("processor name must be non-empty")
        year = int(self.year)
        if not 1940 <= year <= 2100:
            raise InvalidInputError(f"year out of range: {year}")
        object.__setattr__(self, "year", year)
        for attr in ("transistor_count", "die_area", "clock_frequency"):
            value = _require_finite(attr, getattr(self, attr))
            if value <= 0.0:
                raise InvalidInputError(f"{attr} must be positive, got {value!r}")
            object.__setattr__(self, attr, value)

    @property
    def clock_period(self) -> float:
        return 1.0 / self.clock_frequency


@dataclass(frozen=True)
class TransferGeometry:
    """Distance extremes and operation time of one device, ready to score."""

    d_min: float  # m
    d_max: float  # m
    clock_period: float  # s
    speed: float = DEFAULT_INTERACTION_SPEED  # m/s

    def __post_init__(self):
        for attr in ("d_min", "d_max", "clock_period", "speed"):
            value = _require_finite(attr, getattr(self, attr))
            if value <= 0.0:
                raise InvalidInputError(f"{attr} must be positive, got {value!r}")
            object.__setattr__(self, attr, value)
        if self.d_min > self.d_max:
            raise InvalidInputError(
                f"d_min {self.d_min!r} must not exceed d_max {self.d_max!r}"
            )


@dataclass(frozen=True)
class DispersionReport:
    """Derived temporal figures of one device."""

    d_min: float
    d_max: float
    t_t_min: float
    t_t_max: float
    t_p: float
    #: shortest transfer relative to one operation
    proc_transfer_rel: float
    #: half the longest path (a cache round trip reaches that far) per operation
    cache_transfer_rel: float
    dispersion: float


def min_distance(spec: ProcessorSpec) -> float:
    """Shortest signal hop: the pitch ``sqrt(die_area / transistor_count)``."""
    return math.sqrt(spec.die_area / spec.transistor_count)


def max_distance(spec: ProcessorSpec) -> float:
    """Longest signal path scale: ``sqrt(die_area)``."""
    return math.sqrt(spec.die_area)


def report_from_geometry(geometry: TransferGeometry) -> DispersionReport:
    """Score a device whose distance extremes are known directly."""
    t_t_min = geometry.d_min / geometry.speed
    t_t_max = geometry.d_max / geometry.speed
    t_p = geometry.clock_period
    return DispersionReport(
        d_min=geometry.d_min,
        d_max=geometry.d_max,
        t_t_min=t_t_min,
        t_t_max=t_t_max,
        t_p=t_p,
        proc_transfer_rel=t_t_min / t_p,
        cache_transfer_rel=(geometry.d_max / 2.0) / geometry.speed / t_p,
        dispersion=math.sqrt(t_t_min * t_t_max) / t_p,
    )


def dispersion_report(
    spec: ProcessorSpec,
    speed: InteractionSpeed | float = DEFAULT_INTERACTION_SPEED,
) -> DispersionReport:
    """Score a processor generation from its physical description."""
    v = speed.value if isinstance(speed, InteractionSpeed) else InteractionSpeed(speed).value
    geometry = TransferGeometry(
        d_min=min_distance(spec),
        d_max=max_distance(spec),
        clock_period=spec.clock_period,
        speed=v,
    )
    return report_from_geometry(geometry)


def edvac_preset() -> TransferGeometry:
    """The first stored-program design: 300 m**2, 3000 tubes, 1 us per step.

    The shortest hop is pinned to 0.3 m rather than derived from the tube
    count, because the tubes sit in racks rather than on a die.
    """
    return TransferGeometry(
        d_min=0.3,
        d_max=math.sqrt(300.0),
        clock_period=1.0e-6,
        speed=DEFAULT_INTERACTION_SPEED,
    )


def history_table(
    specs: Iterable[ProcessorSpec],
    speed: InteractionSpeed | float = DEFAULT_INTERACTION_SPEED,
) -> List[Tuple[int, float, float, float]]:
    """Rows ``(year, proc_transfer_rel, cache_transfer_rel, dispersion)``.

    Rows come back sorted by year, preserving input order within a year.
    """
    rows = []
    for spec in specs:
        report = dispersion_report(spec, speed)
        rows.append(
            (spec.year, report.proc_transfer_rel, report.cache_transfer_rel, report.dispersion)
        )
    if not rows:
        raise InvalidInputError("history table needs at least one processor record")
    rows.sort(key=lambda row: row[0])
    return rows
