"""Time-space coordinates and the apparent processing time of placed elements.

Positions are expressed directly in seconds: a coordinate is the time a
signal needs to travel that far, so the Euclidean distance between two
points *is* the transfer time between them.  Physical placements in meters
are converted once, through an interaction speed, and never appear again.

An observer clocking a remote element sees more than its processing time.
A round trip costs the transfer time twice and the observed element works
once in between, and the two kinds of time combine like orthogonal
components:

    T_A = sqrt(T_t**2 + (2*T_p + T_t)**2)

which equals ``T_p * sqrt(R**2 + (2 + R)**2)`` with ``R = T_t / T_p``.
``R`` near zero means transfer is negligible and ``T_A`` approaches
``2 * T_p``; growing ``R`` makes the element look ever slower than it is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError

#: Default interaction speed in meters per second (electromagnetic signalling).
DEFAULT_INTERACTION_SPEED = 3.0e8


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class TimePoint:
    """A position in time-space; every coordinate is a time in seconds."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))

    def distance_to(self, other: "TimePoint") -> float:
        """Transfer time from here to ``other`` (straight line)."""
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


@dataclass(frozen=True)
class InteractionSpeed:
    """Speed used to convert meter placements into time coordinates."""

    value: float = DEFAULT_INTERACTION_SPEED

    def __post_init__(self):
        value = _require_finite("interaction speed", self.value)
        if value <= 0.0:
            raise InvalidInputError(f"interaction speed must be positive, got {value!r}")
        object.__setattr__(self, "value", value)


@dataclass(frozen=True)
class ComputingElement:
    """Anything that takes input, works for a while, and produces output."""

    id: str
    position: TimePoint
    processing_time: float

    def __post_init__(self):
        if not self.id:
            raise InvalidInputError("computing element id must be non-empty")
        t_p = _require_finite("processing_time", self.processing_time)
        if t_p < 0.0:
            raise InvalidInputError(f"processing_time must be >= 0, got {t_p!r}")
        object.__setattr__(self, "processing_time", t_p)


@dataclass(frozen=True)
class ChainTiming:
    """Timing of one observed interaction between two placed elements."""

    t_p_source: float
    t_p_observer: float
    t_t: float
    #: idle time the observer spends waiting for the signal
    t_i: float
    #: wall-clock time until the observer finishes consuming the result
    completion: float
    #: apparent processing time of the pair as seen from outside
    apparent: float
    #: transfer/processing ratio, against the mean processing time of the pair
    ratio_r: float


def meters_to_timepoint(
    coords_m: Sequence[float],
    speed: InteractionSpeed | float = DEFAULT_INTERACTION_SPEED,
) -> TimePoint:
    """Convert a placement in meters into a time-space point."""
    v = speed.value if isinstance(speed, InteractionSpeed) else InteractionSpeed(speed).value
    coords = tuple(coords_m)
    if len(coords) not in (2, 3):
        raise InvalidInputError(f"expected 2 or 3 coordinates, got {len(coords)}")
    scaled = [_require_finite("coordinate", c) / v for c in coords]
    if len(scaled) == 2:
        scaled.append(0.0)
    return TimePoint(*scaled)


def transfer_time(
    start: TimePoint,
    end: TimePoint,
    waypoints: Optional[Iterable[TimePoint]] = None,
) -> float:
    """Signal travel time from ``start`` to ``end``, optionally via waypoints."""
    total = 0.0
    prev = start
    for point in waypoints or ():
        total += prev.distance_to(point)
        prev = point
    return total + prev.distance_to(end)


def apparent_time(t_p: float, t_t: float) -> float:
    """Apparent processing time for processing time ``t_p`` and transfer time ``t_t``.

    ``hypot`` keeps the no-transfer case exact: ``apparent_time(t_p, 0.0)``
    is exactly ``2 * t_p``.
    """
    t_p = _require_finite("t_p", t_p)
    t_t = _require_finite("t_t", t_t)
    if t_p <= 0.0:
        raise InvalidInputError(f"t_p must be positive, got {t_p!r}")
    if t_t < 0.0:
        raise InvalidInputError(f"t_t must be >= 0, got {t_t!r}")
    return math.hypot(t_t, 2.0 * t_p + t_t)


def apparent_time_ratio(ratio_r: float) -> float:
    """Apparent time in units of ``T_p``: ``sqrt(R**2 + (2 + R)**2)``."""
    r = _require_finite("ratio_r", ratio_r)
    if r < 0.0:
        raise InvalidInputError(f"ratio_r must be >= 0, got {r!r}")
    return math.hypot(r, 2.0 + r)


def chain_two(
    source: ComputingElement,
    observer: ComputingElement,
    waypoints: Optional[Iterable[TimePoint]] = None,
) -> ChainTiming:
    """Timing of ``source`` handing a result to ``observer``.

    The source starts working at time zero; its output travels to the
    observer, who then performs its own processing on arrival.
    """
    t_t = transfer_time(source.position, observer.position, waypoints)
    t_p_src = source.processing_time
    t_p_obs = observer.processing_time
    completion = t_p_src + t_t + t_p_obs
    mean_t_p = 0.5 * (t_p_src + t_p_obs)
    if mean_t_p <= 0.0:
        raise InvalidInputError("chain requires at least one positive processing time")
    return ChainTiming(
        t_p_source=t_p_src,
        t_p_observer=t_p_obs,
        t_t=t_t,
        t_i=t_t,
        completion=completion,
        apparent=math.hypot(t_t, completion),
        ratio_r=t_t / mean_t_p,
    )
