"""Parallelized sequential processing and its Amdahl efficiency surface.

An orchestrator does some initial sequential work, then dispatches start
commands to its fellows one after the other; every fellow works in
parallel, but results come home through a strictly sequential reception,
and a final sequential phase closes the run.  Even with free
communication this is Amdahl's law: for parallel fraction ``alpha`` on
``n`` units the efficiency is ``1 / (n*(1-alpha) + alpha)``, and the
slowest branch decides the total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import InvalidInputError
from .timespace import ComputingElement, _require_finite


@dataclass(frozen=True)
class DistributedScenario:
    """One orchestrator, its fellows, and the per-step overheads.

    The orchestrator's processing time is its initial sequential work;
    each fellow's processing time is that fellow's share of the parallel
    work.  ``dispatch_time`` serializes the start commands on the
    orchestrator, ``collect_time`` serializes each result reception, and
    ``closing_time`` is the final sequential work.
    """

    orchestrator: ComputingElement
    fellows: Tuple[ComputingElement, ...]
    dispatch_time: float = 0.0
    collect_time: float = 0.0
    closing_time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "fellows", tuple(self.fellows))
        if not self.fellows:
            raise InvalidInputError("distributed scenario needs at least one fellow")
        ids = [f.id for f in self.fellows] + [self.orchestrator.id]
        if len(set(ids)) != len(ids):
            raise InvalidInputError("orchestrator and fellow ids must be unique")
        for attr in ("dispatch_time", "collect_time", "closing_time"):
            value = _require_finite(attr, getattr(self, attr))
            if value < 0.0:
                raise InvalidInputError(f"{attr} must be >= 0, got {value!r}")
            object.__setattr__(self, attr, value)


@dataclass(frozen=True)
class FellowTiming:
    """The lifecycle instants of one fellow's branch."""

    fellow_id: str
    command_sent: float
    started: float
    finished: float
    result_arrived: float
    reception_start: float
    reception_end: float


@dataclass(frozen=True)
class DistributedResult:
    """Per-fellow timelines (in scenario order) and the run summary."""

    fellows: Tuple[FellowTiming, ...]
    dispatch_end: float
    closing_start: float
    total_time: float
    critical_fellow: str


def simulate_distributed(scenario: DistributedScenario) -> DistributedResult:
    """Trace the dispatch/work/collect/close cycle of one run.

    Fellow k (1-based, in list order) receives its start command at
    ``t_init + k*dispatch_time`` and starts one transfer time later.
    Results are received in arrival order (ties by fellow position), one
    ``collect_time`` at a time, never before dispatching has finished and
    never before the previous reception ends.  The critical fellow is the
    one whose reception finishes last.
    """
    t_init = scenario.orchestrator.processing_time
    origin = scenario.orchestrator.position
    n = len(scenario.fellows)

    command_sent = []
    result_arrived = []
    distances = []
    for k, fellow in enumerate(scenario.fellows, start=1):
        d = origin.distance_to(fellow.position)
        sent = t_init + k * scenario.dispatch_time
        distances.append(d)
        command_sent.append(sent)
        result_arrived.append(sent + d + fellow.processing_time + d)
    dispatch_end = t_init + n * scenario.dispatch_time

    order = sorted(range(n), key=lambda i: (result_arrived[i], i))
    reception: Dict[int, Tuple[float, float]] = {}
    free_at = dispatch_end
    for i in order:
        start = max(result_arrived[i], free_at)
        end = start + scenario.collect_time
        reception[i] = (start, end)
        free_at = end

    fellows = tuple(
        FellowTiming(
            fellow_id=scenario.fellows[i].id,
            command_sent=command_sent[i],
            started=command_sent[i] + distances[i],
            finished=command_sent[i] + distances[i] + scenario.fellows[i].processing_time,
            result_arrived=result_arrived[i],
            reception_start=reception[i][0],
            reception_end=reception[i][1],
        )
        for i in range(n)
    )
    closing_start = free_at
    return DistributedResult(
        fellows=fellows,
        dispatch_end=dispatch_end,
        closing_start=closing_start,
        total_time=closing_start + scenario.closing_time,
        critical_fellow=scenario.fellows[order[-1]].id,
    )


def amdahl_efficiency(alpha: float, n: float) -> float:
    """Efficiency ``1 / (n*(1-alpha) + alpha)`` of n units at fraction alpha."""
    alpha = _require_finite("alpha", alpha)
    n = _require_finite("n", n)
    if not 0.0 <= alpha <= 1.0:
        raise InvalidInputError(f"alpha must be in [0, 1], got {alpha!r}")
    if n < 1.0:
        raise InvalidInputError(f"n must be >= 1, got {n!r}")
    return 1.0 / (n * (1.0 - alpha) + alpha)


def alpha_from_efficiency(e: float, n: float) -> float:
    """The parallel fraction that yields efficiency ``e`` on ``n`` units.

    Inverse of :func:`amdahl_efficiency` in its first argument; the raw
    value ``(1/e - n) / (1 - n)`` is clamped into [0, 1] so measured
    efficiencies slightly outside the reachable band still report a legal
    fraction.
    """
    e = _require_finite("efficiency", e)
    n = _require_finite("n", n)
    if n < 2.0:
        raise InvalidInputError(f"n must be >= 2 to recover alpha, got {n!r}")
    if not 0.0 < e <= 1.0:
        raise InvalidInputError(f"efficiency must be in (0, 1], got {e!r}")
    alpha = (1.0 / e - n) / (1.0 - n)
    return min(1.0, max(0.0, alpha))


def efficiency_surface(
    alpha_grid: Sequence[float],
    n_grid: Sequence[float],
) -> np.ndarray:
    """Efficiency at every (alpha, n) pair, shaped (len(alpha), len(n))."""
    alphas = np.asarray(list(alpha_grid), dtype=float)
    ns = np.asarray(list(n_grid), dtype=float)
    if alphas.size == 0 or ns.size == 0:
        raise InvalidInputError("surface grids must not be empty")
    if not np.all(np.isfinite(alphas)) or not np.all(np.isfinite(ns)):
        raise InvalidInputError("surface grids must be finite")
    if np.any(alphas < 0.0) or np.any(alphas > 1.0):
        raise InvalidInputError("alpha grid values must be in [0, 1]")
    if np.any(ns < 1.0):
        raise InvalidInputError("n grid values must be >= 1")
    return 1.0 / (np.outer(1.0 - alphas, ns) + alphas[:, np.newaxis])


@dataclass(frozen=True)
class AmdahlPoint:
    """One (n, alpha, efficiency) triple; the three must agree."""

    n: float
    alpha: float
    efficiency: float

    def __post_init__(self):
        expected = amdahl_efficiency(self.alpha, self.n)
        if not np.isclose(self.efficiency, expected, rtol=1e-9, atol=0.0):
            raise InvalidInputError(
                f"efficiency {self.efficiency!r} does not match "
                f"amdahl_efficiency({self.alpha!r}, {self.n!r}) = {expected!r}"
            )


def point_from_measurement(e: float, n: float) -> AmdahlPoint:
    """Overlay point for a measured efficiency on ``n`` units.

    Recovers alpha and reports the consistent triple; a measurement
    outside the band reachable by any alpha in [0, 1] has no consistent
    triple and is rejected.
    """
    alpha = alpha_from_efficiency(e, n)
    try:
        return AmdahlPoint(n=n, alpha=alpha, efficiency=e)
    except InvalidInputError:
        raise InvalidInputError(
            f"efficiency {e!r} on {n!r} units is outside the band "
            f"[{amdahl_efficiency(0.0, n)!r}, 1.0] reachable by any alpha"
        ) from None
