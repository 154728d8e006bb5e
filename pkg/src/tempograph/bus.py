"""Cores contending for one shared bus through a serializing arbiter.

Every core finishes its own processing, then asks for the bus: the
request travels to the bus position, the arbiter grants requests in
arrival order, the grant travels back, the data travels to the bus and
occupies it for the word transfer time.  The next grant waits for the
in-flight message to complete, so with N identical cores the completion
time grows as an exact affine function of N with slope ``2*d + w``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, List, Sequence, Tuple

from .errors import InvalidInputError
from .timespace import ComputingElement, TimePoint, _require_finite


@dataclass(frozen=True)
class BusScenario:
    """Cores, the bus position, and the bus occupancy per message.

    Each core performs its processing starting at t=0 and then requests
    exactly one transfer.
    """

    cores: Tuple[ComputingElement, ...]
    bus_position: TimePoint
    word_transfer_time: float

    def __post_init__(self):
        object.__setattr__(self, "cores", tuple(self.cores))
        if not self.cores:
            raise InvalidInputError("bus scenario needs at least one core")
        ids = [core.id for core in self.cores]
        if len(set(ids)) != len(ids):
            raise InvalidInputError("core ids must be unique")
        w = _require_finite("word_transfer_time", self.word_transfer_time)
        if w < 0.0:
            raise InvalidInputError(f"word_transfer_time must be >= 0, got {w!r}")
        object.__setattr__(self, "word_transfer_time", w)


@dataclass(frozen=True)
class CoreTimeline:
    """The six protocol instants of one core's single message."""

    core_id: str
    request_sent: float
    request_arrived: float
    grant_issued: float
    grant_arrived: float
    data_arrived_at_bus: float
    message_done: float


@dataclass(frozen=True)
class BusTimeline:
    """Per-core protocol records (in scenario order) and the overall end."""

    cores: Tuple[CoreTimeline, ...]
    grant_order: Tuple[str, ...]
    total_completion: float


def simulate_bus(scenario: BusScenario) -> BusTimeline:
    """Run the one-message-per-core protocol and return all instants.

    Requests are granted in order of arrival at the bus, ties broken by
    core position in the scenario; a grant is issued no earlier than the
    completion of the message before it.
    """
    distances = [core.position.distance_to(scenario.bus_position) for core in scenario.cores]
    request_sent = [core.processing_time for core in scenario.cores]
    request_arrived = [request_sent[i] + distances[i] for i in range(len(scenario.cores))]
    order = sorted(range(len(scenario.cores)), key=lambda i: (request_arrived[i], i))

    w = scenario.word_transfer_time
    records: List[CoreTimeline] = [None] * len(scenario.cores)  # type: ignore[list-item]
    bus_free = None
    for i in order:
        issued = request_arrived[i] if bus_free is None else max(request_arrived[i], bus_free)
        grant_arrived = issued + distances[i]
        data_arrived = grant_arrived + distances[i]
        done = data_arrived + w
        records[i] = CoreTimeline(
            core_id=scenario.cores[i].id,
            request_sent=request_sent[i],
            request_arrived=request_arrived[i],
            grant_issued=issued,
            grant_arrived=grant_arrived,
            data_arrived_at_bus=data_arrived,
            message_done=done,
        )
        bus_free = done
    return BusTimeline(
        cores=tuple(records),
        grant_order=tuple(scenario.cores[i].id for i in order),
        total_completion=max(record.message_done for record in records),
    )


def replicate_cores(scenario: BusScenario, n: int) -> BusScenario:
    """The scenario with its single prototype core copied ``n`` times."""
    if len(scenario.cores) != 1:
        raise InvalidInputError("replication needs a single prototype core")
    if n < 1:
        raise InvalidInputError(f"core count must be >= 1, got {n!r}")
    proto = scenario.cores[0]
    cores = tuple(replace(proto, id=f"{proto.id}{i}") for i in range(n))
    return replace(scenario, cores=cores)


def sweep_cores(
    base: BusScenario,
    n_list: Iterable[int],
) -> List[Tuple[int, float]]:
    """Completion time versus core count for replicated identical cores."""
    counts = list(n_list)
    if not counts:
        raise InvalidInputError("core-count sweep must not be empty")
    results = []
    for n in counts:
        timeline = simulate_bus(replicate_cores(base, n))
        results.append((n, timeline.total_completion))
    return results
