"""Cores contending for one shared bus, and how completion scales.

Two cores finish their work at the same moment and both ask for the
bus; the nearer one wins because its request simply arrives first.
Replicating one prototype core shows the textbook pathology: total
completion grows exactly linearly with the number of cores, slope
2*distance + word transfer time per extra core.
"""

from pathlib import Path

from tempograph import (
    BusScenario,
    ComputingElement,
    RenderSpec,
    TimePoint,
    format_sweep_csv,
    render_bus_svg,
    simulate_bus,
    sweep_cores,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

OUT_DIR = Path(__file__).resolve().parent / "out"
OUT_DIR.mkdir(exist_ok=True)

print("== two cores, one bus ==\n")
scenario = BusScenario(
    cores=(ComputingElement("core1", TimePoint(-0.3, 0.0), 1.0),
           ComputingElement("core2", TimePoint(0.6, 0.0), 1.0)),
    bus_position=TimePoint(0.0, 0.5),
    word_transfer_time=0.2,
)
timeline = simulate_bus(scenario)
print(f"  grant order: {' -> '.join(timeline.grant_order)}   "
      "(the nearer core's request arrives first)")
for record in timeline.cores:
    print(f"  {record.core_id}: request sent {record.request_sent}, "
          f"arrived {record.request_arrived:.4f}, granted {record.grant_issued:.4f}, "
          f"message done {record.message_done:.4f}")
print(f"  total completion: {timeline.total_completion:.4f}\n")

svg_target = OUT_DIR / "bus_two_cores.svg"
svg_target.write_text(render_bus_svg(timeline, scenario,
                                     RenderSpec(title="two cores, one bus")))
print(f"wrote {svg_target}\n")

print("== replicating one prototype core ==\n")
proto = BusScenario(
    cores=(ComputingElement("c", TimePoint(0.5, 0.0), 1.0),),
    bus_position=TimePoint(0.0, 0.0),
    word_transfer_time=0.25,
)
pairs = sweep_cores(proto, range(1, 17))
print(f"  {'cores':>5}  {'total':>7}  {'increment':>9}")
previous = None
for n, total in pairs:
    increment = "" if previous is None else f"{total - previous:>9}"
    print(f"  {n:>5}  {total:>7}  {increment}")
    previous = total
d, w = 0.5, 0.25
print(f"\n  every extra core costs exactly 2*d + w = {2 * d + w}")

csv_target = OUT_DIR / "bus_sweep.csv"
csv_target.write_text(format_sweep_csv(pairs))
print(f"wrote {csv_target}")

if plt is not None:
    plt.figure(figsize=(6, 4))
    plt.plot([n for n, _ in pairs], [t for _, t in pairs], "o-")
    plt.xlabel("cores on the bus")
    plt.ylabel("total completion time")
    plt.title("Strictly linear growth under bus serialization")
    plt.tight_layout()
    png_target = OUT_DIR / "bus_sweep.png"
    plt.savefig(png_target, dpi=120)
    print(f"wrote {png_target}")
else:
    print("(matplotlib not installed, skipping the sweep plot)")
