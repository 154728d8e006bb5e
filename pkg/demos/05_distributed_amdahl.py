"""Orchestrated distributed work and the efficiency surface behind it.

An orchestrator dispatches start commands one after the other, fellows
work in parallel, results come home through a strictly serial
reception, and a closing phase ends the run.  The serial pieces are why
efficiency collapses on large machines: the surface E = 1/(n(1-a) + a)
makes the collapse quantitative, and a measured efficiency can be
mapped back to the parallel fraction that explains it.
"""

from pathlib import Path

from tempograph import (
    ComputingElement,
    DistributedScenario,
    RenderSpec,
    TimePoint,
    amdahl_efficiency,
    efficiency_surface,
    format_surface_csv,
    point_from_measurement,
    render_distributed_svg,
    simulate_distributed,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

OUT_DIR = Path(__file__).resolve().parent / "out"
OUT_DIR.mkdir(exist_ok=True)

print("== one orchestrated run ==\n")
scenario = DistributedScenario(
    orchestrator=ComputingElement("orch", TimePoint(0.0, 0.0), 1.0),
    fellows=(ComputingElement("near", TimePoint(-0.5, 0.0), 2.0),
             ComputingElement("far", TimePoint(1.0, 0.0), 2.0),
             ComputingElement("slow", TimePoint(0.2, 0.3), 3.5)),
    dispatch_time=0.2,
    collect_time=0.3,
    closing_time=0.5,
)
result = simulate_distributed(scenario)
for timing in result.fellows:
    print(f"  {timing.fellow_id:>4}: commanded {timing.command_sent:.2f}, "
          f"worked {timing.started:.2f}..{timing.finished:.2f}, "
          f"result received {timing.reception_start:.2f}..{timing.reception_end:.2f}")
print(f"  total time {result.total_time:.4f}, decided by '{result.critical_fellow}'\n")

svg_target = OUT_DIR / "distributed_run.svg"
svg_target.write_text(render_distributed_svg(result, scenario,
                                             RenderSpec(title="orchestrated run")))
print(f"wrote {svg_target}\n")

print("== the efficiency surface ==\n")
alphas = [0.5, 0.9, 0.99, 0.999, 0.9999]
ns = [1.0, 10.0, 100.0, 1000.0, 1e6]
surface = efficiency_surface(alphas, ns)
header = "  alpha \\ n " + "".join(f"{n:>12g}" for n in ns)
print(header)
for i, alpha in enumerate(alphas):
    print(f"  {alpha:>9} " + "".join(f"{surface[i, j]:>12.4e}" for j in range(len(ns))))
print("\n  even 99.99 % parallel work runs a million units at "
      f"{amdahl_efficiency(0.9999, 1e6):.2e} efficiency")

csv_target = OUT_DIR / "surface.csv"
csv_target.write_text(format_surface_csv(alphas, ns, surface))
print(f"\nwrote {csv_target}\n")

print("== reading a measurement back ==\n")
measured_e, measured_n = 0.3, 64
point = point_from_measurement(measured_e, measured_n)
print(f"  efficiency {measured_e} on {measured_n} units implies a parallel "
      f"fraction of {point.alpha:.6f}")

if plt is not None:
    import numpy as np

    alpha_grid = np.linspace(0.5, 1.0, 201)
    n_grid = np.array([2.0, 8.0, 64.0, 1024.0, 65536.0])
    grid = efficiency_surface(alpha_grid, n_grid)
    plt.figure(figsize=(6, 4))
    for j, n in enumerate(n_grid):
        plt.semilogy(alpha_grid, grid[:, j], label=f"n = {n:g}")
    plt.scatter([point.alpha], [point.efficiency], color="black", zorder=5,
                label="measured point")
    plt.xlabel("parallel fraction alpha")
    plt.ylabel("efficiency")
    plt.title("Efficiency against the parallel fraction")
    plt.legend(fontsize=8)
    plt.tight_layout()
    png_target = OUT_DIR / "surface.png"
    plt.savefig(png_target, dpi=120)
    print(f"wrote {png_target}")
else:
    print("(matplotlib not installed, skipping the surface plot)")
