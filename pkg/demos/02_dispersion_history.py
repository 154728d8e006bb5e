"""Dispersion of real processors across five decades.

Dispersion compares the geometric-mean transfer time across a die with
the clock period.  A small value means signals cross the chip well
within a tick; values near one mean placement dominates timing.  The
vacuum-tube calibration point (room-sized machine, microsecond clock)
sits just below one percent, and shrinking dies against racing clocks
kept later processors in a surprisingly narrow band.
"""

from pathlib import Path

from tempograph import (
    edvac_preset,
    format_history_csv,
    history_table,
    read_processor_csv,
    report_from_geometry,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

HERE = Path(__file__).resolve().parent
OUT_DIR = HERE / "out"
OUT_DIR.mkdir(exist_ok=True)

print("== the room-sized calibration point ==\n")
report = report_from_geometry(edvac_preset())
print(f"  min element distance  {report.d_min} m")
print(f"  max (room diagonal)   {report.d_max:.4f} m")
print(f"  clock period          {report.t_p} s")
print(f"  dispersion            {report.dispersion:.6f}  (below 1 %)\n")

specs = read_processor_csv(HERE / "data" / "processors.csv")
rows = history_table(specs)

print("== processors from the CSV, sorted by year ==\n")
print(f"  {'year':>4}  {'proc transfer':>13}  {'cache transfer':>14}  {'dispersion':>10}")
for year, proc_rel, cache_rel, dispersion in rows:
    print(f"  {year:>4}  {proc_rel:>13.3e}  {cache_rel:>14.3e}  {dispersion:>10.3e}")

target = OUT_DIR / "history.csv"
target.write_text(format_history_csv(rows))
print(f"\nwrote {target}")

if plt is not None:
    years = [row[0] for row in rows]
    plt.figure(figsize=(6, 4))
    plt.semilogy(years, [row[3] for row in rows], "o-", label="dispersion")
    plt.semilogy(years, [row[1] for row in rows], "s--", label="proc transfer (rel)")
    plt.semilogy(years, [row[2] for row in rows], "^--", label="cache transfer (rel)")
    plt.axhline(report.dispersion, color="gray", linestyle=":", linewidth=1,
                label="room-sized calibration")
    plt.xlabel("year")
    plt.ylabel("relative to the clock period")
    plt.legend(fontsize=8)
    plt.tight_layout()
    target = OUT_DIR / "history.png"
    plt.savefig(target, dpi=120)
    print(f"wrote {target}")
else:
    print("(matplotlib not installed, skipping the trend plot)")
