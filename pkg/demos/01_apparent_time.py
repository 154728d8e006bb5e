"""How transfer time inflates the processing time an observer sees.

Two placed elements exchange one request and one result.  The observer
measures the full round trip, so even instantaneous-looking neighbors
appear slower than their nominal processing time, and the idle waiting
of the observer exactly equals the transfer time.
"""

import math
from pathlib import Path

from tempograph import (
    ComputingElement,
    TimePoint,
    apparent_time,
    apparent_time_ratio,
    chain_two,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

OUT_DIR = Path(__file__).resolve().parent / "out"
OUT_DIR.mkdir(exist_ok=True)

print("== the apparent processing time of a two-element chain ==\n")

print("equal processing and transfer time, t_p = t_t = 1:")
value = apparent_time(1.0, 1.0)
print(f"  T_A = {value:.12f} = sqrt(10) = {math.sqrt(10.0):.12f}")
print(f"  already {value:.3f}x the nominal processing time\n")

print("zero transfer time collapses to the pure round trip, 2*t_p:")
for t_p in (0.5, 1.0, 4.0):
    print(f"  t_p = {t_p}: T_A = {apparent_time(t_p, 0.0)}")
print()

print("the dimensionless form: T_A / T_p against the ratio r = T_t / T_p")
ratios = [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0]
for r in ratios:
    print(f"  r = {r:>5}: T_A/T_p = {apparent_time_ratio(r):.6f}")
print()

print("two placed elements, both with t_p = 1, at unit distance:")
source = ComputingElement("source", TimePoint(0.0, 0.0), 1.0)
observer = ComputingElement("observer", TimePoint(1.0, 0.0), 1.0)
timing = chain_two(source, observer)
print(f"  transfer time    t_t = {timing.t_t}")
print(f"  idle time        t_i = {timing.t_i}   (equals t_t: the observer")
print("                          can only wait while the signal travels)")
print(f"  completion           = {timing.completion}")
print(f"  apparent time    T_A = {timing.apparent:.12f}")

if plt is not None:
    rs = [10.0 ** (k / 10.0) for k in range(-30, 21)]
    plt.figure(figsize=(6, 4))
    plt.semilogx(rs, [apparent_time_ratio(r) for r in rs])
    plt.axhline(2.0, color="gray", linestyle=":", linewidth=1)
    plt.xlabel("transfer / processing time ratio r")
    plt.ylabel("apparent / nominal processing time")
    plt.title("Slowdown seen by the observer")
    plt.tight_layout()
    target = OUT_DIR / "apparent_ratio.png"
    plt.savefig(target, dpi=120)
    print(f"\nwrote {target}")
else:
    print("\n(matplotlib not installed, skipping the ratio plot)")
