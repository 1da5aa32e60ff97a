"""Speedup statistics: quantile ratios, per-instance ratios, censoring, and
the parallel-hardware correction.

These are the pure-statistics pieces: they consume time-to-solution numbers
from any pair of solvers.  Censored entries (never solved within the
repetition cap) ride along as +inf and are reported, never extrapolated.
"""

import math

from annealbench import (
    CENSORED,
    DW2_WALLCLOCK,
    QuantileResult,
    TTSTable,
    gauge_mean_success,
    parallel_correction,
    quantile,
    repetitions_needed,
    replica_repetitions,
    speedup_quantiles_of_ratio,
    speedup_ratio_of_quantiles,
    wallclock,
)

# Repetitions to hit the ground state once with 99% confidence:
for s in (0.99, 0.5, 0.05, 0.0):
    r = repetitions_needed(s, 0.99)
    print(f"s = {s:4.2f} -> R = {'censored' if math.isinf(r) else r}")

# Gauge averaging: splitting R runs over G gauges behaves like a single
# effective success probability, the geometric-mean form.
print(f"\ngauge mean of (0.9, 0.5): {gauge_mean_success([0.9, 0.5]):.5f} "
      f"(= 1 - sqrt(0.05))")

# Censored quantiles: the 99th percentile of a batch with unsolved instances
# is censored; the median survives.
efforts = [float(k) for k in range(1, 91)] + [CENSORED] * 10
print(f"median: {quantile(efforts, 50).value:.0f}, "
      f"q99 censored: {quantile(efforts, 99).censored}")

# Quantile-ratio speedup between two synthetic solvers over four sizes.
def table(solver, scale):
    entries, topt, bound = {}, {}, {}
    for n in (32, 72, 128, 200):
        v = scale * math.exp(0.5 * math.sqrt(n))
        entries[(n, 50.0)] = QuantileResult(v, v * 0.9, v * 1.1, False)
        topt[(n, 50.0)], bound[(n, 50.0)] = 64, False
    return TTSTable(solver=solver, r=1, mode="envelope", units="MCS",
                    entries=entries, t_a_opt=topt, boundary=bound)

curve = speedup_ratio_of_quantiles(table("classical", 3.0), table("device", 1.0), 50.0)
print("\nratio-of-quantiles speedup (identical scaling, constant factor 3):")
for pt in curve.points:
    print(f"  N={pt.n_spins:4d}: S = {pt.value:.2f}")
print(f"log-slope vs sqrt(N): {[round(s, 3) for *_, s in curve.slopes()]} (flat = no asymptotic speedup)")

# Per-instance ratios answer the other question: faster for SOME instances?
paired = {128: {"easy": (900.0, 100.0), "hard": (50.0, 5000.0), "nope": (80.0, CENSORED)}}
qofr = speedup_quantiles_of_ratio(paired, 50.0)
print(f"\nquantiles-of-ratio at N=128 (one instance censored on the device side): "
      f"median ratio {qofr.points[0].value:.2f}")

# Discounting parallel hardware: a 512-site device solving an 8-spin problem
# could run 64 copies at once; its per-copy repetitions shrink accordingly.
copies = int(parallel_correction(512, 8, mode="floor"))
print(f"\nfloor(512/8) = {copies} parallel copies; "
      f"R = 7 -> R' = {replica_repetitions(7, copies)}")

# Wall-clock cost model from the shipped device timing table (modeled, not
# measured here): programming plus per-repetition readout.
t = wallclock(503, repetitions=16000, gauges=16, model=DW2_WALLCLOCK)
print(f"wall clock for 16 gauges x 16000 repetitions at N=503: {t * 1000:.1f} ms")
