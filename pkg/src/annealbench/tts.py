"""Time-to-solution statistics.

Turns per-gauge success probabilities into repetition counts, total efforts,
censored quantiles with bootstrap confidence intervals, effort-vs-annealing-
time curves with their optimal-time envelope, and wall-clock estimates from
the shipped DW2 timing table.  Censored quantities are represented as
math.inf: they sort above every finite effort and are reported as censored,
never extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

CENSORED = math.inf
DEFAULT_P_TARGET = 0.99
DEFAULT_R_MAX = 10_000  # repetition cap per gauge


def repetitions_needed(s: float, p: float, r_max: float | None = None) -> float:
    """Repetitions R = ceil(ln(1-p)/ln(1-s)) to hit the ground state once
    with probability p.

    Returns math.inf (censored) when s = 0 or when R exceeds r_max.
    """
    if not 0 < p < 1:
        raise ValueError(f"target probability p must be in (0,1), got {p}")
    if s < 0 or s > 1:
        raise ValueError(f"success probability s must be in [0,1], got {s}")
    if s == 0:
        return CENSORED
    if s == 1:
        r = 1
    else:
        r = max(1, math.ceil(math.log1p(-p) / math.log1p(-s)))
    if r_max is not None and r > r_max:
        return CENSORED
    return r


def gauge_mean_success(s_list: Sequence[float]) -> float:
    """Geometric-mean success over gauges: s_bar = 1 - prod(1-s_g)**(1/G).

    Substituting s_bar into the repetitions formula reproduces the total
    success probability 1 - prod(1-s_g)**(R/G) of splitting R runs evenly
    over the G gauges.
    """
    if len(s_list) == 0:
        raise ValueError("need at least one gauge")
    for s in s_list:
        if s < 0 or s > 1:
            raise ValueError(f"success probability {s} outside [0,1]")
    log_fail = 0.0
    for s in s_list:
        if s == 1.0:
            return 1.0
        log_fail += math.log1p(-s)
    return -math.expm1(log_fail / len(s_list))


def total_success(s: float, repetitions: float) -> float:
    """P = 1 - (1-s)**R, the probability of at least one hit in R runs."""
    if s == 1.0:
        return 1.0
    return -math.expm1(repetitions * math.log1p(-s))


def total_effort(s: float, p: float, t_a: float, r_max: float | None = None) -> float:
    """Total effort R(s, p) * t_a in the units of t_a; censoring propagates."""
    r = repetitions_needed(s, p, r_max=r_max)
    return r * t_a


@dataclass(frozen=True)
class SuccessStats:
    """Per-instance success at one annealing time, split over G >= 1 gauges."""

    instance_id: str
    solver: str
    t_a: int
    s_gauges: tuple[float, ...]
    n_runs: int
    r_max: float | None = DEFAULT_R_MAX

    def __post_init__(self):
        if len(self.s_gauges) < 1:
            raise ValueError("need at least one gauge")
        for s in self.s_gauges:
            if s < 0 or s > 1:
                raise ValueError(f"success probability {s} outside [0,1]")

    @property
    def gauges(self) -> int:
        return len(self.s_gauges)

    def mean_success(self) -> float:
        return gauge_mean_success(self.s_gauges)

    def effort(self, p: float = DEFAULT_P_TARGET) -> float:
        """Total effort R * t_a in MCS; the cap applies per gauge."""
        cap = None if self.r_max is None else self.r_max * self.gauges
        return total_effort(self.mean_success(), p, self.t_a, r_max=cap)


@dataclass(frozen=True)
class QuantileResult:
    """Nearest-rank quantile with a bootstrap CI; value is inf if censored."""

    value: float
    ci_lo: float
    ci_hi: float
    censored: bool


def nearest_rank(sorted_values: np.ndarray, q: float) -> float:
    n = len(sorted_values)
    rank = max(1, math.ceil(q / 100.0 * n))
    return float(sorted_values[rank - 1])


def quantile(
    values: Iterable[float],
    q: float,
    n_boot: int = 1000,
    seed: int = 0,
    ci: float = 0.95,
) -> QuantileResult:
    """Nearest-rank quantile over values that may contain censored entries.

    Censored entries (math.inf) sort above all finite values; if the rank
    lands on one, the quantile itself is censored.  The CI comes from
    n_boot bootstrap resamples of the same nearest-rank statistic.
    """
    vals = np.asarray(list(values), dtype=np.float64)
    if vals.size == 0:
        raise ValueError("cannot take a quantile of no values")
    if not 0 < q < 100:
        raise ValueError(f"quantile q must be in (0,100), got {q}")
    vals.sort()
    point = nearest_rank(vals, q)
    rank = max(1, math.ceil(q / 100.0 * vals.size))
    rng = np.random.Generator(np.random.PCG64(seed))
    idx = rng.integers(0, vals.size, size=(n_boot, vals.size))
    boot = np.sort(vals[idx], axis=1)[:, rank - 1]
    boot.sort()
    alpha = (1.0 - ci) / 2.0
    lo = float(boot[int(math.floor(alpha * (n_boot - 1)))])
    hi = float(boot[int(math.ceil((1.0 - alpha) * (n_boot - 1)))])
    return QuantileResult(value=point, ci_lo=lo, ci_hi=hi, censored=math.isinf(point))


@dataclass(frozen=True)
class CurvePoint:
    t_a: int
    effort: QuantileResult


@dataclass(frozen=True)
class Envelope:
    t_a_opt: int
    effort: QuantileResult
    on_boundary: bool


def effort_curve(
    stats: Iterable[SuccessStats],
    q: float,
    p: float = DEFAULT_P_TARGET,
    n_boot: int = 1000,
    seed: int = 0,
) -> list[CurvePoint]:
    """Quantile of per-instance total effort at each annealing time.

    Every t_a on the grid needs at least one instance; at least two grid
    points are required for a curve.
    """
    by_ta: dict[int, list[float]] = {}
    for st in stats:
        by_ta.setdefault(st.t_a, []).append(st.effort(p))
    if not by_ta:
        raise ValueError("no success statistics supplied")
    points = []
    for t_a in sorted(by_ta):
        points.append(CurvePoint(t_a=t_a, effort=quantile(by_ta[t_a], q, n_boot=n_boot, seed=seed)))
    return points


def optimal_envelope(curve: Sequence[CurvePoint]) -> Envelope:
    """Minimum of the effort curve over the t_a grid (first minimum on ties).

    on_boundary flags a minimum at either end of the grid, meaning the true
    optimal annealing time lies outside the measured range.
    """
    if not curve:
        raise ValueError("empty effort curve")
    finite = [cp for cp in curve if not cp.effort.censored]
    if not finite:
        raise ValueError("all points of the effort curve are censored")
    best = min(finite, key=lambda cp: (cp.effort.value, cp.t_a))
    on_boundary = best.t_a in (curve[0].t_a, curve[-1].t_a)
    return Envelope(t_a_opt=best.t_a, effort=best.effort, on_boundary=on_boundary)


@dataclass(frozen=True)
class WallClockModel:
    """Programming time t_p [ms] and per-repetition time t_r [us] by size."""

    table: Mapping[int, tuple[float, float]]

    def sizes(self) -> list[int]:
        return sorted(self.table)


# Measured DW2 wall-clock components; provenance: modeled, not measured here.
DW2_WALLCLOCK = WallClockModel(
    table={
        8: (14.7, 51.0),
        16: (14.8, 53.0),
        31: (14.8, 57.9),
        47: (14.9, 60.6),
        70: (15.0, 64.5),
        94: (15.2, 68.3),
        126: (15.6, 73.1),
        158: (15.5, 78.0),
        198: (15.5, 80.8),
        238: (15.7, 83.5),
        284: (15.8, 83.6),
        332: (16.0, 87.1),
        385: (16.6, 87.1),
        439: (16.6, 90.4),
        503: (16.6, 90.5),
    }
)


def wallclock(
    n_spins: int,
    repetitions: float,
    gauges: int,
    model: WallClockModel = DW2_WALLCLOCK,
) -> float:
    """Total wall-clock seconds G*t_p(N) + R*t_r(N); table lookup only."""
    if gauges < 1:
        raise ValueError("at least one programming cycle is required (G >= 1)")
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    if n_spins not in model.table:
        raise ValueError(f"no wall-clock entry for N={n_spins} (no interpolation)")
    t_p_ms, t_r_us = model.table[n_spins]
    return gauges * t_p_ms * 1e-3 + repetitions * t_r_us * 1e-6


@dataclass(frozen=True)
class TTSTable:
    """Quantile efforts per problem size for one solver and coupling range.

    entries maps (N, q) to a QuantileResult; t_a_opt and boundary record the
    envelope metadata when mode == "envelope", or the fixed annealing time
    when mode == "fixed".  units is "MCS", "updates" or "seconds".
    """

    solver: str
    r: int
    mode: str
    units: str
    entries: Mapping[tuple[int, float], QuantileResult]
    t_a_opt: Mapping[tuple[int, float], int]
    boundary: Mapping[tuple[int, float], bool]

    def sizes(self) -> list[int]:
        return sorted({n for n, _ in self.entries})

    def quantiles(self) -> list[float]:
        return sorted({q for _, q in self.entries})
