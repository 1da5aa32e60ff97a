"""Speedup statistics between a classical-role and a device-role solver.

Implements both views: the ratio of quantiles (performance as an optimizer)
and the quantiles of per-instance ratios (speedup for some instances), plus
the parallel-hardware correction discounting a device whose resource count
scales with problem size.  Roles are explicit: the numerator solver plays
the classical reference C, the denominator the device Q, and the per-site
correction applies only when the denominator hardware scales with N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .tts import TTSTable, nearest_rank


@dataclass(frozen=True)
class SpeedupPoint:
    n_spins: int
    value: float  # nan when censored
    ci_lo: float
    ci_hi: float
    censored: bool
    norm_factor: float


@dataclass(frozen=True)
class SpeedupCurve:
    """S(N) for one statistic and quantile, with normalization metadata.

    slopes() reports finite-difference slopes of log S versus sqrt(N), the
    quantity whose sign carries the asymptotic-scaling conclusions; censored
    points break the chain and produce no slope.
    """

    numerator: str  # classical-role solver C
    denominator: str  # device-role solver Q
    statistic: str  # "RofQ" or "QofR"
    q: float
    normalization: str  # "none", "per-site" or "floor"
    machine_size: int | None
    points: tuple[SpeedupPoint, ...]
    dropped_pairs: int = 0

    def slopes(self) -> list[tuple[int, int, float]]:
        out = []
        pts = sorted(self.points, key=lambda p: p.n_spins)
        for a, b in zip(pts, pts[1:]):
            if a.censored or b.censored or a.value <= 0 or b.value <= 0:
                continue
            if math.isinf(a.value) or math.isinf(b.value):
                continue
            ds = (math.log(b.value) - math.log(a.value)) / (
                math.sqrt(b.n_spins) - math.sqrt(a.n_spins)
            )
            out.append((a.n_spins, b.n_spins, ds))
        return out


def parallel_correction(machine_size: int, n_spins: int, mode: str = "floor") -> float:
    """Parallel-speedup factor for a device of M sites on an N-spin problem.

    mode "floor" gives floor(M/N) parallel copies; "smooth" drops the floor,
    which only changes subleading corrections.
    """
    if n_spins < 1 or n_spins > machine_size:
        raise ValueError(f"need 1 <= N <= M, got N={n_spins}, M={machine_size}")
    if mode == "floor":
        return float(machine_size // n_spins)
    if mode == "smooth":
        return machine_size / n_spins
    raise ValueError(f"unknown parallel correction mode {mode!r}")


def replica_repetitions(repetitions: int, copies: int) -> int:
    """Repetitions R' = ceil(R/C) when C replicas of one instance run at once."""
    if copies < 1:
        raise ValueError(f"need at least one replica, got {copies}")
    return -(-repetitions // copies)


def _norm_factor(normalization: str, machine_size: int | None, n_spins: int) -> float:
    if normalization == "none":
        return 1.0
    if machine_size is None:
        raise ValueError(f"normalization {normalization!r} needs a machine size")
    if normalization == "per-site":
        return parallel_correction(machine_size, n_spins, mode="smooth")
    if normalization == "floor":
        return parallel_correction(machine_size, n_spins, mode="floor")
    raise ValueError(f"unknown normalization {normalization!r}")


def speedup_ratio_of_quantiles(
    tts_c: TTSTable,
    tts_q: TTSTable,
    q: float,
    normalization: str = "none",
    machine_size: int | None = None,
) -> SpeedupCurve:
    """S_q(N) = [T_C(N)]_q / [T_Q(N)]_q, optionally times the parallel factor.

    Censored numerator or denominator censors the point.  The interval is
    the conservative quotient of the two bootstrap intervals.
    """
    if tts_c.r != tts_q.r:
        raise ValueError(f"range mismatch: {tts_c.r} vs {tts_q.r}")
    sizes_c, sizes_q = set(tts_c.sizes()), set(tts_q.sizes())
    if sizes_c != sizes_q:
        raise ValueError(f"size grids differ: {sorted(sizes_c)} vs {sorted(sizes_q)}")
    points = []
    for n in sorted(sizes_c):
        ec = tts_c.entries.get((n, q))
        eq = tts_q.entries.get((n, q))
        if ec is None or eq is None:
            raise ValueError(f"quantile {q} missing at N={n}")
        factor = _norm_factor(normalization, machine_size, n)
        if ec.censored or eq.censored:
            points.append(
                SpeedupPoint(n_spins=n, value=math.nan, ci_lo=math.nan,
                             ci_hi=math.nan, censored=True, norm_factor=factor)
            )
            continue
        val = ec.value / eq.value * factor
        lo = ec.ci_lo / eq.ci_hi * factor if eq.ci_hi > 0 else math.nan
        hi = ec.ci_hi / eq.ci_lo * factor if eq.ci_lo > 0 else math.inf
        points.append(
            SpeedupPoint(n_spins=n, value=val, ci_lo=lo, ci_hi=hi,
                         censored=False, norm_factor=factor)
        )
    return SpeedupCurve(
        numerator=tts_c.solver, denominator=tts_q.solver, statistic="RofQ",
        q=q, normalization=normalization, machine_size=machine_size,
        points=tuple(points),
    )


def speedup_quantiles_of_ratio(
    paired: Mapping[int, Mapping[str, tuple[float, float]]],
    q: float,
    normalization: str = "none",
    machine_size: int | None = None,
    numerator: str = "C",
    denominator: str = "Q",
    censored_policy: str = "sentinel",
    n_boot: int = 1000,
    seed: int = 0,
) -> SpeedupCurve:
    """S_q(N) = [T_C/T_Q * factor]_q over per-instance pairs.

    paired maps N -> {instance_id: (T_C, T_Q)} with math.inf marking censored
    efforts.  Under the "sentinel" policy a censored T_C contributes +inf
    (the device-role solver wins by any margin) and a censored T_Q
    contributes 0 (no speedup); pairs censored on both sides are undefined
    and are counted in dropped_pairs, as is every censored pair under the
    "drop" policy.
    """
    if censored_policy not in ("sentinel", "drop"):
        raise ValueError(f"unknown censored policy {censored_policy!r}")
    points = []
    dropped = 0
    for n in sorted(paired):
        factor = _norm_factor(normalization, machine_size, n)
        ratios = []
        for iid in sorted(paired[n]):
            tc, tq = paired[n][iid]
            c_cen, q_cen = math.isinf(tc), math.isinf(tq)
            if c_cen and q_cen:
                dropped += 1
                continue
            if c_cen or q_cen:
                if censored_policy == "drop":
                    dropped += 1
                    continue
                ratios.append(math.inf if c_cen else 0.0)
            else:
                ratios.append(tc / tq * factor)
        if not ratios:
            raise ValueError(f"no usable pairs at N={n}")
        vals = np.sort(np.asarray(ratios, dtype=np.float64))
        point = nearest_rank(vals, q)
        rank = max(1, math.ceil(q / 100.0 * vals.size))
        rng = np.random.Generator(np.random.PCG64(seed))
        boot = np.sort(np.sort(vals[rng.integers(0, vals.size, size=(n_boot, vals.size))], axis=1)[:, rank - 1])
        lo = float(boot[int(math.floor(0.025 * (n_boot - 1)))])
        hi = float(boot[int(math.ceil(0.975 * (n_boot - 1)))])
        points.append(
            SpeedupPoint(n_spins=n, value=point, ci_lo=lo, ci_hi=hi,
                         censored=math.isinf(point), norm_factor=factor)
        )
    return SpeedupCurve(
        numerator=numerator, denominator=denominator, statistic="QofR",
        q=q, normalization=normalization, machine_size=machine_size,
        points=tuple(points), dropped_pairs=dropped,
    )
