"""Simulated annealing: sequential Metropolis sweeps under a linear beta ramp.

Each sweep updates one sublattice of the bipartition completely, then the
other, in ascending vertex order (typewriter order within each sublattice);
the inverse temperature steps once per sweep along the linear ramp.  Runs
start from independent uniform random configurations.  Runs are grouped
into words of 64 replicas sharing one random stream, which is what makes the
bit-packed multispin kernel reproduce the scalar kernel exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .exact import GroundTruth
from .instances import ProblemInstance
from .topology import bipartition

PROPOSAL_ORDER = "sublattice-typewriter"  # fixed scan order, recorded for reproducibility


@dataclass(frozen=True)
class SASchedule:
    """Linear inverse-temperature ramp over t_a sweeps (one MCS per sweep).

    beta_final defaults to 3*r of the instance it is run on when left None.
    """

    t_a: int
    beta_init: float = 0.1
    beta_final: float | None = None

    def __post_init__(self):
        if self.t_a < 1:
            raise ValueError(f"t_a must be >= 1 MCS, got {self.t_a}")
        if not self.beta_init > 0:
            raise ValueError(f"beta_init must be > 0, got {self.beta_init}")
        if self.beta_final is not None and self.beta_final < self.beta_init:
            raise ValueError(
                f"beta_final {self.beta_final} < beta_init {self.beta_init}"
            )

    def resolve(self, r: int) -> "SASchedule":
        if self.beta_final is not None:
            return self
        return SASchedule(t_a=self.t_a, beta_init=self.beta_init, beta_final=3.0 * r)

    def beta_array(self) -> np.ndarray:
        if self.beta_final is None:
            raise ValueError("beta_final unresolved; call resolve(r) first")
        return np.linspace(self.beta_init, self.beta_final, self.t_a)


@dataclass(frozen=True)
class RunBatch:
    """Outcome of n_runs independent annealing runs on one instance.

    energies_num holds the exact final energy numerators (energy * r), one
    per run; spin_updates_per_run counts attempted updates of a single run
    (N*t_a for SA, N*P*t_a for SQA).
    """

    instance_id: str
    solver: str
    t_a: int
    n_runs: int
    seed: int
    r: int
    kernel: str
    energies_num: np.ndarray = field(repr=False)
    spin_updates_per_run: int = 0
    configs: np.ndarray | None = field(repr=False, default=None)
    worldlines: np.ndarray | None = field(repr=False, default=None)

    def hits(self, truth: GroundTruth) -> int:
        return int(np.sum(self.energies_num == truth.numerator_for(self.r)))


@dataclass(frozen=True)
class SuccessEstimate:
    """Success probability with a 95% Wilson interval."""

    s: float
    hits: int
    n_runs: int
    ci_lo: float
    ci_hi: float


def wilson_interval(hits: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    p = hits / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _sublattice_order(inst: ProblemInstance) -> np.ndarray:
    verts = inst.graph.active_vertices()
    vidx = {int(v): i for i, v in enumerate(verts)}
    seta, setb = bipartition(inst.graph)
    order = [vidx[int(v)] for v in seta] + [vidx[int(v)] for v in setb]
    return np.array(order, dtype=np.int64)


def _batch_energies(arrays: kernels.SiteArrays, configs: np.ndarray) -> np.ndarray:
    cfg = configs.astype(np.int64)
    e = np.zeros(cfg.shape[0], dtype=np.int64)
    if arrays.eu.size:
        e -= (cfg[:, arrays.eu] * cfg[:, arrays.ev]) @ arrays.ew
    e -= cfg @ arrays.h
    return e


def sa_run(
    inst: ProblemInstance,
    sched: SASchedule,
    n_runs: int,
    seed: int,
    kernel: str = "multispin",
    instance_id: str = "",
    keep_configs: bool = True,
) -> RunBatch:
    """Run n_runs independent SA anneals; deterministic in all arguments.

    With the multispin kernel n_runs is rounded up to a multiple of 64 and
    the batch reports the rounded count.
    """
    if n_runs < 1:
        raise ValueError(f"n_runs must be >= 1, got {n_runs}")
    if kernel not in ("multispin", "scalar"):
        raise ValueError(f"unknown kernel {kernel!r}")
    if inst.n_spins < 1:
        raise ValueError("instance has no active spins")
    sched = sched.resolve(inst.r)
    arrays = kernels.site_arrays(inst)
    order = _sublattice_order(inst)
    beta_arr = sched.beta_array()
    seed64 = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)

    n_words = (n_runs + 63) // 64
    n_eff = 64 * n_words
    demax = 2 * (np.abs(arrays.h) + np.abs(arrays.cpl).sum(axis=1))
    kmax = int(demax.max()) if demax.size else 0
    spins = np.empty((n_eff, arrays.n), dtype=np.int8)

    tsum = arrays.h + arrays.cpl.sum(axis=1)
    if kernel == "scalar":
        kernels.sa_scalar_kernel(
            arrays.nbr, arrays.cpl, arrays.deg, arrays.h, order, tsum, demax,
            beta_arr, float(inst.r), np.int64(kmax), seed64, n_words, spins,
        )
        spins = spins[:n_runs]
        reported = n_runs
    else:
        wmax = np.maximum(arrays.h, 0) + np.maximum(arrays.cpl, 0).sum(axis=1)
        base_neg = np.minimum(arrays.h, 0) + np.minimum(arrays.cpl, 0).sum(axis=1)
        maxabs = int((np.abs(arrays.h) + np.abs(arrays.cpl).sum(axis=1)).max())
        nplanes = int(np.ceil(np.log2(2 * maxabs + 3))) + 1 if maxabs > 0 else 2
        kernels.sa_multispin_kernel(
            arrays.nbr, arrays.cpl, arrays.deg, arrays.h, order, tsum, wmax,
            base_neg, nplanes, beta_arr, float(inst.r), np.int64(kmax), seed64,
            n_words, spins,
        )
        reported = n_eff

    energies = _batch_energies(arrays, spins)
    return RunBatch(
        instance_id=instance_id,
        solver="sa",
        t_a=sched.t_a,
        n_runs=reported,
        seed=seed,
        r=inst.r,
        kernel=kernel,
        energies_num=energies,
        spin_updates_per_run=arrays.n * sched.t_a,
        configs=spins if keep_configs else None,
    )


def estimate_success(batch: RunBatch, truth: GroundTruth) -> SuccessEstimate:
    """Fraction of runs that ended exactly at the ground energy, with Wilson CI."""
    truth_num = truth.numerator_for(batch.r)
    if batch.energies_num.size and int(batch.energies_num.min()) < truth_num:
        raise ValueError(
            "batch contains energies below the exact ground energy; "
            "batch and truth refer to different instances"
        )
    hits = int(np.sum(batch.energies_num == truth_num))
    lo, hi = wilson_interval(hits, batch.n_runs)
    return SuccessEstimate(
        s=hits / batch.n_runs, hits=hits, n_runs=batch.n_runs, ci_lo=lo, ci_hi=hi
    )
