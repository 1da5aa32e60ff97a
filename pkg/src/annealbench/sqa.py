"""Simulated quantum annealing: path-integral Monte Carlo at fixed temperature.

Worldlines have P time slices, periodic in imaginary time.  Per sweep the
transverse field A(t) ramps linearly down to 0 and the problem coupling B(t)
up from 0; the time-direction coupling J_perp(t) = -(P/(2*beta))*ln tanh(beta*
A(t)/P) is refreshed, a Metropolis pass visits every (slice, site) pair with
spatial weight (beta/P)*B(t)*J_ij, and a per-site cluster pass bonds equal
adjacent slices with probability 1 - exp(-2*(beta/P)*J_perp) and flips each
cluster by Metropolis on the spatial action change.  A run reports the
minimum classical energy over its final slices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .instances import ProblemInstance
from .sa import RunBatch, _sublattice_order


@dataclass(frozen=True)
class SQASchedule:
    """Linear transverse-field ramp at constant inverse temperature beta.

    A(t) falls A_init -> 0 and B(t) rises 0 -> B_final over t_a sweeps; A is
    clamped at a_floor (reached on the final sweep) to keep J_perp finite.
    """

    t_a: int
    P: int = 64
    beta: float = 10.0
    A_init: float = 2.5
    B_final: float = 1.0
    a_floor: float = 1e-8

    def __post_init__(self):
        if self.t_a < 1:
            raise ValueError(f"t_a must be >= 1 MCS, got {self.t_a}")
        if self.P < 1:
            raise ValueError(f"slice count P must be >= 1, got {self.P}")
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not self.B_final > 0:
            raise ValueError(f"B_final must be > 0, got {self.B_final}")
        if self.P > 1 and not self.A_init > 0:
            raise ValueError("A_init must be > 0 when P > 1 (J_perp undefined at A=0)")

    def a_array(self) -> np.ndarray:
        return np.maximum(np.linspace(self.A_init, 0.0, self.t_a), self.a_floor)

    def b_array(self) -> np.ndarray:
        return np.linspace(0.0, self.B_final, self.t_a)


def sqa_run(
    inst: ProblemInstance,
    sched: SQASchedule,
    n_runs: int,
    seed: int,
    instance_id: str = "",
    keep_worldlines: bool = False,
) -> RunBatch:
    """Run n_runs independent SQA anneals; deterministic in all arguments."""
    if n_runs < 1:
        raise ValueError(f"n_runs must be >= 1, got {n_runs}")
    if inst.n_spins < 1:
        raise ValueError("instance has no active spins")
    arrays = kernels.site_arrays(inst)
    order = _sublattice_order(inst)
    tsum = arrays.h + arrays.cpl.sum(axis=1)
    demax = 2 * (np.abs(arrays.h) + np.abs(arrays.cpl).sum(axis=1))
    kmax = int(demax.max()) if demax.size else 0
    maxfield = int((np.abs(arrays.h) + np.abs(arrays.cpl).sum(axis=1)).max()) if arrays.n else 0
    seed64 = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)

    worldlines = np.empty((n_runs, sched.P, arrays.n), dtype=np.int8)
    emin = np.empty(n_runs, dtype=np.int64)
    kernels.sqa_kernel(
        arrays.nbr, arrays.cpl, arrays.deg, arrays.h, order, tsum, demax,
        arrays.eu, arrays.ev, arrays.ew,
        sched.a_array(), sched.b_array(), float(sched.beta), sched.P,
        float(inst.r), np.int64(kmax), maxfield, seed64, n_runs,
        worldlines, emin,
    )
    return RunBatch(
        instance_id=instance_id,
        solver="sqa",
        t_a=sched.t_a,
        n_runs=n_runs,
        seed=seed,
        r=inst.r,
        kernel="worldline",
        energies_num=emin,
        spin_updates_per_run=arrays.n * sched.P * sched.t_a,
        worldlines=worldlines if keep_worldlines else None,
    )


def sqa_effort(sched: SQASchedule, n_spins: int) -> tuple[int, int]:
    """Effort of one run in (MCS, attempted spin updates).

    MCS is the sweep count, the shared annealing-time unit for SA and SQA;
    the update count is t_a*N*P since one MCS visits every (slice, site).
    """
    return sched.t_a, sched.t_a * n_spins * sched.P
