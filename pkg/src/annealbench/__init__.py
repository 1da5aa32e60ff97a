"""Benchmarking suite for classical and simulated quantum annealing on
Chimera-graph Ising spin glasses: exact ground states, multispin-coded SA,
path-integral SQA, and time-to-solution / speedup statistics with censored
quantiles."""

from .exact import BudgetExceededError, GroundTruth, ground_energy_bruteforce, ground_energy_dp
from .instances import (
    Gauge,
    ProblemInstance,
    apply_gauge,
    energy,
    energy_num,
    generate_instance,
    parse_instance,
    random_gauge,
    serialize_instance,
)
from .sa import RunBatch, SASchedule, SuccessEstimate, estimate_success, sa_run, wilson_interval
from .speedup import (
    SpeedupCurve,
    SpeedupPoint,
    parallel_correction,
    replica_repetitions,
    speedup_quantiles_of_ratio,
    speedup_ratio_of_quantiles,
)
from .sqa import SQASchedule, sqa_effort, sqa_run
from .topology import (
    ChimeraGraph,
    apply_mask,
    bipartition,
    build_chimera,
    elimination_width,
    read_graph,
    treewidth_bound,
    write_graph,
)
from .tts import (
    CENSORED,
    DW2_WALLCLOCK,
    CurvePoint,
    Envelope,
    QuantileResult,
    SuccessStats,
    TTSTable,
    WallClockModel,
    effort_curve,
    gauge_mean_success,
    optimal_envelope,
    quantile,
    repetitions_needed,
    total_effort,
    total_success,
    wallclock,
)

__version__ = "0.1.0"
