import math

import numpy as np
import pytest

from annealbench import (
    CENSORED,
    QuantileResult,
    TTSTable,
    parallel_correction,
    replica_repetitions,
    speedup_quantiles_of_ratio,
    speedup_ratio_of_quantiles,
)


def make_table(solver, values, q=50.0, r=1):
    entries = {}
    topt = {}
    bound = {}
    for n, v in values.items():
        entries[(n, q)] = QuantileResult(value=v, ci_lo=v * 0.9, ci_hi=v * 1.1,
                                         censored=math.isinf(v))
        topt[(n, q)] = 16
        bound[(n, q)] = False
    return TTSTable(solver=solver, r=r, mode="envelope", units="MCS",
                    entries=entries, t_a_opt=topt, boundary=bound)


def test_self_comparison_is_unity():
    tbl = make_table("sa", {8: 100.0, 32: 500.0, 72: 3000.0})
    curve = speedup_ratio_of_quantiles(tbl, make_table("sqa", {8: 100.0, 32: 500.0, 72: 3000.0}), 50.0)
    assert all(pt.value == 1.0 for pt in curve.points)
    assert curve.statistic == "RofQ"


def test_per_site_normalization_of_identical_tables():
    values = {8: 100.0, 64: 500.0, 512: 3000.0}
    curve = speedup_ratio_of_quantiles(
        make_table("sa", values), make_table("dw", values), 50.0,
        normalization="per-site", machine_size=512,
    )
    for pt in curve.points:
        assert pt.value == 512 / pt.n_spins


def test_censored_side_censors_point():
    num = make_table("sa", {8: 100.0, 32: CENSORED})
    den = make_table("sqa", {8: CENSORED, 32: 500.0})
    curve = speedup_ratio_of_quantiles(num, den, 50.0)
    assert all(pt.censored for pt in curve.points)


def test_grid_mismatch_rejected():
    with pytest.raises(ValueError):
        speedup_ratio_of_quantiles(make_table("sa", {8: 1.0}), make_table("sqa", {16: 1.0}), 50.0)
    with pytest.raises(ValueError):
        speedup_ratio_of_quantiles(make_table("sa", {8: 1.0}, r=1),
                                   make_table("sqa", {8: 1.0}, r=7), 50.0)


def test_qofr_constant_ratios():
    paired = {16: {f"i{k}": (200.0, 100.0) for k in range(10)}}
    curve = speedup_quantiles_of_ratio(paired, 50.0)
    assert curve.points[0].value == 2.0
    curve_n = speedup_quantiles_of_ratio(paired, 80.0, normalization="per-site",
                                         machine_size=512)
    assert curve_n.points[0].value == 2.0 * 512 / 16


def test_qofr_nearest_rank():
    paired = {8: {"a": (1.0, 1.0), "b": (2.0, 1.0), "c": (3.0, 1.0)}}
    assert speedup_quantiles_of_ratio(paired, 50.0).points[0].value == 2.0


def test_qofr_censored_sentinels():
    paired = {8: {
        "solved_by_both": (10.0, 10.0),
        "num_censored": (CENSORED, 10.0),   # classical side never solved: +inf
        "den_censored": (10.0, CENSORED),   # device side never solved: 0+
        "both_censored": (CENSORED, CENSORED),
    }}
    curve = speedup_quantiles_of_ratio(paired, 50.0)
    assert curve.dropped_pairs == 1  # only the doubly-censored pair
    vals = sorted(speedup_quantiles_of_ratio(paired, q).points[0].value
                  for q in (20.0, 55.0, 90.0))
    assert vals[0] == 0.0 and vals[1] == 1.0 and math.isinf(vals[2])

    dropped = speedup_quantiles_of_ratio(paired, 50.0, censored_policy="drop")
    assert dropped.dropped_pairs == 3
    assert dropped.points[0].value == 1.0


def test_qofr_matches_rofq_for_degenerate_distribution():
    values = {8: 120.0, 32: 480.0}
    num = make_table("sa", values)
    den = make_table("sqa", {8: 60.0, 32: 160.0})
    rofq = speedup_ratio_of_quantiles(num, den, 50.0)
    paired = {8: {f"i{k}": (120.0, 60.0) for k in range(7)},
              32: {f"i{k}": (480.0, 160.0) for k in range(7)}}
    qofr = speedup_quantiles_of_ratio(paired, 50.0)
    for a, b in zip(rofq.points, qofr.points):
        assert a.value == b.value


def test_parallel_correction_values():
    assert parallel_correction(512, 503, mode="floor") == 1.0
    assert parallel_correction(512, 8, mode="floor") == 64.0
    assert parallel_correction(512, 503, mode="smooth") == 512 / 503
    with pytest.raises(ValueError):
        parallel_correction(512, 0)
    with pytest.raises(ValueError):
        parallel_correction(512, 513)
    with pytest.raises(ValueError):
        parallel_correction(512, 8, mode="avg")


def test_replica_repetitions():
    assert replica_repetitions(7, 4) == 2  # ceil(7/4)
    assert replica_repetitions(8, 4) == 2
    assert replica_repetitions(1, 64) == 1
    with pytest.raises(ValueError):
        replica_repetitions(7, 0)


def test_constant_normalization_preserves_slope_signs():
    raw = {8: 10.0, 32: 40.0, 72: 20.0, 128: 5.0}
    ones = {n: 1.0 for n in raw}
    plain = speedup_ratio_of_quantiles(make_table("sa", raw), make_table("sqa", ones), 50.0)
    scaled = speedup_ratio_of_quantiles(
        make_table("sa", {n: 7.5 * v for n, v in raw.items()}),
        make_table("sqa", ones), 50.0,
    )
    s1 = plain.slopes()
    s2 = scaled.slopes()
    assert len(s1) == len(s2) == 3
    for (_, _, sa_), (_, _, sb_) in zip(s1, s2):
        assert math.copysign(1, sa_) == math.copysign(1, sb_)
        assert abs(sa_ - sb_) < 1e-12


def test_envelope_denominator_dominates_fixed():
    # a denominator run at fixed t_a is never faster than its envelope,
    # so the not-worse denominator makes the envelope-based speedup
    # pointwise >= the fixed-t_a one
    rng = np.random.default_rng(21)
    sizes = [8, 32, 72]
    num_vals = {n: float(rng.uniform(50, 100) * n) for n in sizes}
    env_vals = {n: float(rng.uniform(10, 20) * n) for n in sizes}
    fixed_vals = {n: env_vals[n] * float(rng.uniform(1.0, 8.0)) for n in sizes}
    num = make_table("sa", num_vals)
    s_env = speedup_ratio_of_quantiles(num, make_table("sqa", env_vals), 50.0)
    s_fix = speedup_ratio_of_quantiles(num, make_table("sqa", fixed_vals), 50.0)
    for a, b in zip(s_env.points, s_fix.points):
        assert a.value >= b.value
