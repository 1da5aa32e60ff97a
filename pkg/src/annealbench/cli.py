"""Command-line orchestration: generate, solve-exact, anneal, sweep, analyze,
report.

A benchmark is driven by a small key = value config file (see CONFIG_KEYS).
Everything is deterministic from the config master seed: per-instance and
per-run seeds are derived by hashing, so reruns, resumes and different
worker counts produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import runlog as rl
from .exact import BudgetExceededError, ground_energy_dp
from .instances import apply_gauge, generate_instance, parse_instance, random_gauge, serialize_instance
from .sa import SASchedule, sa_run
from .speedup import speedup_quantiles_of_ratio, speedup_ratio_of_quantiles
from .sqa import SQASchedule, sqa_run
from .topology import build_chimera, read_graph, write_graph
from .tts import DEFAULT_P_TARGET, DEFAULT_R_MAX, SuccessStats, TTSTable, effort_curve, optimal_envelope

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARTIAL = 3

CONFIG_KEYS = """\
sizes        list of LxLp cell grids (e.g. "1x1, 2x2") or graph-file paths
ranges       coupling ranges r (e.g. "1, 7")
instances    instances per (size, range)            [default 1000]
seed         master seed                            [default 1]
ta_grid      annealing times in MCS (e.g. "1, 4, 16")
solvers      subset of "sa, sqa"                    [default sa]
sa_runs      SA repetitions per gauge               [default 1024]
sa_kernel    multispin | scalar                     [default multispin]
sa_beta_init SA initial inverse temperature         [default 0.1]
sa_beta_final SA final inverse temperature          [default 3r]
sqa_runs     SQA repetitions per gauge              [default 64]
sqa_slices   SQA imaginary-time slices P            [default 64]
sqa_beta     SQA inverse temperature                [default 10.0]
sqa_a_init   SQA initial transverse field           [default 2.5]
sqa_b_final  SQA final problem coupling             [default 1.0]
gauges       gauge encodings per instance           [default 1]
p_target     target total success probability       [default 0.99]
r_max        repetition cap per gauge               [default 10000]
quantiles    analysis quantiles in percent          [default 50]
workers      sweep worker processes                 [default 1]
out_dir      output directory                       [default runs]
updates_per_second  optional spin-updates/s to convert efforts to seconds
"""


@dataclass
class BenchmarkConfig:
    sizes: list = field(default_factory=list)  # (L, Lp) tuples or graph paths
    ranges: list = field(default_factory=lambda: [1])
    instances: int = 1000
    seed: int = 1
    ta_grid: list = field(default_factory=lambda: [1])
    solvers: list = field(default_factory=lambda: ["sa"])
    sa_runs: int = 1024
    sa_kernel: str = "multispin"
    sa_beta_init: float = 0.1
    sa_beta_final: float | None = None
    sqa_runs: int = 64
    sqa_slices: int = 64
    sqa_beta: float = 10.0
    sqa_a_init: float = 2.5
    sqa_b_final: float = 1.0
    gauges: int = 1
    p_target: float = DEFAULT_P_TARGET
    r_max: float = DEFAULT_R_MAX
    quantiles: list = field(default_factory=lambda: [50.0])
    workers: int = 1
    out_dir: Path = Path("runs")
    updates_per_second: float | None = None

    def validate(self) -> None:
        if not self.sizes:
            raise ValueError("config needs at least one size")
        if self.instances < 1:
            raise ValueError("instances must be >= 1")
        for r in self.ranges:
            if r < 1:
                raise ValueError(f"range r must be >= 1, got {r}")
        if not self.ta_grid or any(t < 1 for t in self.ta_grid):
            raise ValueError("ta_grid entries must be >= 1 MCS")
        for solver in self.solvers:
            if solver not in ("sa", "sqa"):
                raise ValueError(f"unknown solver {solver!r}")
        if self.gauges < 1:
            raise ValueError("gauges must be >= 1")
        if not 0 < self.p_target < 1:
            raise ValueError("p_target must be in (0,1)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for q in self.quantiles:
            if not 0 < q < 100:
                raise ValueError(f"quantile {q} outside (0,100)")
        # construct one schedule per solver so module preconditions run now
        for t_a in (self.ta_grid[0], self.ta_grid[-1]):
            if "sa" in self.solvers:
                SASchedule(t_a=t_a, beta_init=self.sa_beta_init, beta_final=self.sa_beta_final)
            if "sqa" in self.solvers:
                SQASchedule(t_a=t_a, P=self.sqa_slices, beta=self.sqa_beta,
                            A_init=self.sqa_a_init, B_final=self.sqa_b_final)
        if self.sa_kernel not in ("multispin", "scalar"):
            raise ValueError(f"unknown SA kernel {self.sa_kernel!r}")


def _parse_list(value: str) -> list[str]:
    return [tok for tok in value.replace(",", " ").split() if tok]


def load_config(path: Path) -> BenchmarkConfig:
    cfg = BenchmarkConfig()
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not value:
            continue
        if key == "sizes":
            sizes = []
            for tok in _parse_list(value):
                if "x" in tok and tok.replace("x", "").isdigit():
                    l_str, lp_str = tok.split("x")
                    sizes.append((int(l_str), int(lp_str)))
                else:
                    sizes.append(Path(tok))
            cfg.sizes = sizes
        elif key == "ranges":
            cfg.ranges = [int(t) for t in _parse_list(value)]
        elif key == "ta_grid":
            cfg.ta_grid = sorted(int(t) for t in _parse_list(value))
        elif key == "solvers":
            cfg.solvers = _parse_list(value)
        elif key == "quantiles":
            cfg.quantiles = [float(t) for t in _parse_list(value)]
        elif key in ("instances", "seed", "sa_runs", "sqa_runs", "sqa_slices", "gauges", "workers"):
            setattr(cfg, key, int(value))
        elif key in ("sa_beta_init", "sa_beta_final", "sqa_beta", "sqa_a_init",
                     "sqa_b_final", "p_target", "r_max", "updates_per_second"):
            setattr(cfg, key, float(value))
        elif key == "sa_kernel":
            cfg.sa_kernel = value
        elif key == "out_dir":
            cfg.out_dir = Path(value)
        else:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
    cfg.validate()
    return cfg


def derive_seed(master: int, *parts) -> int:
    text = f"{master}|" + "|".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "little")


def _size_label(g) -> str:
    return f"L{g.L}x{g.Lp}c{g.c}"


def _instance_graphs(cfg: BenchmarkConfig):
    """Yield (graph, label) for each configured size or graph file."""
    for size in cfg.sizes:
        if isinstance(size, tuple):
            g = build_chimera(size[0], size[1], 4)
        else:
            g = read_graph(Path(size).read_text())
        yield g, _size_label(g)


def cmd_generate(cfg: BenchmarkConfig) -> int:
    inst_dir = cfg.out_dir / "instances"
    graph_dir = cfg.out_dir / "graphs"
    inst_dir.mkdir(parents=True, exist_ok=True)
    graph_dir.mkdir(parents=True, exist_ok=True)
    manifest = []
    for g, label in _instance_graphs(cfg):
        gpath = graph_dir / f"{label}.graph"
        gpath.write_text(write_graph(g))
        for r in cfg.ranges:
            for i in range(cfg.instances):
                iid = f"{label}_r{r}_i{i:05d}"
                seed = derive_seed(cfg.seed, "gen", label, r, i)
                inst = generate_instance(g, r, seed)
                path = inst_dir / f"{iid}.txt"
                text = serialize_instance(inst)
                path.write_text(text)
                digest = hashlib.sha256(text.encode()).hexdigest()
                manifest.append(f"{digest}  instances/{iid}.txt")
    (cfg.out_dir / "manifest.txt").write_text("\n".join(sorted(manifest)) + "\n")
    print(f"generated {len(manifest)} instances under {cfg.out_dir}")
    return EXIT_OK


def _iter_manifest(cfg: BenchmarkConfig):
    manifest = cfg.out_dir / "manifest.txt"
    if not manifest.exists():
        raise ValueError(f"no manifest at {manifest}; run generate first")
    for line in manifest.read_text().splitlines():
        digest, rel = line.split(None, 1)
        path = cfg.out_dir / rel.strip()
        yield path.stem, path


def cmd_solve_exact(cfg: BenchmarkConfig) -> int:
    log = rl.ground_log(cfg.out_dir / "ground.csv")
    done = {k[0] for k in log.existing_keys()}
    log.open_append()
    solved = refused = 0
    try:
        for iid, path in _iter_manifest(cfg):
            if iid in done:
                continue
            inst = parse_instance(path.read_text())
            try:
                truth = ground_energy_dp(inst)
            except BudgetExceededError as exc:
                print(f"refusing {iid}: {exc}", file=sys.stderr)
                refused += 1
                continue
            log.append(rl.GroundRecord(
                instance_id=iid,
                energy_num=truth.numerator_for(inst.r),
                r=inst.r,
                method=truth.method,
            ))
            solved += 1
    finally:
        log.close()
    print(f"solved {solved} instances exactly ({refused} refused)")
    return EXIT_OK if refused == 0 else EXIT_PARTIAL


def _solver_params(cfg: BenchmarkConfig, solver: str) -> str:
    if solver == "sa":
        bf = "3r" if cfg.sa_beta_final is None else repr(cfg.sa_beta_final)
        return f"beta_init={cfg.sa_beta_init!r};beta_final={bf};order=sublattice-typewriter"
    return (f"P={cfg.sqa_slices};beta={cfg.sqa_beta!r};A_init={cfg.sqa_a_init!r};"
            f"B_final={cfg.sqa_b_final!r}")


def _run_one(cfg: BenchmarkConfig, solver: str, inst, iid: str, t_a: int, gauge_idx: int,
             truth_num: int) -> rl.RunRecord:
    run_seed = derive_seed(cfg.seed, "run", iid, solver, t_a, gauge_idx)
    work = inst
    if gauge_idx > 0:
        gauge = random_gauge(inst.graph, derive_seed(cfg.seed, "gauge", iid, gauge_idx))
        work = apply_gauge(inst, gauge)
    if solver == "sa":
        sched = SASchedule(t_a=t_a, beta_init=cfg.sa_beta_init, beta_final=cfg.sa_beta_final)
        batch = sa_run(work, sched, cfg.sa_runs, run_seed, kernel=cfg.sa_kernel,
                       instance_id=iid, keep_configs=False)
    else:
        sched = SQASchedule(t_a=t_a, P=cfg.sqa_slices, beta=cfg.sqa_beta,
                            A_init=cfg.sqa_a_init, B_final=cfg.sqa_b_final)
        batch = sqa_run(work, sched, cfg.sqa_runs, run_seed, instance_id=iid)
    hits = int(np.sum(batch.energies_num == truth_num))
    g = inst.graph
    return rl.RunRecord(
        instance_id=iid, solver=solver, kernel=batch.kernel,
        L=g.L, Lp=g.Lp, c=g.c, r=inst.r, n_spins=inst.n_spins,
        t_a=t_a, gauge=gauge_idx, n_runs=batch.n_runs, hits=hits,
        spin_updates_per_run=batch.spin_updates_per_run, seed=run_seed,
        params=_solver_params(cfg, solver),
    )


def _sweep_task(args):
    cfg, solver, iid, path, truth_num, missing = args
    inst = parse_instance(Path(path).read_text())
    return [_run_one(cfg, solver, inst, iid, t_a, g, truth_num) for (t_a, g) in missing]


def _pool_init():
    try:
        import numba

        numba.set_num_threads(1)
    except Exception:
        pass


def cmd_sweep(cfg: BenchmarkConfig, solvers: list[str] | None = None) -> int:
    solvers = solvers or cfg.solvers
    ground = {rec.instance_id: rec.energy_num for rec in rl.ground_log(cfg.out_dir / "ground.csv").load()} \
        if (cfg.out_dir / "ground.csv").exists() else {}
    log = rl.run_log(cfg.out_dir / "runlog.csv")
    existing = log.existing_keys()

    kernels = {"sa": cfg.sa_kernel, "sqa": "worldline"}
    tasks = []
    skipped = 0
    for iid, path in _iter_manifest(cfg):
        if iid not in ground:
            skipped += 1
            continue
        for solver in solvers:
            missing = [
                (t_a, g)
                for t_a in cfg.ta_grid
                for g in range(cfg.gauges)
                if (iid, solver, kernels[solver], t_a, g) not in existing
            ]
            if missing:
                tasks.append((cfg, solver, iid, str(path), ground[iid], missing))
    if skipped:
        print(f"warning: {skipped} instances lack ground truth and were skipped", file=sys.stderr)

    log.open_append()
    try:
        if cfg.workers == 1:
            for task in tasks:
                for rec in _sweep_task(task):
                    log.append(rec)
        else:
            import multiprocessing as mp

            ctx = mp.get_context("spawn")
            with ctx.Pool(cfg.workers, initializer=_pool_init) as pool:
                for recs in pool.imap(_sweep_task, tasks, chunksize=1):
                    for rec in recs:
                        log.append(rec)
    finally:
        log.close()
    print(f"sweep complete: {len(tasks)} tasks over solvers {solvers}")
    return EXIT_OK if skipped == 0 else EXIT_PARTIAL


def _success_stats(records: list[rl.RunRecord], cfg_r_max: float) -> dict:
    """Group run records into per-(solver, r, N) per-instance SuccessStats."""
    grouped: dict = {}
    by_block: dict = {}
    for rec in records:
        by_block.setdefault((rec.solver, rec.r, rec.n_spins, rec.instance_id, rec.t_a), []).append(rec)
    for (solver, r, n, iid, t_a), recs in by_block.items():
        recs = sorted(recs, key=lambda x: x.gauge)
        st = SuccessStats(
            instance_id=iid,
            solver=solver,
            t_a=t_a,
            s_gauges=tuple(rec.hits / rec.n_runs for rec in recs),
            n_runs=recs[0].n_runs,
            r_max=cfg_r_max,
        )
        grouped.setdefault((solver, r, n), {}).setdefault(iid, []).append(st)
    return grouped


def _updates_per_mcs(records: list[rl.RunRecord]) -> dict:
    out = {}
    for rec in records:
        out[(rec.solver, rec.r, rec.n_spins)] = rec.spin_updates_per_run / rec.t_a
    return out


def cmd_analyze(cfg: BenchmarkConfig, mode: str, fixed_ta: int | None = None,
                units: str = "MCS", numerator: str = "sa", denominator: str = "sqa",
                normalization: str = "none", machine_size: int | None = None) -> int:
    records = rl.run_log(cfg.out_dir / "runlog.csv").load()
    if not records:
        raise ValueError(f"empty run log under {cfg.out_dir}")
    out_dir = cfg.out_dir / "analysis"
    out_dir.mkdir(parents=True, exist_ok=True)
    grouped = _success_stats(records, cfg.r_max)
    upd = _updates_per_mcs(records)

    def unit_factor(key) -> float:
        if units == "MCS":
            return 1.0
        if units == "updates":
            return upd[key]
        if units == "seconds":
            if not cfg.updates_per_second:
                raise ValueError("units=seconds needs updates_per_second in the config")
            return upd[key] / cfg.updates_per_second
        raise ValueError(f"unknown units {units!r}")

    tables: dict = {}
    curve_rows = []
    tts_rows = []
    for (solver, r, n) in sorted(grouped):
        per_instance = grouped[(solver, r, n)]
        factor = unit_factor((solver, r, n))
        for q in cfg.quantiles:
            all_stats = [st for sts in per_instance.values() for st in sts]
            curve = effort_curve(all_stats, q, p=cfg.p_target)
            for cp in curve:
                curve_rows.append([
                    solver, r, n, q, cp.t_a, cp.effort.value * factor,
                    cp.effort.ci_lo * factor, cp.effort.ci_hi * factor,
                    cp.effort.censored, units,
                ])
            if fixed_ta is not None:
                match = [cp for cp in curve if cp.t_a == fixed_ta]
                if not match:
                    raise ValueError(f"fixed t_a {fixed_ta} not in measured grid")
                chosen, boundary, mode_label = match[0], False, "fixed"
            else:
                env = optimal_envelope(curve)
                chosen = [cp for cp in curve if cp.t_a == env.t_a_opt][0]
                boundary, mode_label = env.on_boundary, "envelope"
            eff = chosen.effort
            tts_rows.append([
                solver, r, n, q, chosen.t_a, eff.value * factor,
                eff.ci_lo * factor, eff.ci_hi * factor, eff.censored,
                units, mode_label, boundary,
            ])
            tables.setdefault((solver, r, q), {})[n] = (chosen, boundary)

    rl.write_csv(out_dir / "curves.csv", rl.CURVES_SCHEMA,
                 ["solver", "r", "N", "q", "t_a", "effort", "ci_lo", "ci_hi", "censored", "units"],
                 curve_rows)
    rl.write_csv(out_dir / "tts.csv", rl.TTS_SCHEMA,
                 ["solver", "r", "N", "q", "t_a_opt", "effort", "ci_lo", "ci_hi",
                  "censored", "units", "mode", "boundary"],
                 tts_rows)
    if mode == "tts":
        print(f"wrote {out_dir/'tts.csv'} and {out_dir/'curves.csv'}")
        return EXIT_OK

    # speedup mode: numerator (classical role) over denominator (device role)
    speedup_rows = []
    pairs_rows = []
    for r in sorted({key[1] for key in grouped}):
        for q in cfg.quantiles:
            entries_c, entries_q, topt_c, topt_q, bound_c, bound_q = {}, {}, {}, {}, {}, {}
            sizes = sorted({key[2] for key in grouped if key[0] == numerator and key[1] == r})
            if (numerator, r, q) not in tables or (denominator, r, q) not in tables:
                raise ValueError(
                    f"speedup needs run-log records for both {numerator!r} and "
                    f"{denominator!r} at r={r}"
                )
            for n in sizes:
                if n not in tables[(denominator, r, q)]:
                    raise ValueError(f"denominator {denominator!r} has no runs at N={n}, r={r}")
                cp_c, b_c = tables[(numerator, r, q)][n]
                cp_q, b_q = tables[(denominator, r, q)][n]
                entries_c[(n, q)] = cp_c.effort
                entries_q[(n, q)] = cp_q.effort
                topt_c[(n, q)], topt_q[(n, q)] = cp_c.t_a, cp_q.t_a
                bound_c[(n, q)], bound_q[(n, q)] = b_c, b_q
            mode_label = "fixed" if fixed_ta is not None else "envelope"
            tcn = TTSTable(solver=numerator, r=r, mode=mode_label, units=units,
                           entries=entries_c, t_a_opt=topt_c, boundary=bound_c)
            tqn = TTSTable(solver=denominator, r=r, mode=mode_label, units=units,
                           entries=entries_q, t_a_opt=topt_q, boundary=bound_q)
            curve = speedup_ratio_of_quantiles(tcn, tqn, q, normalization=normalization,
                                               machine_size=machine_size)
            for pt in curve.points:
                speedup_rows.append(["RofQ", q, pt.n_spins, pt.value, pt.ci_lo, pt.ci_hi,
                                     pt.censored, normalization,
                                     machine_size if machine_size is not None else "",
                                     numerator, denominator, r])
            # per-instance pairing at the chosen per-size annealing times
            paired = {}
            for n in sizes:
                per_c = grouped[(numerator, r, n)]
                per_q = grouped[(denominator, r, n)]
                fac = unit_factor((numerator, r, n))
                faq = unit_factor((denominator, r, n))
                pairs = {}
                for iid in sorted(set(per_c) & set(per_q)):
                    st_c = [st for st in per_c[iid] if st.t_a == topt_c[(n, q)]]
                    st_q = [st for st in per_q[iid] if st.t_a == topt_q[(n, q)]]
                    if not st_c or not st_q:
                        continue
                    pairs[iid] = (st_c[0].effort(cfg.p_target) * fac,
                                  st_q[0].effort(cfg.p_target) * faq)
                paired[n] = pairs
                for iid, (tc, tq) in sorted(pairs.items()):
                    pairs_rows.append([iid, n, r, q, tc, tq, math.isinf(tc), math.isinf(tq),
                                       numerator, denominator])
            qcurve = speedup_quantiles_of_ratio(paired, q, normalization=normalization,
                                                machine_size=machine_size,
                                                numerator=numerator, denominator=denominator)
            for pt in qcurve.points:
                speedup_rows.append(["QofR", q, pt.n_spins, pt.value, pt.ci_lo, pt.ci_hi,
                                     pt.censored, normalization,
                                     machine_size if machine_size is not None else "",
                                     numerator, denominator, r])

    rl.write_csv(out_dir / "speedup.csv", rl.SPEEDUP_SCHEMA,
                 ["statistic", "q", "N", "S", "ci_lo", "ci_hi", "censored",
                  "normalization", "M", "numerator", "denominator", "r"],
                 speedup_rows)
    rl.write_csv(out_dir / "pairs.csv", rl.PAIRS_SCHEMA,
                 ["instance_id", "N", "r", "q", "T_num", "T_den",
                  "censored_num", "censored_den", "numerator", "denominator"],
                 pairs_rows)
    print(f"wrote {out_dir/'speedup.csv'} and {out_dir/'pairs.csv'}")
    return EXIT_OK


def cmd_report(argv: list[str], reports_dir: Path | None) -> int:
    import os

    if reports_dir is not None:
        candidates = [Path(reports_dir)]
    elif os.environ.get("ANNEALBENCH_REPORTS_DIR"):
        candidates = [Path(os.environ["ANNEALBENCH_REPORTS_DIR"])]
    else:
        candidates = [Path("reports")]
    if argv and argv[0] == "--":
        argv = argv[1:]
    for cand in candidates:
        cli = cand / "dist" / "cli.js"
        if cli.exists():
            proc = subprocess.run(["node", str(cli), *argv])
            return proc.returncode
    print(f"report component not found under {candidates[0]} "
          "(expected dist/cli.js; build it with `npm run build` in the reports package)",
          file=sys.stderr)
    return EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="annealbench",
        description="Benchmark simulated classical and quantum annealing on Chimera spin glasses.",
        epilog="Config keys:\n" + CONFIG_KEYS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", required=True, type=Path, help="benchmark config file")
        p.add_argument("--out-dir", type=Path, default=None, help="override config out_dir")

    add_config(sub.add_parser("generate", help="generate instance files and a manifest"))
    add_config(sub.add_parser("solve-exact", help="compute exact ground energies"))

    p_anneal = sub.add_parser("anneal", help="run one solver over the instance set")
    add_config(p_anneal)
    p_anneal.add_argument("--solver", required=True, choices=["sa", "sqa"])
    p_anneal.add_argument("--kernel", choices=["multispin", "scalar"], default=None)
    p_anneal.add_argument("--ta", type=int, nargs="*", default=None, help="override t_a grid")
    p_anneal.add_argument("--runs", type=int, default=None, help="override repetitions per gauge")
    p_anneal.add_argument("--seed", type=int, default=None, help="override the master seed")
    p_anneal.add_argument("--slices", type=int, default=None, help="override SQA slice count P")
    p_anneal.add_argument("--beta", type=float, default=None, help="override SQA inverse temperature")
    p_anneal.add_argument("--a-init", type=float, default=None, help="override SQA initial transverse field")

    add_config(sub.add_parser("sweep", help="run all configured solvers over the t_a grid"))

    p_an = sub.add_parser("analyze", help="compute TTS and speedup tables from the run log")
    add_config(p_an)
    p_an.add_argument("--mode", choices=["tts", "speedup"], default="tts")
    p_an.add_argument("--fixed-ta", type=int, default=None,
                      help="report fixed-t_a efforts instead of the envelope")
    p_an.add_argument("--units", choices=["MCS", "updates", "seconds"], default="MCS")
    p_an.add_argument("--numerator", default="sa", help="classical-role solver")
    p_an.add_argument("--denominator", default="sqa", help="device-role solver")
    p_an.add_argument("--normalization", choices=["none", "per-site", "floor"], default="none")
    p_an.add_argument("--machine-size", type=int, default=None)

    p_rep = sub.add_parser("report", help="render figures via the reports component")
    p_rep.add_argument("--reports-dir", type=Path, default=None)
    p_rep.add_argument("rest", nargs=argparse.REMAINDER)

    args = parser.parse_args(argv)

    try:
        if args.command == "report":
            return cmd_report(args.rest, args.reports_dir)
        cfg = load_config(args.config)
        if args.out_dir is not None:
            cfg.out_dir = args.out_dir
        if args.command == "generate":
            return cmd_generate(cfg)
        if args.command == "solve-exact":
            return cmd_solve_exact(cfg)
        if args.command == "anneal":
            if args.kernel:
                cfg.sa_kernel = args.kernel
            if args.ta:
                cfg.ta_grid = sorted(args.ta)
            if args.runs is not None:
                cfg.sa_runs = cfg.sqa_runs = args.runs
            if args.seed is not None:
                cfg.seed = args.seed
            if args.slices is not None:
                cfg.sqa_slices = args.slices
            if args.beta is not None:
                cfg.sqa_beta = args.beta
            if args.a_init is not None:
                cfg.sqa_a_init = args.a_init
            cfg.validate()
            return cmd_sweep(cfg, solvers=[args.solver])
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "analyze":
            return cmd_analyze(cfg, args.mode, fixed_ta=args.fixed_ta, units=args.units,
                               numerator=args.numerator, denominator=args.denominator,
                               normalization=args.normalization, machine_size=args.machine_size)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
