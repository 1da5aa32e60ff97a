"""Versioned CSV files shared by the CLI and the analysis layer.

All files start with a `# annealbench-<kind>-v1` schema line followed by a
normal CSV header.  The run log is append-only and self-describing: every
record carries the solver parameters that produced it, so analyses never
consult the config.  Floats are written with repr() so identical results
are byte-identical files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable

RUNLOG_SCHEMA = "# annealbench-runlog-v1"
GROUND_SCHEMA = "# annealbench-ground-v1"
TTS_SCHEMA = "# annealbench-tts-v1"
CURVES_SCHEMA = "# annealbench-curves-v1"
SPEEDUP_SCHEMA = "# annealbench-speedup-v1"
PAIRS_SCHEMA = "# annealbench-pairs-v1"


@dataclass(frozen=True)
class RunRecord:
    """One gauge block of annealing runs on one instance at one t_a."""

    instance_id: str
    solver: str
    kernel: str
    L: int
    Lp: int
    c: int
    r: int
    n_spins: int
    t_a: int
    gauge: int
    n_runs: int
    hits: int
    spin_updates_per_run: int
    seed: int
    params: str

    def key(self) -> tuple:
        return (self.instance_id, self.solver, self.kernel, self.t_a, self.gauge)


@dataclass(frozen=True)
class GroundRecord:
    instance_id: str
    energy_num: int
    r: int
    method: str

    def key(self) -> tuple:
        return (self.instance_id,)


def fmt(x) -> str:
    """Deterministic cell formatting; censored values print as 'inf'."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        if math.isnan(x):
            return ""
        return repr(x)
    return str(x)


def write_csv(path: Path, schema: str, header: list[str], rows: Iterable[list]) -> None:
    with open(path, "w", newline="") as fp:
        fp.write(schema + "\n")
        w = csv.writer(fp, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def read_csv(path: Path, schema: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fp:
        first = fp.readline().rstrip("\n")
        if first != schema:
            raise ValueError(f"{path}: expected schema line {schema!r}, got {first!r}")
        rows = list(csv.reader(fp))
    if not rows:
        raise ValueError(f"{path}: missing header row")
    return rows[0], rows[1:]


_RUN_FIELDS = [f.name for f in fields(RunRecord)]
_GROUND_FIELDS = [f.name for f in fields(GroundRecord)]


class AppendLog:
    """Append-only record log keyed for resumability."""

    def __init__(self, path: Path, schema: str, field_names: list[str], parse_row):
        self.path = Path(path)
        self.schema = schema
        self.field_names = field_names
        self._parse_row = parse_row
        self._fp = None

    def load(self) -> list:
        if not self.path.exists():
            return []
        header, rows = read_csv(self.path, self.schema)
        if header != self.field_names:
            raise ValueError(f"{self.path}: header mismatch")
        return [self._parse_row(dict(zip(header, row))) for row in rows]

    def existing_keys(self) -> set:
        return {rec.key() for rec in self.load()}

    def open_append(self):
        new = not self.path.exists()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fp = open(self.path, "a", newline="")
        if new:
            self._fp.write(self.schema + "\n")
            csv.writer(self._fp, lineterminator="\n").writerow(self.field_names)
        return self

    def append(self, rec) -> None:
        row = [fmt(getattr(rec, name)) for name in self.field_names]
        csv.writer(self._fp, lineterminator="\n").writerow(row)
        self._fp.flush()

    def close(self) -> None:
        if self._fp is not None:
            self._fp.close()
            self._fp = None


def _parse_run_row(d: dict) -> RunRecord:
    return RunRecord(
        instance_id=d["instance_id"],
        solver=d["solver"],
        kernel=d["kernel"],
        L=int(d["L"]),
        Lp=int(d["Lp"]),
        c=int(d["c"]),
        r=int(d["r"]),
        n_spins=int(d["n_spins"]),
        t_a=int(d["t_a"]),
        gauge=int(d["gauge"]),
        n_runs=int(d["n_runs"]),
        hits=int(d["hits"]),
        spin_updates_per_run=int(d["spin_updates_per_run"]),
        seed=int(d["seed"]),
        params=d["params"],
    )


def _parse_ground_row(d: dict) -> GroundRecord:
    return GroundRecord(
        instance_id=d["instance_id"],
        energy_num=int(d["energy_num"]),
        r=int(d["r"]),
        method=d["method"],
    )


def run_log(path: Path) -> AppendLog:
    return AppendLog(path, RUNLOG_SCHEMA, _RUN_FIELDS, _parse_run_row)


def ground_log(path: Path) -> AppendLog:
    return AppendLog(path, GROUND_SCHEMA, _GROUND_FIELDS, _parse_ground_row)
