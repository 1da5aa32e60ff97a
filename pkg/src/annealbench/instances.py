"""Random spin-glass instances with discrete couplings J_ij = n/r.

Couplings are stored as integer numerators over the common denominator r, so
every energy is an exact rational and ground-state comparisons never involve
floating point.  Instance generation is fully determined by (graph, r, seed)
through a pinned generator (PCG64); the generator id goes into the file
header so instances stay reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .topology import ChimeraGraph, apply_mask, build_chimera

RNG_ID = "pcg64"


@dataclass(frozen=True)
class ProblemInstance:
    """One spin-glass instance on a Chimera graph.

    j_num holds the per-edge integer numerators (aligned with graph.edges),
    h_num the per-vertex field numerators (zero for the benchmark family).
    """

    graph: ChimeraGraph
    r: int
    j_num: np.ndarray = field(repr=False)
    h_num: np.ndarray = field(repr=False)
    seed: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"range r must be >= 1, got {self.r}")
        if self.j_num.shape[0] != self.graph.edges.shape[0]:
            raise ValueError("j_num length does not match graph edge count")
        if self.h_num.shape[0] != self.graph.n_ideal:
            raise ValueError("h_num length does not match graph vertex count")
        if self.j_num.size:
            if np.any(self.j_num == 0) or np.any(np.abs(self.j_num) > self.r):
                raise ValueError("edge numerators must lie in {-r..-1, 1..r}")
        if np.any(np.abs(self.h_num) > self.r):
            raise ValueError("field numerators must lie in [-r, r]")

    @property
    def n_spins(self) -> int:
        return self.graph.n_active

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.r == other.r
            and self.seed == other.seed
            and np.array_equal(self.j_num, other.j_num)
            and np.array_equal(self.h_num, other.h_num)
        )


@dataclass(frozen=True)
class Gauge:
    """Per-vertex sign relabeling a_i = +-1; applying it twice is the identity."""

    a: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not np.all(np.abs(self.a) == 1):
            raise ValueError("gauge entries must be +-1")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gauge):
            return NotImplemented
        return np.array_equal(self.a, other.a)


def generate_instance(g: ChimeraGraph, r: int, seed: int) -> ProblemInstance:
    """Draw a numerator uniformly from the 2r nonzero values for each active edge.

    Fields are zero.  Identical (g, r, seed) always reproduce the same instance.
    """
    if r < 1:
        raise ValueError(f"range r must be >= 1, got {r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    k = rng.integers(0, 2 * r, size=g.edges.shape[0])
    j_num = np.where(k < r, k - r, k - r + 1).astype(np.int64)
    h_num = np.zeros(g.n_ideal, dtype=np.int64)
    return ProblemInstance(graph=g, r=r, j_num=j_num, h_num=h_num, seed=seed)


def random_gauge(g: ChimeraGraph, seed: int) -> Gauge:
    """I.i.d. uniform +-1 signs on the active vertices (inactive entries stay +1)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    a = np.ones(g.n_ideal, dtype=np.int64)
    verts = g.active_vertices()
    a[verts] = rng.integers(0, 2, size=verts.size) * 2 - 1
    return Gauge(a=a)


def apply_gauge(inst: ProblemInstance, gauge: Gauge) -> ProblemInstance:
    """Transform J_ij -> a_i a_j J_ij and h_i -> a_i h_i.

    The energy spectrum is invariant: s is a ground state of the original
    instance iff (a_i s_i) is one of the transformed instance.
    """
    if gauge.a.shape[0] != inst.graph.n_ideal:
        raise ValueError("gauge size does not match graph")
    e = inst.graph.edges
    j_num = inst.j_num * gauge.a[e[:, 0]] * gauge.a[e[:, 1]]
    h_num = inst.h_num * gauge.a
    return replace(inst, j_num=j_num, h_num=h_num)


def energy(inst: ProblemInstance, cfg: np.ndarray) -> Fraction:
    """Ising energy -sum h_i s_i - sum J_ij s_i s_j as an exact rational.

    `cfg` lists +-1 spins for the active vertices in ascending vertex order.
    """
    return Fraction(int(energy_num(inst, cfg)), inst.r)


def energy_num(inst: ProblemInstance, cfg: np.ndarray) -> int:
    """Integer energy numerator (energy times r)."""
    cfg = np.asarray(cfg, dtype=np.int64)
    verts = inst.graph.active_vertices()
    if cfg.shape[0] != verts.size:
        raise ValueError(f"config has {cfg.shape[0]} spins, instance has {verts.size}")
    if cfg.size and not np.all(np.abs(cfg) == 1):
        raise ValueError("spins must be +-1")
    s = np.zeros(inst.graph.n_ideal, dtype=np.int64)
    s[verts] = cfg
    e = inst.graph.edges
    coupling = int(np.sum(inst.j_num * s[e[:, 0]] * s[e[:, 1]])) if e.size else 0
    fields = int(np.sum(inst.h_num * s))
    return -fields - coupling


def serialize_instance(inst: ProblemInstance) -> str:
    """Instance file text; parse_instance() round-trips it bit-exactly."""
    g = inst.graph
    lines = [f"instance chimera {g.L} {g.Lp} {g.c} {inst.r} {inst.seed} rng={RNG_ID}"]
    lines.extend(f"x {v}" for v in np.flatnonzero(~g.active))
    lines.extend(f"h {v} {int(m)}" for v, m in enumerate(inst.h_num) if m != 0)
    lines.extend(
        f"e {int(u)} {int(v)} {int(n)}" for (u, v), n in zip(g.edges, inst.j_num)
    )
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> ProblemInstance:
    """Parse the text format of serialize_instance, validating every field."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty instance file")
    head = lines[0].split()
    if len(head) != 8 or head[0] != "instance" or head[1] != "chimera":
        raise ValueError(f"bad instance header: {lines[0]!r}")
    L, Lp, c, r, seed = (int(x) for x in head[2:7])
    if not head[7].startswith("rng="):
        raise ValueError(f"missing rng id in header: {lines[0]!r}")
    g = build_chimera(L, Lp, c)
    inactive = []
    h_entries = []
    edge_entries = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "x" and len(parts) == 2:
            inactive.append(int(parts[1]))
        elif parts[0] == "h" and len(parts) == 3:
            h_entries.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "e" and len(parts) == 4:
            edge_entries.append((int(parts[1]), int(parts[2]), int(parts[3])))
        else:
            raise ValueError(f"bad instance line: {ln!r}")
    if inactive:
        g = apply_mask(g, inactive)

    index = {(int(u), int(v)): idx for idx, (u, v) in enumerate(g.edges)}
    j_num = np.zeros(g.edges.shape[0], dtype=np.int64)
    seen = np.zeros(g.edges.shape[0], dtype=bool)
    for u, v, n in edge_entries:
        key = (u, v) if u < v else (v, u)
        if key not in index:
            raise ValueError(f"edge {key} not present in the declared graph")
        idx = index[key]
        if seen[idx]:
            raise ValueError(f"duplicate edge {key}")
        if n == 0 or abs(n) > r:
            raise ValueError(f"edge numerator {n} outside {{-{r}..-1, 1..{r}}}")
        seen[idx] = True
        j_num[idx] = n
    if not seen.all():
        missing = [tuple(map(int, g.edges[i])) for i in np.flatnonzero(~seen)[:5]]
        raise ValueError(f"missing couplings for edges {missing}...")

    h_num = np.zeros(g.n_ideal, dtype=np.int64)
    for v, m in h_entries:
        if v < 0 or v >= g.n_ideal or not g.active[v]:
            raise ValueError(f"field on unknown or inactive vertex {v}")
        if abs(m) > r:
            raise ValueError(f"field numerator {m} outside [-{r}, {r}]")
        h_num[v] = m
    return ProblemInstance(graph=g, r=r, j_num=j_num, h_num=h_num, seed=seed)
