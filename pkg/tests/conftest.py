import numpy as np
import pytest

from annealbench import ProblemInstance, build_chimera


@pytest.fixture
def ferro_cell():
    """Ferromagnetic K_{4,4} cell: ground energy -16, degeneracy 2."""
    g = build_chimera(1, 1, 4)
    return ProblemInstance(
        graph=g,
        r=1,
        j_num=np.ones(16, dtype=np.int64),
        h_num=np.zeros(8, dtype=np.int64),
        seed=0,
    )


def reference_energy_num(inst, cfg):
    """Naive energy numerator evaluator, independent of the library path."""
    verts = [int(v) for v in inst.graph.active_vertices()]
    spin = {v: int(s) for v, s in zip(verts, cfg)}
    total = 0
    for (u, v), n in zip(inst.graph.edges, inst.j_num):
        total -= int(n) * spin[int(u)] * spin[int(v)]
    for v in verts:
        total -= int(inst.h_num[v]) * spin[v]
    return total


def spectrum_num(inst):
    """All 2**N energy numerators by direct enumeration (test oracle)."""
    verts = inst.graph.active_vertices()
    n = verts.size
    assert n <= 20
    configs = ((np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1) * 2 - 1
    vidx = {int(v): i for i, v in enumerate(verts)}
    total = np.zeros(2**n, dtype=np.int64)
    for (u, v), w in zip(inst.graph.edges, inst.j_num):
        total -= int(w) * configs[:, vidx[int(u)]] * configs[:, vidx[int(v)]]
    for v in verts:
        total -= int(inst.h_num[v]) * configs[:, vidx[int(v)]]
    return total
