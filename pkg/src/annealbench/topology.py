"""Chimera graphs: an L x L' grid of complete bipartite K_{c,c} unit cells.

Vertices are numbered cell-major (row, then column), with the c "vertical"
vertices of a cell before the c "horizontal" ones.  Vertical vertices couple
to the same in-cell position of the cells above/below; horizontal vertices
couple left/right.  Masking deactivates vertices but never renumbers, so
instances and gauges stay aligned across masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ChimeraGraph:
    """Immutable Chimera graph with an activity mask.

    L, Lp   cell rows / cell columns
    c       half-cell size (4 for the DW2 layout)
    active  boolean mask over the 2*c*L*Lp ideal vertices
    edges   (E, 2) int array, each row (u, v) with u < v, lexicographically
            sorted; edges never touch an inactive vertex
    """

    L: int
    Lp: int
    c: int
    active: np.ndarray = field(repr=False)
    edges: np.ndarray = field(repr=False)

    @property
    def n_ideal(self) -> int:
        return 2 * self.c * self.L * self.Lp

    @property
    def n_active(self) -> int:
        return int(self.active.sum())

    def active_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.active)

    def vertex_coords(self, v: int) -> tuple[int, int, int]:
        """Return (cell row, cell column, in-cell index 0..2c-1)."""
        cell, k = divmod(int(v), 2 * self.c)
        i, j = divmod(cell, self.Lp)
        return i, j, k

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChimeraGraph):
            return NotImplemented
        return (
            (self.L, self.Lp, self.c) == (other.L, other.Lp, other.c)
            and np.array_equal(self.active, other.active)
            and np.array_equal(self.edges, other.edges)
        )


def build_chimera(L: int, Lp: int, c: int = 4) -> ChimeraGraph:
    """Build the ideal (unmasked) Chimera graph of L x Lp cells of size K_{c,c}.

    Edge count is c^2*L*Lp intra-cell plus c*(L*(Lp-1) + Lp*(L-1)) inter-cell.
    """
    if L < 1 or Lp < 1 or c < 1:
        raise ValueError(f"Chimera dimensions must be >= 1, got L={L} Lp={Lp} c={c}")
    edges = []

    def vid(i, j, k):
        return 2 * c * (i * Lp + j) + k

    for i in range(L):
        for j in range(Lp):
            for ka in range(c):  # intra-cell K_{c,c}
                for kb in range(c, 2 * c):
                    edges.append((vid(i, j, ka), vid(i, j, kb)))
            if i + 1 < L:  # vertical couplers, same in-cell position
                for k in range(c):
                    edges.append((vid(i, j, k), vid(i + 1, j, k)))
            if j + 1 < Lp:  # horizontal couplers
                for k in range(c, 2 * c):
                    edges.append((vid(i, j, k), vid(i, j + 1, k)))
    edges = np.array(sorted(edges), dtype=np.int64)
    active = np.ones(2 * c * L * Lp, dtype=bool)
    return ChimeraGraph(L=L, Lp=Lp, c=c, active=active, edges=edges)


def apply_mask(g: ChimeraGraph, inactive) -> ChimeraGraph:
    """Deactivate the given vertices and drop all incident edges.

    Vertex ids are preserved.  Idempotent, and disjoint masks commute.
    """
    inactive = np.asarray(sorted(set(int(v) for v in inactive)), dtype=np.int64)
    if inactive.size and (inactive.min() < 0 or inactive.max() >= g.n_ideal):
        bad = [v for v in inactive if v < 0 or v >= g.n_ideal]
        raise ValueError(f"unknown vertex ids in mask: {bad}")
    active = g.active.copy()
    active[inactive] = False
    if g.edges.size:
        keep = active[g.edges[:, 0]] & active[g.edges[:, 1]]
        edges = g.edges[keep]
    else:
        edges = g.edges
    return ChimeraGraph(L=g.L, Lp=g.Lp, c=g.c, active=active, edges=edges)


def bipartition(g: ChimeraGraph) -> tuple[np.ndarray, np.ndarray]:
    """Split the active vertices into the two update sublattices.

    Every edge runs between the two returned sets, so all spins of one set
    can be updated simultaneously.  The 2-coloring is (row + column + half)
    mod 2, which handles intra-cell, vertical and horizontal couplers alike.
    """
    verts = g.active_vertices()
    colors = _vertex_colors(g)[verts]
    return verts[colors == 0], verts[colors == 1]


def _vertex_colors(g: ChimeraGraph) -> np.ndarray:
    v = np.arange(g.n_ideal)
    cell, k = np.divmod(v, 2 * g.c)
    i, j = np.divmod(cell, g.Lp)
    half = (k >= g.c).astype(np.int64)
    return (i + j + half) % 2


def treewidth_bound(g: ChimeraGraph) -> tuple[int, list[int]]:
    """Return (c*min(L,Lp)+1, elimination order realizing that width).

    The order sweeps cell lines along the longer grid dimension; within each
    line it eliminates the line-internal half of every cell first, then the
    half coupling to the next line.  On the ideal graph the largest clique
    formed during elimination has exactly c*min(L,Lp)+1 vertices, which
    bounds the state count of the exact dynamic program at 2**(c*min+1).
    On masked graphs the same order is returned and the value is only an
    upper bound.
    """
    L, Lp, c = g.L, g.Lp, g.c

    def vid(i, j, k):
        return 2 * c * (i * Lp + j) + k

    order: list[int] = []
    if Lp >= L:
        # sweep columns left to right; vertical halves tie the column together,
        # horizontal halves carry the interface to the next column
        for j in range(Lp):
            for i in range(L):
                order.extend(vid(i, j, k) for k in range(c))
            for i in range(L):
                order.extend(vid(i, j, k) for k in range(c, 2 * c))
    else:
        for i in range(L):
            for j in range(Lp):
                order.extend(vid(i, j, k) for k in range(c, 2 * c))
            for j in range(Lp):
                order.extend(vid(i, j, k) for k in range(c))
    return c * min(L, Lp) + 1, order


def elimination_width(g: ChimeraGraph, order: list[int]) -> int:
    """Induced width of an elimination order by explicit fill-in simulation.

    Width is the size of the largest clique formed, i.e. the eliminated
    vertex together with its not-yet-eliminated neighbors; 2**width states
    is the exact-solver table bound.  Inactive vertices in `order` are
    skipped.
    """
    adj: dict[int, set[int]] = {int(v): set() for v in g.active_vertices()}
    for u, v in g.edges:
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    width = 1
    for v in order:
        v = int(v)
        if v not in adj:
            continue
        nbrs = adj.pop(v)
        width = max(width, len(nbrs) + 1)
        for a in nbrs:
            adj[a].discard(v)
            adj[a].update(nbrs - {a})
    return width


def write_graph(g: ChimeraGraph) -> str:
    """Graph description text: header `chimera L Lp c`, one inactive vertex per line."""
    lines = [f"chimera {g.L} {g.Lp} {g.c}"]
    lines.extend(str(v) for v in np.flatnonzero(~g.active))
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> ChimeraGraph:
    """Parse the graph description format emitted by write_graph."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph description")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "chimera":
        raise ValueError(f"bad graph header: {lines[0]!r}")
    L, Lp, c = (int(x) for x in head[1:])
    g = build_chimera(L, Lp, c)
    inactive = [int(ln) for ln in lines[1:]]
    if inactive:
        g = apply_mask(g, inactive)
    return g
