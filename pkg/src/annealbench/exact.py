"""Exact ground-state energies: the success oracle for all annealers.

Two routes: exhaustive Gray-code enumeration for small instances, and a
min-sum bucket elimination over the column-sweep order from `topology`,
whose table sizes are bounded by 2**(c*min(L,Lp)+1).  Both operate on
integer numerators, so results are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .instances import ProblemInstance
from .kernels import site_arrays
from .topology import elimination_width, treewidth_bound

BRUTEFORCE_MAX_SPINS = 30


class BudgetExceededError(RuntimeError):
    """The dynamic program would need more table states than allowed."""


@dataclass(frozen=True)
class GroundTruth:
    """Exact minimum of the instance Hamiltonian.

    energy is the global minimum as a rational; degeneracy (bruteforce only)
    counts the minimizing configurations; method records the route taken.
    """

    energy: Fraction
    degeneracy: int | None
    method: str

    def numerator_for(self, r: int) -> int:
        """Energy times r as an exact integer (for comparisons against run outputs)."""
        num = self.energy * r
        if num.denominator != 1:
            raise ValueError(f"energy {self.energy} is not a multiple of 1/{r}")
        return int(num)


@njit(cache=True)
def _gray_min(eu, ev, ew, h, deg, nbr, cpl, n):
    s = np.full(n, -1, dtype=np.int64)
    e = 0
    for k in range(eu.shape[0]):
        e -= ew[k] * s[eu[k]] * s[ev[k]]
    for i in range(n):
        e -= h[i] * s[i]
    best = e
    count = 1
    total = 1 << n
    for k in range(1, total):
        kk = k
        b = 0
        while kk & 1 == 0:
            kk >>= 1
            b += 1
        m = h[b]
        for d in range(deg[b]):
            m += cpl[b, d] * s[nbr[b, d]]
        e += 2 * s[b] * m
        s[b] = -s[b]
        if e < best:
            best = e
            count = 1
        elif e == best:
            count += 1
    return best, count


def ground_energy_bruteforce(inst: ProblemInstance, count_degeneracy: bool = True) -> GroundTruth:
    """Exhaustive minimum over all 2**N configurations (N <= 30)."""
    sa = site_arrays(inst)
    if sa.n > BRUTEFORCE_MAX_SPINS:
        raise ValueError(f"bruteforce limited to {BRUTEFORCE_MAX_SPINS} spins, got {sa.n}")
    if sa.n == 0:
        return GroundTruth(energy=Fraction(0), degeneracy=1, method="bruteforce")
    best, count = _gray_min(sa.eu, sa.ev, sa.ew, sa.h, sa.deg, sa.nbr, sa.cpl, sa.n)
    return GroundTruth(
        energy=Fraction(int(best), inst.r),
        degeneracy=int(count) if count_degeneracy else None,
        method="bruteforce",
    )


def ground_energy_dp(inst: ProblemInstance, max_width: int = 26) -> GroundTruth:
    """Exact ground energy by min-sum elimination along the column-sweep order.

    Raises BudgetExceededError when the induced width of the order on this
    (possibly masked) instance exceeds max_width, i.e. more than 2**max_width
    table entries would be needed.
    """
    g = inst.graph
    _, order = treewidth_bound(g)
    width = elimination_width(g, order)
    if width > max_width:
        raise BudgetExceededError(
            f"elimination width {width} exceeds budget of {max_width} "
            f"(2**{width} table states needed)"
        )

    pos = {}
    for v in order:
        if g.active[v]:
            pos[int(v)] = len(pos)

    buckets: dict[int, list[tuple[tuple[int, ...], np.ndarray]]] = {}

    def push(scope: tuple[int, ...], table: np.ndarray):
        first = min(scope, key=pos.__getitem__)
        buckets.setdefault(first, []).append((scope, table))

    for (u, v), n in zip(g.edges, inst.j_num):
        u, v, n = int(u), int(v), int(n)
        table = np.array([[-n, n], [n, -n]], dtype=np.int64)  # axis order (u, v)
        if pos[u] > pos[v]:
            u, v = v, u
            table = table.T
        push((u, v), np.ascontiguousarray(table))
    for v in np.flatnonzero(inst.h_num):
        v = int(v)
        if not g.active[v]:
            continue
        h = int(inst.h_num[v])
        push((v,), np.array([h, -h], dtype=np.int64))

    const = 0
    for v in order:
        v = int(v)
        if v not in pos:
            continue
        fs = buckets.pop(v, None)
        if not fs:
            continue
        scope = sorted({x for s, _ in fs for x in s}, key=pos.__getitem__)
        acc = np.zeros((2,) * len(scope), dtype=np.int64)
        for s, t in fs:
            in_s = set(s)
            shape = tuple(2 if x in in_s else 1 for x in scope)
            acc += t.reshape(shape)
        axis = scope.index(v)
        reduced = acc.min(axis=axis)
        rest = tuple(x for x in scope if x != v)
        if rest:
            push(rest, reduced)
        else:
            const += int(reduced)
    return GroundTruth(energy=Fraction(const, inst.r), degeneracy=None, method="dp")
