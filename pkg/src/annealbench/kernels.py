"""Numba kernels for the annealing engines.

Random numbers come from xoshiro256++ streams seeded via splitmix64 from
(seed, stream index); SA runs are grouped into words of 64 replicas that
share one stream, consuming exactly two draws per (sweep, site): a threshold
word and a tie word.  The scalar and multispin SA kernels consume the same
stream identically, so the 64 bit-packed replicas evolve bit-for-bit like 64
individually simulated ones.  The SQA kernel gives each run its own stream;
with P = 1 its update rule and stream layout reduce exactly to replica 0 of
an SA word.

Metropolis acceptance is integerized: a flip with energy change dE = dnum/r
is accepted iff dnum <= K where K = floor(-ln(u) * r / beta), clamped at the
accept-everything level, which is equivalent to u < exp(-beta*dE) up to
measure-zero threshold ties and lets the multispin kernel compare bit-sliced
integers instead of evaluating exponentials per replica.  Zero-energy
proposals are accepted with probability 1/2 (per-replica bits of the tie
word).  That choice satisfies detailed balance like any symmetric acceptance
of a zero-cost move and keeps the chain ergodic: with the conventional
always-accept rule, a deterministic full-sublattice inversion cycle absorbs
sweeps on zero-field plateaus (e.g. the ferromagnetic single cell), capping
the success probability no matter how slow the anneal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit, prange


@dataclass(frozen=True)
class SiteArrays:
    """Compact 0..n-1 site indexing of an instance for the kernels."""

    verts: np.ndarray = field(repr=False)  # active vertex ids, ascending
    n: int = 0
    eu: np.ndarray = field(repr=False, default=None)
    ev: np.ndarray = field(repr=False, default=None)
    ew: np.ndarray = field(repr=False, default=None)
    h: np.ndarray = field(repr=False, default=None)
    deg: np.ndarray = field(repr=False, default=None)
    nbr: np.ndarray = field(repr=False, default=None)
    cpl: np.ndarray = field(repr=False, default=None)


def site_arrays(inst) -> SiteArrays:
    """Neighbor tables and edge lists over compact site indices."""
    verts = inst.graph.active_vertices()
    vidx = {int(v): i for i, v in enumerate(verts)}
    n = verts.size
    e = inst.graph.edges
    eu = np.array([vidx[int(u)] for u in e[:, 0]], dtype=np.int64)
    ev = np.array([vidx[int(v)] for v in e[:, 1]], dtype=np.int64)
    ew = inst.j_num.astype(np.int64)
    h = inst.h_num[verts].astype(np.int64)
    deg = np.zeros(n, dtype=np.int64)
    for a, b in zip(eu, ev):
        deg[a] += 1
        deg[b] += 1
    maxdeg = int(deg.max()) if n else 0
    nbr = np.zeros((n, max(maxdeg, 1)), dtype=np.int64)
    cpl = np.zeros((n, max(maxdeg, 1)), dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    for a, b, w in zip(eu, ev, ew):
        nbr[a, fill[a]] = b
        cpl[a, fill[a]] = w
        fill[a] += 1
        nbr[b, fill[b]] = a
        cpl[b, fill[b]] = w
        fill[b] += 1
    return SiteArrays(verts=verts, n=int(n), eu=eu, ev=ev, ew=ew, h=h, deg=deg, nbr=nbr, cpl=cpl)


_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_STREAM_SALT = np.uint64(0xD1B54A32D192ED03)
_U1 = np.uint64(1)
_U0 = np.uint64(0)
_UFULL = np.uint64(0xFFFFFFFFFFFFFFFF)
_INV_2_53 = 1.0 / 9007199254740992.0


@njit(inline="always")
def _splitmix64(z):
    z = z + _GOLD
    t = z
    t = (t ^ (t >> np.uint64(30))) * _MIX1
    t = (t ^ (t >> np.uint64(27))) * _MIX2
    t = t ^ (t >> np.uint64(31))
    return z, t


@njit(inline="always")
def _stream_init(seed, stream, st):
    z = np.uint64(seed) ^ (_STREAM_SALT * (np.uint64(stream) + _U1))
    for q in range(4):
        z, out = _splitmix64(z)
        st[q] = out


@njit(inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(inline="always")
def _next64(st):
    result = _rotl(st[0] + st[3], 23) + st[0]
    t = st[1] << np.uint64(17)
    st[2] ^= st[0]
    st[3] ^= st[1]
    st[1] ^= st[2]
    st[0] ^= st[3]
    st[2] ^= t
    st[3] = _rotl(st[3], 45)
    return result


@njit(inline="always")
def _nx(s0, s1, s2, s3):
    # register-resident variant of _next64; produces the identical stream
    result = _rotl(s0 + s3, 23) + s0
    t = s1 << np.uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    return s0, s1, s2, s3, result


@njit(inline="always")
def _unit(x):
    return np.float64(x >> np.uint64(11)) * _INV_2_53


@njit(inline="always", error_model="numpy")
def _accept_bound(u64, beta, r_f, kmax):
    """Integer acceptance bound K: accept a nonzero flip iff its dnum <= K."""
    theta = -np.log(_unit(u64)) * (r_f / beta)
    if theta >= np.float64(kmax):
        return kmax
    return np.int64(np.floor(theta))


@njit(cache=True, parallel=True, error_model="numpy")
def sa_scalar_kernel(nbr, cpl, deg, h, order, tsum, demax, beta_arr, r_f, kmax, seed, n_words, spins_out):
    """Reference SA kernel: per word of 64 replicas, shared random stream."""
    n = order.shape[0]
    t_a = beta_arr.shape[0]
    for w in prange(n_words):
        st = np.empty(4, dtype=np.uint64)
        _stream_init(seed, w, st)
        s = np.empty((64, n), dtype=np.int64)
        for i in range(n):
            word = _next64(st)
            for b in range(64):
                s[b, i] = 1 if (word >> np.uint64(b)) & _U1 else -1
        for t in range(t_a):
            beta = beta_arr[t]
            for idx in range(n):
                i = order[idx]
                u64 = _next64(st)
                z = _next64(st)
                k = _accept_bound(u64, beta, r_f, kmax)
                if (tsum[i] & 1) and k >= demax[i]:
                    # odd T: no zero-energy proposals exist, everything accepted
                    for b in range(64):
                        s[b, i] = -s[b, i]
                    continue
                for b in range(64):
                    m = h[i]
                    for d in range(deg[i]):
                        m += cpl[i, d] * s[b, nbr[i, d]]
                    if m == 0:
                        if (z >> np.uint64(b)) & _U1:
                            s[b, i] = -s[b, i]
                    elif 2 * s[b, i] * m <= k:
                        s[b, i] = -s[b, i]
        for b in range(64):
            for i in range(n):
                spins_out[w * 64 + b, i] = np.int8(s[b, i])


@njit(inline="always")
def _plane_addbit(acc, nplanes, p0, mask):
    # acc += 2**p0 * mask lane-wise, rippling the carry upward
    p = p0
    carry = mask
    while carry != _U0 and p < nplanes:
        a = acc[p]
        acc[p] = a ^ carry
        carry = a & carry
        p += 1


@njit(inline="always")
def _plane_addconst(acc, nplanes, c, mask):
    # acc += c * mask lane-wise for a (possibly negative) constant c
    cc = np.uint64(c)
    carry = _U0
    for p in range(nplanes):
        b = mask if (cc >> np.uint64(p)) & _U1 else _U0
        a = acc[p]
        acc[p] = a ^ b ^ carry
        carry = (a & b) | (a & carry) | (b & carry)


@njit(inline="always")
def _accumulate_w(acc, nplanes, i, x, nbr, cpl, deg, h):
    # acc += W where W = h*x_i + sum_j |n_j| * (aligned or anti-aligned lanes);
    # negative weights must already be folded into the initial constant.
    if h[i] > 0:
        hv = h[i]
        p0 = 0
        while hv:
            if hv & 1:
                _plane_addbit(acc, nplanes, p0, x[i])
            hv >>= 1
            p0 += 1
    elif h[i] < 0:
        hv = -h[i]
        notx = ~x[i]
        p0 = 0
        while hv:
            if hv & 1:
                _plane_addbit(acc, nplanes, p0, notx)
            hv >>= 1
            p0 += 1
    for d in range(deg[i]):
        c = cpl[i, d]
        diff = x[i] ^ x[nbr[i, d]]
        if c > 0:
            bits = ~diff  # equal-spin lanes
        else:
            bits = diff
            c = -c
        p0 = 0
        while c:
            if c & 1:
                _plane_addbit(acc, nplanes, p0, bits)
            c >>= 1
            p0 += 1


@njit(cache=True, parallel=True, error_model="numpy")
def sa_multispin_kernel(
    nbr, cpl, deg, h, order, tsum, wmax, base_neg, nplanes, beta_arr, r_f, kmax, seed, n_words, spins_out
):
    """Bit-parallel SA: one uint64 per site holds the spins of 64 replicas.

    Works on the bit-sliced weighted sum W = h*x_i + sum_j n_j*[s_i == s_j];
    the flip condition dnum <= K becomes W <= (K + 2*T_i) >> 2, and the
    zero-energy tie condition dnum == 0 becomes W == T_i/2 (only possible at
    sites with even T).  Negative weights are folded into the initial
    constant so the slice counter only ever adds positive weights.
    """
    n = order.shape[0]
    t_a = beta_arr.shape[0]
    for w in prange(n_words):
        st = np.empty(4, dtype=np.uint64)
        _stream_init(seed, w, st)
        r0, r1, r2, r3 = st[0], st[1], st[2], st[3]
        x = np.empty(n, dtype=np.uint64)
        for i in range(n):
            r0, r1, r2, r3, word = _nx(r0, r1, r2, r3)
            x[i] = word
        acc = np.empty(8, dtype=np.uint64)
        for t in range(t_a):
            beta = beta_arr[t]
            for idx in range(n):
                i = order[idx]
                r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                r0, r1, r2, r3, z = _nx(r0, r1, r2, r3)
                k = _accept_bound(u64, beta, r_f, kmax)
                kp = (k + 2 * tsum[i]) >> 2
                if tsum[i] & 1:
                    # no ties possible; single threshold comparison
                    if kp >= wmax[i]:
                        x[i] = ~x[i]
                        continue
                    base = base_neg[i] - kp - 1
                    for p in range(nplanes):
                        acc[p] = _UFULL if (np.uint64(base) >> np.uint64(p)) & _U1 else _U0
                    _accumulate_w(acc, nplanes, i, x, nbr, cpl, deg, h)
                    x[i] ^= acc[nplanes - 1]  # sign of W - Kp - 1: negative => flip
                else:
                    c0 = tsum[i] >> 1
                    base = base_neg[i] - c0 - 1
                    for p in range(nplanes):
                        acc[p] = _UFULL if (np.uint64(base) >> np.uint64(p)) & _U1 else _U0
                    _accumulate_w(acc, nplanes, i, x, nbr, cpl, deg, h)
                    s1 = acc[nplanes - 1]  # sign of W - c0 - 1
                    _plane_addbit(acc, nplanes, 0, _UFULL)  # now W - c0
                    zero_mask = s1 & ~acc[nplanes - 1]  # W == c0, i.e. dnum == 0
                    _plane_addconst(acc, nplanes, c0 - kp - 1, _UFULL)  # now W - Kp - 1
                    le_mask = acc[nplanes - 1]
                    x[i] ^= (le_mask & ~zero_mask) | (zero_mask & z)
        for b in range(64):
            for i in range(n):
                bit = (x[i] >> np.uint64(b)) & _U1
                spins_out[w * 64 + b, i] = np.int8(1) if bit else np.int8(-1)


@njit(inline="always")
def _flip_site(s, f, i, kk, deg, nbr, cpl):
    # flip spin (site i, slice kk) and maintain its neighbors' local fields
    old = s[i, kk]
    s[i, kk] = -old
    dv = -2 * np.int64(old)
    for d in range(deg[i]):
        f[nbr[i, d], kk] += np.int8(dv * cpl[i, d])


@njit(cache=True, parallel=True, error_model="numpy")
def sqa_kernel(
    nbr,
    cpl,
    deg,
    h,
    order,
    tsum,
    demax,
    eu,
    ev,
    ew,
    a_arr,
    b_arr,
    beta,
    p_slices,
    r_f,
    kmax,
    maxfield,
    seed,
    n_runs,
    wl_out,
    emin_out,
):
    """Path-integral SQA: Metropolis site pass plus imaginary-time cluster pass.

    Worldlines are stored site-major (imaginary time contiguous) and the
    per-(site, slice) local field numerators are maintained incrementally, so
    both passes stream through memory instead of gathering neighbors.  Site
    updates use a per-sweep acceptance table over the finite alphabet of
    (spatial field numerator, time-neighbor alignment); zero-action proposals
    flip on the low bit of a fresh draw, and guaranteed-accept moves skip the
    draw.  The cluster pass bonds equal adjacent slices per site with
    probability 1 - exp(-2*Kt) and flips each cluster by Metropolis on the
    spatial action change, drawing bond coins only for equal pairs and flip
    coins only for uphill proposals.  With P = 1 the time coupling and the
    cluster pass vanish and one sweep is exactly one SA Metropolis sweep at
    inverse temperature beta*B(t), consuming its stream identically to an SA
    word.
    """
    n = order.shape[0]
    t_a = a_arr.shape[0]
    n_edges = eu.shape[0]
    tabsize = (2 * maxfield + 1) * 3
    for run in prange(n_runs):
        st = np.empty(4, dtype=np.uint64)
        _stream_init(seed, run, st)
        r0, r1, r2, r3 = st[0], st[1], st[2], st[3]
        s = np.empty((n, p_slices), dtype=np.int8)
        f = np.empty((n, p_slices), dtype=np.int8)  # local field numerators
        for kk in range(p_slices):
            for i in range(n):
                r0, r1, r2, r3, word = _nx(r0, r1, r2, r3)
                s[i, kk] = np.int8(1) if word & _U1 else np.int8(-1)
        for i in range(n):
            for kk in range(p_slices):
                m = h[i]
                for d in range(deg[i]):
                    m += cpl[i, d] * np.int64(s[nbr[i, d], kk])
                f[i, kk] = np.int8(m)
        tab = np.empty(tabsize, dtype=np.float64)
        for t in range(t_a):
            bt = b_arr[t]
            if p_slices == 1:
                beta_eff = beta * bt
                for idx in range(n):
                    i = order[idx]
                    r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                    r0, r1, r2, r3, z = _nx(r0, r1, r2, r3)
                    k = _accept_bound(u64, beta_eff, r_f, kmax)
                    m = np.int64(f[i, 0])
                    if m == 0:
                        if z & _U1:
                            _flip_site(s, f, i, 0, deg, nbr, cpl)
                    elif 2 * np.int64(s[i, 0]) * m <= k:
                        _flip_site(s, f, i, 0, deg, nbr, cpl)
                continue

            at = a_arr[t]
            kt = -0.5 * np.log(np.tanh(beta * at / p_slices))
            a_sp = beta * bt / (p_slices * r_f)
            # integer acceptance thresholds over (field numerator, alignment);
            # the (0, 0) entry is the zero-action tie and gets probability 1/2
            for q in range(-maxfield, maxfield + 1):
                for wi in range(3):
                    ds = 2.0 * a_sp * q + 4.0 * kt * (wi - 1)
                    pv = np.exp(-ds)
                    if pv > 1.0:
                        pv = 1.0
                    tab[(q + maxfield) * 3 + wi] = pv
            tab[maxfield * 3 + 1] = 0.5
            utab = np.empty(tabsize, dtype=np.uint64)
            for j in range(tabsize):
                utab[j] = np.uint64(tab[j] * 9007199254740992.0)
            # Metropolis pass over all (slice, site) pairs, imaginary time inner
            for idx in range(n):
                i = order[idx]
                for kk in range(p_slices):
                    kup = kk + 1 if kk + 1 < p_slices else 0
                    kdn = kk - 1 if kk > 0 else p_slices - 1
                    sv = np.int64(s[i, kk])
                    q = sv * np.int64(f[i, kk])
                    wv = sv * (np.int64(s[i, kup]) + np.int64(s[i, kdn]))
                    r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                    if (u64 >> np.uint64(11)) < utab[(q + maxfield) * 3 + ((wv + 2) >> 1)]:
                        _flip_site(s, f, i, kk, deg, nbr, cpl)
            # cluster pass along imaginary time, site by site; bond draws,
            # cluster walk and action sums are fused into one ring traversal
            p_bond = 1.0 - np.exp(-2.0 * kt)
            bond_thr = np.uint64(p_bond * 9007199254740992.0)
            for i in range(n):
                # find the first unbonded pair (k0, k0+1); pairs before it bond
                k0 = 0
                while k0 < p_slices:
                    bonded = False
                    kup = k0 + 1 if k0 + 1 < p_slices else 0
                    if s[i, k0] == s[i, kup]:
                        r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                        bonded = (u64 >> np.uint64(11)) < bond_thr
                    if not bonded:
                        break
                    k0 += 1
                if k0 == p_slices:
                    # single ring-spanning cluster
                    qsum = np.int64(0)
                    for kk in range(p_slices):
                        qsum += np.int64(s[i, kk]) * np.int64(f[i, kk])
                    acc_flip = qsum <= 0
                    if not acc_flip:
                        r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                        acc_flip = _unit(u64) < np.exp(-2.0 * a_sp * qsum)
                    if acc_flip:
                        for kk in range(p_slices):
                            _flip_site(s, f, i, kk, deg, nbr, cpl)
                    continue
                # walk the ring once starting after the boundary; pairs < k0
                # are known bonded, pair k0 known unbonded, the rest are drawn
                kk = k0 + 1 if k0 + 1 < p_slices else 0
                consumed = 0
                cstart = kk
                csize = 0
                qsum = np.int64(0)
                while consumed < p_slices:
                    qsum += np.int64(s[i, kk]) * np.int64(f[i, kk])
                    csize += 1
                    consumed += 1
                    if kk < k0:
                        bonded = True
                    elif kk == k0:
                        bonded = False
                    else:
                        bonded = False
                        kup = kk + 1 if kk + 1 < p_slices else 0
                        if s[i, kk] == s[i, kup]:
                            r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                            bonded = (u64 >> np.uint64(11)) < bond_thr
                    kk = kk + 1 if kk + 1 < p_slices else 0
                    if not bonded:
                        acc_flip = qsum <= 0
                        if not acc_flip:
                            r0, r1, r2, r3, u64 = _nx(r0, r1, r2, r3)
                            acc_flip = _unit(u64) < np.exp(-2.0 * a_sp * qsum)
                        if acc_flip:
                            kc = cstart
                            for _ in range(csize):
                                _flip_site(s, f, i, kc, deg, nbr, cpl)
                                kc = kc + 1 if kc + 1 < p_slices else 0
                        cstart = kk
                        csize = 0
                        qsum = np.int64(0)

        best = np.int64(2**62)
        for kk in range(p_slices):
            e = np.int64(0)
            for j in range(n_edges):
                e -= ew[j] * np.int64(s[eu[j], kk]) * np.int64(s[ev[j], kk])
            for i in range(n):
                e -= h[i] * np.int64(s[i, kk])
            if e < best:
                best = e
        emin_out[run] = best
        for kk in range(p_slices):
            for i in range(n):
                wl_out[run, kk, i] = s[i, kk]
