"""numba kernels over CSR adjacency arrays.

Inputs are ``indptr``/``indices`` (int64) with rows sorted by neighbor id,
``dist`` (edge distances ``1/w``) or ``weights`` (float64) aligned with
``indices``.  Everything here is single-threaded and deterministic.
"""
import heapq

import numpy as np
from numba import njit


@njit(cache=True)
def _dijkstra_counts(indptr, indices, dist, s, d, sigma, order, preds, npred, settled):
    """Shortest-path DAG from ``s``; returns the number of settled nodes.

    ``order`` receives nodes in settle order, ``preds[indptr[v] + j]`` the
    predecessors of ``v``.  Callers reset the scratch arrays.
    """
    d[s] = 0.0
    sigma[s] = 1.0
    heap = [(0.0, s)]
    count = 0
    while len(heap) > 0:
        dv, v = heapq.heappop(heap)
        if settled[v] or dv > d[v]:
            continue
        settled[v] = True
        order[count] = v
        count += 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if settled[w]:
                continue
            nd = dv + dist[j]
            if nd < d[w]:
                d[w] = nd
                sigma[w] = sigma[v]
                preds[indptr[w]] = v
                npred[w] = 1
                heapq.heappush(heap, (nd, w))
            elif nd == d[w]:
                sigma[w] += sigma[v]
                preds[indptr[w] + npred[w]] = v
                npred[w] += 1
    return count


@njit(cache=True)
def betweenness(indptr, indices, dist, sources):
    """Brandes accumulation over ``sources``; each ordered pair counted once."""
    n = len(indptr) - 1
    bc = np.zeros(n)
    d = np.full(n, np.inf)
    sigma = np.zeros(n)
    delta = np.zeros(n)
    order = np.empty(n, dtype=np.int64)
    preds = np.empty(len(indices), dtype=np.int64)
    npred = np.zeros(n, dtype=np.int64)
    settled = np.zeros(n, dtype=np.bool_)
    for s in sources:
        count = _dijkstra_counts(indptr, indices, dist, s, d, sigma, order, preds, npred, settled)
        for i in range(count - 1, -1, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for j in range(npred[w]):
                v = preds[indptr[w] + j]
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
        for i in range(count):
            w = order[i]
            d[w] = np.inf
            sigma[w] = 0.0
            delta[w] = 0.0
            npred[w] = 0
            settled[w] = False
    return bc


@njit(cache=True)
def harmonic_closeness(indptr, indices, dist):
    """``sum over u != v of 1 / D(v, u)`` for every ``v``."""
    n = len(indptr) - 1
    out = np.zeros(n)
    d = np.full(n, np.inf)
    settled = np.zeros(n, dtype=np.bool_)
    touched = np.empty(n, dtype=np.int64)
    for s in range(n):
        d[s] = 0.0
        heap = [(0.0, s)]
        nt = 0
        total = 0.0
        touched[nt] = s
        nt += 1
        while len(heap) > 0:
            dv, v = heapq.heappop(heap)
            if settled[v] or dv > d[v]:
                continue
            settled[v] = True
            if v != s:
                total += 1.0 / dv
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                nd = dv + dist[j]
                if nd < d[w]:
                    if d[w] == np.inf:
                        touched[nt] = w
                        nt += 1
                    d[w] = nd
                    heapq.heappush(heap, (nd, w))
        out[s] = total
        for i in range(nt):
            d[touched[i]] = np.inf
            settled[touched[i]] = False
    return out


@njit(cache=True)
def triangles(indptr, indices):
    """Triangles through each node (sorted-row merge)."""
    n = len(indptr) - 1
    tri = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for a in range(indptr[v], indptr[v + 1]):
            u = indices[a]
            if u <= v:
                continue
            # common neighbours w > u of v and u
            i = indptr[v]
            j = indptr[u]
            ie = indptr[v + 1]
            je = indptr[u + 1]
            while i < ie and j < je:
                x = indices[i]
                y = indices[j]
                if x < y:
                    i += 1
                elif y < x:
                    j += 1
                else:
                    if x > u:
                        tri[v] += 1
                        tri[u] += 1
                        tri[x] += 1
                    i += 1
                    j += 1
    return tri


@njit(cache=True)
def two_hop_sizes(indptr, indices):
    """``|N_1(v) u N_2(v)|`` excluding ``v`` itself."""
    n = len(indptr) - 1
    out = np.zeros(n, dtype=np.int64)
    mark = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        mark[v] = v
        c = 0
        for a in range(indptr[v], indptr[v + 1]):
            u = indices[a]
            if mark[u] != v:
                mark[u] = v
                c += 1
            for b in range(indptr[u], indptr[u + 1]):
                x = indices[b]
                if mark[x] != v:
                    mark[x] = v
                    c += 1
        out[v] = c
    return out


@njit(cache=True)
def core_numbers(indptr, indices):
    """Batagelj-Zaversnik bucket peeling on the unweighted skeleton."""
    n = len(indptr) - 1
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    md = 0
    for v in range(n):
        if deg[v] > md:
            md = deg[v]
    bin_ = np.zeros(md + 2, dtype=np.int64)
    for v in range(n):
        bin_[deg[v]] += 1
    start = 0
    for k in range(md + 1):
        num = bin_[k]
        bin_[k] = start
        start += num
    pos = np.empty(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    for v in range(n):
        pos[v] = bin_[deg[v]]
        vert[pos[v]] = v
        bin_[deg[v]] += 1
    for k in range(md, 0, -1):
        bin_[k] = bin_[k - 1]
    bin_[0] = 0
    for i in range(n):
        v = vert[i]
        for a in range(indptr[v], indptr[v + 1]):
            u = indices[a]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bin_[du] += 1
                deg[u] -= 1
    return deg


@njit(cache=True)
def threshold_spread(indptr, indices, weights, strength, seeds, theta, r,
                     infected, incoming, touched, members):
    """Synchronous threshold cascade; returns infected counts for t = 0..r.

    A node joins at step ``t`` when the weight it receives from nodes
    infected by ``t - 1`` reaches ``theta * strength`` and at least one
    neighbour is infected.  Scratch arrays ``infected`` (bool),
    ``incoming`` (float), ``touched`` and ``members`` (int, length n) must
    be clean on entry and are left clean on exit.
    """
    counts = np.zeros(r + 1, dtype=np.int64)
    nm = 0
    for s in seeds:
        if not infected[s]:
            infected[s] = True
            members[nm] = s
            nm += 1
    counts[0] = nm
    lo = 0
    hi = nm
    nt = 0
    for t in range(1, r + 1):
        if hi > lo:
            for i in range(lo, hi):
                x = members[i]
                for j in range(indptr[x], indptr[x + 1]):
                    y = indices[j]
                    if infected[y]:
                        continue
                    if incoming[y] == 0.0:
                        touched[nt] = y
                        nt += 1
                    incoming[y] += weights[j]
            # incoming is frozen during this pass, so the update is synchronous
            for i in range(lo, hi):
                x = members[i]
                for j in range(indptr[x], indptr[x + 1]):
                    y = indices[j]
                    if infected[y]:
                        continue
                    # relative slack absorbs summation-order rounding only
                    if incoming[y] >= theta * strength[y] * (1.0 - 1e-12):
                        infected[y] = True
                        members[nm] = y
                        nm += 1
            lo = hi
            hi = nm
        counts[t] = nm
    for i in range(nt):
        incoming[touched[i]] = 0.0
    for i in range(nm):
        infected[members[i]] = False
    return counts


@njit(cache=True)
def single_seed_complex_sizes(indptr, indices, weights, strength, theta, r):
    """Final cascade size of the threshold model seeded at each single node."""
    n = len(indptr) - 1
    out = np.zeros(n, dtype=np.int64)
    infected = np.zeros(n, dtype=np.bool_)
    incoming = np.zeros(n)
    touched = np.empty(n, dtype=np.int64)
    members = np.empty(n, dtype=np.int64)
    seeds = np.empty(1, dtype=np.int64)
    for v in range(n):
        seeds[0] = v
        counts = threshold_spread(indptr, indices, weights, strength, seeds, theta, r,
                                  infected, incoming, touched, members)
        out[v] = counts[r]
    return out


@njit(cache=True)
def two_hop_higher(indptr, indices, key):
    """Number of nodes within two hops of ``v`` whose ``key`` exceeds ``key[v]``."""
    n = len(indptr) - 1
    out = np.zeros(n, dtype=np.int64)
    mark = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        mark[v] = v
        c = 0
        for a in range(indptr[v], indptr[v + 1]):
            u = indices[a]
            if mark[u] != v:
                mark[u] = v
                if key[u] > key[v]:
                    c += 1
            for b in range(indptr[u], indptr[u + 1]):
                x = indices[b]
                if mark[x] != v:
                    mark[x] = v
                    if key[x] > key[v]:
                        c += 1
        out[v] = c
    return out


@njit(cache=True)
def greedy_coloring(indptr, indices, order):
    """Smallest free colour for each node, visiting nodes in ``order``."""
    n = len(indptr) - 1
    color = np.full(n, -1, dtype=np.int64)
    used = np.full(n + 1, -1, dtype=np.int64)
    for v in order:
        for j in range(indptr[v], indptr[v + 1]):
            c = color[indices[j]]
            if c >= 0:
                used[c] = v
        c = 0
        while used[c] == v:
            c += 1
        color[v] = c
    return color


@njit(cache=True)
def best_neighbor(indptr, indices, score):
    """Neighbour with the highest score (ties: smaller id); -1 if isolated."""
    n = len(indptr) - 1
    out = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        best = -1
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if best < 0 or score[u] > score[best]:
                best = u
        out[v] = best
    return out
