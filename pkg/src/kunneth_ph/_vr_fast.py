"""Vietoris-Rips persistence over GF(2), compiled with numba.

Degree 0 is union-find over edges.  Degrees k >= 1 reduce the coboundary
matrix of the k-simplices, taken in decreasing filtration order, with
clearing: a k-simplex that killed a (k-1)-class is never a column.  Cofaces
are enumerated on the fly and never stored; only the column operations V are
kept.  Simplices are ordered by (diameter, colex index).
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict, List


@njit(cache=True)
def _binomials(n, k):
    B = np.zeros((n + 2, k + 2), dtype=np.int64)
    for i in range(n + 2):
        B[i, 0] = 1
        for j in range(1, min(i, k + 1) + 1):
            B[i, j] = B[i - 1, j - 1] + B[i - 1, j]
    return B


@njit(cache=True)
def _colex(verts, B):
    out = np.empty(verts.shape[0], dtype=np.int64)
    for r in range(verts.shape[0]):
        s = 0
        for i in range(verts.shape[1]):
            s += B[verts[r, i], i + 1]
        out[r] = s
    return out


@njit(cache=True)
def _extend(verts, diams, D, t):
    """All (k+1)-simplices whose largest vertex extends a k-simplex, diameter <= t."""
    n = D.shape[0]
    m, kp1 = verts.shape
    count = 0
    for r in range(m):
        for w in range(verts[r, kp1 - 1] + 1, n):
            ok = True
            for i in range(kp1):
                if D[w, verts[r, i]] > t:
                    ok = False
                    break
            if ok:
                count += 1
    out_v = np.empty((count, kp1 + 1), dtype=np.int64)
    out_d = np.empty(count, dtype=np.float64)
    c = 0
    for r in range(m):
        for w in range(verts[r, kp1 - 1] + 1, n):
            dm = diams[r]
            ok = True
            for i in range(kp1):
                x = D[w, verts[r, i]]
                if x > t:
                    ok = False
                    break
                if x > dm:
                    dm = x
            if ok:
                out_v[c, :kp1] = verts[r]
                out_v[c, kp1] = w
                out_d[c] = dm
                c += 1
    return out_v, out_d


def _sorted_simplices(verts, diams, B):
    idx = _colex(verts, B)
    order = np.lexsort((idx, diams))
    return verts[order], diams[order], idx[order]


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _degree0(n, edges, diams):
    """Kruskal; returns death scales and a mask of merging edges."""
    parent = np.arange(n)
    deaths = np.empty(n, dtype=np.float64)
    merging = np.zeros(edges.shape[0], dtype=np.bool_)
    c = 0
    for e in range(edges.shape[0]):
        a = _find(parent, edges[e, 0])
        b = _find(parent, edges[e, 1])
        if a != b:
            parent[max(a, b)] = min(a, b)
            merging[e] = True
            deaths[c] = diams[e]
            c += 1
    return deaths[:c], merging


@njit(cache=True)
def _less(d1, i1, d2, i2):
    return d1 < d2 or (d1 == d2 and i1 < i2)


@njit(cache=True)
def _coboundary(simplex, diam, D, t, B):
    """Cofaces of a sorted simplex, as (diameters, colex indices) sorted by (diam, index)."""
    n = D.shape[0]
    kp1 = simplex.shape[0]
    cd = np.empty(n, dtype=np.float64)
    ci = np.empty(n, dtype=np.int64)
    c = 0
    for w in range(n):
        dm = diam
        ok = True
        for i in range(kp1):
            if simplex[i] == w:
                ok = False
                break
            x = D[w, simplex[i]]
            if x > t:
                ok = False
                break
            if x > dm:
                dm = x
        if not ok:
            continue
        # colex index of simplex + {w}
        s = 0
        shift = 0
        for i in range(kp1):
            v = simplex[i]
            if shift == 0 and w < v:
                s += B[w, i + 1]
                shift = 1
            s += B[v, i + 1 + shift]
        if shift == 0:
            s += B[w, kp1 + 1]
        cd[c] = dm
        ci[c] = s
        c += 1
    cd = cd[:c]
    ci = ci[:c]
    o1 = np.argsort(ci, kind="mergesort")
    cd = cd[o1]
    ci = ci[o1]
    o2 = np.argsort(cd, kind="mergesort")
    return cd[o2], ci[o2]


@njit(cache=True)
def _xor(ad, ai, bd, bi):
    """Symmetric difference of two (diam, index)-sorted columns."""
    od = np.empty(ad.shape[0] + bd.shape[0], dtype=np.float64)
    oi = np.empty(ad.shape[0] + bd.shape[0], dtype=np.int64)
    x = 0
    y = 0
    c = 0
    while x < ad.shape[0] and y < bd.shape[0]:
        if ai[x] == bi[y]:
            x += 1
            y += 1
        elif _less(ad[x], ai[x], bd[y], bi[y]):
            od[c] = ad[x]
            oi[c] = ai[x]
            x += 1
            c += 1
        else:
            od[c] = bd[y]
            oi[c] = bi[y]
            y += 1
            c += 1
    while x < ad.shape[0]:
        od[c] = ad[x]
        oi[c] = ai[x]
        x += 1
        c += 1
    while y < bd.shape[0]:
        od[c] = bd[y]
        oi[c] = bi[y]
        y += 1
        c += 1
    return od[:c], oi[:c]


@njit(cache=True)
def _xor_set(a, b):
    """Symmetric difference of two sorted integer arrays."""
    out = np.empty(a.shape[0] + b.shape[0], dtype=np.int64)
    x = 0
    y = 0
    c = 0
    while x < a.shape[0] and y < b.shape[0]:
        if a[x] == b[y]:
            x += 1
            y += 1
        elif a[x] < b[y]:
            out[c] = a[x]
            x += 1
            c += 1
        else:
            out[c] = b[y]
            y += 1
            c += 1
    while x < a.shape[0]:
        out[c] = a[x]
        x += 1
        c += 1
    while y < b.shape[0]:
        out[c] = b[y]
        y += 1
        c += 1
    return out[:c]


@njit(cache=True)
def _reduce_dimension(verts, diams, cleared, D, t, B):
    """Persistent cohomology pairs in one degree.

    Returns (births, deaths, pivot colex indices); deaths are inf for
    essential classes, pivots are -1 for those.
    """
    m = verts.shape[0]
    table = Dict.empty(key_type=types.int64, value_type=types.int64)
    V = List.empty_list(types.int64[:])
    for _ in range(m):
        V.append(np.empty(0, dtype=np.int64))
    births = np.empty(m, dtype=np.float64)
    deaths = np.empty(m, dtype=np.float64)
    pivots = np.empty(m, dtype=np.int64)
    c = 0
    for j in range(m - 1, -1, -1):
        if cleared[j]:
            continue
        vj = np.array([j], dtype=np.int64)
        wd, wi = _coboundary(verts[j], diams[j], D, t, B)
        while wi.shape[0] > 0:
            piv = wi[0]
            if piv not in table:
                break
            owner = table[piv]
            vo = V[owner]
            for s in vo:
                sd, si = _coboundary(verts[s], diams[s], D, t, B)
                wd, wi = _xor(wd, wi, sd, si)
            vj = _xor_set(vj, vo)
        births[c] = diams[j]
        if wi.shape[0] > 0:
            table[wi[0]] = j
            V[j] = np.sort(vj)
            deaths[c] = wd[0]
            pivots[c] = wi[0]
        else:
            deaths[c] = np.inf
            pivots[c] = -1
        c += 1
    return births[:c], deaths[:c], pivots[:c]


def enclosing_radius(D: np.ndarray) -> float:
    """Scale beyond which the Rips complex is a cone."""
    if D.shape[0] == 0:
        return 0.0
    return float(D.max(axis=1).min())


def vr_pairs(D: np.ndarray, max_degree: int, max_scale: float = np.inf) -> dict:
    """Rips persistence pairs ``{degree: (births, deaths)}`` for degrees 0..max_degree."""
    D = np.ascontiguousarray(D, dtype=np.float64)
    n = D.shape[0]
    out = {}
    if n == 0:
        return {k: (np.empty(0), np.empty(0)) for k in range(max_degree + 1)}
    t = float(min(max_scale, enclosing_radius(D)))
    B = _binomials(n, max_degree + 2)
    verts = np.arange(n, dtype=np.int64).reshape(n, 1)
    diams = np.zeros(n)
    verts, diams = _extend(verts, diams, D, t)
    verts, diams, idx = _sorted_simplices(verts, diams, B)
    deaths, merging = _degree0(n, verts, diams)
    n_ess = n - deaths.shape[0]
    out[0] = (
        np.zeros(n),
        np.concatenate([deaths, np.full(n_ess, np.inf)]),
    )
    cleared_idx = idx[merging]
    for k in range(1, max_degree + 1):
        cleared = np.isin(idx, cleared_idx)
        b, d, piv = _reduce_dimension(verts, diams, cleared, D, t, B)
        out[k] = (b, d)
        if k == max_degree:
            break
        cleared_idx = piv[piv >= 0]
        verts, diams = _extend(verts, diams, D, t)
        verts, diams, idx = _sorted_simplices(verts, diams, B)
    return out
