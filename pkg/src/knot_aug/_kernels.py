"""Search kernels for zero loci of polynomial systems over F_p.

Two interchangeable backends implement the same contract:

* ``dfs``: an ``@njit`` depth-first search with per-level pruning;
* ``bfs``: a pure-numpy breadth-first filter, one unit triple at a time.

Both return, for every assignment of the first ``n_outer`` variables that
extends to a full solution, the lexicographically smallest extension (in the
given variable order).  Set ``KNOTAUG_DISABLE_NUMBA=1`` to force ``bfs``.

System layout (variables already in search order)::

    lo[v]                      smallest admissible value (1 for units, 0 otherwise)
    coef[t], texp[t, v]        term coefficients mod p and dense exponents
    gptr[g]..gptr[g+1]         terms of generator g
    lptr[d]..lptr[d+1]         generators whose last variable is d
    pw[x, e]                   x**e mod p
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    flag = os.environ.get("KNOTAUG_DISABLE_NUMBA", "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes", "on")


def default_backend() -> str:
    return "dfs" if numba_enabled() else "bfs"


def power_table(p: int, max_exp: int) -> np.ndarray:
    pw = np.ones((p, max_exp + 1), dtype=np.int64)
    base = np.arange(p, dtype=np.int64)
    for e in range(1, max_exp + 1):
        pw[:, e] = pw[:, e - 1] * base % p
    return pw


def _dfs_py(p, lo, coef, texp, gptr, lptr, pw, n_outer, budget, sols):
    V = lo.shape[0]
    x = np.zeros(V, dtype=np.int64)
    d = 0
    x[0] = lo[0]
    visited = 0
    nsol = 0
    while d >= 0:
        if x[d] >= p:
            d -= 1
            if d >= 0:
                x[d] += 1
            continue
        visited += 1
        if visited > budget:
            return nsol, visited, True
        ok = True
        for gi in range(lptr[d], lptr[d + 1]):
            s = 0
            for t in range(gptr[gi], gptr[gi + 1]):
                v = coef[t]
                for j in range(d + 1):
                    e = texp[t, j]
                    if e != 0:
                        v = v * pw[x[j], e] % p
                s += v
            if s % p != 0:
                ok = False
                break
        if not ok:
            x[d] += 1
            continue
        if d == V - 1:
            for j in range(V):
                sols[nsol, j] = x[j]
            nsol += 1
            d = n_outer - 1 if n_outer <= V else V - 1
            x[d] += 1
            continue
        d += 1
        x[d] = lo[d]
    return nsol, visited, False


if HAVE_NUMBA:
    _dfs_jit = numba.njit(cache=True, nogil=True)(_dfs_py)
else:  # pragma: no cover
    _dfs_jit = _dfs_py


def search_dfs(p, lo, coef, texp, gptr, lptr, pw, n_outer, budget):
    V = lo.shape[0]
    cap = (p - 1) ** min(n_outer, V) if n_outer else 1
    sols = np.zeros((max(cap, 1), V), dtype=np.int64)
    fn = _dfs_jit if numba_enabled() else _dfs_py
    nsol, visited, exceeded = fn(p, lo, coef, texp, gptr, lptr, pw, n_outer, budget, sols)
    return sols[:nsol].copy(), int(visited), bool(exceeded)


def _level_ok(rows, d, p, coef, texp, gptr, lptr, pw):
    keep = np.ones(rows.shape[0], dtype=bool)
    for gi in range(lptr[d], lptr[d + 1]):
        s = np.zeros(rows.shape[0], dtype=np.int64)
        for t in range(gptr[gi], gptr[gi + 1]):
            v = np.full(rows.shape[0], coef[t], dtype=np.int64)
            for j in np.nonzero(texp[t, : d + 1])[0]:
                v = v * pw[rows[:, j], texp[t, j]] % p
            s += v
        keep &= s % p == 0
    return keep


def search_bfs(p, lo, coef, texp, gptr, lptr, pw, n_outer, budget):
    """Breadth-first filter; rows stay in lexicographic order throughout."""
    V = lo.shape[0]
    visited = 0
    outer = np.zeros((1, 0), dtype=np.int64)
    for d in range(min(n_outer, V)):
        vals = np.arange(lo[d], p, dtype=np.int64)
        rows = np.hstack([np.repeat(outer, len(vals), axis=0), np.tile(vals, outer.shape[0])[:, None]])
        visited += rows.shape[0]
        if visited > budget:
            return np.zeros((0, V), dtype=np.int64), visited, True
        outer = rows[_level_ok(rows, d, p, coef, texp, gptr, lptr, pw)]
    if V <= n_outer:
        return outer, visited, False
    found = []
    for r in range(outer.shape[0]):
        rows = outer[r : r + 1]
        for d in range(n_outer, V):
            vals = np.arange(lo[d], p, dtype=np.int64)
            rows = np.hstack([np.repeat(rows, len(vals), axis=0), np.tile(vals, rows.shape[0])[:, None]])
            visited += rows.shape[0]
            if visited > budget:
                return np.zeros((0, V), dtype=np.int64), visited, True
            rows = rows[_level_ok(rows, d, p, coef, texp, gptr, lptr, pw)]
            if rows.shape[0] == 0:
                break
        if rows.shape[0]:
            found.append(rows[0])
    sols = np.array(found, dtype=np.int64).reshape(len(found), V)
    return sols, visited, False


def search(backend, *args):
    if backend == "dfs":
        return search_dfs(*args)
    if backend == "bfs":
        return search_bfs(*args)
    raise ValueError(f"unknown backend {backend!r}")
