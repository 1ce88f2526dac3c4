"""Numba lane for the hot per-facet kernels (same contracts as the numpy lane)."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _lex_search(tgt, row):
    lo, hi = 0, tgt.shape[0]
    w = tgt.shape[1]
    while lo < hi:
        mid = (lo + hi) // 2
        cmp = 0
        for j in range(w):
            a = tgt[mid, j]
            b = row[j]
            if a < b:
                cmp = -1
                break
            if a > b:
                cmp = 1
                break
        if cmp < 0:
            lo = mid + 1
        else:
            hi = mid
    if lo < tgt.shape[0]:
        for j in range(w):
            if tgt[lo, j] != row[j]:
                return -2
        return lo
    return -2


@njit(cache=True)
def facet_image_lookup(src_facets, assignment, tgt_facets_lex):
    m, w = src_facets.shape
    idx = np.empty(m, dtype=np.int64)
    parity = np.empty(m, dtype=np.int8)
    buf = np.empty(w, dtype=np.int64)
    for i in range(m):
        for j in range(w):
            buf[j] = assignment[src_facets[i, j]]
        # insertion sort with swap count
        swaps = 0
        degen = False
        for j in range(1, w):
            key = buf[j]
            p = j - 1
            while p >= 0 and buf[p] > key:
                buf[p + 1] = buf[p]
                p -= 1
                swaps += 1
            buf[p + 1] = key
        for j in range(1, w):
            if buf[j] == buf[j - 1]:
                degen = True
                break
        if degen:
            idx[i] = -1
            parity[i] = 0
            continue
        parity[i] = 1 if swaps % 2 == 0 else -1
        idx[i] = _lex_search(tgt_facets_lex, buf)
    return idx, parity


@njit(cache=True)
def _propagate(m, heads, tails, rels, indptr):
    signs = np.zeros(m, dtype=np.int8)
    visited = np.zeros(m, dtype=np.bool_)
    stack = np.empty(m, dtype=np.int64)
    signs[0] = 1
    visited[0] = True
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        su = signs[u]
        for e in range(indptr[u], indptr[u + 1]):
            v = tails[e]
            if not visited[v]:
                visited[v] = True
                signs[v] = su * rels[e]
                stack[top] = v
                top += 1
    return visited, signs


def propagate_signs(m, pair_a, pair_b, rel):
    heads = np.concatenate([pair_a, pair_b])
    tails = np.concatenate([pair_b, pair_a])
    rels = np.concatenate([rel, rel])
    order = np.argsort(heads, kind="stable")
    heads, tails, rels = heads[order], tails[order], rels[order]
    indptr = np.searchsorted(heads, np.arange(m + 1))
    visited, signs = _propagate(m, heads, tails, rels, indptr)
    conflict = bool(np.any(signs[pair_b] != rel * signs[pair_a]))
    return visited, signs, conflict
