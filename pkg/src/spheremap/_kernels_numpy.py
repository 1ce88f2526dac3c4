"""Pure-numpy lane for the hot per-facet kernels.

Same contracts as the numba lane; selected via the SPHEREMAP_NUMBA env flag
(see kernels.py).
"""

from __future__ import annotations

import numpy as np


def _row_view(a: np.ndarray):
    """1-D structured view of a contiguous 2-D int array, for lexicographic search."""
    a = np.ascontiguousarray(a)
    return a.view([("", a.dtype)] * a.shape[1]).ravel()


def facet_image_lookup(src_facets: np.ndarray, assignment: np.ndarray,
                       tgt_facets_lex: np.ndarray):
    """Image of every source facet under a vertex assignment.

    Returns (idx, parity): idx is the row of the (lexicographically sorted)
    target facet array matched by the sorted image, -1 for a degenerate image,
    -2 for a nondegenerate image that is not a target facet.  parity is the
    sign of the sorting permutation (0 when degenerate).
    """
    m, w = src_facets.shape
    img = assignment[src_facets]
    srt = np.sort(img, axis=1)
    degen = np.any(srt[:, 1:] == srt[:, :-1], axis=1) if w > 1 else np.zeros(m, dtype=bool)

    iu, ju = np.triu_indices(w, k=1)
    inv = np.sum(img[:, iu] > img[:, ju], axis=1)
    parity = np.where(inv % 2 == 0, 1, -1).astype(np.int8)
    parity[degen] = 0

    idx = np.full(m, -1, dtype=np.int64)
    nd = ~degen
    if nd.any():
        tv = _row_view(tgt_facets_lex)
        qv = _row_view(srt[nd])
        pos = np.searchsorted(tv, qv)
        pos_ok = pos < len(tv)
        hit = np.zeros(len(qv), dtype=bool)
        hit[pos_ok] = tv[pos[pos_ok]] == qv[pos_ok]
        res = np.where(hit, pos, -2)
        idx[nd] = res
    return idx, parity


def propagate_signs(m: int, pair_a: np.ndarray, pair_b: np.ndarray, rel: np.ndarray):
    """Spread facet signs across ridge pairs: sign[b] = rel * sign[a].

    BFS from facet 0 with sign +1.  Returns (visited, signs, conflict) where
    conflict reports any pair violated by the final assignment.
    """
    heads = np.concatenate([pair_a, pair_b])
    tails = np.concatenate([pair_b, pair_a])
    rels = np.concatenate([rel, rel])
    order = np.argsort(heads, kind="stable")
    heads, tails, rels = heads[order], tails[order], rels[order]
    indptr = np.searchsorted(heads, np.arange(m + 1))

    signs = np.zeros(m, dtype=np.int8)
    visited = np.zeros(m, dtype=bool)
    signs[0] = 1
    visited[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        su = signs[u]
        for e in range(indptr[u], indptr[u + 1]):
            v = tails[e]
            if not visited[v]:
                visited[v] = True
                signs[v] = su * rels[e]
                stack.append(v)
    conflict = bool(np.any(signs[pair_b] != rel * signs[pair_a]))
    return visited, signs, conflict
