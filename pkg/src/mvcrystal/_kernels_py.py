"""NumPy implementation of the crystal kernels (used when the compiled extension is unavailable).

Arrays: ``f``/``e`` have shape (rank, n) with -1 for "undefined"; ``eps``/``phi``/``wt`` have shape (n, rank).
"""

from __future__ import annotations

import numpy as np


def tensor_edges(f1, e1, eps1, phi1, f2, e2, eps2, phi2):
    """Operators and string lengths on B1 (x) B2, element b1 (x) b2 stored at index b1 * n2 + b2.

    f acts on the left factor iff phi(b1) > eps(b2); e acts on the left factor iff phi(b1) >= eps(b2).
    """
    rank, n1 = f1.shape
    n2 = f2.shape[1]
    n = n1 * n2
    f = np.empty((rank, n), dtype=np.int64)
    e = np.empty((rank, n), dtype=np.int64)
    eps = np.empty((n, rank), dtype=np.int64)
    phi = np.empty((n, rank), dtype=np.int64)
    b1 = np.arange(n1, dtype=np.int64)[:, None]
    b2 = np.arange(n2, dtype=np.int64)[None, :]
    for i in range(rank):
        p1 = phi1[:, i][:, None]
        q2 = eps2[:, i][None, :]
        left_f = p1 > q2
        left_e = p1 >= q2
        f1i = f1[i][:, None]
        f2i = f2[i][None, :]
        e1i = e1[i][:, None]
        e2i = e2[i][None, :]
        fl = np.where(f1i >= 0, f1i * n2 + b2, -1)
        fr = np.where(f2i >= 0, b1 * n2 + f2i, -1)
        el = np.where(e1i >= 0, e1i * n2 + b2, -1)
        er = np.where(e2i >= 0, b1 * n2 + e2i, -1)
        f[i] = np.where(left_f, fl, fr).ravel()
        e[i] = np.where(left_e, el, er).ravel()
        eps[:, i] = (eps1[:, i][:, None] + np.maximum(0, q2 - p1)).ravel()
        phi[:, i] = (phi2[:, i][None, :] + np.maximum(0, p1 - q2)).ravel()
    return f, e, eps, phi


def component_labels(f, n):
    """Connected components of the graph spanned by the f-edges; label = smallest member index."""
    label = np.arange(n, dtype=np.int64)
    srcs, dsts = [], []
    for fi in f:
        mask = fi >= 0
        srcs.append(np.nonzero(mask)[0])
        dsts.append(fi[mask])
    if not srcs:
        return label
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    while True:
        m = np.minimum(label[src], label[dst])
        new = label.copy()
        np.minimum.at(new, src, m)
        np.minimum.at(new, dst, m)
        new = new[new]
        if np.array_equal(new, label):
            return label
        label = new
