# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled crystal kernels; same contract as ``mvcrystal._kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def tensor_edges(cnp.int64_t[:, :] f1, cnp.int64_t[:, :] e1, cnp.int64_t[:, :] eps1, cnp.int64_t[:, :] phi1,
                 cnp.int64_t[:, :] f2, cnp.int64_t[:, :] e2, cnp.int64_t[:, :] eps2, cnp.int64_t[:, :] phi2):
    cdef Py_ssize_t rank = f1.shape[0]
    cdef Py_ssize_t n1 = f1.shape[1]
    cdef Py_ssize_t n2 = f2.shape[1]
    cdef Py_ssize_t n = n1 * n2
    f_arr = np.empty((rank, n), dtype=np.int64)
    e_arr = np.empty((rank, n), dtype=np.int64)
    eps_arr = np.empty((n, rank), dtype=np.int64)
    phi_arr = np.empty((n, rank), dtype=np.int64)
    cdef cnp.int64_t[:, :] f = f_arr
    cdef cnp.int64_t[:, :] e = e_arr
    cdef cnp.int64_t[:, :] eps = eps_arr
    cdef cnp.int64_t[:, :] phi = phi_arr
    cdef Py_ssize_t i, a, b, k
    cdef cnp.int64_t p1, q2, t
    for i in range(rank):
        for a in range(n1):
            p1 = phi1[a, i]
            for b in range(n2):
                k = a * n2 + b
                q2 = eps2[b, i]
                if p1 > q2:
                    t = f1[i, a]
                    f[i, k] = t * n2 + b if t >= 0 else -1
                else:
                    t = f2[i, b]
                    f[i, k] = a * n2 + t if t >= 0 else -1
                if p1 >= q2:
                    t = e1[i, a]
                    e[i, k] = t * n2 + b if t >= 0 else -1
                else:
                    t = e2[i, b]
                    e[i, k] = a * n2 + t if t >= 0 else -1
                eps[k, i] = eps1[a, i] + (q2 - p1 if q2 > p1 else 0)
                phi[k, i] = phi2[b, i] + (p1 - q2 if p1 > q2 else 0)
    return f_arr, e_arr, eps_arr, phi_arr


cdef Py_ssize_t _find(cnp.int64_t[:] parent, Py_ssize_t x):
    cdef Py_ssize_t root = x
    cdef Py_ssize_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def component_labels(cnp.int64_t[:, :] f, Py_ssize_t n):
    parent_arr = np.arange(n, dtype=np.int64)
    cdef cnp.int64_t[:] parent = parent_arr
    cdef Py_ssize_t rank = f.shape[0]
    cdef Py_ssize_t i, b, ra, rb
    for i in range(rank):
        for b in range(n):
            if f[i, b] >= 0:
                ra = _find(parent, b)
                rb = _find(parent, f[i, b])
                if ra < rb:
                    parent[rb] = ra
                elif rb < ra:
                    parent[ra] = rb
    for b in range(n):
        parent[b] = _find(parent, b)
    return parent_arr
