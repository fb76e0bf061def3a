# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled counterparts of ``_kernels_py`` for int64 data.

Callers scale rational tables to integers and check that no intermediate
value can exceed the int64 range before dispatching here.
"""

import numpy as np


def jacobi_scan(const long long[:, :, :, ::1] outer, const long long[:, :, :, ::1] inner, int n):
    cdef Py_ssize_t a, b, c, d, e, r, k
    cdef Py_ssize_t u, v, x, y, z
    cdef long long s
    q_arr = np.zeros((n, n, n, n, n, n), dtype=np.int64)
    cdef long long[:, :, :, :, :, ::1] q = q_arr
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for e in range(n):
                        for r in range(n):
                            s = 0
                            for k in range(n):
                                s += outer[a, b, r, k] * inner[c, d, e, k]
                            q[a, b, c, d, e, r] = s
    cdef long long count = 0
    first = None
    for u in range(n):
        for v in range(n):
            for x in range(n):
                for y in range(n):
                    for z in range(n):
                        for r in range(n):
                            if q[u, v, x, y, z, r] != q[y, z, u, v, x, r] - q[x, z, u, v, y, r] + q[x, y, u, v, z, r]:
                                count += 1
                                if first is None:
                                    first = (u, v, x, y, z)
                                break
    return count, first


def box_square_search(int n, int bound, const long long[::1] free_pos, const long long[::1] dep_pos,
                      const long long[:, ::1] dep_num, long long denom, int sign):
    cdef Py_ssize_t nf = free_pos.shape[0]
    cdef Py_ssize_t nd = dep_pos.shape[0]
    cdef Py_ssize_t nn = n * n
    cdef Py_ssize_t i, j, k, f, dd
    cdef long long s, e, target
    cdef bint ok
    vals_arr = np.full(nf, -bound, dtype=np.int64)
    m_arr = np.zeros(nn, dtype=np.int64)
    cdef long long[::1] vals = vals_arr
    cdef long long[::1] m = m_arr
    out = []
    while True:
        for i in range(nn):
            m[i] = 0
        for f in range(nf):
            m[free_pos[f]] = vals[f]
        ok = True
        for dd in range(nd):
            s = 0
            for f in range(nf):
                s += dep_num[dd, f] * vals[f]
            if s % denom != 0:
                ok = False
                break
            e = s // denom
            if e < -bound or e > bound:
                ok = False
                break
            m[dep_pos[dd]] = e
        if ok:
            for i in range(n):
                for j in range(n):
                    s = 0
                    for k in range(n):
                        s += m[i * n + k] * m[k * n + j]
                    target = sign if i == j else 0
                    if s != target:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(tuple(m_arr.tolist()))
        # odometer, last position fastest (matches itertools.product order)
        f = nf - 1
        while f >= 0:
            if vals[f] < bound:
                vals[f] += 1
                break
            vals[f] = -bound
            f -= 1
        if f < 0:
            break
    return out
