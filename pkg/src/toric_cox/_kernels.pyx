# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled box scans. Same contract as ``_kernels_py``; int64 arithmetic,
so callers must keep values well inside that range (see ``kernels``)."""

from libc.stdlib cimport malloc, free


def box_points(G, b, lo, hi):
    cdef Py_ssize_t m = len(G), n = len(lo), i, j, k
    cdef long long *g = <long long *>malloc(max(m * n, 1) * sizeof(long long))
    cdef long long *val = <long long *>malloc(max(m, 1) * sizeof(long long))
    cdef long long *bb = <long long *>malloc(max(m, 1) * sizeof(long long))
    cdef long long *u = <long long *>malloc(max(n, 1) * sizeof(long long))
    cdef long long *l = <long long *>malloc(max(n, 1) * sizeof(long long))
    cdef long long *h = <long long *>malloc(max(n, 1) * sizeof(long long))
    cdef bint ok
    out = []
    try:
        for i in range(m):
            bb[i] = b[i]
            for j in range(n):
                g[i * n + j] = G[i][j]
        for j in range(n):
            l[j] = lo[j]
            h[j] = hi[j]
            if l[j] > h[j]:
                return out
            u[j] = l[j]
        for i in range(m):
            val[i] = 0
            for j in range(n):
                val[i] += g[i * n + j] * u[j]
        while True:
            ok = True
            for i in range(m):
                if val[i] < bb[i]:
                    ok = False
                    break
            if ok:
                out.append(tuple([u[j] for j in range(n)]))
            # odometer, last coordinate fastest
            k = n - 1
            while k >= 0 and u[k] == h[k]:
                for i in range(m):
                    val[i] -= g[i * n + k] * (h[k] - l[k])
                u[k] = l[k]
                k -= 1
            if k < 0:
                break
            u[k] += 1
            for i in range(m):
                val[i] += g[i * n + k]
        return out
    finally:
        free(g); free(val); free(bb); free(u); free(l); free(h)


def sign_pattern_counts(R, x0, lo, hi):
    cdef Py_ssize_t m = len(R), n = len(lo), i, j, k
    cdef long long *g = <long long *>malloc(max(m * n, 1) * sizeof(long long))
    cdef long long *val = <long long *>malloc(max(m, 1) * sizeof(long long))
    cdef long long *u = <long long *>malloc(max(n, 1) * sizeof(long long))
    cdef long long *l = <long long *>malloc(max(n, 1) * sizeof(long long))
    cdef long long *h = <long long *>malloc(max(n, 1) * sizeof(long long))
    cdef unsigned long long mask
    counts = {}
    try:
        for i in range(m):
            for j in range(n):
                g[i * n + j] = R[i][j]
        for j in range(n):
            l[j] = lo[j]
            h[j] = hi[j]
            if l[j] > h[j]:
                return counts
            u[j] = l[j]
        for i in range(m):
            val[i] = x0[i]
            for j in range(n):
                val[i] += g[i * n + j] * u[j]
        while True:
            mask = 0
            for i in range(m):
                if val[i] < 0:
                    mask |= (<unsigned long long>1) << i
            key = int(mask)
            counts[key] = counts.get(key, 0) + 1
            k = n - 1
            while k >= 0 and u[k] == h[k]:
                for i in range(m):
                    val[i] -= g[i * n + k] * (h[k] - l[k])
                u[k] = l[k]
                k -= 1
            if k < 0:
                break
            u[k] += 1
            for i in range(m):
                val[i] += g[i * n + k]
        return counts
    finally:
        free(g); free(val); free(u); free(l); free(h)
