# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pair surface statistics; mirrors randsts._kernels_py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef Py_ssize_t idx_t


cdef inline idx_t _find(idx_t[::1] parent, idx_t x) noexcept nogil:
    cdef idx_t r = x, nxt
    while parent[r] != r:
        r = parent[r]
    while parent[x] != r:
        nxt = parent[x]
        parent[x] = r
        x = nxt
    return r


def analyze_pair(sigma, tau):
    """(commutator cycle lengths, descending; components; holonomy code; cylinders).

    Inputs are 0-based image arrays. Holonomy code: 0 = H, 1 = V, 2 = U.
    """
    cdef idx_t[::1] s = np.ascontiguousarray(sigma, dtype=np.intp)
    cdef idx_t[::1] t = np.ascontiguousarray(tau, dtype=np.intp)
    cdef idx_t n = s.shape[0]
    if t.shape[0] != n:
        raise ValueError("degree mismatch")

    cdef idx_t[::1] work = np.empty(5 * n, dtype=np.intp)
    cdef idx_t[::1] sinv = work[0:n]
    cdef idx_t[::1] tinv = work[n:2 * n]
    cdef idx_t[::1] c = work[2 * n:3 * n]
    cdef idx_t[::1] parent = work[3 * n:4 * n]
    cdef idx_t[::1] band = work[4 * n:5 * n]
    cdef cnp.uint8_t[::1] flags = np.zeros(2 * n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = flags[0:n]
    cdef cnp.uint8_t[::1] notflat = flags[n:2 * n]
    cdef idx_t[::1] hist = np.zeros(n + 1, dtype=np.intp)

    cdef idx_t x, y, k, a, b, nb, fcount = 0, comps, cyl
    cdef int hol
    cdef bint torus = True

    with nogil:
        for x in range(n):
            sinv[s[x]] = x
            tinv[t[x]] = x
        for x in range(n):
            c[x] = s[t[sinv[tinv[x]]]]

        for x in range(n):
            if seen[x]:
                continue
            k = 0
            y = x
            while not seen[y]:
                seen[y] = 1
                y = c[y]
                k += 1
            hist[k] += 1
            if k == 1:
                fcount += 1
                if s[x] != x or t[x] != x:
                    torus = False

        # components of <sigma, tau>
        for x in range(n):
            parent[x] = x
        comps = n
        for x in range(n):
            a = _find(parent, x)
            b = _find(parent, s[x])
            if a != b:
                parent[b] = a
                comps -= 1
            a = _find(parent, x)
            b = _find(parent, t[x])
            if a != b:
                parent[b] = a
                comps -= 1

        if fcount == 0 or torus:
            hol = 0
        elif n > 2 * fcount:
            hol = 1
        else:
            hol = 2

        # sigma-cycles are bands; a band merges upward when tau maps all of it
        # onto commutator fixed points
        for x in range(n):
            seen[x] = 0
        nb = 0
        for x in range(n):
            if seen[x]:
                continue
            y = x
            while not seen[y]:
                seen[y] = 1
                band[y] = nb
                y = s[y]
            nb += 1
        for x in range(n):
            if c[t[x]] != t[x]:
                notflat[band[x]] = 1
        for x in range(nb):
            parent[x] = x
        cyl = nb
        for x in range(n):
            a = band[x]
            if not notflat[a]:
                a = _find(parent, a)
                b = _find(parent, band[t[x]])
                if a != b:
                    parent[b] = a
                    cyl -= 1

    lengths = []
    for k in range(n, 0, -1):
        for y in range(hist[k]):
            lengths.append(k)
    return lengths, comps, hol, cyl
