# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for k-dominance scans.

Every function here has a numpy twin in :mod:`ksjq._fallback` with the same
signature and the same results; :mod:`ksjq.kernels` picks one at import.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

# compatibility / join condition codes, shared with ksjq.kernels
cdef enum:
    C_EQ = 0
    C_LT = 1
    C_LEQ = 2
    C_GT = 3
    C_GEQ = 4

cdef enum:
    CACHE_SIZE = 64

cdef enum:
    LABEL_SS = 0
    LABEL_SN = 1
    LABEL_NN = 2


cdef inline bint _kdom(const double[:, ::1] X, Py_ssize_t j, Py_ssize_t i,
                       Py_ssize_t d, Py_ssize_t k) noexcept nogil:
    # row j k-dominates row i
    cdef Py_ssize_t p, leq = 0, lt = 0
    cdef double a, b
    for p in range(d):
        a = X[j, p]
        b = X[i, p]
        if a <= b:
            leq += 1
            if a < b:
                lt += 1
        elif leq + (d - p - 1) < k:
            return False
    return leq >= k and lt > 0


cdef inline Py_ssize_t _lower_bound(const double[::1] keys, const long long[::1] idx,
                                    Py_ssize_t lo, Py_ssize_t hi, double x) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[idx[mid]] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t _upper_bound(const double[::1] keys, const long long[::1] idx,
                                    Py_ssize_t lo, Py_ssize_t hi, double x) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[idx[mid]] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline void _range(const double[::1] keys, const long long[::1] idx,
                        Py_ssize_t lo, Py_ssize_t hi, double x, int mode,
                        Py_ssize_t* out_lo, Py_ssize_t* out_hi) noexcept nogil:
    # idx[lo:hi] is sorted by keys; select entries whose key relates to x
    # as "key <mode> x" read from the perspective of x (see kernels.py)
    if mode == C_EQ:
        out_lo[0] = _lower_bound(keys, idx, lo, hi, x)
        out_hi[0] = _upper_bound(keys, idx, out_lo[0], hi, x)
    elif mode == C_LT:        # key < x
        out_lo[0] = lo
        out_hi[0] = _lower_bound(keys, idx, lo, hi, x)
    elif mode == C_LEQ:       # key <= x
        out_lo[0] = lo
        out_hi[0] = _upper_bound(keys, idx, lo, hi, x)
    elif mode == C_GT:        # key > x
        out_lo[0] = _upper_bound(keys, idx, lo, hi, x)
        out_hi[0] = hi
    else:                     # key >= x
        out_lo[0] = _lower_bound(keys, idx, lo, hi, x)
        out_hi[0] = hi


cdef bint _dominated(const double[:, ::1] X, Py_ssize_t i, Py_ssize_t k,
                     const long long[:, ::1] sidx, const double[:, ::1] svals,
                     Py_ssize_t* cache, Py_ssize_t* ncache,
                     Py_ssize_t* plen, Py_ssize_t* pdim) noexcept nogil:
    # Is row i k-dominated by some other row? A dominator is <= row i on at
    # least k positions, so it lies in the "<= prefix" of at least one of
    # any d-k+1 dimensions; scan the union of the shortest such prefixes.
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1]
    cdef Py_ssize_t c, j, p, q, t, lo, hi, mid, need, tmp
    cdef double x
    for c in range(ncache[0]):
        j = cache[c]
        if j != i and _kdom(X, j, i, d, k):
            while c > 0:
                cache[c] = cache[c - 1]
                c -= 1
            cache[0] = j
            return True
    for p in range(d):
        x = X[i, p]
        lo = 0
        hi = n
        while lo < hi:
            mid = (lo + hi) >> 1
            if svals[p, mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        plen[p] = lo
        pdim[p] = p
    need = d - k + 1
    # partial selection sort: the `need` shortest prefixes first
    for p in range(need):
        for q in range(p + 1, d):
            if plen[pdim[q]] < plen[pdim[p]]:
                tmp = pdim[p]
                pdim[p] = pdim[q]
                pdim[q] = tmp
    for q in range(need):
        p = pdim[q]
        for t in range(plen[p]):
            j = sidx[p, t]
            if j != i and _kdom(X, j, i, d, k):
                if ncache[0] < CACHE_SIZE:
                    ncache[0] += 1
                c = ncache[0] - 1
                while c > 0:
                    cache[c] = cache[c - 1]
                    c -= 1
                cache[0] = j
                return True
    return False


def kdom_skyline(const double[:, ::1] X, Py_ssize_t k,
                 const long long[:, ::1] sidx, const double[:, ::1] svals):
    """Mask of rows not k-dominated by any other row.

    ``sidx[p]`` lists row indices sorted by column p and ``svals[p]`` the
    matching values. A small move-to-front cache of recent dominators is
    probed before the prefix scan.
    """
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    cdef Py_ssize_t cache[CACHE_SIZE]
    cdef Py_ssize_t ncache = 0
    cdef Py_ssize_t* plen = <Py_ssize_t*> malloc((d + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* pdim = <Py_ssize_t*> malloc((d + 1) * sizeof(Py_ssize_t))
    try:
        with nogil:
            for i in range(n):
                if _dominated(X, i, k, sidx, svals, cache, &ncache, plen, pdim):
                    res[i] = 0
    finally:
        free(plen)
        free(pdim)
    return out


def classify_labels(const double[:, ::1] X, const double[::1] jv,
                    const long long[::1] by_jv, int mode,
                    Py_ssize_t k_ss, Py_ssize_t k_nn,
                    const unsigned char[::1] strict_ok,
                    const long long[:, ::1] sidx, const double[:, ::1] svals):
    """SS/SN/NN label per row.

    NN: some row in the compatibility set (rows whose jv relates to the
    row's jv per ``mode``) has >= k_nn better-or-equal positions and a
    strict improvement on a position flagged in ``strict_ok``.
    SS: no row at all k_ss-dominates. SN: neither.
    ``by_jv`` lists row indices sorted by jv; ``sidx``/``svals`` are the
    per-column sort used by :func:`kdom_skyline`.
    """
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1]
    cdef cnp.ndarray[cnp.int8_t, ndim=1] out = np.zeros(n, dtype=np.int8)
    cdef signed char[::1] lab = out
    cdef Py_ssize_t i, j, t, p, lo, hi_i, leq, lt
    cdef double a, b
    cdef bint nn
    cdef Py_ssize_t cache[CACHE_SIZE]
    cdef Py_ssize_t ncache = 0
    cdef Py_ssize_t* plen = <Py_ssize_t*> malloc((d + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* pdim = <Py_ssize_t*> malloc((d + 1) * sizeof(Py_ssize_t))
    try:
        with nogil:
            for i in range(n):
                _range(jv, by_jv, 0, n, jv[i], mode, &lo, &hi_i)
                nn = False
                for t in range(lo, hi_i):
                    j = by_jv[t]
                    if j == i:
                        continue
                    leq = 0
                    lt = 0
                    for p in range(d):
                        a = X[j, p]
                        b = X[i, p]
                        if a <= b:
                            leq += 1
                            if a < b and strict_ok[p]:
                                lt += 1
                    if leq >= k_nn and lt > 0:
                        nn = True
                        break
                if nn:
                    lab[i] = LABEL_NN
                elif _dominated(X, i, k_ss, sidx, svals, cache, &ncache, plen, pdim):
                    lab[i] = LABEL_SN
                else:
                    lab[i] = LABEL_SS
    finally:
        free(plen)
        free(pdim)
    return out


def leq_at_least(const double[:, ::1] X, const double[::1] x, Py_ssize_t k):
    """Mask of rows with at least k positions <= x."""
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, p, leq
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    with nogil:
        for i in range(n):
            leq = 0
            for p in range(d):
                if X[i, p] <= x[p]:
                    leq += 1
            if leq >= k:
                res[i] = 1
    return out


def check_candidates(const long long[::1] cu, const long long[::1] cv,
                     const double[:, ::1] X1, const double[:, ::1] X2,
                     Py_ssize_t l1, Py_ssize_t l2, const signed char[::1] aggkind,
                     const double[::1] jv1, const double[::1] jv2, int cond,
                     const long long[::1] lstart, const long long[::1] lend,
                     const long long[::1] lidx,
                     const long long[::1] rstart, const long long[::1] rend,
                     const long long[::1] ridx,
                     Py_ssize_t k):
    """Survivor mask for candidate joined tuples (cu[c], cv[c]).

    A candidate dies when a join-compatible target pair (u, v), u taken from
    lidx[lstart[cu]:lend[cu]] and v from ridx[rstart[cv]:rend[cv]], k-dominates
    it. Right lists must be sorted by jv2. Joined vector layout is
    (X1 locals, X2 locals, aggregates); aggkind[j] is 0 for SUM, 1 for MIN.
    Candidates sharing cv should be adjacent so right-side counts are reused.
    """
    cdef Py_ssize_t nc = cu.shape[0], a = aggkind.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.ones(nc, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    cdef Py_ssize_t maxr = 0, c, t, s, p, j, u, v, up, vp, lo, hi, c1, s1, tot, st
    cdef Py_ssize_t prev_v = -1, r0, r1
    cdef double g, gp, x, y
    cdef int jmode
    for c in range(X2.shape[0]):
        if rend[c] - rstart[c] > maxr:
            maxr = rend[c] - rstart[c]
    cdef Py_ssize_t* c2 = <Py_ssize_t*> malloc((maxr + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* s2 = <Py_ssize_t*> malloc((maxr + 1) * sizeof(Py_ssize_t))
    cdef double* gref = <double*> malloc((a + 1) * sizeof(double))
    # right key relation to the left value: cond is "u.jv OP v.jv"
    if cond == C_EQ:
        jmode = C_EQ
    elif cond == C_LT:
        jmode = C_GT
    elif cond == C_LEQ:
        jmode = C_GEQ
    elif cond == C_GT:
        jmode = C_LT
    else:
        jmode = C_LEQ
    try:
        with nogil:
            for c in range(nc):
                up = cu[c]
                vp = cv[c]
                r0 = rstart[vp]
                r1 = rend[vp]
                if vp != prev_v:
                    for t in range(r0, r1):
                        v = ridx[t]
                        tot = 0
                        st = 0
                        for p in range(l2):
                            if X2[v, p] <= X2[vp, p]:
                                tot += 1
                                if X2[v, p] < X2[vp, p]:
                                    st += 1
                        c2[t - r0] = tot
                        s2[t - r0] = st
                    prev_v = vp
                for j in range(a):
                    x = X1[up, l1 + j]
                    y = X2[vp, l2 + j]
                    if aggkind[j] == 0:
                        gref[j] = x + y
                    else:
                        gref[j] = x if x < y else y
                for s in range(lstart[up], lend[up]):
                    u = lidx[s]
                    c1 = 0
                    s1 = 0
                    for p in range(l1):
                        if X1[u, p] <= X1[up, p]:
                            c1 += 1
                            if X1[u, p] < X1[up, p]:
                                s1 += 1
                    if c1 + l2 + a < k:
                        continue
                    _range(jv2, ridx, r0, r1, jv1[u], jmode, &lo, &hi)
                    for t in range(lo, hi):
                        tot = c1 + c2[t - r0]
                        if tot + a < k:
                            continue
                        v = ridx[t]
                        if u == up and v == vp:
                            continue
                        st = s1 + s2[t - r0]
                        for j in range(a):
                            x = X1[u, l1 + j]
                            y = X2[v, l2 + j]
                            if aggkind[j] == 0:
                                g = x + y
                            else:
                                g = x if x < y else y
                            gp = gref[j]
                            if g <= gp:
                                tot += 1
                                if g < gp:
                                    st += 1
                        if tot >= k and st > 0:
                            res[c] = 0
                            break
                    if res[c] == 0:
                        break
    finally:
        free(c2)
        free(s2)
        free(gref)
    return out
