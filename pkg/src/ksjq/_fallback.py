"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Same signatures, same results, slower. Used when the extension is not built
or when ``KSJQ_BACKEND=python`` is set.
"""

import numpy as np

C_EQ, C_LT, C_LEQ, C_GT, C_GEQ = range(5)
LABEL_SS, LABEL_SN, LABEL_NN = range(3)

_BLOCK = 4096


def _select(keys, x, mode):
    if mode == C_EQ:
        return keys == x
    if mode == C_LT:
        return keys < x
    if mode == C_LEQ:
        return keys <= x
    if mode == C_GT:
        return keys > x
    return keys >= x


def _dominated(X, i, k, sidx, svals):
    d = X.shape[1]
    lens = np.array([np.searchsorted(svals[p], X[i, p], side="right") for p in range(d)])
    dims = np.argsort(lens, kind="stable")[:d - k + 1]
    rows = np.unique(np.concatenate([sidx[p, :lens[p]] for p in dims]))
    rows = rows[rows != i]
    for start in range(0, len(rows), _BLOCK):
        cmp = X[rows[start:start + _BLOCK]]
        leq = (cmp <= X[i]).sum(axis=1)
        lt = (cmp < X[i]).any(axis=1)
        if np.any((leq >= k) & lt):
            return True
    return False


def kdom_skyline(X, k, sidx, svals):
    X = np.asarray(X, dtype=np.float64)
    out = np.ones(X.shape[0], dtype=np.uint8)
    for i in range(X.shape[0]):
        if _dominated(X, i, k, sidx, svals):
            out[i] = 0
    return out


def classify_labels(X, jv, by_jv, mode, k_ss, k_nn, strict_ok, sidx, svals):
    X = np.asarray(X, dtype=np.float64)
    jv = np.asarray(jv, dtype=np.float64)
    strict_ok = np.asarray(strict_ok, dtype=bool)
    n = X.shape[0]
    out = np.zeros(n, dtype=np.int8)
    everyone = np.arange(n)
    for i in range(n):
        compat = everyone[_select(jv, jv[i], mode) & (everyone != i)]
        if compat.size:
            cmp = X[compat]
            leq = (cmp <= X[i]).sum(axis=1)
            lt = ((cmp < X[i]) & strict_ok).any(axis=1)
            if np.any((leq >= k_nn) & lt):
                out[i] = LABEL_NN
                continue
        out[i] = LABEL_SN if _dominated(X, i, k_ss, sidx, svals) else LABEL_SS
    return out


def leq_at_least(X, x, k):
    X = np.asarray(X, dtype=np.float64)
    return ((X <= np.asarray(x)).sum(axis=1) >= k).astype(np.uint8)


def _aggregate(left, right, aggkind):
    summed = left + right
    least = np.minimum(left, right)
    return np.where(np.asarray(aggkind) == 0, summed, least)


def check_candidates(cu, cv, X1, X2, l1, l2, aggkind, jv1, jv2, cond,
                     lstart, lend, lidx, rstart, rend, ridx, k):
    X1 = np.asarray(X1, dtype=np.float64)
    X2 = np.asarray(X2, dtype=np.float64)
    jv1 = np.asarray(jv1, dtype=np.float64)
    jv2 = np.asarray(jv2, dtype=np.float64)
    aggkind = np.asarray(aggkind, dtype=np.int8)
    a = aggkind.shape[0]
    out = np.ones(len(cu), dtype=np.uint8)
    for c, (up, vp) in enumerate(zip(cu, cv)):
        left = np.asarray(lidx[lstart[up]:lend[up]], dtype=np.int64)
        right = np.asarray(ridx[rstart[vp]:rend[vp]], dtype=np.int64)
        if left.size == 0 or right.size == 0:
            continue
        # pair grid: rows = left targets, columns = right targets
        if cond == C_EQ:
            ok = jv1[left][:, None] == jv2[right][None, :]
        elif cond == C_LT:
            ok = jv1[left][:, None] < jv2[right][None, :]
        elif cond == C_LEQ:
            ok = jv1[left][:, None] <= jv2[right][None, :]
        elif cond == C_GT:
            ok = jv1[left][:, None] > jv2[right][None, :]
        else:
            ok = jv1[left][:, None] >= jv2[right][None, :]
        ok &= ~((left[:, None] == up) & (right[None, :] == vp))
        L1 = X1[left, :l1]
        L2 = X2[right, :l2]
        leq = ((L1 <= X1[up, :l1]).sum(axis=1)[:, None]
               + (L2 <= X2[vp, :l2]).sum(axis=1)[None, :])
        lt = ((L1 < X1[up, :l1]).any(axis=1)[:, None]
              | (L2 < X2[vp, :l2]).any(axis=1)[None, :])
        if a:
            ref = _aggregate(X1[up, l1:], X2[vp, l2:], aggkind)
            agg = _aggregate(X1[left, l1:][:, None, :], X2[right, l2:][None, :, :], aggkind)
            leq = leq + (agg <= ref).sum(axis=2)
            lt = lt | (agg < ref).any(axis=2)
        if np.any(ok & (leq >= k) & lt):
            out[c] = 0
    return out
