"""Backend selection for the k-dominance inner loops.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``KSJQ_BACKEND`` is ``python``, the numpy fallback is.
"""

import contextlib
import os

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

C_EQ, C_LT, C_LEQ, C_GT, C_GEQ = range(5)
LABEL_SS, LABEL_SN, LABEL_NN = range(3)

AVAILABLE = {"python": _fallback}
if _compiled is not None:
    AVAILABLE["compiled"] = _compiled

_requested = os.environ.get("KSJQ_BACKEND", "").strip().lower()
if _requested and _requested not in AVAILABLE:
    raise ImportError(f"KSJQ_BACKEND={_requested!r} is not available; have {sorted(AVAILABLE)}")
BACKEND = _requested or ("compiled" if _compiled is not None else "python")
_impl = AVAILABLE[BACKEND]


def set_backend(name):
    """Switch the active backend; returns the previous name."""
    global BACKEND, _impl
    if name not in AVAILABLE:
        raise ValueError(f"unknown backend {name!r}; have {sorted(AVAILABLE)}")
    previous = BACKEND
    BACKEND, _impl = name, AVAILABLE[name]
    return previous


@contextlib.contextmanager
def backend(name):
    previous = set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kdom_skyline(X, k, sidx, svals):
    return _impl.kdom_skyline(X, k, sidx, svals)


def classify_labels(X, jv, by_jv, mode, k_ss, k_nn, strict_ok, sidx, svals):
    return _impl.classify_labels(X, jv, by_jv, mode, k_ss, k_nn, strict_ok, sidx, svals)


def leq_at_least(X, x, k):
    return _impl.leq_at_least(X, x, k)


def check_candidates(cu, cv, X1, X2, l1, l2, aggkind, jv1, jv2, cond,
                     lstart, lend, lidx, rstart, rend, ridx, k):
    return _impl.check_candidates(cu, cv, X1, X2, l1, l2, aggkind, jv1, jv2, cond,
                                  lstart, lend, lidx, rstart, rend, ridx, k)
