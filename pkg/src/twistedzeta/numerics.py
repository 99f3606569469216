"""Rank decisions by singular-value thresholding with spectral-gap audits."""

from __future__ import annotations

import numpy as np

from .errors import IllConditioned

GAP_RATIO = 1e3


def svd_rank(M: np.ndarray, tol: float = 1e-8, audit: bool = True,
             scale_floor: float = 0.0):
    """(rank, gap_ratio) of M with threshold tol * largest singular value.

    `scale_floor` guards numerically-zero matrices: the threshold never drops
    below tol * scale_floor, so rounding noise in an all-zero matrix is not
    mistaken for rank.  The gap ratio is min(kept)/max(dropped); an audit
    failure means the spectrum has no safe gap around the threshold and the
    rank is unreliable.
    """
    if M.size == 0:
        return 0, float("inf")
    s = np.linalg.svd(M, compute_uv=False)
    if max(s[0], scale_floor) == 0:
        return 0, float("inf")
    thr = tol * max(s[0], scale_floor)
    kept = s[s > thr]
    dropped = s[s <= thr]
    if len(kept) and len(dropped) and dropped.max() > 0:
        gap = float(kept.min() / dropped.max())
    else:
        # one-sided spectra are still ambiguous when values crowd the
        # threshold from a single side
        lo = float(thr / dropped.max()) if len(dropped) and dropped.max() > 0 \
            else float("inf")
        hi = float(kept.min() / thr) if len(kept) else float("inf")
        gap = min(lo, hi) ** 2
    if audit and gap < GAP_RATIO:
        raise IllConditioned(
            f"no singular-value gap of ratio >= {GAP_RATIO:g} around the rank "
            f"threshold (gap {gap:.3e})")
    return len(kept), gap


def svd_nullity(M: np.ndarray, tol: float = 1e-8, audit: bool = True,
                scale_floor: float = 0.0):
    rank, gap = svd_rank(M, tol, audit, scale_floor)
    return M.shape[1] - rank, gap
