"""Sign-change scanning plus bisection refinement for smooth 1-D functions.

All root searches in the engine go through here: scan with a fixed step,
bracket every sign change, refine each bracket with scipy's brentq to
|dy| < 1e-12.  Functions are assumed smooth between any excluded
singularities; NaN grid values simply break brackets.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateCase

DEFAULT_STEP = np.pi / 200
XTOL = 1e-12
DEGENERATE_SPACING = 1e-6


def find_roots(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    step: float = DEFAULT_STEP,
    degenerate_check: bool = False,
) -> np.ndarray:
    """All roots of f in (lo, hi], by sign-change scan and bisection.

    f must accept ndarray input.  With degenerate_check, two roots closer
    than 1e-6 raise DegenerateCase (near-double root)."""
    if hi <= lo:
        return np.array([])
    npts = max(int(np.ceil((hi - lo) / step)) + 1, 2)
    grid = np.linspace(lo, hi, npts)
    vals = np.asarray(f(grid), dtype=float)
    roots = []
    finite = np.isfinite(vals)
    for i in range(npts - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            if grid[i] > lo:
                roots.append(grid[i])
            continue
        if a * b < 0.0:
            roots.append(brentq(lambda x: float(f(np.array([x]))[0]), grid[i], grid[i + 1], xtol=XTOL))
    if finite[-1] and vals[-1] == 0.0:
        roots.append(grid[-1])
    roots = np.array(sorted(roots))
    if degenerate_check and roots.size >= 2:
        if np.min(np.diff(roots)) < DEGENERATE_SPACING:
            raise DegenerateCase("near-double root detected in scan")
    return roots


def count_sign_changes(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    step: float,
) -> int:
    """Number of sign changes of f over a dense grid on [lo, hi]."""
    if hi <= lo:
        return 0
    npts = max(int(np.ceil((hi - lo) / step)) + 1, 2)
    grid = np.linspace(lo, hi, npts)
    vals = np.asarray(f(grid), dtype=float)
    s = np.sign(vals)
    ok = np.isfinite(vals) & (s != 0)
    s = s[ok]
    if s.size < 2:
        return 0
    return int(np.count_nonzero(s[1:] != s[:-1]))
