"""Independent reference implementations used to check the package.

Everything here is deliberately written against the defining optimization
problems rather than the closed forms the package uses: the achievable rate
as a brute-force search over the phase split, and the scheduling bound as a
grid search over the time-sharing simplex. Slow and obvious on purpose.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from diamond_relay import LinkCapacities


def phase_split_rate(caps: LinkCapacities, lam: float) -> float:
    """End-to-end rate of the alternating schedule at phase split ``lam``.

    ``lam`` is the fraction of time in the phase where relay 1 listens and
    relay 2 forwards; each relay is limited by the smaller of what it can
    decode and what it can deliver.
    """
    through_1 = min(lam * caps.c01, (1.0 - lam) * caps.c13)
    through_2 = min((1.0 - lam) * caps.c02, lam * caps.c23)
    return through_1 + through_2


def best_phase_split_rate(caps: LinkCapacities, n_grid: int = 20001) -> float:
    """Maximize the alternating-schedule rate over a dense grid of splits.

    The objective is piecewise linear in the split with breakpoints where
    either relay's decode and delivery constraints cross, so the two exact
    crossing points are always included alongside the grid.
    """
    lams = list(np.linspace(0.0, 1.0, n_grid))
    if caps.c13 + caps.c01 > 0.0:
        lams.append(caps.c13 / (caps.c13 + caps.c01))
    if caps.c23 + caps.c02 > 0.0:
        lams.append(caps.c02 / (caps.c23 + caps.c02))
    lam = np.array(lams)
    through_1 = np.minimum(lam * caps.c01, (1.0 - lam) * caps.c13)
    through_2 = np.minimum((1.0 - lam) * caps.c02, lam * caps.c23)
    return float((through_1 + through_2).max())


def min_cut(caps: LinkCapacities, t1: float, t2: float, t3: float, t4: float) -> float:
    """Smallest of the four weighted cuts at a given time-sharing vector."""
    return min(
        t1 * caps.c012 + t2 * caps.c02 + t3 * caps.c01,
        t1 * caps.c02 + t2 * (caps.c02 + caps.c13) + t4 * caps.c13,
        t1 * caps.c01 + t3 * (caps.c01 + caps.c23) + t4 * caps.c23,
        t2 * caps.c13 + t3 * caps.c23 + t4 * caps.c123,
    )


def grid_oracle_bound_naive(caps: LinkCapacities, step: float) -> float:
    """Literal lattice search over the simplex; cubic in 1/step, keep coarse."""
    n = round(1.0 / step)
    best = 0.0
    for i in range(n + 1):
        t1 = i * step
        for j in range(n + 1 - i):
            t2 = j * step
            for k in range(n + 1 - i - j):
                t3 = k * step
                t4 = (n - i - j - k) * step
                best = max(best, min_cut(caps, t1, t2, t3, t4))
    return best


@lru_cache(maxsize=4)
def _pair_lattice(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All (i, j) with i + j <= n, as flat integer arrays."""
    i = np.repeat(np.arange(n + 1), np.arange(n + 1, 0, -1))
    j = np.concatenate([np.arange(n + 1 - v) for v in range(n + 1)])
    return i, j


def grid_oracle_bound(caps: LinkCapacities, step: float = 1e-3) -> float:
    """Same lattice search as the naive version, restructured to be fast.

    For fixed (t1, t2) the minimum cut is concave piecewise linear in t3:
    cuts 1 and 3 both grow with slope c01, cut 2 falls with slope c13, and
    cut 4 falls with slope c123 - c23 >= 0. The lattice maximum therefore
    sits at a segment endpoint or next to one of the two crossing points,
    so only a handful of t3 values need evaluating per pair.
    """
    n = round(1.0 / step)
    i, j = _pair_lattice(n)
    rem = n - i - j  # t3 lattice index runs over 0..rem

    s = rem * step
    b1 = (i * caps.c012 + j * caps.c02) * step
    b2 = (i * caps.c02 + j * (caps.c02 + caps.c13)) * step + s * caps.c13
    b3 = i * caps.c01 * step + s * caps.c23
    b4 = j * caps.c13 * step + s * caps.c123
    b13 = np.minimum(b1, b3)

    # crossings of the rising envelope with each falling cut, in t3 units;
    # degenerate slopes give inf/nan which clip to an endpoint we already try
    with np.errstate(divide="ignore", invalid="ignore"):
        x2 = (b2 - b13) / (caps.c01 + caps.c13)
        x4 = (b4 - b13) / (caps.c01 + caps.c123 - caps.c23)
    k2 = np.nan_to_num(np.floor(x2 / step), nan=0.0, posinf=0.0, neginf=0.0)
    k4 = np.nan_to_num(np.floor(x4 / step), nan=0.0, posinf=0.0, neginf=0.0)

    candidates = np.stack(
        [
            np.zeros_like(rem),
            rem,
            np.clip(k2.astype(np.int64) - 1, 0, rem),
            np.clip(k2.astype(np.int64), 0, rem),
            np.clip(k2.astype(np.int64) + 1, 0, rem),
            np.clip(k2.astype(np.int64) + 2, 0, rem),
            np.clip(k4.astype(np.int64) - 1, 0, rem),
            np.clip(k4.astype(np.int64), 0, rem),
            np.clip(k4.astype(np.int64) + 1, 0, rem),
            np.clip(k4.astype(np.int64) + 2, 0, rem),
        ]
    )
    x = candidates * step
    cut1 = b1 + caps.c01 * x
    cut2 = b2 - caps.c13 * x
    cut3 = b3 + caps.c01 * x
    cut4 = b4 - (caps.c123 - caps.c23) * x
    value = np.minimum(np.minimum(cut1, cut2), np.minimum(cut3, cut4))
    return float(value.max())
