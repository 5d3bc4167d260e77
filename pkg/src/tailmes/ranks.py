"""Order statistics, ranks, and the rank-based minimum statistic T_i.

Everything here is a pure function of its inputs; the estimators build
on these primitives.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DomainError

TIE_POLICY = "ordinal-by-index"


def _as_vector(values, name: str) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise ArgumentError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.size == 0:
        raise ArgumentError(f"{name} must be nonempty")
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{name} must contain only finite values")
    return v


@dataclass(frozen=True, eq=False)
class PairedSample:
    """n paired observations (x_i, y_i).

    x values must be strictly positive (the conditional-mean target lives
    on (0, inf)); y values only need to be finite and orderable.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _as_vector(self.x, "x")
        y = _as_vector(self.y, "y")
        if len(x) != len(y):
            raise ArgumentError(f"x and y lengths differ: {len(x)} != {len(y)}")
        if np.any(x <= 0):
            raise DomainError("x values must be strictly positive")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True, eq=False)
class RankVector:
    """Ranks 1..n forming a permutation; ties broken by original index."""

    ranks: np.ndarray
    tie_policy: str = TIE_POLICY


def order_statistic(values, j: int) -> float:
    """j-th smallest value, 1-based: order_statistic(v, n) is the maximum."""
    v = _as_vector(values, "values")
    if not isinstance(j, (int, np.integer)) or isinstance(j, bool):
        raise ArgumentError(f"j must be an integer, got {j!r}")
    if not 1 <= j <= len(v):
        raise ArgumentError(f"order statistic index {j} outside 1..{len(v)}")
    return float(np.partition(v, j - 1)[j - 1])


def compute_ranks(values) -> RankVector:
    """Ranks with rank 1 = smallest; ties resolved stably by index order."""
    v = _as_vector(values, "values")
    order = np.argsort(v, kind="stable")
    ranks = np.empty(len(v), dtype=np.int64)
    ranks[order] = np.arange(1, len(v) + 1)
    return RankVector(ranks=ranks)


def t_statistics(sample: PairedSample) -> np.ndarray:
    """T_i = min((n+1)/(n+1-R_i^x), (n+1)/(n+1-R_i^y)).

    Depends on the data only through the two rank vectors, so it is
    invariant under strictly increasing marginal transforms. Each T_i
    lies in [(n+1)/n, n+1].
    """
    n = sample.n
    rx = compute_ranks(sample.x).ranks
    ry = compute_ranks(sample.y).ranks
    denom_x = (n + 1.0) - rx
    denom_y = (n + 1.0) - ry
    return np.minimum((n + 1.0) / denom_x, (n + 1.0) / denom_y)
