"""Tail estimators for the marginal expected shortfall (MES).

The target is theta_p = E[X | Y > Q_Y(1-p)] for small p. Within-sample
information stops at exceedance probabilities of order k/n, so the
estimator factorizes into

    theta_hat_p = theta_hat_{k/n} * d_n ** (-1/eta_hat + 1 + gamma1_hat),

where theta_hat_{k/n} averages X over the k highest-Y observations,
d_n = k/(n p) is the extrapolation ratio, gamma1_hat is the Hill
estimator of the X tail index, and eta_hat estimates the coefficient
of tail dependence from the rank statistic T_i. eta close to 1 means
asymptotic dependence; eta in (1/2, 1) means asymptotic independence
with positive association, which is the regime this extrapolation is
built for.
"""

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array

from .errors import ArgumentError, DomainError
from .ranks import PairedSample, order_statistic, t_statistics

DEFAULT_ETA_FLOOR = 1e-6


@dataclass(frozen=True)
class EstimatorConfig:
    """Intermediate-sequence sizes and the target probability.

    k drives the within-sample MES, k1 the Hill estimator, k2 the
    eta estimator; p is the target exceedance probability.
    """

    k: int
    k1: int
    k2: int
    p: float

    def __post_init__(self):
        for name in ("k", "k1", "k2"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise ArgumentError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise ArgumentError(f"{name} must be >= 1, got {value}")
        if not 0.0 < self.p < 1.0:
            raise ArgumentError(f"p must lie in (0, 1), got {self.p}")

    def validate_for(self, n: int) -> None:
        for name in ("k", "k1", "k2"):
            value = getattr(self, name)
            if value >= n:
                raise ArgumentError(f"{name}={value} must be < n={n}")


@dataclass(frozen=True)
class MesEstimate:
    """theta_hat_p with all of its ingredients.

    Satisfies theta_p == theta_kn * d_n ** exponent exactly (the field
    values are the ones used in the multiplication). ``warnings`` flags
    conditions under which the extrapolation is evaluable but its
    asymptotic guarantee does not apply.
    """

    theta_p: float
    theta_kn: float
    gamma1_hat: float
    eta_hat: float
    d_n: float
    exponent: float
    warnings: tuple[str, ...] = ()


def hill_gamma(values, k1: int) -> float:
    """Hill estimator: mean log-spacing of the top k1 order statistics.

    Returns (1/k1) sum_{i=1..k1} log(X_{n-i+1,n}) - log(X_{n-k1,n}),
    which is nonnegative and zero when the top k1+1 order statistics
    coincide. Scale-invariant: rescaling values by any c > 0 leaves the
    statistic unchanged up to floating rounding.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ArgumentError("values must be a nonempty one-dimensional vector")
    if not np.all(np.isfinite(v)):
        raise DomainError("values must be finite")
    if np.any(v <= 0):
        raise DomainError("Hill estimator requires strictly positive values")
    n = len(v)
    if not isinstance(k1, (int, np.integer)) or isinstance(k1, bool):
        raise ArgumentError(f"k1 must be an integer, got {k1!r}")
    if not 1 <= k1 <= n - 1:
        raise ArgumentError(f"k1={k1} outside 1..{n - 1}")
    s = np.sort(v)
    top = np.log(s[n - k1:])
    return float(np.mean(top) - math.log(s[n - k1 - 1]))


def eta_estimate(sample: PairedSample, k2: int, *, floor: float = DEFAULT_ETA_FLOOR) -> float:
    """Tail dependence coefficient estimate via the T_i rank statistic.

    Applies the Hill form to the ascending order statistics of
    t_statistics(sample) and clamps the raw value into (0, 1]: the
    population coefficient lives in (0, 1], finite samples can exceed 1,
    and the degenerate all-equal case maps to ``floor`` (default 1e-6)
    so that 1/eta_hat stays finite. Rank-based, hence invariant under
    strictly increasing marginal transforms.
    """
    n = sample.n
    if not isinstance(k2, (int, np.integer)) or isinstance(k2, bool):
        raise ArgumentError(f"k2 must be an integer, got {k2!r}")
    if not 1 <= k2 <= n - 1:
        raise ArgumentError(f"k2={k2} outside 1..{n - 1}")
    if not 0.0 < floor <= 1.0:
        raise ArgumentError(f"floor must lie in (0, 1], got {floor}")
    t = np.sort(t_statistics(sample))
    raw = float(np.mean(np.log(t[n - k2:])) - math.log(t[n - k2 - 1]))
    return min(1.0, max(raw, floor))


def theta_kn(sample: PairedSample, k: int) -> float:
    """Within-sample tail MES: (1/k) sum x_i over {y_i > Y_{n-k,n}}.

    The divisor is k, not the exceedance count; with ties at the
    threshold the strict inequality can select fewer than k points.
    """
    n = sample.n
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ArgumentError(f"k must be an integer, got {k!r}")
    if not 1 <= k <= n - 1:
        raise ArgumentError(f"k={k} outside 1..{n - 1}")
    threshold = order_statistic(sample.y, n - k)
    return float(np.sum(sample.x[sample.y > threshold]) / k)


def theta_emp(sample: PairedSample, p: float) -> float:
    """Empirical benchmark: theta_kn at k = round(n p), round-half-up."""
    if not 0.0 < p < 1.0:
        raise ArgumentError(f"p must lie in (0, 1), got {p}")
    k = math.floor(sample.n * p + 0.5)
    if k < 1:
        raise DomainError(f"p={p} too small for empirical estimator (round(np) < 1)")
    return theta_kn(sample, k)


def assemble_mes(theta_kn_value: float, gamma1_hat: float, eta_hat: float,
                 n: int, k: int, p: float) -> MesEstimate:
    """Combine the three ingredients into the extrapolated estimate.

    Kept separate so that harness code computing shared ingredients once
    produces bit-identical results to theta_p_estimate.
    """
    d_n = k / (n * p)
    exponent = -1.0 / eta_hat + 1.0 + gamma1_hat
    theta_p = theta_kn_value * d_n ** exponent
    warnings: tuple[str, ...] = ()
    if d_n < 1.0:
        warnings = ("d_n = k/(np) < 1: extrapolating toward the interior; "
                    "the asymptotic guarantee assumes d_n >= 1",)
    return MesEstimate(theta_p=theta_p, theta_kn=theta_kn_value,
                       gamma1_hat=gamma1_hat, eta_hat=eta_hat,
                       d_n=d_n, exponent=exponent, warnings=warnings)


def theta_p_estimate(sample: PairedSample, config: EstimatorConfig) -> MesEstimate:
    """Extrapolated MES estimate theta_hat_p with all ingredients.

    Composes hill_gamma on x (k1), eta_estimate (k2), and theta_kn (k),
    then extrapolates from level k/n down to level p through the power
    d_n ** (-1/eta_hat + 1 + gamma1_hat). A d_n < 1 configuration is
    evaluable but flagged in the result's warnings.
    """
    config.validate_for(sample.n)
    gamma1_hat = hill_gamma(sample.x, config.k1)
    eta_hat = eta_estimate(sample, config.k2)
    base = theta_kn(sample, config.k)
    return assemble_mes(base, gamma1_hat, eta_hat, sample.n, config.k, config.p)


class MarginalExpectedShortfall(BaseEstimator):
    """Estimator-API adapter around theta_p_estimate.

    fit expects X of shape (n, 2) with the conditioned variable in
    column 0 and the conditioning variable in column 1. Fitted
    attributes: gamma1_, eta_, theta_kn_, theta_p_, d_n_, exponent_,
    warnings_, and estimate_ (the full MesEstimate). There is no
    transform or predict: the fit produces one scalar summary of the
    pair, not per-row outputs.
    """

    def __init__(self, k: int = 200, k1: int = 200, k2: int = 200,
                 p: float = 0.001, eta_floor: float = DEFAULT_ETA_FLOOR):
        self.k = k
        self.k1 = k1
        self.k2 = k2
        self.p = p
        self.eta_floor = eta_floor

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_2d=True)
        if X.shape[1] != 2:
            raise ArgumentError(f"X must have exactly 2 columns, got {X.shape[1]}")
        sample = PairedSample(X[:, 0], X[:, 1])
        config = EstimatorConfig(k=self.k, k1=self.k1, k2=self.k2, p=self.p)
        config.validate_for(sample.n)
        gamma1_hat = hill_gamma(sample.x, config.k1)
        eta_hat = eta_estimate(sample, config.k2, floor=self.eta_floor)
        base = theta_kn(sample, config.k)
        estimate = assemble_mes(base, gamma1_hat, eta_hat, sample.n, config.k, config.p)
        self.n_features_in_ = 2
        self.estimate_ = estimate
        self.gamma1_ = estimate.gamma1_hat
        self.eta_ = estimate.eta_hat
        self.theta_kn_ = estimate.theta_kn
        self.theta_p_ = estimate.theta_p
        self.d_n_ = estimate.d_n
        self.exponent_ = estimate.exponent
        self.warnings_ = estimate.warnings
        return self
