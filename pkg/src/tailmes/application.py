"""Return-period queries and tuning-parameter scans.

A T-year return level with N observation periods per year corresponds
to exceedance probability p = 1 / (N * T), typically far below 1/n, so
the extrapolated estimator is the relevant one here.
"""

from dataclasses import dataclass, replace

from .errors import ArgumentError
from .estimators import EstimatorConfig, MesEstimate, eta_estimate, hill_gamma, theta_kn, theta_p_estimate
from .ranks import PairedSample

SCAN_TARGETS = ("gamma1", "eta", "theta_p")


@dataclass(frozen=True)
class ReturnLevelQuery:
    years: float
    periods_per_year: int = 365
    k: int = 200
    k1: int = 200
    k2: int = 200

    def __post_init__(self):
        if not self.years > 0.0:
            raise ArgumentError(f"years must be positive, got {self.years}")
        if self.periods_per_year < 1:
            raise ArgumentError(f"periods_per_year must be >= 1, got {self.periods_per_year}")

    @property
    def p(self) -> float:
        return 1.0 / (self.periods_per_year * self.years)


def return_level_mes(sample: PairedSample, query: ReturnLevelQuery) -> MesEstimate:
    config = EstimatorConfig(k=query.k, k1=query.k1, k2=query.k2, p=query.p)
    return theta_p_estimate(sample, config)


def k_scan(sample: PairedSample, target: str, k_values,
           config: EstimatorConfig) -> list[tuple[int, float]]:
    """Evaluate one estimate over a grid of its own sample fraction.

    target "gamma1" varies k1, "eta" varies k2, "theta_p" varies k; the
    other two fractions stay at their config values. Every k in the grid
    is validated before any work runs, so a scan either completes or
    fails fast.
    """
    if target not in SCAN_TARGETS:
        raise ArgumentError(f"target must be one of {SCAN_TARGETS}, got {target!r}")
    ks = [int(k) for k in k_values]
    if not ks:
        raise ArgumentError("k grid is empty")
    n = sample.n
    field = {"gamma1": "k1", "eta": "k2", "theta_p": "k"}[target]
    for k in ks:
        replace(config, **{field: k}).validate_for(n)

    rows: list[tuple[int, float]] = []
    for k in ks:
        if target == "gamma1":
            rows.append((k, hill_gamma(sample.x, k)))
        elif target == "eta":
            rows.append((k, eta_estimate(sample, k)))
        else:
            est = theta_p_estimate(sample, replace(config, k=k))
            rows.append((k, est.theta_p))
    return rows
