"""Monte Carlo harness: replicated estimation against the oracle.

Each replicate draws a fresh sample from the model with a seed derived
from (master_seed, replicate_index), estimates theta_p for every target
probability, and records the relative error theta_hat / theta_true - 1.
Aggregation is keyed by replicate index, so results are independent of
execution order, and extending m preserves the earlier replicates.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError
from .estimators import EstimatorConfig, assemble_mes, eta_estimate, hill_gamma, theta_kn
from .models import ModelSpec, replicate_rng, sample_model
from .oracle import DEFAULT_SETTINGS, QuadratureSettings, asymptotic_sigma2, true_theta_p

EXTRAPOLATED = "extrapolated"
EMPIRICAL = "empirical"


def default_probabilities(n: int) -> tuple[float, ...]:
    return (10.0 / n, 1.0 / n, 1.0 / (10.0 * n))


@dataclass(frozen=True)
class SimulationConfig:
    spec: ModelSpec
    n: int = 5000
    m: int = 100
    probabilities: tuple[float, ...] = ()
    k: int = 200
    k1: int = 200
    k2: int = 200
    master_seed: int = 0
    include_empirical: bool = True
    settings: QuadratureSettings = field(default=DEFAULT_SETTINGS)

    def __post_init__(self):
        if self.n < 2:
            raise ArgumentError(f"n must be >= 2, got {self.n}")
        if self.m < 1:
            raise ArgumentError(f"m must be >= 1, got {self.m}")
        probs = tuple(self.probabilities) or default_probabilities(self.n)
        for p in probs:
            if not 0.0 < p < 1.0:
                raise ArgumentError(f"every p must lie in (0, 1), got {p}")
        object.__setattr__(self, "probabilities", probs)
        # surfaces k >= n style mistakes before any sampling happens
        EstimatorConfig(k=self.k, k1=self.k1, k2=self.k2, p=probs[0]).validate_for(self.n)


@dataclass(frozen=True)
class BiasSummary:
    """Location and spread of a relative-error vector."""

    bias: float
    median: float
    q1: float
    q3: float
    whisker_lo: float
    whisker_hi: float

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


def bias_summary(errors) -> BiasSummary:
    """Mean, median, quartiles, and Tukey whiskers of an error vector.

    Whiskers are the most extreme observations within 1.5 IQR of the
    quartiles (the usual boxplot convention).
    """
    e = np.asarray(errors, dtype=float)
    if e.ndim != 1 or e.size == 0:
        raise ArgumentError("errors must be a nonempty one-dimensional vector")
    q1, med, q3 = np.percentile(e, [25.0, 50.0, 75.0])
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = e[(e >= lo_fence) & (e <= hi_fence)]
    return BiasSummary(bias=float(np.mean(e)), median=float(med),
                       q1=float(q1), q3=float(q3),
                       whisker_lo=float(inside.min()), whisker_hi=float(inside.max()))


@dataclass(frozen=True)
class CellResult:
    """One (estimator, p) cell of the study."""

    estimator: str
    p: float
    true_theta: float
    errors: np.ndarray | None
    summary: BiasSummary | None
    skipped: bool = False
    skip_reason: str = ""

    @property
    def bias(self) -> float:
        if self.summary is None:
            raise ArgumentError(f"cell ({self.estimator}, p={self.p}) was skipped")
        return self.summary.bias


@dataclass(frozen=True)
class ExperimentResult:
    config: SimulationConfig
    cells: tuple[CellResult, ...]

    def cell(self, estimator: str, p: float) -> CellResult:
        for c in self.cells:
            if c.estimator == estimator and c.p == p:
                return c
        raise ArgumentError(f"no cell ({estimator}, p={p})")

    def to_table(self) -> str:
        """Tab-separated summary, one row per cell."""
        header = "estimator\tp\ttrue_theta\tbias\tmedian\tq1\tq3\twhisker_lo\twhisker_hi\tskipped"
        rows = [header]
        for c in self.cells:
            if c.skipped:
                rows.append(f"{c.estimator}\t{c.p!r}\t{c.true_theta!r}\t-\t-\t-\t-\t-\t-\t{c.skip_reason}")
            else:
                s = c.summary
                rows.append("\t".join([c.estimator, repr(c.p), repr(c.true_theta),
                                       repr(s.bias), repr(s.median), repr(s.q1), repr(s.q3),
                                       repr(s.whisker_lo), repr(s.whisker_hi), "no"]))
        return "\n".join(rows) + "\n"

    def to_dict(self) -> dict:
        """JSON-ready document: inputs, seed, per-cell errors and summaries."""
        cells = []
        for c in self.cells:
            entry: dict = {"estimator": c.estimator, "p": c.p, "true_theta": c.true_theta,
                           "skipped": c.skipped}
            if c.skipped:
                entry["skip_reason"] = c.skip_reason
            else:
                s = c.summary
                entry["errors"] = [float(v) for v in c.errors]
                entry["summary"] = {"bias": s.bias, "median": s.median, "q1": s.q1,
                                    "q3": s.q3, "iqr": s.iqr,
                                    "whisker_lo": s.whisker_lo, "whisker_hi": s.whisker_hi}
            cells.append(entry)
        cfg = self.config
        return {"model": cfg.spec.variant, "n": cfg.n, "m": cfg.m,
                "probabilities": list(cfg.probabilities),
                "k": cfg.k, "k1": cfg.k1, "k2": cfg.k2,
                "master_seed": cfg.master_seed,
                "include_empirical": cfg.include_empirical,
                "cells": cells}


def _empirical_k(n: int, p: float) -> int:
    return math.floor(n * p + 0.5)  # round-half-up


def run_simulation(config: SimulationConfig) -> ExperimentResult:
    """Run the replicated study; deterministic in config.master_seed."""
    spec, n, m = config.spec, config.n, config.m
    probs = config.probabilities
    truths = {p: true_theta_p(spec, p, config.settings) for p in probs}

    ext_errors = {p: np.empty(m) for p in probs}
    emp_ks = {p: _empirical_k(n, p) for p in probs}
    emp_errors = {p: np.empty(m) for p in probs
                  if config.include_empirical and 1 <= emp_ks[p] <= n - 1}

    for i in range(m):
        sample = sample_model(spec, n, replicate_rng(config.master_seed, i))
        gamma1_hat = hill_gamma(sample.x, config.k1)
        eta_hat = eta_estimate(sample, config.k2)
        base = theta_kn(sample, config.k)
        for p in probs:
            est = assemble_mes(base, gamma1_hat, eta_hat, n, config.k, p)
            ext_errors[p][i] = est.theta_p / truths[p] - 1.0
        for p in emp_errors:
            emp_errors[p][i] = theta_kn(sample, emp_ks[p]) / truths[p] - 1.0

    cells = []
    for p in probs:
        e = ext_errors[p]
        cells.append(CellResult(EXTRAPOLATED, p, truths[p], e, bias_summary(e)))
    if config.include_empirical:
        for p in probs:
            if p in emp_errors:
                e = emp_errors[p]
                cells.append(CellResult(EMPIRICAL, p, truths[p], e, bias_summary(e)))
            else:
                cells.append(CellResult(EMPIRICAL, p, truths[p], None, None, skipped=True,
                                        skip_reason=f"round(np)={emp_ks[p]} not in 1..n-1"))
    return ExperimentResult(config=config, cells=tuple(cells))


@dataclass(frozen=True)
class NormalityCell:
    p: float
    d_n: float
    t_n: float
    variance: float
    ratio: float


@dataclass(frozen=True)
class NormalityDiagnostic:
    sigma2: float
    cells: tuple[NormalityCell, ...]

    def cell(self, p: float) -> NormalityCell:
        for c in self.cells:
            if c.p == p:
                return c
        raise ArgumentError(f"no diagnostic cell for p={p}")


def normality_diagnostic(result: ExperimentResult, spec: ModelSpec,
                         config: SimulationConfig) -> NormalityDiagnostic:
    """Variance of standardized errors against the asymptotic value.

    Standardizes each extrapolated-cell error by
    t_n = sqrt(k) * (n/k)**(-1/(2 eta) + 1/2) using the TRUE eta of the
    model (the asymptotic rate is a population statement; plugging in
    eta_hat would mix two error sources) and reports the ratio of the
    sample variance to the model's asymptotic variance.
    """
    eta = spec.eta
    n, k = config.n, config.k
    sigma2 = asymptotic_sigma2(spec)
    t_n = math.sqrt(k) * (n / k) ** (-1.0 / (2.0 * eta) + 0.5)
    cells = []
    for c in result.cells:
        if c.estimator != EXTRAPOLATED or c.skipped:
            continue
        scaled = t_n * c.errors
        variance = float(np.var(scaled, ddof=1)) if len(scaled) > 1 else 0.0
        cells.append(NormalityCell(p=c.p, d_n=k / (n * c.p), t_n=t_n,
                                   variance=variance, ratio=variance / sigma2))
    return NormalityDiagnostic(sigma2=sigma2, cells=tuple(cells))
