"""Extreme-value estimation of E[X | Y beyond its 1-p quantile].

The package estimates the expected value of one variable given that a
second, asymptotically independent variable exceeds a quantile far in
its tail, by extrapolating a within-sample tail average with estimated
tail and dependence indices.
"""

from .application import ReturnLevelQuery, k_scan, return_level_mes
from .data import DatasetConfig, LoadResult, load_paired_csv
from .errors import ArgumentError, DataError, DomainError, NumericError
from .estimators import (
    EstimatorConfig,
    MarginalExpectedShortfall,
    MesEstimate,
    assemble_mes,
    eta_estimate,
    hill_gamma,
    theta_emp,
    theta_kn,
    theta_p_estimate,
)
from .experiments import (
    BiasSummary,
    ExperimentResult,
    SimulationConfig,
    bias_summary,
    normality_diagnostic,
    run_simulation,
)
from .models import EXAMPLE1, EXAMPLE2, ModelSpec, model_by_name, replicate_rng, sample_model
from .oracle import (
    QuadratureSettings,
    asymptotic_sigma2,
    joint_survival,
    limit_constant,
    marginal_quantile,
    marginal_survival,
    true_theta_p,
)
from .ranks import PairedSample, compute_ranks, order_statistic, t_statistics

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BiasSummary",
    "DataError",
    "DatasetConfig",
    "DomainError",
    "EXAMPLE1",
    "EXAMPLE2",
    "EstimatorConfig",
    "ExperimentResult",
    "LoadResult",
    "MarginalExpectedShortfall",
    "MesEstimate",
    "ModelSpec",
    "NumericError",
    "PairedSample",
    "QuadratureSettings",
    "ReturnLevelQuery",
    "SimulationConfig",
    "assemble_mes",
    "asymptotic_sigma2",
    "bias_summary",
    "compute_ranks",
    "eta_estimate",
    "hill_gamma",
    "joint_survival",
    "k_scan",
    "limit_constant",
    "load_paired_csv",
    "marginal_quantile",
    "marginal_survival",
    "model_by_name",
    "normality_diagnostic",
    "order_statistic",
    "replicate_rng",
    "return_level_mes",
    "run_simulation",
    "sample_model",
    "t_statistics",
    "theta_emp",
    "theta_kn",
    "theta_p_estimate",
    "true_theta_p",
]
