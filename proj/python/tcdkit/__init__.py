"""Transient change detection toolkit: FMA bounds, competitor stopping rules,
Monte-Carlo validation and sig-RAIM availability."""

from ._tcdkit import (
    ChangeModel,
    Detector,
    availability,
    chi2_cdf,
    chi2_quantile,
    cusum_threshold,
    detector_threshold,
    gaussian_raw_moment,
    general_change,
    hermite_poly,
    mean_change,
    norm_cdf,
    norm_quantile,
    pfa_bound,
    pmd_bound,
    run_detector,
    simulate_pfa,
    simulate_pmd,
    variance_change,
)

__all__ = [
    "ChangeModel",
    "Detector",
    "availability",
    "chi2_cdf",
    "chi2_quantile",
    "cusum_threshold",
    "detector_threshold",
    "gaussian_raw_moment",
    "general_change",
    "hermite_poly",
    "mean_change",
    "norm_cdf",
    "norm_quantile",
    "pfa_bound",
    "pmd_bound",
    "run_detector",
    "simulate_pfa",
    "simulate_pmd",
    "variance_change",
]
