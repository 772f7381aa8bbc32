"""LCS against periodic words via frog dynamics."""

from ._core import (
    Error,
    UsageError,
    delta,
    delta_experiment,
    estimate_gamma_cs,
    estimate_speeds,
    gamma,
    lcs,
    lcs_heuristic,
    lcs_periodic,
    margins,
    run_cli,
    speeds,
    tau,
)

__all__ = [
    "Error",
    "UsageError",
    "delta",
    "delta_experiment",
    "estimate_gamma_cs",
    "estimate_speeds",
    "gamma",
    "lcs",
    "lcs_heuristic",
    "lcs_periodic",
    "margins",
    "run_cli",
    "speeds",
    "tau",
]
