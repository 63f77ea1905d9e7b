"""Simulation and tail analysis of BEKK-ARCH processes."""

from ._core import (
    BekkError,
    Spec,
    __version__,
    alpha_cross,
    angle_grid,
    classify,
    cluster_sizes,
    default_extremal_horizon,
    extremal_index_blocks,
    extremal_index_mc,
    fluctuation_slopes,
    gate_l1,
    gaussian_abs_moment,
    goldie_constant,
    hill,
    lyapunov_mc,
    moment_condition,
    predicted_fluctuation_slope,
    sample_cov,
    simulate,
    solve_alpha,
    solve_coeff,
    spectral_measure,
    tail_indices,
    threshold_constant,
    vsrv_norm,
)

__all__ = [
    "BekkError",
    "Spec",
    "__version__",
    "alpha_cross",
    "angle_grid",
    "classify",
    "cluster_sizes",
    "default_extremal_horizon",
    "extremal_index_blocks",
    "extremal_index_mc",
    "fluctuation_slopes",
    "gate_l1",
    "gaussian_abs_moment",
    "goldie_constant",
    "hill",
    "lyapunov_mc",
    "moment_condition",
    "predicted_fluctuation_slope",
    "sample_cov",
    "simulate",
    "solve_alpha",
    "solve_coeff",
    "spectral_measure",
    "tail_indices",
    "threshold_constant",
    "vsrv_norm",
]
