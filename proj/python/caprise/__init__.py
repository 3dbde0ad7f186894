"""Capillary rise models, scalings and a 2D VOF solver."""

from ._caprise import (
    CapriseError,
    DimensionlessNumbers,
    FluidPair,
    Geometry,
    auto_t_end,
    compare,
    crossover_cells,
    detect_peaks,
    dimensionless_numbers,
    height_correction,
    integrate,
    jurin_height,
    omega_suite,
    run_vof2d,
    scaling_units,
    stationary_height,
    step_counts,
    synth_params,
    timestep_limits,
)

__all__ = [
    "CapriseError",
    "DimensionlessNumbers",
    "FluidPair",
    "Geometry",
    "auto_t_end",
    "compare",
    "crossover_cells",
    "detect_peaks",
    "dimensionless_numbers",
    "height_correction",
    "integrate",
    "jurin_height",
    "omega_suite",
    "run_vof2d",
    "scaling_units",
    "stationary_height",
    "step_counts",
    "synth_params",
    "timestep_limits",
]
