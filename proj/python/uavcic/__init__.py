"""Multi-beam UAV uplink with cooperative interference cancellation."""

from ._core import (
    ConfigError,
    Error,
    comp_capacity,
    dbm_to_watts,
    dof_table,
    eval_surrogate,
    max_dof,
    optimize,
    parse_association,
    run_sca,
    sample_channels,
    theorem1_feasible,
    water_fill,
    watts_to_dbm,
)

__all__ = [
    "ConfigError",
    "Error",
    "comp_capacity",
    "dbm_to_watts",
    "dof_table",
    "eval_surrogate",
    "max_dof",
    "optimize",
    "parse_association",
    "run_sca",
    "sample_channels",
    "theorem1_feasible",
    "water_fill",
    "watts_to_dbm",
]
