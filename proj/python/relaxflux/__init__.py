"""Flux-relaxation solvers for viscous conservation laws."""

import os as _os

_data = _os.path.join(_os.path.dirname(__file__), "data")
if _os.path.isdir(_data):
    _os.environ.setdefault("RELAXFLUX_DATA_DIR", _data)

from ._relaxflux import (  # noqa: E402
    SolverError,
    blasius,
    burgers_exact,
    euler_exact_riemann,
    euler_star_state,
    observed_order,
    property_suite,
    run_config,
)

__all__ = [
    "SolverError",
    "blasius",
    "burgers_exact",
    "euler_exact_riemann",
    "euler_star_state",
    "observed_order",
    "property_suite",
    "run_config",
]
