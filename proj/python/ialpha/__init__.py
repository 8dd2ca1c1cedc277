"""Python bindings for the ialpha core library."""

from ._ialpha import (
    DataError,
    InvalidArgument,
    NumericError,
    beta,
    bmo_norm,
    carleson_constant,
    coefficients,
    compare,
    default_radii,
    fractional_derivative,
    generate,
    holder_seminorm,
    load_field,
    riesz_potential,
    save_field,
)

__all__ = [
    "DataError",
    "InvalidArgument",
    "NumericError",
    "beta",
    "bmo_norm",
    "carleson_constant",
    "coefficients",
    "compare",
    "default_radii",
    "fractional_derivative",
    "generate",
    "holder_seminorm",
    "load_field",
    "riesz_potential",
    "save_field",
]
