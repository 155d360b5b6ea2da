"""Green functions of the Dirac equation in the magnetic-solenoid field."""

from ._msgf import (
    Field,
    MsgfError,
    NumericalError,
    ValidationError,
    bessel_j,
    checks,
    gamma_fn,
    kernel,
    laguerre_fn,
    nonrel_kernel,
    omega,
    propagator,
    scalar_kernel,
    verify,
    y_function,
)

__all__ = [
    "Field",
    "MsgfError",
    "NumericalError",
    "ValidationError",
    "bessel_j",
    "checks",
    "gamma_fn",
    "kernel",
    "laguerre_fn",
    "nonrel_kernel",
    "omega",
    "propagator",
    "scalar_kernel",
    "verify",
    "y_function",
]
