"""Exact combinatorics of the parabolic quantum Bruhat graph, quantum LS paths,
the quantum alcove model and Macdonald polynomials at t = 0."""

from .errors import (
    ConfigurationError,
    InvariantViolation,
    KRLabError,
    PreconditionError,
    ResourceError,
    UsageError,
)
from .rootdata import CartanType, RootSystem, build_root_system, pairing, two_rho_J

__all__ = [
    "CartanType",
    "ConfigurationError",
    "InvariantViolation",
    "KRLabError",
    "PreconditionError",
    "ResourceError",
    "RootSystem",
    "UsageError",
    "build_root_system",
    "pairing",
    "two_rho_J",
]
