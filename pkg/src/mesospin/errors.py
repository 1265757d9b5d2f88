"""Exception types shared across the package."""

from __future__ import annotations


class ContractViolation(ValueError):
    """An input violates a documented precondition (shape, symmetry, domain)."""


class ConfigError(ValueError):
    """An experiment configuration field is invalid; message names the field."""


class NumericError(RuntimeError):
    """A numerical routine failed to meet its accuracy or convergence contract."""


class ClosureError(NumericError):
    """The generator does not close on the fluctuation observables."""
