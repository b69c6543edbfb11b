"""Exact cut and project model sets, their hulls and Ellis semigroups."""

from ._core import (
    Error,
    InvariantViolation,
    Model,
    ParseError,
    ValidationError,
    presets,
    run_cli,
)

__all__ = [
    "Error",
    "InvariantViolation",
    "Model",
    "ParseError",
    "ValidationError",
    "presets",
    "run_cli",
]
