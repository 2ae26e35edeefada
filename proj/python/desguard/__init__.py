"""Supervisory control of discrete-event systems under observation attacks."""

from ._core import (
    Error,
    InputError,
    NoWitnessError,
    PreconditionError,
    Problem,
    UnsupportedError,
)

__all__ = [
    "Error",
    "InputError",
    "NoWitnessError",
    "PreconditionError",
    "Problem",
    "UnsupportedError",
    "load",
]


def load(path):
    """Load a problem file."""
    return Problem.load(str(path))
