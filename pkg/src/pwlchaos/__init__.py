"""Exact analysis of piecewise-linear interval maps: periods, covering chains,
crossing growth, and the depth-width bounds they imply for ReLU networks."""

from .pwl import (
    DEFAULT_PIECE_CAP,
    DomainError,
    Interval,
    PwlFunction,
    ResourceLimitExceeded,
    compose,
    count_crossings,
    evaluate,
    identity,
    image,
    iterate,
    solve_equals_identity,
    tent,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PIECE_CAP",
    "DomainError",
    "Interval",
    "PwlFunction",
    "ResourceLimitExceeded",
    "compose",
    "count_crossings",
    "evaluate",
    "identity",
    "image",
    "iterate",
    "solve_equals_identity",
    "tent",
]
