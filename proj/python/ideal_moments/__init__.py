"""Ramanujan sums and divisor moments over number fields."""

from ._core import (
    Field,
    avg_sigma,
    constants,
    inner_sum,
    moment_sums,
    ramanujan_sum_q,
    verify,
)

__all__ = [
    "Field",
    "avg_sigma",
    "constants",
    "inner_sum",
    "moment_sums",
    "ramanujan_sum_q",
    "verify",
]
