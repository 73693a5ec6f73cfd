"""Exact test sets and augmentation for mixed-integer programs in standard form."""

__version__ = "0.1.0"

from .instance import MIPInstance, MixedVec, make_instance, parse_instance, serialize_instance
from .testsets import build_g_ab, build_g_star, build_t_star, lift
from .solver import augment, build_finite_test_set, completion_procedure, find_initial_solution, solve_slice_lp

__all__ = [
    "MIPInstance",
    "MixedVec",
    "make_instance",
    "parse_instance",
    "serialize_instance",
    "build_g_ab",
    "build_g_star",
    "build_t_star",
    "lift",
    "augment",
    "build_finite_test_set",
    "completion_procedure",
    "find_initial_solution",
    "solve_slice_lp",
]
