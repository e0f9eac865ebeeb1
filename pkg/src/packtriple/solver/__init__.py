"""Packing solvers: exact search, Hall matching, and the constructive packers."""

from .be import ReductionStep, be_reduction_step, constructive_pack_be
from .exact import (
    BRUTE_FORCE_MAX_N,
    Conflict,
    GuardError,
    backtrack_pack,
    brute_force_pack,
    find_conflicts,
    hall_matching,
)
from .lemma7 import ConstructionGap, constructive_lemma7
from .swap import constructive_ss_product, ss_product_applicable, swap_repair

__all__ = [
    "BRUTE_FORCE_MAX_N",
    "Conflict",
    "ConstructionGap",
    "GuardError",
    "ReductionStep",
    "backtrack_pack",
    "be_reduction_step",
    "brute_force_pack",
    "constructive_lemma7",
    "constructive_pack_be",
    "constructive_ss_product",
    "find_conflicts",
    "hall_matching",
    "ss_product_applicable",
    "swap_repair",
]
