from .enumerate import (
    ENUMERATION_GUARD,
    EnumSpec,
    SlotLayout,
    enumerate_ranked,
    enumerate_triples,
    exhaustive_count,
    full_length,
    partition_work,
    sample_slots,
    work_estimate,
)
from .verify import (
    ComparisonReport,
    Counterexample,
    VerificationReport,
    compare_solvers,
    evaluate_triple,
    verify_theorem,
)

__all__ = [
    "ENUMERATION_GUARD",
    "ComparisonReport",
    "Counterexample",
    "EnumSpec",
    "SlotLayout",
    "VerificationReport",
    "compare_solvers",
    "enumerate_ranked",
    "enumerate_triples",
    "evaluate_triple",
    "exhaustive_count",
    "full_length",
    "partition_work",
    "sample_slots",
    "verify_theorem",
    "work_estimate",
]
