"""Cuspidal simples, standard modules and the verification suites built on them."""
from .construct import (
    ConstructionError,
    delta_from_z,
    delta_tower,
    induced_presentation,
    nonsplit_extension,
)
from .family import StandardFamily
from .verify import (
    EndRingReport,
    FreenessReport,
    PairReport,
    TheoremAReport,
    end_ring_expectation,
    verify_freeness,
    verify_theorem_A,
    verify_theorem_B,
)

__all__ = [
    "ConstructionError", "EndRingReport", "FreenessReport", "PairReport", "StandardFamily",
    "TheoremAReport", "delta_from_z", "delta_tower", "end_ring_expectation", "induced_presentation",
    "nonsplit_extension", "verify_freeness", "verify_theorem_A", "verify_theorem_B",
]
