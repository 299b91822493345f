"""Integral forms, reduction modulo p, decomposition and adjustment matrices, Ext windows."""
from .decomposition import (
    VERDICT,
    AdjustmentReport,
    LaurentMatrix,
    TriangularityError,
    adjustment_matrix,
    decomposition_matrix,
    multiplicities_by_generator,
    reduced_simple,
    simple_generator,
)
from .ext import ExtDegree, ExtWindow, TorsionError, TorsionReport, ext1_degree, ext1_window, torsion_report, torsion_reports
from .lattice import IntegralLattice, LatticeError, integral_form, reduce_mod_p

__all__ = [
    "AdjustmentReport", "ExtDegree", "ExtWindow", "IntegralLattice", "LatticeError",
    "LaurentMatrix", "TorsionError", "TorsionReport", "TriangularityError", "VERDICT",
    "adjustment_matrix", "decomposition_matrix", "ext1_degree", "ext1_window", "integral_form",
    "multiplicities_by_generator", "reduce_mod_p", "reduced_simple", "simple_generator",
    "torsion_report", "torsion_reports",
]
