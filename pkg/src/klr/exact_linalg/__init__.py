"""Exact scalars, sparse matrices, integer normal forms and Laurent windows."""
from .laurent import LaurentSeries, format_laurent, parse_laurent, product_geometric, quantum_integer
from .matrices import (
    SNFResult,
    SparseMatrix,
    coordinates,
    hermite_row_basis,
    identity,
    independent_columns,
    kernel_basis,
    kron,
    matmul,
    matvec,
    rank,
    row_space_basis,
    rref,
    smith_normal_form,
    solve,
    sparse_kernel,
    sparse_rank,
    transpose,
    zeros,
)
from .scalars import GF, QQ, ZZ, Domain, parse_domain

__all__ = [
    "Domain", "GF", "QQ", "ZZ", "parse_domain",
    "LaurentSeries", "format_laurent", "parse_laurent", "product_geometric", "quantum_integer",
    "SNFResult", "SparseMatrix", "coordinates", "hermite_row_basis", "identity",
    "independent_columns", "kernel_basis", "kron", "matmul", "matvec", "rank",
    "row_space_basis", "rref", "smith_normal_form", "solve", "sparse_kernel", "sparse_rank", "transpose", "zeros",
]
