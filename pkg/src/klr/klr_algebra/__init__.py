"""KLR algebras: normal-form rewriting, graded bases, iota and central elements."""
from .algebra import KLRAlgebra, WindowError, combinatorial_dim
from .central import (
    CentralityError,
    central_element,
    central_p,
    central_z,
    commutator_defects,
    hprime_basis,
)
from .closure import closure_graded_dims
from .element import KLRElement
from .permutations import act, lexmin_word, min_coset_reps


def multiply(a: KLRElement, b: KLRElement) -> KLRElement:
    return a * b


def iota(a: KLRElement) -> KLRElement:
    return a.iota()


def graded_basis(alg: KLRAlgebra, degree: int, left=None, right=None, dom=None, max_degree: int | None = None):
    """Normal-form monomials of ``degree`` as elements; ``max_degree`` enforces the enumeration window."""
    from ..exact_linalg import QQ

    if max_degree is not None and degree > max_degree:
        raise WindowError(f"degree {degree} is beyond the enumeration window [{alg.d_min}, {max_degree}]", degree)
    dom = dom or QQ
    return [KLRElement(alg, {k: 1}, dom) for k in alg.basis_keys(degree, left, right)]


__all__ = [
    "CentralityError", "KLRAlgebra", "KLRElement", "WindowError", "act", "central_element",
    "central_p", "central_z", "closure_graded_dims", "combinatorial_dim", "commutator_defects",
    "graded_basis", "hprime_basis", "iota", "lexmin_word", "min_coset_reps", "multiply",
]
