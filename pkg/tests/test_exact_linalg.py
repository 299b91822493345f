import itertools
import math

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from klr.exact_linalg import (
    GF,
    QQ,
    LaurentSeries,
    coordinates,
    format_laurent,
    hermite_row_basis,
    kron,
    parse_domain,
    parse_laurent,
    product_geometric,
    quantum_integer,
    rank,
    rref,
    smith_normal_form,
    sparse_kernel,
    sparse_rank,
)

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    ncols = len(M[0])
    assert rank([[QQ(x) for x in r] for r in M], ncols, QQ) == sympy.Matrix(M).rank()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5]))
def test_rank_mod_p_matches_sympy(M, p):
    ncols = len(M[0])
    F = GF(p)
    expected = sympy.Matrix(M).applyfunc(lambda x: x % p)
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix.from_Matrix(expected).convert_to(sympy.GF(p))
    assert rank([[F(x) for x in r] for r in M], ncols, F) == dm.rank()


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_spans(M):
    ncols = len(M[0])
    R, pivots = rref([[QQ(x) for x in r] for r in M], ncols, QQ)
    R2, pivots2 = rref(R, ncols, QQ)
    assert pivots == pivots2
    assert [list(r) for r in R] == [list(r) for r in R2]
    assert len(pivots) == sympy.Matrix(M).rank()


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_sparse_kernel_is_kernel(M):
    ncols = len(M[0])
    rows = [{j: QQ(x) for j, x in enumerate(r) if x} for r in M]
    rows = [r for r in rows if r]
    if not rows:
        return
    ker = sparse_kernel(rows, ncols, QQ)
    assert len(ker) == ncols - sparse_rank(rows, ncols, QQ)
    for v in ker:
        for r in rows:
            assert sum(c * v[j] for j, c in r.items()) == 0


def test_coordinates_round_trip():
    basis = [[QQ(1), QQ(2), QQ(0)], [QQ(0), QQ(1), QQ(1)]]
    vec = [QQ(2), QQ(7), QQ(3)]
    (co,) = coordinates(basis, [vec], QQ)
    assert co == [2, 3]
    assert coordinates(basis, [[QQ(1), QQ(0), QQ(0)]], QQ) is None


def _determinantal_divisors(M):
    """gcd of the k x k minors, k = 1..rank (independent of any elimination)."""
    A = sympy.Matrix(M)
    m, n = A.shape
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, int(A.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        out.append(g)
    return out


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4))
def test_smith_form_matches_determinantal_divisors(M):
    factors = [abs(int(x)) for x in smith_normal_form(M).invariant_factors if x]
    divisors = _determinantal_divisors(M)
    assert len(factors) == len(divisors)
    prod = 1
    for f, d in zip(factors, divisors):
        prod *= f
        assert prod == d
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_hermite_basis_spans_same_lattice(M):
    ncols = len(M[0])
    H = hermite_row_basis(M, ncols)
    assert len(H) == sympy.Matrix(M).rank()
    # every original row is an integral combination of H
    for row in M:
        if not any(row):
            continue
        (co,) = coordinates([[QQ(x) for x in h] for h in H], [[QQ(x) for x in row]], QQ)
        assert all(QQ(c).denominator == 1 for c in co)


def test_kron_shape():
    A = [[QQ(1), QQ(2)], [QQ(3), QQ(4)]]
    B = [[QQ(0), QQ(1)]]
    K = kron(A, B, QQ)
    assert K == [[0, 1, 0, 2], [0, 3, 0, 4]]


def test_parse_domain():
    assert parse_domain("Q") == QQ
    assert parse_domain("GF(3)") == GF(3)
    assert parse_domain("F2").characteristic == 2


laurent_polys = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4).filter(bool), max_size=5)


@given(laurent_polys)
def test_format_parse_round_trip(c):
    assert parse_laurent(format_laurent(c)) == c


@given(laurent_polys, laurent_polys)
def test_laurent_product_commutes(a, b):
    A, B = LaurentSeries(a), LaurentSeries(b)
    assert (A * B) == (B * A)


@given(laurent_polys)
def test_bar_is_involution(a):
    A = LaurentSeries(a)
    assert A.bar().bar() == A
    assert (A + A.bar()).is_bar_invariant()


def test_quantum_integer():
    assert quantum_integer(3).coeffs == {-2: 1, 0: 1, 2: 1}
    assert quantum_integer(1).coeffs == {0: 1}


def test_geometric_product_counts_partitions():
    # 1/((1-q^2)(1-q^4)) counts partitions of n/2 into parts 1 and 2
    s = product_geometric([2, 4], 12)
    assert [s[d] for d in range(0, 13, 2)] == [1, 1, 2, 2, 3, 3, 4]
    assert s.exact_below == 12


def test_truncated_product_tracks_exactness():
    a = LaurentSeries.geometric(2, 6)
    b = LaurentSeries({-2: 1, 0: 1})
    prod = a * b
    assert prod.exact_below == 4
    assert [prod[d] for d in range(-2, 5)] == [1, 0, 2, 0, 2, 0, 2]
