"""Exact dense/sparse matrix routines over the coefficient domains.

Dense matrices are lists of rows.  Elimination is delegated to sympy's
``DomainMatrix`` (fraction-free over QQ, native over GF(p) and ZZ); the
helpers here only translate between our scalars and sympy's domains.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import (
    hermite_normal_form as _sympy_hnf,
    smith_normal_decomp as _sympy_snf_decomp,
)

from .scalars import QQ, ZZ, Domain

Matrix = list  # list[list[scalar]]


def zeros(m: int, n: int, dom: Domain) -> Matrix:
    z = dom.zero()
    return [[z] * n for _ in range(m)]


def identity(n: int, dom: Domain) -> Matrix:
    M = zeros(n, n, dom)
    for k in range(n):
        M[k][k] = dom.one()
    return M


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix, dom: Domain, inner: int | None = None) -> Matrix:
    if not A:
        return []
    if not B:
        # A is m x 0 ; result m x ncols(B) is unknown without shape -> caller passes
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[dom(sum(a * b for a, b in zip(row, col))) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence, dom: Domain) -> list:
    return [dom(sum(a * b for a, b in zip(row, v))) for row in A]


def scale(M: Matrix, c, dom: Domain) -> Matrix:
    return [[dom(c * x) for x in row] for row in M]


def add(A: Matrix, B: Matrix, dom: Domain) -> Matrix:
    return [[dom(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def kron(A: Matrix, B: Matrix, dom: Domain) -> Matrix:
    out = []
    for ra in A:
        for rb in B:
            out.append([dom(a * b) for a in ra for b in rb])
    return out


def is_zero_matrix(M: Matrix) -> bool:
    return all(x == 0 for row in M for x in row)


def _to_dm(rows: Matrix, ncols: int, dom: Domain) -> DomainMatrix:
    sd = dom.sympy_domain()
    conv = sd.convert
    data = [[conv(int(x)) if dom.characteristic else conv(x) for x in row] for row in rows]
    return DomainMatrix(data, (len(rows), ncols), sd)


def _from_dm(D: DomainMatrix, dom: Domain) -> Matrix:
    return [[dom.from_sympy(x) for x in row] for row in D.to_list()]


def rref(rows: Matrix, ncols: int, dom: Domain) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if not dom.is_field:
        raise ValueError("rref needs a field; use hermite_normal_form over ZZ")
    if not rows or ncols == 0:
        return [], ()
    R, piv = _to_dm(rows, ncols, dom).rref()
    out = _from_dm(R, dom)[: len(piv)]
    return out, tuple(piv)


def rank(rows: Matrix, ncols: int, dom: Domain) -> int:
    if not rows or ncols == 0:
        return 0
    if dom.is_field:
        return _to_dm(rows, ncols, dom).rank()
    return _to_dm(rows, ncols, QQ).rank()


def kernel_basis(M, dom: Domain | None = None, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel ``{v : M v = 0}``.

    ``M`` may be a :class:`SparseMatrix` (domain taken from it) or a dense
    list of rows together with ``dom`` and ``ncols``.
    """
    if isinstance(M, SparseMatrix):
        dom, ncols, M = M.domain, M.cols, M.to_dense()
    if dom is None or ncols is None:
        raise ValueError("dense input needs dom and ncols")
    if not dom.is_field:
        raise ValueError("kernel_basis needs a field; use smith_normal_form over ZZ")
    if ncols == 0:
        return []
    if not M:
        return identity(ncols, dom)
    R, piv = rref(M, ncols, dom)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [dom.zero()] * ncols
        v[f] = dom.one()
        for row, p in zip(R, piv):
            v[p] = dom(-row[f])
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence, dom: Domain, ncols: int) -> list | None:
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    if not A:
        return [dom.zero()] * ncols if all(x == 0 for x in b) else None
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug, ncols + 1, dom)
    if ncols in piv:
        return None
    x = [dom.zero()] * ncols
    for row, p in zip(R, piv):
        x[p] = row[ncols]
    return x


def coordinates(basis: Sequence[Sequence], vecs: Sequence[Sequence], dom: Domain) -> list[list] | None:
    """Coordinates of each vector in ``vecs`` w.r.t. the independent ``basis``.

    Returns ``None`` if some vector is outside the span.
    """
    k = len(basis)
    if not vecs:
        return []
    dim = len(vecs[0])
    if k == 0:
        return [[] for _ in vecs] if all(all(x == 0 for x in v) for v in vecs) else None
    rows = [[basis[j][r] for j in range(k)] + [v[r] for v in vecs] for r in range(dim)]
    R, piv = rref(rows, k + len(vecs), dom)
    if any(p >= k for p in piv):
        return None
    if len(piv) < k:
        raise ValueError("basis is not linearly independent")
    out = []
    for col in range(len(vecs)):
        out.append([R[j][k + col] for j in range(k)])
    return out


def independent_columns(vectors: Sequence[Sequence], dom: Domain) -> list[int]:
    """Indices of a maximal independent subset (greedy, left to right)."""
    if not vectors:
        return []
    dim = len(vectors[0])
    if dim == 0:
        return []
    rows = [[v[r] for v in vectors] for r in range(dim)]
    _, piv = rref(rows, len(vectors), dom)
    return list(piv)


def row_space_basis(vectors: Sequence[Sequence], dom: Domain, ncols: int) -> Matrix:
    R, _ = rref([list(v) for v in vectors], ncols, dom)
    return R


def _sdm(rows: Sequence[dict], ncols: int, dom: Domain) -> DomainMatrix:
    sd = dom.sympy_domain()
    conv = (lambda x: sd.convert(int(x))) if dom.characteristic else sd.convert
    data = {}
    for r, row in enumerate(rows):
        nz = {c: conv(v) for c, v in row.items() if v}
        if nz:
            data[r] = nz
    return DomainMatrix(data, (max(len(rows), 1), ncols), sd)


def sparse_kernel(rows: Sequence[dict], ncols: int, dom: Domain) -> list[list]:
    """Right kernel of a matrix given as a list of {column: value} rows."""
    if not dom.is_field:
        raise ValueError("sparse_kernel needs a field")
    if ncols == 0:
        return []
    if not any(rows):
        return identity(ncols, dom)
    N = _sdm(rows, ncols, dom).nullspace()
    return [[dom.from_sympy(x) for x in row] for row in N.to_list()]


def sparse_rank(rows: Sequence[dict], ncols: int, dom: Domain) -> int:
    if ncols == 0 or not any(rows):
        return 0
    return _sdm(rows, ncols, dom).rank()


# ----------------------------------------------------------------------------
# sparse interface


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: tuple  # sorted ((r, c, value), ...), no zeros, no duplicates
    domain: Domain

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if (r, c) in seen:
                raise ValueError(f"duplicate entry ({r}, {c})")
            if v == 0:
                raise ValueError("explicit zero stored")
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError("entry out of range")
            seen.add((r, c))

    @classmethod
    def from_dense(cls, M: Matrix, dom: Domain, cols: int | None = None) -> "SparseMatrix":
        ncols = cols if cols is not None else (len(M[0]) if M else 0)
        ent = tuple(
            (r, c, dom(x)) for r, row in enumerate(M) for c, x in enumerate(row) if dom(x) != 0
        )
        return cls(len(M), ncols, ent, dom)

    def to_dense(self) -> Matrix:
        M = zeros(self.rows, self.cols, self.domain)
        for r, c, v in self.entries:
            M[r][c] = v
        return M

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "domain": self.domain.name,
            "entries": [[r, c, self.domain.to_str(v)] for r, c, v in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict, dom: Domain) -> "SparseMatrix":
        ent = tuple((r, c, dom.parse(v)) for r, c, v in data["entries"])
        return cls(data["rows"], data["cols"], ent, dom)


# ----------------------------------------------------------------------------
# integer normal forms


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple[int, ...]
    transforms: tuple | None = None  # (U, V) with U M V = diag

    def torsion(self, p: int | None = None) -> tuple[int, ...]:
        fs = [d for d in self.invariant_factors if d > 1]
        if p is None:
            return tuple(fs)
        out = []
        for d in fs:
            e = 1
            while d % p == 0:
                d //= p
                e *= p
            if e > 1:
                out.append(e)
        return tuple(out)


def smith_normal_form(M, transforms: bool = False) -> SNFResult:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (zeros kept)."""
    if isinstance(M, SparseMatrix):
        if M.domain != ZZ:
            raise ValueError("smith_normal_form needs an integer matrix")
        nrows, ncols, dense = M.rows, M.cols, M.to_dense()
    else:
        dense = [[ZZ(x) for x in row] for row in M]
        nrows, ncols = len(dense), (len(dense[0]) if dense else 0)
    k = min(nrows, ncols)
    if k == 0:
        return SNFResult((), (identity(nrows, ZZ), identity(ncols, ZZ)) if transforms else None)
    S, U, V = _sympy_snf_decomp(_to_dm(dense, ncols, ZZ))
    S = S.to_list()
    diag = [abs(int(S[j][j])) for j in range(k)]
    # sympy lists nonzero factors first; keep zeros at the end of the chain
    nz = sorted(d for d in diag if d != 0)
    factors = tuple(nz + [0] * (k - len(nz)))
    tr = None
    if transforms:
        tr = ([[int(x) for x in r] for r in U.to_list()], [[int(x) for x in r] for r in V.to_list()])
    return SNFResult(factors, tr)


def hermite_row_basis(vectors: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Canonical Hermite basis of the Z-row-lattice spanned by ``vectors``."""
    vecs = [[int(x) for x in v] for v in vectors if any(x != 0 for x in v)]
    if not vecs or ncols == 0:
        return []
    # sympy's HNF acts on columns: column lattice of M^T == row lattice of M
    H = _sympy_hnf(_to_dm(transpose(vecs), len(vecs), ZZ)).to_list()
    cols = [[int(H[r][c]) for r in range(ncols)] for c in range(len(H[0]) if H else 0)]
    return [c for c in cols if any(cols_entry != 0 for cols_entry in c)]
