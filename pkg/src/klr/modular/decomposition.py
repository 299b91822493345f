"""Decomposition and adjustment matrices over Laurent polynomials."""
from __future__ import annotations

from dataclasses import dataclass

from ..cuspidal_standard import StandardFamily
from ..exact_linalg import GF, QQ, format_laurent
from ..graded_modules import decompose_character
from ..root_data import bilex_lt
from .lattice import integral_form, reduce_mod_p

VERDICT = "James' Conjecture has positive solution"


class TriangularityError(AssertionError):
    pass


@dataclass
class LaurentMatrix:
    labels: list
    entries: dict  # (row label, col label) -> {deg: coeff}
    field: str

    def get(self, a, b) -> dict:
        return self.entries.get((a, b), {})

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        out = {}
        for a in self.labels:
            for c in other.labels:
                acc: dict = {}
                for b in self.labels:
                    for d1, x in self.get(a, b).items():
                        for d2, y in other.get(b, c).items():
                            acc[d1 + d2] = acc.get(d1 + d2, 0) + x * y
                acc = {d: v for d, v in acc.items() if v}
                if acc:
                    out[(a, c)] = acc
        return LaurentMatrix(self.labels, out, other.field)

    def is_identity(self) -> bool:
        return all(self.get(a, b) == ({0: 1} if a == b else {}) for a in self.labels for b in self.labels)

    def bar_invariant(self) -> bool:
        return all(all(v.get(-d, 0) == c for d, c in v.items()) for v in self.entries.values())

    def to_rows(self) -> list[list[str]]:
        return [[format_laurent(self.get(a, b)) for b in self.labels] for a in self.labels]

    def to_csv(self) -> str:
        lines = ["," + ",".join(self.labels)]
        for a, row in zip(self.labels, self.to_rows()):
            lines.append(",".join([a] + [f'"{x}"' if "," in x else x for x in row]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"field": self.field, "labels": self.labels, "rows": self.to_rows()}


def _field_name(dom) -> str:
    return "Q" if dom == QQ else f"F{dom.characteristic}"


def _check_unitriangular(D: LaurentMatrix, kps, order) -> None:
    by_label = {lam.label(): lam for lam in kps}
    for a in D.labels:
        if D.get(a, a) != {0: 1}:
            raise TriangularityError(f"diagonal entry at {a} is {format_laurent(D.get(a, a))}")
        for b in D.labels:
            if a != b and D.get(a, b) and not bilex_lt(by_label[b], by_label[a], order):
                raise TriangularityError(f"entry ({a}, {b}) is non-zero but {b} is not below {a}")


def decomposition_matrix(F: StandardFamily, alpha) -> LaurentMatrix:
    """Row lambda holds the graded multiplicities of the simples in the reduced standard Dbar(lambda)."""
    kps = F.kps(alpha)
    labels = [lam.label() for lam in kps]
    simples = {lam.label(): F.simple(lam).character() for lam in kps}
    entries = {}
    for lam in kps:
        dec = decompose_character(F.reduced_standard(lam).character(), simples)
        if dec.exact_below != float("inf"):
            raise TriangularityError(f"decomposition of {lam.label()} is not determined")
        for b, s in dec.multiplicities.items():
            if s.coeffs:
                entries[(lam.label(), b)] = dict(s.coeffs)
    D = LaurentMatrix(labels, entries, _field_name(F.dom))
    _check_unitriangular(D, kps, F.order)
    return D


@dataclass
class AdjustmentReport:
    alpha: tuple
    p: int
    D_char0: LaurentMatrix
    D_charp: LaurentMatrix
    A: LaurentMatrix
    identity_holds: bool

    @property
    def verdict(self) -> str:
        if self.A.is_identity():
            return VERDICT
        return f"adjustment matrix is not the identity for p={self.p}"

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "p": self.p,
            "D_Q": self.D_char0.to_json(),
            f"D_F{self.p}": self.D_charp.to_json(),
            "A": self.A.to_json(),
            "DF_equals_DK_A": self.identity_holds,
            "A_bar_invariant": self.A.bar_invariant(),
            "A_is_identity": self.A.is_identity(),
            "verdict": self.verdict,
        }


def reduced_simple(FQ: StandardFamily, lam, p: int, generator: str = "lowest"):
    """Reduction modulo p of a Z-form of L(lam)."""
    L = FQ.simple(lam)
    comp, vec = simple_generator(L, generator)
    lat = integral_form(L, comp, vec)
    return reduce_mod_p(lat, p), lat


def simple_generator(L, which: str = "lowest"):
    """A generating vector of a simple module: the first basis vector of the lowest component,
    or the sum of the basis vectors of the highest one."""
    comps = L.comps()
    if which == "lowest":
        c = comps[0]
        v = [L.dom.zero()] * L.dim(c)
        v[0] = L.dom.one()
    elif which == "highest":
        c = comps[-1]
        v = [L.dom.one()] * L.dim(c)
    else:
        raise ValueError(which)
    return c, v


def adjustment_matrix(alpha, p: int, FQ: StandardFamily, FP: StandardFamily | None = None, generator: str = "lowest") -> AdjustmentReport:
    if FP is None:
        FP = StandardFamily(FQ.datum, FQ.order, GF(p), FQ.ann_degree, FQ.method)
    kps = FQ.kps(alpha)
    labels = [lam.label() for lam in kps]
    simples_p = {lam.label(): FP.simple(lam).character() for lam in kps}
    entries = {}
    for lam in kps:
        red, _ = reduced_simple(FQ, lam, p, generator)
        dec = decompose_character(red.character(), simples_p)
        for b, s in dec.multiplicities.items():
            if s.coeffs:
                entries[(lam.label(), b)] = dict(s.coeffs)
    A = LaurentMatrix(labels, entries, f"F{p}")
    _check_unitriangular(A, kps, FQ.order)
    if not A.bar_invariant():
        raise TriangularityError("adjustment matrix has entries that are not bar-invariant")
    DK = decomposition_matrix(FQ, alpha)
    DF = decomposition_matrix(FP, alpha)
    prod = DK @ A
    holds = all(prod.get(a, b) == DF.get(a, b) for a in labels for b in labels)
    if not holds:
        raise TriangularityError("D^F differs from D^K A")
    return AdjustmentReport(tuple(alpha), p, DK, DF, A, holds)


def multiplicities_by_generator(FQ: StandardFamily, lam, p: int, FP: StandardFamily) -> dict:
    """Decompositions of two reductions of L(lam) built from different generators."""
    alpha = tuple(sum(x) for x in zip(*lam.parts))
    simples_p = {mu.label(): FP.simple(mu).character() for mu in FP.kps(alpha)}
    out = {}
    for which in ("lowest", "highest"):
        red, _ = reduced_simple(FQ, lam, p, which)
        dec = decompose_character(red.character(), simples_p)
        out[which] = {b: dict(s.coeffs) for b, s in dec.multiplicities.items() if s.coeffs}
    return out

