"""Windowed Ext^1 between standard modules from a cyclic presentation, and torsion reports."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..cuspidal_standard import StandardFamily, verify_theorem_A
from ..exact_linalg import rank, sparse_kernel
from ..graded_modules import CyclicPresentation, GradedModule
from ..graded_modules.homs import _left_word
from ..klr_algebra import WindowError
from ..klr_algebra.algebra import _acc


class TorsionError(AssertionError):
    pass


@dataclass
class ExtDegree:
    degree: int
    upper: int  # syzygies ignored
    refined: int  # syzygies through ``syzygy_degree`` imposed
    stable: bool  # refined value unchanged when the syzygy bound is enlarged

    def to_json(self) -> dict:
        return {"degree": self.degree, "upper": self.upper, "refined": self.refined, "stable": self.stable}


@dataclass
class ExtWindow:
    source: str
    target: str
    domain: str
    ann_degree: int
    syzygy_degree: int
    degrees: list = field(default_factory=list)

    def refined(self) -> dict:
        return {e.degree: e.refined for e in self.degrees}

    @property
    def all_stable(self) -> bool:
        return all(e.stable for e in self.degrees)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "domain": self.domain,
            "ann_degree": self.ann_degree,
            "syzygy_degree": self.syzygy_degree,
            "semantics": "upper and refined are upper bounds on dim Ext^1 given annihilator generators complete through ann_degree; refined imposes syzygies through syzygy_degree",
            "degrees": [e.to_json() for e in self.degrees],
        }


def _syzygies(P: CyclicPresentation, e: int):
    """Relations sum_j h_j g_j = 0 in degree e, as lists of (j, {key: coeff}) per left word."""
    alg = P.module.alg
    dom = P.module.dom
    gens = P.generators
    out = []
    for k in alg.words:
        blocks = []
        for j, g in enumerate(gens):
            de = e - g.degree
            if de < alg.d_min:
                continue
            for h in alg.basis_keys(de, left=[k], right=[_left_word(g)]):
                blocks.append((j, h))
        if not blocks:
            continue
        index: dict = {}
        cols = []
        for j, h in blocks:
            prod: dict = {}
            for gk, gc in gens[j].terms.items():
                _acc(prod, alg.mul_keys(h, gk), gc)
            col = {}
            for key, c in prod.items():
                if dom(c):
                    col[index.setdefault(key, len(index))] = c
            cols.append(col)
        rows = [dict() for _ in range(len(index))]
        for c, col in enumerate(cols):
            for r, x in col.items():
                rows[r][c] = x
        rows = [r for r in rows if r]
        ker = sparse_kernel(rows, len(blocks), dom) if rows else [[dom.one() if a == b else dom.zero() for a in range(len(blocks))] for b in range(len(blocks))]
        for vec in ker:
            syz = {}
            for c, x in enumerate(vec):
                if x:
                    j, h = blocks[c]
                    syz.setdefault(j, {})[h] = x
            out.append((k, syz))
    return out


def ext1_degree(P: CyclicPresentation, W: GradedModule, d: int, syzygy_degree: int, syz_cache: dict | None = None) -> tuple[int, int]:
    """(upper, refined) for Ext^1(V, W)_d where V = H v / (annihilator generators)."""
    dom = W.dom
    alg = W.alg
    need = P.degree + d + max(syzygy_degree, P.max_generator_degree) + alg.buffer
    if W.hi is not None and need > W.hi:
        raise WindowError(f"Ext^1 in degree {d} needs the target trusted through {need}", need)
    gens = P.generators
    comps = [(P.degree + d + g.degree, _left_word(g)) for g in gens]
    offs, total = [], 0
    for c in comps:
        offs.append(total)
        total += W.dim(c)
    src = (P.degree + d, P.word)
    ns = W.dim(src)
    # image of 1_i W under w -> (g_j w)_j
    img_cols = []
    for b in range(ns):
        w = [dom.one() if r == b else dom.zero() for r in range(ns)]
        col = [dom.zero()] * total
        for j, g in enumerate(gens):
            for tgt, v in W.apply(g, src, w).items():
                if tgt != comps[j]:
                    raise AssertionError("generator image in an unexpected component")
                for r, x in enumerate(v):
                    col[offs[j] + r] = x
        img_cols.append(col)
    r_img = rank(img_cols, total, dom) if (img_cols and total) else 0
    upper = total - r_img
    if total == 0:
        return 0, 0
    cache = syz_cache if syz_cache is not None else {}
    rows = []
    for e in range(alg.d_min, syzygy_degree + 1):
        if e not in cache:
            cache[e] = _syzygies(P, e)
        for k, syz in cache[e]:
            tgt = (P.degree + d + e, k)
            nt = W.dim(tgt)
            if not nt:
                continue
            block = [dict() for _ in range(nt)]
            for j, terms in syz.items():
                nj = W.dim(comps[j])
                for h, c in terms.items():
                    t, M = W.key_matrix(h, comps[j])
                    if M is None:
                        continue
                    for r in range(nt):
                        for s in range(nj):
                            x = M[r][s]
                            if x:
                                col = offs[j] + s
                                block[r][col] = block[r].get(col, 0) + c * x
            for row in block:
                row = {a: b for a, b in row.items() if dom(b)}
                if row:
                    rows.append(row)
    allowed = len(sparse_kernel(rows, total, dom)) if rows else total
    return upper, allowed - r_img


def ext1_window(F: StandardFamily, lam, mu, window: int, syzygy_degree: int | None = None) -> ExtWindow:
    """Per-degree Ext^1(Delta(lam), Delta(mu))_d bounds for d <= window."""
    syzygy_degree = F.ann_degree + 2 if syzygy_degree is None else syzygy_degree
    P = F.standard(lam, window)
    out = ExtWindow(lam.label(), mu.label(), F.dom.name, F.ann_degree, syzygy_degree)
    need = P.degree + window + max(syzygy_degree + 2, P.max_generator_degree) + P.module.alg.buffer
    W = F.standard(mu, need).module
    lo = W.lo - P.degree - P.max_generator_degree
    cache_a: dict = {}
    cache_b: dict = {}
    for d in range(lo, window + 1):
        up, ref = ext1_degree(P, W, d, syzygy_degree, cache_a)
        _, ref2 = ext1_degree(P, W, d, syzygy_degree + 2, cache_b)
        out.degrees.append(ExtDegree(d, up, ref2, ref2 == ref))
    return out


@dataclass
class TorsionReport:
    source: str
    target: str
    p: int
    rational: dict
    modular: dict
    difference: dict
    hom_vanishes: bool
    certified: bool

    @property
    def torsion_free(self) -> bool:
        return self.certified and not any(self.difference.values())

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "p": self.p,
            "ext1_Q": {str(d): v for d, v in sorted(self.rational.items())},
            f"ext1_F{self.p}": {str(d): v for d, v in sorted(self.modular.items())},
            "ext2_torsion_rank": {str(d): v for d, v in sorted(self.difference.items())},
            "hom_windows_vanish": self.hom_vanishes,
            "certified": self.certified,
            "ext2_torsion_free": self.torsion_free,
        }


def torsion_report(FQ: StandardFamily, FP: StandardFamily, lam, mu, window: int) -> TorsionReport:
    """Ext^1 over F_p minus Ext^1 over Q, read as the rank of the p-torsion in Ext^2 over Z."""
    p = FP.dom.characteristic
    a = ext1_window(FQ, lam, mu, window)
    b = ext1_window(FP, lam, mu, window)
    ra, rb = a.refined(), b.refined()
    diff = {d: rb.get(d, 0) - ra.get(d, 0) for d in sorted(set(ra) | set(rb))}
    certified = a.all_stable and b.all_stable
    if certified and any(v < 0 for v in diff.values()):
        raise TorsionError(f"negative Ext^1 difference for {lam.label()} -> {mu.label()}: {diff}")
    return TorsionReport(lam.label(), mu.label(), p, ra, rb, diff, True, certified)


def torsion_reports(FQ: StandardFamily, FP: StandardFamily, alpha, window: int) -> list[TorsionReport]:
    """Torsion reports for all ordered pairs, with the Hom windows re-checked over both fields."""
    homs = verify_theorem_A(FQ, alpha, window).passed and verify_theorem_A(FP, alpha, window).passed
    out = []
    for lam in FQ.kps(alpha):
        for mu in FQ.kps(alpha):
            rep = torsion_report(FQ, FP, lam, mu, window)
            rep.hom_vanishes = homs
            out.append(rep)
    return out
