"""Distinguished central elements and the H' basis for simply-laced types."""
from __future__ import annotations

import itertools
from typing import Sequence

from ..exact_linalg import QQ, Domain
from .algebra import KLRAlgebra
from .element import KLRElement


class CentralityError(AssertionError):
    pass


def colored_symmetric(alg: KLRAlgebra, color: int, kind: str, k: int, dom: Domain = QQ) -> KLRElement:
    """sum_j f(x_p : j_p = color) 1_j with f = e_k (kind 'e') or p_k (kind 'p')."""
    n = alg.n
    terms = {}
    for j in alg.words:
        pos = [p for p in range(n) if j[p] == color]
        if kind == "p":
            monos = []
            for p in pos:
                e = [0] * n
                e[p] = k
                monos.append(tuple(e))
        elif kind == "e":
            monos = []
            for subset in itertools.combinations(pos, k):
                e = [0] * n
                for p in subset:
                    e[p] = 1
                monos.append(tuple(e))
        else:
            raise ValueError("kind must be 'e' or 'p'")
        for e in monos:
            key = (tuple(range(n)), e, j)
            terms[key] = terms.get(key, 0) + 1
    return KLRElement(alg, terms, dom)


def central_z(alg: KLRAlgebra, first_letter: int | None = None, dom: Domain = QQ) -> KLRElement:
    """z = sum_j (sum_{p : j_p = i_1} x_p) 1_j, central of degree 2 (equal d_i on the support)."""
    support = [i for i in alg.datum.index_set if alg.alpha[i - 1] > 0]
    ds = {alg.datum.d(i) for i in support}
    if len(ds) > 1:
        raise ValueError("z needs equal symmetrisers on the support of alpha (inhomogeneous otherwise)")
    if first_letter is None:
        first_letter = support[0]
    if alg.alpha[first_letter - 1] == 0:
        raise ValueError("first letter must lie in the support of alpha")
    if dom(alg.alpha[first_letter - 1]) == 0:
        raise ValueError(f"a_{first_letter} vanishes in {dom.name}")
    return colored_symmetric(alg, first_letter, "p", 1, dom)


def central_p(alg: KLRAlgebra, i: int, dom: Domain = QQ) -> KLRElement:
    """p_{i,alpha} = sum_j (prod_{r : j_r = i} x_r) 1_j."""
    a = alg.alpha[i - 1]
    if a == 0:
        raise ValueError(f"{i} is not in the support of alpha")
    return colored_symmetric(alg, i, "e", a, dom)


def generators(alg: KLRAlgebra, dom: Domain = QQ) -> list[KLRElement]:
    gens = []
    for j in alg.words:
        gens.append(KLRElement.idempotent(alg, j, dom))
        for t in range(alg.n):
            gens.append(KLRElement.generator(alg, ("x", t), j, dom))
        for r in range(alg.n - 1):
            gens.append(KLRElement.generator(alg, ("t", r), j, dom))
    return gens


def commutator_defects(elem: KLRElement) -> list[KLRElement]:
    """Nonzero [elem, g] over all generators g 1_j; empty means central."""
    out = []
    for g in generators(elem.alg, elem.dom):
        c = elem * g - g * elem
        if not c.is_zero():
            out.append(c)
    return out


def central_element(alg: KLRAlgebra, kind: str, arg=None, dom: Domain = QQ, certify: bool = True) -> KLRElement:
    """``kind`` in {'z', 'p', 'power', 'elementary'}; ``arg`` is the letter (and degree k for the last two)."""
    if kind == "z":
        elem = central_z(alg, arg, dom)
    elif kind == "p":
        elem = central_p(alg, arg, dom)
    elif kind in ("power", "elementary"):
        color, k = arg
        elem = colored_symmetric(alg, color, "p" if kind == "power" else "e", k, dom)
    else:
        raise ValueError(f"unknown central element kind {kind!r}")
    if certify and commutator_defects(elem):
        raise CentralityError(f"{kind} element is not central")
    return elem


def _diff_power_poly(n: int, ms: Sequence[int]) -> dict:
    """Expansion of prod_r (x_r - x_{r+1})^{m_r} as exponent tuple -> int."""
    poly = {tuple([0] * n): 1}
    for r, m in enumerate(ms):
        for _ in range(m):
            nxt: dict = {}
            for e, c in poly.items():
                for t, s in ((r, 1), (r + 1, -1)):
                    e2 = list(e)
                    e2[t] += 1
                    e2 = tuple(e2)
                    nxt[e2] = nxt.get(e2, 0) + s * c
            poly = {e: c for e, c in nxt.items() if c}
    return poly


def hprime_basis(alg: KLRAlgebra, degree: int, dom: Domain = QQ) -> list[KLRElement]:
    """Monomials (x_1-x_2)^{m_1}...(x_{n-1}-x_n)^{m_{n-1}} tau_w 1_i of the given degree."""
    if not alg.datum.simply_laced:
        raise ValueError("H' basis is only defined for simply-laced types")
    from .algebra import _exponents
    from .permutations import all_perms, lexmin_word

    n = alg.n
    out = []
    for i in alg.words:
        for w in sorted(all_perms(n), key=lambda w: (len(lexmin_word(w)), lexmin_word(w))):
            rest = degree - alg.deg_tau(w, i)
            if rest < 0 or rest % 2:
                continue
            for ms in _exponents([2] * (n - 1), rest):
                lin = {}
                for e, c in _diff_power_poly(n, ms).items():
                    for k, v in alg.xmono_apply(e, {(w, tuple([0] * n), i): 1}).items():
                        lin[k] = lin.get(k, 0) + c * v
                out.append(KLRElement(alg, lin, dom))
    return out
