"""Formal characters: quantum shuffles and decomposition into simple characters."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from ..exact_linalg import QQ, LaurentSeries, sparse_kernel


def character_window(ch: Mapping) -> tuple[int, float]:
    """(lowest degree, degree through which ``ch`` is exact)."""
    los, his = [], []
    for s in ch.values():
        if s.coeffs:
            los.append(min(s.coeffs))
        his.append(s.exact_below if s.open_above else float("inf"))
    return (min(los) if los else 0), min(his, default=float("inf"))


def _interleavings(w1, w2, datum):
    """(word, degree shift) for every shuffle of w1 into w2."""
    n1, n2 = len(w1), len(w2)
    for pos in itertools.combinations(range(n1 + n2), n1):
        rest = [k for k in range(n1 + n2) if k not in pos]
        word = [None] * (n1 + n2)
        for k, p in enumerate(pos):
            word[p] = w1[k]
        for k, p in enumerate(rest):
            word[p] = w2[k]
        shift = -sum(datum.dot(w1[a], w2[b]) for a in range(n1) for b in range(n2) if pos[a] > rest[b])
        yield tuple(word), shift


def shuffle(datum, ch1: Mapping, ch2: Mapping, hi: int | None = None) -> dict:
    """Character of an induction product from the characters of its factors."""
    lo1, T1 = character_window(ch1)
    lo2, T2 = character_window(ch2)
    top = min(T1 + lo2, T2 + lo1)
    if hi is not None:
        top = min(top, hi)
    out: dict = {}
    for (w1, s1), (w2, s2) in itertools.product(ch1.items(), ch2.items()):
        for word, shift in _interleavings(w1, w2, datum):
            acc = out.setdefault(word, {})
            for d1, c1 in s1.coeffs.items():
                for d2, c2 in s2.coeffs.items():
                    d = d1 + d2 + shift
                    if d <= top:
                        acc[d] = acc.get(d, 0) + c1 * c2
    if top == float("inf"):
        return {w: LaurentSeries(c) for w, c in out.items() if any(c.values())}
    lo = min((d for c in out.values() for d, v in c.items() if v), default=0)
    return {w: LaurentSeries(c, min([lo] + list(c)), int(top), open_above=True) for w, c in out.items()}


@dataclass
class Decomposition:
    """Graded multiplicities of simple characters, certified through ``exact_below``."""

    multiplicities: dict  # label -> LaurentSeries
    exact_below: float

    def __getitem__(self, label) -> LaurentSeries:
        return self.multiplicities[label]


class DecompositionError(ValueError):
    pass


def decompose_character(ch: Mapping, simples: Mapping) -> Decomposition:
    """Write ``ch`` as sum_nu m_nu(q) ch L(nu) by a linear solve over shifted simple characters.

    ``simples`` maps labels to finite characters.  A multiplicity coefficient is
    reported only when every solution of the windowed system agrees on it.
    """
    lo, T = character_window(ch)
    finite = T == float("inf")
    top_ch = max((max(s.coeffs) for s in ch.values() if s.coeffs), default=lo)
    hi = top_ch if finite else int(T)
    words = sorted(set(ch) | {w for s in simples.values() for w in s})
    unknowns = []
    for label, sch in simples.items():
        degs = [d for s in sch.values() for d in s.coeffs]
        if not degs:
            continue
        slo = min(degs)
        for k in range(lo - slo, hi - slo + 1):
            unknowns.append((label, k))
    index = {u: j for j, u in enumerate(unknowns)}
    nv = len(unknowns)
    rows = []
    for w in words:
        target = ch.get(w)
        for d in range(lo - 1, hi + 1):
            row: dict = {}
            for (label, k), j in index.items():
                s = simples[label].get(w)
                if s is None:
                    continue
                c = s.coeffs.get(d - k, 0)
                if c:
                    row[j] = c
            rhs = target.coeffs.get(d, 0) if target is not None else 0
            if rhs:
                row[nv] = -rhs
            if row:
                rows.append(row)
    aug = sparse_kernel(rows, nv + 1, QQ)
    particular = next((v for v in aug if v[nv] != 0), None)
    if particular is None:
        raise DecompositionError("character is not a combination of the given simple characters in the window")
    particular = [x / particular[nv] for x in particular[:nv]]
    null = sparse_kernel([{j: c for j, c in r.items() if j < nv} for r in rows], nv, QQ) if nv else []
    undetermined = [j for j in range(nv) if any(v[j] != 0 for v in null)]
    exact = float("inf") if not undetermined else min(unknowns[j][1] for j in undetermined) - 1
    if not finite:
        exact = min(exact, hi)
    out = {}
    for label in simples:
        coeffs = {}
        for (lab, k), j in index.items():
            if lab == label and k <= exact:
                x = particular[j]
                if x.denominator != 1:
                    raise DecompositionError(f"non-integral multiplicity for {label} at q^{k}")
                if x:
                    coeffs[k] = int(x)
        if exact == float("inf"):
            out[label] = LaurentSeries(coeffs)
        else:
            ks = [k for lab, k in unknowns if lab == label] or [int(exact)]
            out[label] = LaurentSeries(coeffs, min(ks + list(coeffs)), int(exact), open_above=True)
    return Decomposition(out, exact)


def character_difference(a: Mapping, b: Mapping) -> dict:
    return {w: a.get(w, LaurentSeries.zero()) - b.get(w, LaurentSeries.zero()) for w in set(a) | set(b)}


def scale_character(ch: Mapping, poly: Mapping[int, int] | LaurentSeries) -> dict:
    p = poly if isinstance(poly, LaurentSeries) else LaurentSeries(dict(poly))
    return {w: p * s for w, s in ch.items()}
