"""Kostant partitions, the bilexicographic order and minimal pairs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cartan import Root, root_str
from .orders import ConvexOrder


class FalsificationError(AssertionError):
    """A statement that must hold was found to fail on explicit data."""


@dataclass(frozen=True)
class KostantPartition:
    parts: tuple  # roots, weakly decreasing in the convex order

    @property
    def alpha(self) -> Root:
        return tuple(map(sum, zip(*self.parts)))

    def __len__(self) -> int:
        return len(self.parts)

    def grouped(self) -> list[tuple[Root, int]]:
        """[(root, multiplicity), ...] in order."""
        return [(b, len(list(g))) for b, g in itertools.groupby(self.parts)]

    def block_sizes(self) -> list[int]:
        return [sum(b) for b in self.parts]

    def label(self) -> str:
        out = []
        for b, m in self.grouped():
            out.append(root_str(b) + (f"^{m}" if m > 1 else ""))
        return "(" + ", ".join(out) + ")"

    def to_json(self) -> list:
        return [list(b) for b in self.parts]


def kostant_partitions(alpha: Sequence[int], order: ConvexOrder) -> list[KostantPartition]:
    """All Kostant partitions of ``alpha``, sorted decreasing in the bilex-compatible lex order."""
    alpha = tuple(alpha)
    roots = order.roots  # decreasing
    out: list[tuple] = []

    def rec(rest, start, cur):
        if not any(rest):
            out.append(tuple(cur))
            return
        for k in range(start, len(roots)):
            b = roots[k]
            if all(x <= y for x, y in zip(b, rest)):
                cur.append(b)
                rec(tuple(y - x for x, y in zip(b, rest)), k, cur)
                cur.pop()

    if any(x < 0 for x in alpha):
        raise ValueError("alpha must lie in Q+")
    rec(alpha, 0, [])
    kps = [KostantPartition(p) for p in out]
    kps.sort(key=lambda lam: [-order.key(b) for b in lam.parts])
    return kps


def _lex_cmp(a: Sequence[Root], b: Sequence[Root], order: ConvexOrder) -> int:
    for x, y in zip(a, b):
        if x != y:
            return -1 if order.lt(x, y) else 1
    return (len(a) > len(b)) - (len(a) < len(b))


def bilex_lt(lam: KostantPartition, mu: KostantPartition, order: ConvexOrder) -> bool:
    """lambda < mu: lambda <_lex mu on parts and lambda' >_lex mu' on reversed parts."""
    if lam == mu:
        return False
    first = _lex_cmp(lam.parts, mu.parts, order) < 0
    second = _lex_cmp(lam.parts[::-1], mu.parts[::-1], order) > 0
    return first and second


def bilex_le(lam, mu, order) -> bool:
    return lam == mu or bilex_lt(lam, mu, order)


@dataclass(frozen=True)
class MinimalPair:
    beta: Root
    gamma: Root
    p: int

    def to_json(self) -> dict:
        return {"beta": list(self.beta), "gamma": list(self.gamma), "p": self.p}


def root_string_p(order: ConvexOrder, beta: Root, gamma: Root) -> int:
    """Largest p with beta - p*gamma a root."""
    d = order.datum
    p = 0
    while True:
        cand = tuple(b - (p + 1) * g for b, g in zip(beta, gamma))
        if any(x < 0 for x in cand) or not d.is_root(cand):
            return p
        p += 1


def minimal_pairs(alpha: Root, order: ConvexOrder) -> list[MinimalPair]:
    """Minimal elements of {lambda in KP(alpha) : lambda > (alpha)}, ordered by the convex-order indices."""
    alpha = tuple(alpha)
    if not order.datum.is_root(alpha):
        raise ValueError(f"{root_str(alpha)} is not a positive root")
    if sum(alpha) < 2:
        return []
    kps = kostant_partitions(alpha, order)
    top = KostantPartition((alpha,))
    above = [lam for lam in kps if bilex_lt(top, lam, order)]
    minimal = [lam for lam in above if not any(bilex_lt(nu, lam, order) for nu in above if nu != lam)]
    out = []
    for lam in minimal:
        if len(lam.parts) != 2:
            raise FalsificationError(f"minimal element {lam.label()} above ({root_str(alpha)}) is not a pair")
        beta, gamma = lam.parts
        if not (order.lt(alpha, beta) and order.lt(gamma, alpha)):
            raise FalsificationError("minimal pair does not straddle alpha")
        out.append(MinimalPair(beta, gamma, root_string_p(order, beta, gamma)))
    out.sort(key=lambda mp: (-order.key(mp.beta), -order.key(mp.gamma)))
    return out


# --------------------------------------------------------------------------
# lambda-equivalence combinatorics


def _blocks(lam: KostantPartition) -> list[int]:
    """Block index of each position 0..n-1."""
    out = []
    for k, b in enumerate(lam.parts):
        out.extend([k] * sum(b))
    return out


def concatenated_words(lam: KostantPartition, order: ConvexOrder) -> set[tuple]:
    d = order.datum
    pieces = [d.words(b) for b in lam.parts]
    return {sum(ws, ()) for ws in itertools.product(*pieces)}


def act_on_word(w: Sequence[int], word: Sequence[int]) -> tuple:
    """Place permutation: (w.i)_{w(k)} = i_k; ``w`` is 0-based one-line."""
    out = [None] * len(word)
    for k, letter in enumerate(word):
        out[w[k]] = letter
    return tuple(out)


def lambda_equiv_witness(
    lam: KostantPartition, mu: KostantPartition, w: Sequence[int], order: ConvexOrder
) -> int | None:
    """Position r (1-based) with r ~_lam r+1 and w^{-1}(r) !~_mu w^{-1}(r+1).

    Returns ``None`` when no mu-word is mapped to a lam-word by ``w``
    (nothing to check).  Raises :class:`FalsificationError` if ``w`` is
    word-compatible but no such r exists.
    """
    if bilex_le(mu, lam, order):
        raise ValueError("hypothesis violated: need lambda not >= mu")
    lam_words = concatenated_words(lam, order)
    if not any(act_on_word(w, j) in lam_words for j in concatenated_words(mu, order)):
        return None
    bl, bm = _blocks(lam), _blocks(mu)
    winv = [0] * len(w)
    for k, v in enumerate(w):
        winv[v] = k
    for r in range(len(w) - 1):
        if bl[r] == bl[r + 1] and bm[winv[r]] != bm[winv[r + 1]]:
            return r + 1
    raise FalsificationError(f"no witness for {lam.label()} vs {mu.label()} at w={tuple(w)}")
