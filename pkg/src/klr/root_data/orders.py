"""Convex orders on positive roots, generated from reduced words of w0."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .cartan import CartanDatum, Root, root_str


def _apply_word(datum: CartanDatum, word: Sequence[int], beta: Root) -> Root:
    """s_{w_1} ... s_{w_k} (beta)."""
    for i in reversed(word):
        beta = datum.reflect(i, beta)
    return beta


def lexmin_longest_word(datum: CartanDatum) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of the longest element.

    Greedy: append the smallest i with w(alpha_i) > 0, i.e. l(w s_i) > l(w).
    """
    word: list[int] = []
    N = len(datum.positive_roots)
    while len(word) < N:
        for i in datum.index_set:
            if all(x >= 0 for x in _apply_word(datum, word, datum.simple_root(i))):
                word.append(i)
                break
        else:  # pragma: no cover - finite type always reaches w0
            raise RuntimeError("greedy reduced word got stuck")
    return tuple(word)


def roots_from_word(datum: CartanDatum, word: Sequence[int]) -> tuple[Root, ...]:
    """beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}); validates reducedness."""
    N = len(datum.positive_roots)
    if len(word) != N:
        raise ValueError(f"a reduced word of w0 has length {N}, got {len(word)}")
    if any(i not in datum.index_set for i in word):
        raise ValueError("word uses labels outside the index set")
    seq = []
    for k, i in enumerate(word):
        beta = _apply_word(datum, word[:k], datum.simple_root(i))
        if not all(x >= 0 for x in beta):
            raise ValueError("word is not reduced")
        seq.append(beta)
    if len(set(seq)) != N:
        raise ValueError("word is not reduced")
    return tuple(seq)


@dataclass(frozen=True)
class ConvexOrder:
    """Total order on R+; ``roots`` lists them from largest to smallest."""

    datum: CartanDatum
    roots: tuple
    word: tuple = field(default=())

    @classmethod
    def from_word(cls, datum: CartanDatum, word: Sequence[int] | None = None) -> "ConvexOrder":
        if word is None:
            word = lexmin_longest_word(datum)
        order = cls(datum, roots_from_word(datum, word), tuple(word))
        order.validate()
        return order

    @cached_property
    def _pos(self) -> dict:
        N = len(self.roots)
        return {beta: N - k for k, beta in enumerate(self.roots)}

    def key(self, beta: Root) -> int:
        """Larger key means larger root."""
        return self._pos[tuple(beta)]

    def lt(self, a: Root, b: Root) -> bool:
        return self.key(a) < self.key(b)

    def validate(self) -> None:
        """Brute-force convexity: gamma <= beta, gamma+beta a root => gamma <= gamma+beta <= beta."""
        d = self.datum
        if set(self.roots) != set(d.positive_roots):
            raise ValueError("order does not list every positive root exactly once")
        for g in self.roots:
            for b in self.roots:
                if self.key(g) <= self.key(b):
                    s = tuple(x + y for x, y in zip(g, b))
                    if d.is_root(s) and not (self.key(g) <= self.key(s) <= self.key(b)):
                        raise ValueError(
                            f"order is not convex at {root_str(g)} + {root_str(b)}"
                        )

    def describe(self) -> list[str]:
        return [root_str(b) for b in self.roots]

    def to_json(self) -> dict:
        return {"word": list(self.word), "roots_decreasing": [list(b) for b in self.roots]}
