"""Permutations of {0..n-1} as one-line tuples, acting on words by place permutation."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, v in enumerate(w):
        out[v] = k
    return tuple(out)


def compose(u: Perm, w: Perm) -> Perm:
    """(u w)(k) = u(w(k))."""
    return tuple(u[x] for x in w)


def left_s(r: int, w: Perm) -> Perm:
    """s_r w: swap the values r and r+1."""
    return tuple(r + 1 if x == r else r if x == r + 1 else x for x in w)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def is_left_descent(r: int, w: Perm) -> bool:
    """l(s_r w) < l(w)."""
    return w.index(r) > w.index(r + 1)


@lru_cache(maxsize=None)
def lexmin_word(w: Perm) -> tuple[int, ...]:
    """Lexicographically minimal reduced word (r_1, ..., r_l), w = s_{r_1} ... s_{r_l}."""
    word = []
    while True:
        for r in range(len(w) - 1):
            if is_left_descent(r, w):
                word.append(r)
                w = left_s(r, w)
                break
        else:
            return tuple(word)


def from_word(word: Sequence[int], n: int) -> Perm:
    w = identity(n)
    for r in reversed(word):
        w = left_s(r, w)
    return w


def act(w: Perm, word: Sequence[int]) -> tuple:
    """Place permutation (w.i)_{w(k)} = i_k."""
    out = [0] * len(word)
    for k, letter in enumerate(word):
        out[w[k]] = letter
    return tuple(out)


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def min_coset_reps(sizes: tuple[int, ...]) -> tuple[Perm, ...]:
    """Minimal length representatives of S_n / (S_{n_1} x ... x S_{n_m}): increasing on blocks."""
    n = sum(sizes)
    out = []

    def rec(k, avail, images):
        if k == len(sizes):
            out.append(tuple(images))
            return
        for chosen in itertools.combinations(avail, sizes[k]):
            rest = [x for x in avail if x not in chosen]
            rec(k + 1, rest, images + list(chosen))

    rec(0, list(range(n)), [])
    return tuple(sorted(out, key=lambda w: (length(w), w)))


def coset_split(w: Perm, sizes: Sequence[int]) -> tuple[Perm, Perm]:
    """w = u0 u1 with u0 a minimal coset representative and u1 in the Young subgroup."""
    images = []
    start = 0
    for s in sizes:
        images.extend(sorted(w[start:start + s]))
        start += s
    u0 = tuple(images)
    u1 = compose(inverse(u0), w)
    return u0, u1


def block_parts(u1: Perm, sizes: Sequence[int]) -> list[Perm]:
    """Local permutations of a Young-subgroup element, one per block."""
    parts = []
    start = 0
    for s in sizes:
        parts.append(tuple(x - start for x in u1[start:start + s]))
        start += s
    return parts
