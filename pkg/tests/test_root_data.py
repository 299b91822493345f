import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klr.root_data import (
    CartanDatum,
    ConvexOrder,
    bilex_lt,
    kostant_partitions,
    lexmin_longest_word,
    minimal_pairs,
    root_str,
)

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]
ROOT_COUNTS = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6}


@pytest.mark.parametrize("label", TYPES)
def test_positive_root_counts(label):
    assert len(CartanDatum.parse(label).positive_roots) == ROOT_COUNTS[label]


@pytest.mark.parametrize("label", TYPES)
def test_longest_word_length(label):
    datum = CartanDatum.parse(label)
    assert len(lexmin_longest_word(datum)) == ROOT_COUNTS[label]


def test_cartan_matrix_b2():
    datum = CartanDatum.parse("B2")
    assert datum.cartan_matrix == ((2, -1), (-2, 2))
    assert (datum.d(1), datum.d(2)) == (2, 1)
    assert datum.eps(1, 2) == 1 and datum.eps(2, 1) == -1


def test_bad_label():
    with pytest.raises(ValueError):
        CartanDatum.parse("Q7")


def _braid_length(datum, i, j):
    prod = datum.c(i, j) * datum.c(j, i)
    return {0: 2, 1: 3, 2: 4, 3: 6}[prod]


def random_reduced_word(datum, rng, steps=30):
    """Random reduced word of w0 reached from the lexmin one by braid moves."""
    word = list(lexmin_longest_word(datum))
    for _ in range(steps):
        moves = []
        for start in range(len(word)):
            for j in datum.index_set:
                i = word[start]
                if i == j:
                    continue
                m = _braid_length(datum, i, j)
                seg = word[start:start + m]
                if seg == [i, j] * (m // 2) + [i] * (m % 2):
                    moves.append((start, m, j))
        if not moves:
            break
        start, m, j = rng.choice(moves)
        i = word[start]
        word[start:start + m] = [j, i] * (m // 2) + [j] * (m % 2)
    return tuple(word)


def _convex(order):
    datum = order.datum
    for a, b in itertools.permutations(order.roots, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if datum.is_root(s):
            lo, hi = sorted((a, b), key=order.key)
            if not (order.key(lo) < order.key(s) < order.key(hi)):
                return False
    return True


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A3", "B2", "B3", "C3", "G2"]), st.integers(0, 10**6))
def test_orders_from_reduced_words_are_convex(label, seed):
    datum = CartanDatum.parse(label)
    word = random_reduced_word(datum, random.Random(seed))
    order = ConvexOrder.from_word(datum, word)
    assert _convex(order)
    assert sorted(order.roots) == sorted(datum.positive_roots)


def test_non_reduced_word_rejected():
    datum = CartanDatum.parse("A2")
    with pytest.raises(ValueError):
        ConvexOrder.from_word(datum, (1, 1, 2))


def test_default_orders():
    a2 = ConvexOrder.from_word(CartanDatum.parse("A2"))
    assert a2.describe() == ["a1", "a1+a2", "a2"]
    b2 = ConvexOrder.from_word(CartanDatum.parse("B2"))
    assert b2.describe() == ["a1", "a1+a2", "a1+2a2", "a2"]


def _kostant_count(datum, alpha):
    """Number of multisets of positive roots summing to alpha (plain recursion)."""
    roots = sorted(datum.positive_roots)

    def rec(rest, k):
        if not any(rest):
            return 1
        if k == len(roots):
            return 0
        total = 0
        r = roots[k]
        cur = list(rest)
        while all(x >= 0 for x in cur):
            total += rec(tuple(cur), k + 1)
            cur = [x - y for x, y in zip(cur, r)]
        return total

    return rec(tuple(alpha), 0)


@pytest.mark.parametrize(
    "label,alpha",
    [("A2", (1, 1)), ("A2", (2, 1)), ("A2", (2, 2)), ("A3", (1, 1, 1)), ("A3", (1, 2, 1)), ("B2", (1, 2)), ("B2", (2, 2)), ("G2", (1, 3))],
)
def test_kostant_partition_counts(label, alpha):
    datum = CartanDatum.parse(label)
    order = ConvexOrder.from_word(datum)
    kps = kostant_partitions(alpha, order)
    assert len(kps) == _kostant_count(datum, alpha)
    assert len({lam.parts for lam in kps}) == len(kps)
    for lam in kps:
        assert lam.alpha == alpha
        keys = [order.key(b) for b in lam.parts]
        assert keys == sorted(keys, reverse=True)


def test_bilex_order_is_strict():
    datum = CartanDatum.parse("A3")
    order = ConvexOrder.from_word(datum)
    kps = kostant_partitions((1, 1, 1), order)
    for a, b in itertools.product(kps, repeat=2):
        assert not (bilex_lt(a, b, order) and bilex_lt(b, a, order))
        if a == b:
            assert not bilex_lt(a, b, order)
    # the root itself is minimal
    root = next(lam for lam in kps if len(lam) == 1)
    assert all(bilex_lt(root, lam, order) for lam in kps if lam != root)


def test_minimal_pairs():
    a2 = ConvexOrder.from_word(CartanDatum.parse("A2"))
    (mp,) = minimal_pairs((1, 1), a2)
    assert (mp.beta, mp.gamma, mp.p) == ((1, 0), (0, 1), 0)
    b2 = ConvexOrder.from_word(CartanDatum.parse("B2"))
    got = {(root_str(m.beta), root_str(m.gamma), m.p) for m in minimal_pairs((1, 2), b2)}
    assert ("a1+a2", "a2", 1) in got
