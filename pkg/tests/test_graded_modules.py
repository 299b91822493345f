import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import shuffle_character

from klr.exact_linalg import GF, QQ, LaurentSeries
from klr.graded_modules import (
    GradedModule,
    character_difference,
    decompose_character,
    hom_finite,
    induce,
    is_simple,
    one_dimensional,
    restrict,
    scale_character,
    shuffle,
    simple_head,
)
from klr.root_data import CartanDatum


def plain(ch):
    return {w: dict(s.coeffs) for w, s in ch.items() if s.coeffs}


def as_series(ch):
    return {w: LaurentSeries(c) for w, c in ch.items()}


def characters(letters, length):
    word = st.lists(st.sampled_from(letters), min_size=length, max_size=length).map(tuple)
    series = st.dictionaries(st.integers(-3, 3), st.integers(1, 3), min_size=1, max_size=3)
    return st.dictionaries(word, series, min_size=1, max_size=3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), characters([1, 2], 2), characters([1, 2], 1))
def test_shuffle_matches_oracle(label, ch1, ch2):
    datum = CartanDatum.parse(label)
    got = plain(shuffle(datum, as_series(ch1), as_series(ch2)))
    assert got == {w: s for w, s in shuffle_character(datum, ch1, ch2).items() if s}


@settings(max_examples=30, deadline=None)
@given(characters([1, 2], 1), characters([1, 2], 1), characters([1, 2], 1))
def test_shuffle_is_associative(a, b, c):
    datum = CartanDatum.parse("B2")
    A, B, C = as_series(a), as_series(b), as_series(c)
    left = shuffle(datum, shuffle(datum, A, B), C)
    right = shuffle(datum, A, shuffle(datum, B, C))
    assert plain(left) == plain(right)


def test_truncated_shuffle_trust():
    datum = CartanDatum.parse("A1")
    geo = {(1,): LaurentSeries.geometric(2, 6)}
    out = shuffle(datum, geo, geo)
    (s,) = out.values()
    assert s.exact_below == 6
    # truncated factors only certify the product through degree 6
    ref = shuffle_character(datum, {(1,): {0: 1, 2: 1, 4: 1, 6: 1}}, {(1,): {0: 1, 2: 1, 4: 1, 6: 1}})
    assert all(s[d] == ref[(1, 1)].get(d, 0) for d in range(-2, 7))


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
@pytest.mark.parametrize("order", [(1, 2), (2, 1), (1, 2, 2), (2, 1, 1)])
def test_induction_character_and_relations(label, order):
    datum = CartanDatum.parse(label)
    mods = [one_dimensional(datum, i) for i in order]
    M = induce(*mods)
    assert M.relation_defects() == []
    ref = {(order[0],): {0: 1}}
    for i in order[1:]:
        ref = shuffle_character(datum, ref, {(i,): {0: 1}})
    assert plain(M.character()) == {w: s for w, s in ref.items() if s}


@pytest.mark.parametrize("dom", [QQ, GF(2), GF(3)], ids=["Q", "F2", "F3"])
@pytest.mark.parametrize("label", ["A2", "B2"])
def test_simple_head_of_two_letter_product(label, dom):
    datum = CartanDatum.parse(label)
    M = induce(one_dimensional(datum, 2, dom), one_dimensional(datum, 1, dom))
    head = simple_head(M)
    L = head.simple.shift(head.shift)
    assert is_simple(L)
    assert all(s.is_bar_invariant() for s in L.character().values())
    assert plain(L.character()) == {(2, 1): {0: 1}}


def test_nilhecke_product_is_simple():
    datum = CartanDatum.parse("A1")
    M = induce(one_dimensional(datum, 1), one_dimensional(datum, 1))
    assert is_simple(M)
    assert plain(M.character()) == {(1, 1): {-2: 1, 0: 1}}


def test_restriction_recovers_factor_character():
    datum = CartanDatum.parse("A2")
    M = induce(one_dimensional(datum, 1), one_dimensional(datum, 2))
    R = restrict(M, ((1, 0), (0, 1)))
    assert plain(R.character()) == {(1, 2): {0: 1}}


def test_hom_to_head_is_one_dimensional():
    datum = CartanDatum.parse("A2")
    M = induce(one_dimensional(datum, 2), one_dimensional(datum, 1))
    head = simple_head(M)
    homs = hom_finite(M, head.simple, head.hom_degree)
    assert len(homs) == 1


@settings(max_examples=25, deadline=None)
@given(
    st.dictionaries(st.integers(-2, 3), st.integers(1, 3), max_size=3),
    st.dictionaries(st.integers(-2, 3), st.integers(1, 3), max_size=3),
)
def test_decomposition_recovers_multiplicities(m1, m2):
    datum = CartanDatum.parse("A2")
    head = simple_head(induce(one_dimensional(datum, 2), one_dimensional(datum, 1)))
    cusp = head.simple.shift(head.shift).character()
    prod = induce(one_dimensional(datum, 1), one_dimensional(datum, 2))
    top = simple_head(prod)
    other = top.simple.shift(top.shift).character()
    simples = {"cusp": cusp, "other": other}
    ch = {}
    for name, mult in (("cusp", m1), ("other", m2)):
        part = scale_character(simples[name], mult)
        ch = {w: ch.get(w, LaurentSeries.zero()) + part.get(w, LaurentSeries.zero()) for w in set(ch) | set(part)}
    dec = decompose_character(ch, simples)
    assert dec.multiplicities["cusp"].coeffs == {k: v for k, v in m1.items() if v}
    assert dec.multiplicities["other"].coeffs == {k: v for k, v in m2.items() if v}
    assert all(not s.coeffs for s in character_difference(ch, ch).values())


def test_module_shift_moves_character():
    datum = CartanDatum.parse("A1")
    V = one_dimensional(datum, 1)
    assert plain(V.shift(3).character()) == {(1,): {3: 1}}
    assert isinstance(V, GradedModule)
