import pytest

from oracles import shuffle_character

from klr.cuspidal_standard import (
    ConstructionError,
    StandardFamily,
    delta_from_z,
    delta_tower,
    end_ring_expectation,
    verify_freeness,
    verify_theorem_A,
    verify_theorem_B,
)
from klr.exact_linalg import GF, QQ, product_geometric
from klr.graded_modules import decompose_character, induce, one_dimensional, simple_head
from klr.root_data import CartanDatum, KostantPartition


def plain(ch, top=None):
    return {w: {d: c for d, c in s.coeffs.items() if top is None or d <= top} for w, s in ch.items() if s.coeffs}


@pytest.fixture(scope="module")
def a2():
    return StandardFamily(CartanDatum.parse("A2"))


@pytest.fixture(scope="module")
def b2():
    return StandardFamily(CartanDatum.parse("B2"))


def test_cuspidal_simples_a2(a2):
    assert plain(a2.cuspidal((1, 1)).character()) == {(2, 1): {0: 1}}
    assert plain(a2.cuspidal((1, 0)).character()) == {(1,): {0: 1}}


def test_cuspidal_simples_b2(b2):
    assert plain(b2.cuspidal((1, 1)).character()) == {(2, 1): {0: 1}}
    L = b2.cuspidal((1, 2))
    assert L.total_dim() == 2
    assert all(s.is_bar_invariant() for s in L.character().values())


def test_delta_of_simple_root_is_polynomial(a2):
    # Delta(a_i) = k[x] with x of degree 2 d_i
    V = a2.standard_cuspidal((1, 0), 8).module
    assert plain(V.character(), 8) == {(1,): {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}}


@pytest.mark.parametrize("label,root", [("A2", (1, 1)), ("A3", (1, 1, 1)), ("A3", (0, 1, 1))])
def test_z_and_tower_constructions_agree(label, root):
    F = StandardFamily(CartanDatum.parse(label))
    L = F.cuspidal(root)
    Z = delta_from_z(L, 8)
    T = delta_tower(L, 8)
    assert Z.relation_defects() == [] and T.relation_defects() == []
    assert plain(Z.character(), 8) == plain(T.character(), 8)


def test_z_construction_refused_for_b2(b2):
    L = b2.cuspidal((1, 1))
    with pytest.raises(ConstructionError):
        delta_from_z(L, 8)
    T = delta_tower(L, 8)
    assert T.relation_defects() == []


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_delta_character_is_geometric_multiple_of_simple(label):
    """ch Delta(alpha) = ch L(alpha) / (1 - q_alpha^2) through the window."""
    F = StandardFamily(CartanDatum.parse(label))
    datum = F.datum
    for root in datum.positive_roots:
        V = F.standard_cuspidal(root, 8).module
        L = F.cuspidal(root)
        geo = product_geometric([2 * datum.d_root(root)], 8)
        expected = {}
        for w, s in L.character().items():
            prod = (s * geo).truncate(8)
            if prod.coeffs:
                expected[w] = dict(prod.coeffs)
        assert plain(V.character(), 8) == expected


def test_a1_square_standard_matches_nilhecke_oracle():
    """Delta(a1^2) = q^{-1}/(1-q^2)^2 on the single word."""
    F = StandardFamily(CartanDatum.parse("A1"))
    P = F.standard_power((1,), 2, 9)
    ch = plain(P.module.character(), 9)
    assert ch == {(1, 1): {-1: 1, 1: 2, 3: 3, 5: 4, 7: 5, 9: 6}}
    (rec,) = F.power_records.values()
    assert rec.m == 2
    assert abs(rec.shift) == 1


def test_reduced_standard_is_shuffle_of_simples(a2):
    """Dbar(a1, a2) has the character of L(a1) o L(a2)."""
    (lam,) = [k for k in a2.kps((1, 1)) if len(k) == 2]
    ref = shuffle_character(a2.datum, {(1,): {0: 1}}, {(2,): {0: 1}})
    assert plain(a2.reduced_standard(lam).character()) == ref
    assert a2.shift_of(lam) == 0


def test_simples_have_bar_invariant_characters():
    F = StandardFamily(CartanDatum.parse("A3"))
    for lam in F.kps((1, 1, 1)):
        assert all(s.is_bar_invariant() for s in F.simple(lam).character().values())


def test_multiplicity_of_cuspidal_in_delta(b2):
    # a1+2a2 is long in B2, so q_alpha^2 = q^4
    assert b2.datum.d_root((1, 2)) == 2
    V = b2.standard_cuspidal((1, 2), 8).module
    sims = b2.simple_characters((1, 2))
    dec = decompose_character(V.character(), sims)
    root_label = KostantPartition(((1, 2),)).label()
    assert {d: c for d, c in dec[root_label].coeffs.items()} == {0: 1, 4: 1, 8: 1}
    assert all(not s.coeffs for k, s in dec.multiplicities.items() if k != root_label)


@pytest.mark.parametrize("dom", [QQ, GF(2)], ids=["Q", "F2"])
def test_theorem_a_a2(dom):
    F = StandardFamily(CartanDatum.parse("A2"), dom=dom)
    report = verify_theorem_A(F, (1, 1), 6)
    assert report.passed
    assert len(report.pairs) == 2


def test_theorem_b_a2(a2):
    for lam in a2.kps((1, 1)):
        r = verify_theorem_B(a2, lam, 4)
        assert r.all_injective and r.matches


def test_end_ring_expectation(a2):
    (lam,) = [k for k in a2.kps((1, 1)) if len(k) == 2]
    assert [end_ring_expectation(a2, lam, 6)[d] for d in range(7)] == [1, 0, 2, 0, 3, 0, 4]


def test_freeness_a2(a2):
    r = verify_freeness(a2, (1, 1), 8)
    assert r.passed
    assert r.nilpotency[(0, 1)] == 1
    assert set(r.free_rank.values()) == {1}


def test_freeness_b2_skips_free_basis(b2):
    r = verify_freeness(b2, (1, 1), 8)
    assert r.passed
    assert all(v is None for v in r.free_rank.values())
    assert all(r.x_injective.values())


def test_cuspidal_of_non_root_rejected(a2):
    with pytest.raises(ValueError, match="not a positive root"):
        a2.cuspidal((2, 1))


def test_two_letter_head_matches_cuspidal(a2):
    head = simple_head(induce(one_dimensional(a2.datum, 2), one_dimensional(a2.datum, 1)))
    assert plain(head.simple.shift(head.shift).character()) == plain(a2.cuspidal((1, 1)).character())
