import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from green_ideals import green
from green_ideals.catalog import build, catalog
from green_ideals.errors import ValidationError
from green_ideals.grp import direct_product
from green_ideals.ops import ind, res
from green_ideals.qburnside import BURNSIDE, BurnsideAlgebra, gset
from green_ideals.slice import SLICE, t_slices

C2, S3, V4, ONE = build("C2"), build("S3"), build("V4"), build("1")
SMALL = catalog(8)


def sub(G, order):
    return next(H for H in G.subgroups() if H.order == order)


def idx(G, H):
    return G.class_of(H)


def vectors(dim):
    fr = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.lists(fr, min_size=dim, max_size=dim).map(lambda cs: {i: c for i, c in enumerate(cs) if c})


def test_transport_examples():
    e1 = idx(C2, C2.trivial)
    t = green.transport(BURNSIDE, res(C2, C2.trivial), e1)
    assert t.coords == {0: 1} and t.tag == "zero-one-sum"
    t = green.transport(BURNSIDE, ind(C2, C2.trivial), 0)
    assert t.coords == {e1: 2} and t.tag == "scalar-times-single"
    t = green.transport(BURNSIDE, res(C2, C2.trivial), idx(C2, C2.whole))
    assert t.coords == {} and t.tag == "zero"


def test_classify():
    assert green.classify({}) == "zero"
    assert green.classify({3: Fraction(1)}) == "single"
    assert green.classify({3: Fraction(1)}, "res") == "zero-one-sum"
    assert green.classify({3: Fraction(1)}, "def") == "scalar-times-single"
    assert green.classify({1: Fraction(1), 2: Fraction(1)}) == "zero-one-sum"
    assert green.classify({1: Fraction(1, 2)}) == "scalar-times-single"


def test_killed_idempotents():
    assert green.underline_E(BURNSIDE, C2) == [idx(C2, C2.whole)]
    # Def^{C2}_1 sends e_1 to 1/2 [1/1] and e_C2 to 1/2 [1/1]: nothing is killed
    assert green.double_underline_E(BURNSIDE, C2) == []
    assert green.underline_E(BURNSIDE, ONE) == [0] == green.double_underline_E(BURNSIDE, ONE)
    labels = SLICE.evaluation(C2).idempotent_labels()
    w = labels.index("xi_(C2,1)")
    assert w in green.underline_E(SLICE, C2) and w in green.double_underline_E(SLICE, C2)


def test_is_MC_group_examples():
    assert green.is_MC_group(BURNSIDE, V4) == (True, [idx(V4, V4.whole)])
    assert not green.is_MC_group(BURNSIDE, C2)[0]
    ok, w = green.is_MC_group(SLICE, C2)
    assert ok and [SLICE.evaluation(C2).idempotent_labels()[i] for i in w] == ["xi_(C2,1)"]


def test_mc_equivalences():
    for G in catalog(16):
        assert green.is_MC_group(SLICE, G)[0] == bool(t_slices(G))


def test_reduce_res_ind():
    for G in SMALL:
        r = green.reduce_res_ind(BURNSIDE, G, 0)
        assert r.group.order == 1
        # e^G_1 = alpha Ind(e^1_1) with Ind(e^1_1) = [G/1] = |G| e^G_1
        assert r.alpha == Fraction(1, G.order)
    r = green.reduce_res_ind(BURNSIDE, V4, idx(V4, V4.whole))
    assert r.group.order == 4 and r.alpha == 1
    r = green.reduce_res_ind(BURNSIDE, S3, idx(S3, sub(S3, 2)))
    assert r.group.order == 2 and r.alpha != 0


def test_reduce_def_inf():
    r = green.reduce_def_inf(BURNSIDE, C2, idx(C2, C2.whole))
    assert r.group.order == 1 and r.alpha == 2
    r = green.reduce_def_inf(BURNSIDE, V4, idx(V4, V4.whole))
    assert r.group.order == 4 and r.via.order == 1 and r.alpha == 1
    assert r.index == r.group.class_of(r.group.whole)
    r = green.reduce_def_inf(BURNSIDE, ONE, 0)
    assert r.group is ONE and r.alpha == 1
    r = green.reduce_def_inf(BURNSIDE, V4, idx(V4, V4.whole))
    assert r.group is V4


def test_reduce_to_MC():
    assert green.reduce_to_MC(BURNSIDE, C2, idx(C2, C2.whole))[0].order == 1
    for G in SMALL:
        assert green.reduce_to_MC(BURNSIDE, G, 0)[0].order == 1
    H, h = green.reduce_to_MC(BURNSIDE, V4, idx(V4, V4.whole))
    assert H.order == 4 and h == idx(V4, V4.whole)


@pytest.mark.parametrize("inst", [BURNSIDE, SLICE], ids=["burnside", "slice"])
def test_reduction_preserves_ideals(inst):
    groups = catalog(6)
    for G in groups:
        for i in range(inst.evaluation(G).dim):
            H, h = green.reduce_to_MC(inst, G, i)
            for X in groups:
                assert green.ideal_support(inst, G, i, X) == green.ideal_support(inst, H, h, X)


def test_identity_morphism():
    one_c2 = green.identity_morphism(BURNSIDE, C2)
    P = direct_product(C2, C2).group
    for k in range(BURNSIDE.evaluation(P).dim):
        beta = {k: Fraction(1)}
        assert green.compose(BURNSIDE, C2, C2, C2, one_c2, beta) == beta
        assert green.compose(BURNSIDE, C2, C2, C2, beta, one_c2) == beta
    Q = direct_product(S3, ONE).group
    for k in range(BURNSIDE.evaluation(Q).dim):
        alpha = {k: Fraction(1)}
        assert green.compose(BURNSIDE, S3, ONE, ONE, alpha, green.identity_morphism(BURNSIDE, ONE)) == alpha


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([BURNSIDE, SLICE]).flatmap(
    lambda inst: st.tuples(st.just(inst), *[vectors(inst.evaluation(direct_product(C2, C2).group).dim)] * 3)
))
def test_composition_is_associative(data):
    inst, a, b, c = data
    left = green.compose(inst, C2, C2, C2, green.compose(inst, C2, C2, C2, a, b), c)
    right = green.compose(inst, C2, C2, C2, a, green.compose(inst, C2, C2, C2, b, c))
    assert left == right


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(C2, C2), (S3, C2), (C2, V4), (V4, ONE)]).flatmap(
    lambda gh: st.tuples(
        st.just(gh),
        vectors(BURNSIDE.evaluation(direct_product(*gh).group).dim),
        vectors(BURNSIDE.evaluation(gh[1]).dim),
    )
))
def test_act_matches_compose(data):
    (G, H), b, e = data
    assert green.act(BURNSIDE, G, H, b, e) == green.act_via_compose(BURNSIDE, G, H, b, e)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(G, H) for G in SMALL for H in G.subgroups()]).flatmap(
    lambda gh: st.tuples(
        st.just(gh),
        vectors(BURNSIDE.evaluation(gh[0].subgroup_group(gh[1])[0]).dim),
        vectors(BURNSIDE.evaluation(gh[0]).dim),
    )
))
def test_frobenius_identity(data):
    # Ind(a . Res b) = Ind(a) . b
    (G, H), a, b = data
    up, down = ind(G, H), res(G, H)
    ev, evh = BURNSIDE.evaluation(G), BURNSIDE.evaluation(H.parent.subgroup_group(H)[0])
    lhs = BURNSIDE.apply(up, evh.mult(a, BURNSIDE.apply(down, b)))
    assert lhs == ev.mult(BURNSIDE.apply(up, a), b)


def test_principal_ideal_examples():
    for G in SMALL:
        assert len(green.principal_ideal_eval(BURNSIDE, ONE, 0, G)) == BURNSIDE.evaluation(G).dim
    top = idx(V4, V4.whole)
    assert green.principal_ideal_eval(BURNSIDE, V4, top, C2) == []
    assert green.principal_ideal_eval(BURNSIDE, V4, top, V4) == [{top: Fraction(1)}]
    assert green.ideal_support_slow(BURNSIDE, V4, top, V4) == frozenset({top})


def test_dominates_examples():
    top = idx(V4, V4.whole)
    assert green.dominates(BURNSIDE, V4, top, ONE, 0, cross_check=True)
    assert not green.dominates(BURNSIDE, ONE, 0, V4, top, cross_check=True)
    for G in SMALL:
        for i in green.mc_idempotents(BURNSIDE, G):
            assert green.dominates(BURNSIDE, G, i, G, i)


def test_dominates_is_transitive():
    pairs = [(G, i) for G in catalog(6) for i in green.mc_idempotents(SLICE, G)]
    rel = {(a, b): green.dominates(SLICE, *pairs[a], *pairs[b]) for a in range(len(pairs)) for b in range(len(pairs))}
    for a in range(len(pairs)):
        assert rel[a, a]
        for b in range(len(pairs)):
            for c in range(len(pairs)):
                if rel[a, b] and rel[b, c]:
                    assert rel[a, c]


def test_minimal_groups_of_ideal():
    groups = catalog(8)
    assert [G.name for G in green.minimal_groups_of_ideal(BURNSIDE, [(ONE, 0)], groups)] == ["1"]
    assert [G.name for G in green.minimal_groups_of_ideal(BURNSIDE, [(V4, idx(V4, V4.whole))], groups)] == ["V4"]
    assert green.minimal_groups_of_ideal(BURNSIDE, [], groups) == []


def test_element_arithmetic():
    a = BURNSIDE.element(C2, {1: Fraction(1)})
    assert a + a == a * 2 and (a - a) == BURNSIDE.element(C2, {}) and not (a - a)
    assert -a == a * -1
    with pytest.raises(ValidationError):
        a + gset(S3, S3.whole)
    with pytest.raises(ValidationError):
        BURNSIDE.element(C2, {7: Fraction(1)})


def test_evaluation_memo_is_shared_across_threads():
    G = build("D12")
    got = []

    def work():
        got.append(SLICE.evaluation(G))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(x is got[0] for x in got)
    assert isinstance(BURNSIDE.evaluation(G), BurnsideAlgebra)


def test_unit_of_trivial_group():
    assert BURNSIDE.unit_trivial() == {0: Fraction(1)}
    assert SLICE.unit_trivial() == {0: Fraction(1)}
