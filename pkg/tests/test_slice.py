from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from green_ideals import gsets
from green_ideals.catalog import build, catalog
from green_ideals.errors import ValidationError
from green_ideals.grp import identity_hom
from green_ideals.slice import (
    SLICE,
    SliceElt,
    elementary_op,
    from_marks,
    is_T_slice,
    m_slice,
    marks,
    slice_basis,
    slice_elt,
    t_slices,
    xi_idempotent,
)

SMALL = catalog(12)
C2, S3 = build("C2"), build("S3")


def sub(G, order):
    return next(H for H in G.subgroups() if H.order == order)


def elements(G):
    n = len(G.slice_classes())
    fr = st.fractions(min_value=-4, max_value=4, max_denominator=5)
    return st.lists(fr, min_size=n, max_size=n).map(lambda cs: SliceElt(G, {i: c for i, c in enumerate(cs) if c}))


def test_basis():
    assert len(slice_basis(build("1"))) == 1
    assert slice_basis(C2) == ["<1,1>", "<C2,1>", "<C2,C2>"]
    assert len(slice_basis(S3)) == 9


def test_products():
    C3 = sub(S3, 3)
    x = slice_elt(C2, (C2.whole, C2.trivial))
    assert x * x == x * 2
    y = slice_elt(S3, (C3, C3))
    assert y * y == y * 2
    for G in SMALL:
        top = slice_elt(G, (G.whole, G.whole))
        for k in range(len(G.slice_classes())):
            assert top * slice_elt(G, k) == slice_elt(G, k)


def test_xi_examples():
    for G in SMALL:
        assert xi_idempotent(G, (G.trivial, G.trivial)) == slice_elt(G, (G.trivial, G.trivial), Fraction(1, G.order))
        es = [xi_idempotent(G, k) for k in range(len(G.slice_classes()))]
        assert sum(es[1:], es[0]) == slice_elt(G, (G.whole, G.whole))
    xi = xi_idempotent(C2, (C2.whole, C2.whole))
    assert xi == slice_elt(C2, (C2.whole, C2.whole)) - slice_elt(C2, (C2.whole, C2.trivial), Fraction(1, 2))


def test_xi_marks_are_indicators():
    for G in SMALL:
        for k in range(len(G.slice_classes())):
            assert marks(xi_idempotent(G, k)) == tuple(Fraction(int(i == k)) for i in range(len(G.slice_classes())))


def test_m_slice():
    assert m_slice(C2, C2.whole, C2.whole) == Fraction(1, 2)
    assert m_slice(C2, C2.trivial, C2.whole) == 0
    for G in SMALL:
        for S in G.subgroups():
            assert m_slice(G, S, G.trivial) == 1
    with pytest.raises(ValidationError):
        m_slice(S3, S3.trivial, sub(S3, 2))


def test_t_slices():
    one = build("1")
    assert is_T_slice(one, one.trivial)
    assert not is_T_slice(C2, C2.whole)
    assert is_T_slice(C2, C2.trivial)
    assert t_slices(C2) == [C2.trivial]
    assert [S.order for S in t_slices(S3)] == [2, 6]


def test_elementary_op_examples():
    for G in SMALL:
        for H in G.subgroups():
            Hg, incl = G.subgroup_group(H)
            for k, sc in enumerate(Hg.slice_classes()):
                T, S = Hg.subgroups()[sc.big], Hg.subgroups()[sc.small]
                want = slice_elt(G, (G.subgroup(incl.image(T.mask)), G.subgroup(incl.image(S.mask))))
                assert elementary_op("ind", incl, slice_elt(Hg, k)) == want
    d = elementary_op("def", C2.whole, slice_elt(C2, (C2.whole, C2.trivial)))
    assert d.group.order == 1 and d.to_json() == {"<1,1>": "1"}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL).flatmap(elements))
def test_iso_identity(a):
    assert elementary_op("iso", identity_hom(a.group), a) == a


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(catalog(8)).flatmap(lambda G: st.tuples(st.sampled_from(G.subgroups()), elements(G), elements(G))))
def test_res_is_ring_map(data):
    H, a, b = data
    r = lambda x: elementary_op("res", H, x)
    assert r(a * b) == r(a) * r(b)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(catalog(8)).flatmap(lambda G: st.tuples(st.sampled_from(G.normal_subgroups()), st.data())))
def test_inf_is_ring_map(data):
    N, draw = data
    Q = N.parent.quotient(N)[0]
    a, b = draw.draw(elements(Q)), draw.draw(elements(Q))
    f = lambda x: elementary_op("inf", N, x)
    assert f(a * b) == f(a) * f(b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL).flatmap(lambda G: st.tuples(elements(G), elements(G))))
def test_ghost_is_ring_map(ab):
    a, b = ab
    assert marks(a * b) == tuple(x * y for x, y in zip(marks(a), marks(b)))
    assert from_marks(a.group, marks(a)) == a


def test_product_against_morphism_oracle():
    # product of basis morphisms with the diagonal action
    for G in SMALL:
        subs = G.subgroups()
        maps = [gsets.coset_map(G, subs[sc.big], subs[sc.small]) for sc in G.slice_classes()]
        for i, f in enumerate(maps):
            for j in range(i, len(maps)):
                got = gsets.decompose_morphism(gsets.gmor_diagonal_product(f, maps[j]))
                assert got == slice_elt(G, i) * slice_elt(G, j)


def test_deflation_of_top_xi():
    for G in catalog(8):
        for S in G.subgroups():
            for N in G.normal_subgroups():
                Q, proj = G.quotient(N)
                got = elementary_op("def", N, xi_idempotent(G, (G.whole, S)))
                k = Q.slice_class_of_masks((1 << Q.order) - 1, proj.image(S.mask))
                assert got == xi_idempotent(Q, k) * m_slice(G, S, N)


def test_to_json():
    assert xi_idempotent(C2, (C2.whole, C2.whole)).to_json() == {"<C2,C2>": "1", "<C2,1>": "-1/2"}
