import pytest
from hypothesis import given, settings, strategies as st

from green_ideals import gsets
from green_ideals.catalog import build, catalog
from green_ideals.errors import ValidationError
from green_ideals.grp import identity_hom
from green_ideals.ops import deflate, ind, inf, iso, res
from green_ideals.qburnside import elementary_op, gset
from green_ideals.slice import slice_elt

SMALL = catalog(12)
C2, S3 = build("C2"), build("S3")


def sub(G, order):
    return next(H for H in G.subgroups() if H.order == order)


def test_coset_gsets():
    X = gsets.coset_gset(C2, C2.trivial)
    assert X.size == 2 and len(X.orbits()) == 1
    for G in SMALL:
        assert gsets.coset_gset(G, G.whole).size == 1
    Y = gsets.coset_gset(S3, sub(S3, 2))
    Y.check()
    assert Y.size == 3 and len(Y.orbits()) == 1


def test_orbit_decompose():
    assert gsets.orbit_decompose(gsets.coset_gset(C2, C2.trivial)) == gset(C2, C2.trivial)
    for G in SMALL:
        for K in G.subgroups():
            X = gsets.coset_gset(G, K)
            assert gsets.orbit_decompose(gsets.disjoint_union(X, X)) == gset(G, K, 2)


def test_ordered_pairs_of_points():
    # S3 on ordered pairs of distinct points of S3/C2: one free orbit
    Y = gsets.coset_gset(S3, sub(S3, 2))
    pairs = [(x, y) for x in range(3) for y in range(3) if x != y]
    pos = {p: i for i, p in enumerate(pairs)}
    action = tuple(tuple(pos[(row[x], row[y])] for x, y in pairs) for row in Y.action)
    X = gsets.GSet(S3, 6, action)
    X.check()
    assert gsets.orbit_decompose(X) == gset(S3, S3.trivial)


def test_elementary_biset_sizes():
    for G in SMALL:
        for H in G.subgroups():
            U = gsets.elementary_biset("res", res(G, H))
            U.check()
            assert U.size == G.order and U.left_group.order == H.order
        for N in G.normal_subgroups():
            U = gsets.elementary_biset("inf", inf(G, N))
            U.check()
            assert U.size == G.order // N.order and U.left_group is G
        U = gsets.elementary_biset("iso", iso(identity_hom(G)))
        assert U.size == G.order


def test_elementary_biset_rejects_bad_data():
    with pytest.raises(ValidationError):
        gsets.elementary_biset("def", sub(S3, 2))


def test_tensor_examples():
    one = build("1")
    point = gsets.coset_gset(one, one.whole)
    U = gsets.elementary_biset("ind", ind(C2, C2.trivial))
    reg = gsets.tensor(U, gsets.coset_gset(C2.subgroup_group(C2.trivial)[0], C2.subgroup_group(C2.trivial)[0].whole))
    assert gsets.orbit_decompose(reg) == gset(C2, C2.trivial)
    D = gsets.elementary_biset("def", deflate(C2, C2.whole))
    assert gsets.tensor(D, gsets.coset_gset(C2, C2.trivial)).size == 1
    for G in SMALL:
        Id = gsets.elementary_biset("iso", iso(identity_hom(G)))
        for K in G.subgroups():
            X = gsets.coset_gset(G, K)
            assert gsets.orbit_decompose(gsets.tensor(Id, X)) == gsets.orbit_decompose(X)
    with pytest.raises(ValidationError):
        gsets.tensor(U, point)


def test_decompose_morphism_examples():
    for G in SMALL:
        for sc in G.slice_classes():
            T, S = G.subgroups()[sc.big], G.subgroups()[sc.small]
            assert gsets.decompose_morphism(gsets.coset_map(G, T, S)) == slice_elt(G, (T, S))
        for S in G.subgroups():
            X = gsets.coset_gset(G, S)
            assert gsets.decompose_morphism(gsets.identity_map(X)) == slice_elt(G, (S, S))
    fold = gsets.gmap(gsets.coset_gset(C2, C2.trivial), gsets.coset_gset(C2, C2.whole), [0, 0])
    assert gsets.decompose_morphism(fold) == slice_elt(C2, (C2.whole, C2.trivial))


def test_non_equivariant_map():
    X = gsets.coset_gset(C2, C2.trivial)
    with pytest.raises(ValidationError):
        gsets.gmap(X, X, [0, 0])


def test_morphism_products():
    one = build("1")
    pt = gsets.identity_map(gsets.coset_gset(one, one.whole))
    prod = gsets.gmor_product(pt, pt)
    assert prod.source.size == prod.target.size == 1
    for G in catalog(8):
        unit = gsets.identity_map(gsets.coset_gset(G, G.whole))
        for sc in G.slice_classes():
            f = gsets.coset_map(G, G.subgroups()[sc.big], G.subgroups()[sc.small])
            assert gsets.decompose_morphism(gsets.gmor_diagonal_product(unit, f)) == gsets.decompose_morphism(f)
    D = gsets.elementary_biset("def", deflate(C2, C2.whole))
    g = gsets.gmor_tensor(D, gsets.coset_map(C2, C2.whole, C2.trivial))
    assert g.source.size == g.target.size == 1


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL).flatmap(lambda G: st.tuples(st.just(G), st.data())))
def test_disjoint_union_relation(data):
    # [X1 + X2 -> Y] = [X1 -> f1(X1)] + [X2 -> f2(X2)]
    G, draw = data
    T = draw.draw(st.sampled_from(G.subgroups()))
    below = [S for S in G.subgroups() if S <= T]
    f1 = gsets.coset_map(G, T, draw.draw(st.sampled_from(below)))
    f2 = gsets.coset_map(G, T, draw.draw(st.sampled_from(below)))
    f2 = gsets.GMap(f2.source, f1.target, f2.image_of)
    whole = gsets.decompose_morphism(gsets.fold_map(f1, f2))
    parts = gsets.decompose_morphism(gsets.corestrict(f1)) + gsets.decompose_morphism(gsets.corestrict(f2))
    assert whole == parts
    assert gsets.decompose_morphism(gsets.union_map(f1, f2)) == parts


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(catalog(8)).flatmap(lambda G: st.tuples(st.sampled_from(G.subgroups()), st.sampled_from(G.subgroups()))))
def test_restriction_is_mackey(pair):
    # Res^G_H [G/K] through the restricted action equals the closed form
    H, K = pair
    G = H.parent
    Hg, incl = G.subgroup_group(H)
    X = gsets.restrict(gsets.coset_gset(G, K), incl)
    X.check()
    assert gsets.orbit_decompose(X) == elementary_op("res", incl, gset(G, K))
