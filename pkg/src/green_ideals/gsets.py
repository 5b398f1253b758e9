"""Explicit finite G-sets, bisets and morphisms of G-sets.

These are deliberately naive: points are ``0..size-1`` and actions are full
tables.  They serve as an independent oracle for the closed formulas in
:mod:`green_ideals.qburnside` and :mod:`green_ideals.slice`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .grp import Group, GroupHom, Subgroup, direct_product, mask_of
from .ops import Op, coerce
from .qburnside import BurnsideElt
from .slice import SliceElt


@dataclass(frozen=True, eq=False)
class GSet:
    """A left ``G``-set; ``action[g][x]`` is ``g.x``."""

    group: Group
    size: int
    action: tuple[tuple[int, ...], ...]

    def check(self) -> None:
        G = self.group
        if len(self.action) != G.order or any(len(row) != self.size for row in self.action):
            raise ValidationError("action table has the wrong shape")
        if self.action[G.identity] != tuple(range(self.size)):
            raise ValidationError("identity does not act trivially")
        for g in range(G.order):
            ag = self.action[g]
            for h in range(G.order):
                ah, agh = self.action[h], self.action[G.mul(g, h)]
                if any(agh[x] != ag[ah[x]] for x in range(self.size)):
                    raise ValidationError("not a group action")

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.size
        out = []
        for x in range(self.size):
            if not seen[x]:
                orb = sorted({row[x] for row in self.action})
                for y in orb:
                    seen[y] = True
                out.append(orb)
        return out

    def stabilizer(self, x: int) -> Subgroup:
        return self.group.subgroup(mask_of(g for g, row in enumerate(self.action) if row[x] == x))


@dataclass(frozen=True, eq=False)
class Biset:
    """An ``(H, G)``-biset: ``left[h][u] = h.u`` and ``right[g][u] = u.g``."""

    left_group: Group
    right_group: Group
    size: int
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    def check(self) -> None:
        H, G = self.left_group, self.right_group
        GSet(H, self.size, self.left).check()
        # a right action of G is a left action of G through inversion
        GSet(G, self.size, tuple(self.right[G.inverse[g]] for g in range(G.order))).check()
        for h in range(H.order):
            for g in range(G.order):
                lh, rg = self.left[h], self.right[g]
                if any(rg[lh[u]] != lh[rg[u]] for u in range(self.size)):
                    raise ValidationError("left and right actions do not commute")


@dataclass(frozen=True, eq=False)
class GMap:
    source: GSet
    target: GSet
    image_of: tuple[int, ...]

    def check(self) -> None:
        if self.source.group is not self.target.group:
            raise ValidationError("morphism between sets over different groups")
        if len(self.image_of) != self.source.size or any(not 0 <= y < self.target.size for y in self.image_of):
            raise ValidationError("map has the wrong shape")
        for g in range(self.source.group.order):
            a, b = self.source.action[g], self.target.action[g]
            if any(self.image_of[a[x]] != b[self.image_of[x]] for x in range(self.source.size)):
                raise ValidationError("map is not equivariant")


def gmap(source: GSet, target: GSet, image_of) -> GMap:
    f = GMap(source, target, tuple(image_of))
    f.check()
    return f


def identity_map(X: GSet) -> GMap:
    return GMap(X, X, tuple(range(X.size)))


def coset_gset(G: Group, K: Subgroup) -> GSet:
    """``G/K`` with cosets numbered by their least element."""
    if K.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    coset, reps = _cosets(G, K)
    t = G.table
    action = tuple(tuple(coset[t[g][r]] for r in reps) for g in range(G.order))
    return GSet(G, len(reps), action)


def _cosets(G: Group, K: Subgroup) -> tuple[list[int], list[int]]:
    t = G.table
    coset = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset[g] < 0:
            for k in K.elements:
                coset[t[g][k]] = len(reps)
            reps.append(g)
    return coset, reps


def coset_map(G: Group, T: Subgroup, S: Subgroup) -> GMap:
    """The projection ``G/S -> G/T`` for ``S <= T``."""
    if not S <= T:
        raise ValidationError("projection needs S <= T")
    src, dst = coset_gset(G, S), coset_gset(G, T)
    coset_t, _ = _cosets(G, T)
    _, reps_s = _cosets(G, S)
    return GMap(src, dst, tuple(coset_t[r] for r in reps_s))


def disjoint_union(X: GSet, Y: GSet) -> GSet:
    if X.group is not Y.group:
        raise ValidationError("disjoint union of sets over different groups")
    n = X.size
    action = tuple(a + tuple(n + y for y in b) for a, b in zip(X.action, Y.action))
    return GSet(X.group, n + Y.size, action)


def union_map(f: GMap, g: GMap) -> GMap:
    """``f + g`` on disjoint unions of sources and of targets."""
    n = f.target.size
    return GMap(
        disjoint_union(f.source, g.source),
        disjoint_union(f.target, g.target),
        f.image_of + tuple(n + y for y in g.image_of),
    )


def fold_map(f: GMap, g: GMap) -> GMap:
    """``X1 + X2 -> Y`` for two maps into the same ``Y``."""
    if f.target is not g.target:
        raise ValidationError("fold needs a common target")
    return GMap(disjoint_union(f.source, g.source), f.target, f.image_of + g.image_of)


def corestrict(f: GMap) -> GMap:
    """``X -> f(X)``."""
    img = sorted(set(f.image_of))
    pos = {y: i for i, y in enumerate(img)}
    action = tuple(tuple(pos[row[y]] for y in img) for row in f.target.action)
    return GMap(f.source, GSet(f.source.group, len(img), action), tuple(pos[y] for y in f.image_of))


def restrict(X: GSet, hom: GroupHom) -> GSet:
    """``X`` viewed as a ``K``-set through ``hom: K -> G``."""
    if hom.target is not X.group:
        raise ValidationError("homomorphism does not land in the acting group")
    return GSet(hom.source, X.size, tuple(X.action[hom(k)] for k in range(hom.source.order)))


def restrict_map(f: GMap, hom: GroupHom) -> GMap:
    return GMap(restrict(f.source, hom), restrict(f.target, hom), f.image_of)


def diagonal(G: Group) -> GroupHom:
    P = direct_product(G, G).group
    return GroupHom(G, P, tuple(g * G.order + g for g in range(G.order)))


def product_gset(X: GSet, Y: GSet) -> GSet:
    """``X x Y`` over ``G x H``; point ``(x, y)`` at ``x*|Y| + y``."""
    G, H = X.group, Y.group
    P = direct_product(G, H).group
    m, n = H.order, Y.size
    action = tuple(
        tuple(X.action[p // m][x] * n + Y.action[p % m][y] for x in range(X.size) for y in range(n))
        for p in range(P.order)
    )
    return GSet(P, X.size * n, action)


def orbit_decompose(X: GSet) -> BurnsideElt:
    """``X`` as a sum of transitive sets ``[G/G_x]`` in ``QB(G)``."""
    G = X.group
    out: dict[int, Fraction] = {}
    for orb in X.orbits():
        c = G.class_of(X.stabilizer(orb[0]))
        out[c] = out.get(c, 0) + 1
    return BurnsideElt(G, out)


def elementary_biset(kind: str, data) -> Biset:
    """The standard biset of an elementary operation.

    For an op with source ``A`` and target ``B`` this is a ``(B, A)``-biset:
    ``G`` for restriction and induction, ``G/N`` for inflation and
    deflation, the target group for transport of structure.
    """
    op = coerce(kind, data)
    f = op.hom
    if op.kind in ("res", "ind"):
        G = f.target
        t = G.table
        own = tuple(tuple(t[g]) for g in range(G.order))  # g.u
        through = tuple(tuple(t[f(h)]) for h in range(f.source.order))  # iota(h).u
        right_own = tuple(tuple(t[u][g] for u in range(G.order)) for g in range(G.order))
        right_through = tuple(tuple(t[u][f(h)] for u in range(G.order)) for h in range(f.source.order))
        if op.kind == "res":
            return Biset(f.source, G, G.order, through, right_own)
        return Biset(G, f.source, G.order, own, right_through)
    # inf, def, iso: the underlying set is the codomain of f
    Q = f.target
    t = Q.table
    own = tuple(tuple(t[q]) for q in range(Q.order))
    right_own = tuple(tuple(t[u][q] for u in range(Q.order)) for q in range(Q.order))
    through = tuple(tuple(t[f(g)]) for g in range(f.source.order))
    right_through = tuple(tuple(t[u][f(g)] for u in range(Q.order)) for g in range(f.source.order))
    if op.kind == "inf":
        return Biset(f.source, Q, Q.order, through, right_own)
    return Biset(Q, f.source, Q.order, own, right_through)


def _find(parent: list[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _tensor_classes(U: Biset, n: int, right_act) -> tuple[list[int], list[int]]:
    """Union-find on ``U x X`` (size ``|U| * n``); returns (class of point, class reps)."""
    parent = list(range(U.size * n))
    for g in U.right_group.generators:
        ug = U.right[g]
        gx = right_act[g]
        for u in range(U.size):
            for x in range(n):
                a, b = _find(parent, ug[u] * n + x), _find(parent, u * n + gx[x])
                if a != b:
                    if a < b:
                        a, b = b, a
                    parent[a] = b
    roots = [_find(parent, p) for p in range(len(parent))]
    reps = sorted(set(roots))
    pos = {r: i for i, r in enumerate(reps)}
    return [pos[r] for r in roots], reps


def tensor(U: Biset, X: GSet) -> GSet:
    """``U x_G X``: pairs modulo ``(u.g, x) ~ (u, g.x)``."""
    if U.right_group is not X.group:
        raise ValidationError("biset and set are over different groups")
    n = X.size
    cls, reps = _tensor_classes(U, n, X.action)
    action = tuple(
        tuple(cls[U.left[h][r // n] * n + r % n] for r in reps) for h in range(U.left_group.order)
    )
    return GSet(U.left_group, len(reps), action)


def decompose_morphism(f: GMap) -> SliceElt:
    """``sum over source orbit reps x`` of the slice class ``(G_{f(x)}, G_x)``."""
    f.check()
    G = f.source.group
    out: dict[int, Fraction] = {}
    for orb in f.source.orbits():
        x = orb[0]
        c = G.slice_class_of_masks(f.target.stabilizer(f.image_of[x]).mask, f.source.stabilizer(x).mask)
        out[c] = out.get(c, 0) + 1
    return SliceElt(G, out)


def gmor_product(f: GMap, g: GMap) -> GMap:
    """``X x Z -> Y x W`` over ``G x H``."""
    src, dst = product_gset(f.source, g.source), product_gset(f.target, g.target)
    n, m = g.source.size, g.target.size
    image = tuple(f.image_of[p // n] * m + g.image_of[p % n] for p in range(src.size))
    return GMap(src, dst, image)


def gmor_diagonal_product(f: GMap, g: GMap) -> GMap:
    """The product of two morphisms over the same group, with the diagonal action."""
    if f.source.group is not g.source.group:
        raise ValidationError("morphisms over different groups")
    return restrict_map(gmor_product(f, g), diagonal(f.source.group))


def gmor_tensor(U: Biset, f: GMap) -> GMap:
    """``U x_G X -> U x_G Y``."""
    src, dst = tensor(U, f.source), tensor(U, f.target)
    ns, nt = f.source.size, f.target.size
    _, reps = _tensor_classes(U, ns, f.source.action)
    cls_t, _ = _tensor_classes(U, nt, f.target.action)
    return GMap(src, dst, tuple(cls_t[(r // ns) * nt + f.image_of[r % ns]] for r in reps))


def apply_biset(op: Op, X: GSet) -> GSet:
    return tensor(elementary_biset(op.kind, op), X)
