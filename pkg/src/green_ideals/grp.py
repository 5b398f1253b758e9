"""Finite groups stored as full multiplication tables.

Everything here works on element indices.  Subsets of a group (subgroups,
cosets, conjugates) are carried around internally as Python ``int`` bitmasks,
which makes containment and intersection tests cheap; the public
:class:`Subgroup` wrapper exposes the sorted element tuple as well.

All orderings are deterministic: subgroups sort by ``(order, elements)``,
conjugacy classes by their least member, slices by
``(|T|, |S|, elements of T, elements of S)``.
"""
from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import ResourceError, ValidationError

#: Order caps.  ``order`` guards groups built from user input, ``product``
#: guards transient groups created internally (direct products mostly).
CAPS = {"order": 128, "product": 4096}


def set_caps(order: int | None = None, product: int | None = None) -> None:
    if order is not None:
        CAPS["order"] = int(order)
    if product is not None:
        CAPS["product"] = int(product)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    if mask < 1 << 64:
        return [i for i in range(mask.bit_length()) if mask >> i & 1]
    s = bin(mask)
    n = len(s) - 1
    return [n - i for i in range(n, 1, -1) if s[i] == "1"]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by the bitmask of its elements."""

    parent: "Group"
    mask: int

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.mask == self.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"Subgroup({self.parent.name}, order={self.order}, elements={list(self.elements)})"


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by the image of every source element."""

    source: "Group"
    target: "Group"
    image_of: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image_of[x]

    def image(self, mask: int) -> int:
        m = 0
        img = self.image_of
        for x in bits(mask):
            m |= 1 << img[x]
        return m

    def preimage(self, mask: int) -> int:
        m = 0
        for x, y in enumerate(self.image_of):
            if mask >> y & 1:
                m |= 1 << x
        return m

    @cached_property
    def kernel(self) -> int:
        e = self.target.identity
        return mask_of(x for x, y in enumerate(self.image_of) if y == e)

    @cached_property
    def image_mask(self) -> int:
        return mask_of(self.image_of)

    def is_injective(self) -> bool:
        return self.kernel == 1 << self.source.identity

    def is_surjective(self) -> bool:
        return self.image_mask == (1 << self.target.order) - 1

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self ∘ inner``."""
        if inner.target is not self.source:
            raise ValidationError("homomorphisms are not composable")
        return GroupHom(inner.source, self.target, tuple(self.image_of[y] for y in inner.image_of))

    def inverse(self) -> "GroupHom":
        if not (self.is_injective() and self.is_surjective()):
            raise ValidationError("only isomorphisms can be inverted")
        inv = [0] * self.target.order
        for x, y in enumerate(self.image_of):
            inv[y] = x
        return GroupHom(self.target, self.source, tuple(inv))

    def check(self) -> None:
        s, t, f = self.source, self.target, self.image_of
        if len(f) != s.order or any(not 0 <= y < t.order for y in f):
            raise ValidationError("image array has the wrong shape")
        for x in range(s.order):
            row, fx = s.table[x], t.table[f[x]]
            for y in range(s.order):
                if f[row[y]] != fx[f[y]]:
                    raise ValidationError("map is not multiplicative")


@dataclass(frozen=True)
class SubgroupClass:
    rep: int  # index into Group.subgroups()
    members: tuple[int, ...]
    normalizer_order: int


@dataclass(frozen=True, eq=False)
class Slice:
    """A pair ``small <= big`` of subgroups of the same group."""

    parent: "Group"
    big: Subgroup
    small: Subgroup

    def __post_init__(self):
        if not self.small <= self.big:
            raise ValidationError("slice requires small <= big")


@dataclass(frozen=True)
class SliceClass:
    big: int  # subgroup index of T
    small: int  # subgroup index of S
    normalizer_order: int  # |N_G(T) ∩ N_G(S)|
    size: int  # number of pairs in the conjugacy class


class MoebiusTable:
    """Möbius function of the subgroup lattice, filled lazily per upper end."""

    def __init__(self, group: "Group"):
        self.parent = group
        self._to: dict[int, dict[int, int]] = {}
        self._lock = threading.Lock()

    def mu_to(self, h: int) -> dict[int, int]:
        """``{k: mu(K, H)}`` for every subgroup ``K <= H``; indices, not masks."""
        got = self._to.get(h)
        if got is not None:
            return got
        subs = self.parent.subgroups()
        hm = subs[h].mask
        below = [k for k in range(h + 1) if subs[k].mask & ~hm == 0]
        masks = [subs[k].mask for k in below]
        mu = [0] * len(below)
        mu[-1] = 1
        for a in range(len(below) - 2, -1, -1):
            ma = masks[a]
            s = 0
            for b in range(a + 1, len(below)):
                if mu[b] and masks[b] & ma == ma:
                    s += mu[b]
            mu[a] = -s
        out = dict(zip(below, mu))
        with self._lock:
            self._to[h] = out
        return out

    def mu_from(self, k: int) -> dict[int, int]:
        """``{h: mu(K, H)}`` over ``H >= K`` by the recursion on the lower end."""
        subs = self.parent.subgroups()
        km = subs[k].mask
        above = [h for h in range(k, len(subs)) if subs[h].mask & km == km]
        masks = [subs[h].mask for h in above]
        mu = [0] * len(above)
        mu[0] = 1
        for a in range(1, len(above)):
            ma = masks[a]
            mu[a] = -sum(mu[b] for b in range(a) if masks[b] & ~ma == 0)
        return dict(zip(above, mu))

    def __call__(self, k: int, h: int) -> int:
        subs = self.parent.subgroups()
        if subs[k].mask & ~subs[h].mask:
            raise ValidationError("Möbius function queried on an incomparable pair")
        return self.mu_to(h)[k]

    @property
    def values(self) -> dict[tuple[int, int], int]:
        out = {}
        for h in range(len(self.parent.subgroups())):
            for k, v in self.mu_to(h).items():
                out[k, h] = v
        return out


class Group:
    """A finite group given by its multiplication table.

    ``table[i][j]`` is the index of the product of elements ``i`` and ``j``.
    Derived data (subgroups, classes, quotients, ...) is computed on first
    use and memoised on the instance.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G", labels=None, check: bool = False):
        n = len(table)
        if n == 0:
            raise ValidationError("a group has at least one element")
        if n > CAPS["product"]:
            raise ResourceError(f"group order {n} exceeds the product cap {CAPS['product']}")
        self.table = [list(row) for row in table]
        self.order = n
        self.name = name
        self.labels = labels
        ident = [i for i in range(n) if self.table[i] == list(range(n))]
        if len(ident) != 1:
            raise ValidationError("table has no unique left identity")
        self.identity = ident[0]
        inv = [-1] * n
        for i in range(n):
            row = self.table[i]
            for j in range(n):
                if row[j] == self.identity:
                    inv[i] = j
                    break
        if -1 in inv:
            raise ValidationError("some element has no inverse")
        self.inverse = inv
        self._cache: dict = {}
        self._lock = threading.RLock()
        if check:
            self.check()

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def check(self) -> None:
        """Exhaustive verification of the group axioms."""
        t, n, e = self.table, self.order, self.identity
        for row in t:
            if sorted(row) != list(range(n)):
                raise ValidationError("table rows must be permutations")
        for i in range(n):
            if t[i][e] != i or t[e][i] != i:
                raise ValidationError("identity is not two-sided")
            if t[self.inverse[i]][i] != e or t[i][self.inverse[i]] != e:
                raise ValidationError("inverse is not two-sided")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValidationError("table is not associative")

    def _memo(self, key, build):
        got = self._cache.get(key)
        if got is None:
            with self._lock:
                got = self._cache.get(key)
                if got is None:
                    got = build()
                    self._cache[key] = got
        return got

    # -- elements ---------------------------------------------------------

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = self.table[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def center_mask(self) -> int:
        t = self.table
        gens = self.generators
        return mask_of(x for x in range(self.order) if all(t[x][g] == t[g][x] for g in gens))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        cand = sorted(range(self.order), key=lambda x: (-self.element_orders[x], x))
        gens: list[int] = []
        elems, mask = [self.identity], 1 << self.identity
        for x in cand:
            if mask >> x & 1:
                continue
            gens.append(x)
            elems, mask = self._close(elems, mask, gens)
            if len(elems) == self.order:
                break
        return tuple(gens)

    def _close(self, elems: list[int], mask: int, gens: Sequence[int]) -> tuple[list[int], int]:
        """Close the subgroup ``elems`` (with mask) under right multiplication by gens."""
        elems = list(elems)
        t = self.table
        i = 0
        while i < len(elems):
            row = t[elems[i]]
            for g in gens:
                y = row[g]
                if not mask >> y & 1:
                    mask |= 1 << y
                    elems.append(y)
            i += 1
        return elems, mask

    def generated(self, gens: Iterable[int]) -> int:
        """Mask of the subgroup generated by ``gens``."""
        return self._close([self.identity], 1 << self.identity, list(gens))[1]

    def conjugate_mask(self, g: int, mask: int) -> int:
        """Mask of ``g K g^-1``."""
        if self.is_abelian:
            return mask
        t, gi = self.table, self.inverse[g]
        tg = t[g]
        m = 0
        for x in bits(mask):
            m |= 1 << t[tg[x]][gi]
        return m

    def is_subgroup_mask(self, mask: int) -> bool:
        if not mask >> self.identity & 1:
            return False
        el = bits(mask)
        t = self.table
        return all(mask >> t[a][b] & 1 for a in el for b in el)

    # -- subgroups --------------------------------------------------------

    def subgroups(self) -> list[Subgroup]:
        return self._memo("subgroups", self._enumerate_subgroups)

    def _enumerate_subgroups(self) -> list[Subgroup]:
        if self.order > CAPS["product"]:
            raise ResourceError(f"subgroup enumeration beyond cap {CAPS['product']}")
        e = self.identity
        found: dict[int, tuple[list[int], list[int]]] = {1 << e: ([e], [])}
        cyclic: dict[int, int] = {}
        for g in range(self.order):
            m = self.generated([g])
            if m not in cyclic:
                cyclic[m] = g
        cyc = sorted(cyclic.items(), key=lambda kv: (popcount(kv[0]), kv[1]))
        frontier = []
        for m, g in cyc:
            if m not in found:
                found[m] = (bits(m), [g])
                frontier.append(m)
        while frontier:
            nxt = []
            for sm in frontier:
                elems, gens = found[sm]
                for cm, g in cyc:
                    if cm & ~sm == 0:
                        continue
                    _, jm = self._close(elems, sm, gens + [g])
                    if jm not in found:
                        found[jm] = (bits(jm), gens + [g])
                        nxt.append(jm)
            frontier = nxt
        masks = sorted(found, key=lambda m: (popcount(m), bits(m)))
        subs = [Subgroup(self, m) for m in masks]
        self._cache["subgroup_gens"] = {m: tuple(found[m][1]) for m in masks}
        return subs

    def subgroup_index(self, mask: int) -> int:
        idx = self._memo("subgroup_index", lambda: {s.mask: i for i, s in enumerate(self.subgroups())})
        try:
            return idx[mask]
        except KeyError:
            raise ValidationError("not a subgroup of this group") from None

    def subgroup(self, elements: Iterable[int] | int) -> Subgroup:
        mask = elements if isinstance(elements, int) else mask_of(elements)
        return self.subgroups()[self.subgroup_index(mask)]

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups()[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups()[-1]

    def subgroup_classes(self) -> list[SubgroupClass]:
        return self._memo("classes", self._classify_subgroups)

    def _classify_subgroups(self) -> list[SubgroupClass]:
        subs = self.subgroups()
        index = {s.mask: i for i, s in enumerate(subs)}
        seen = [-1] * len(subs)
        classes = []
        gens = self.generators
        for i, s in enumerate(subs):
            if seen[i] >= 0:
                continue
            if self.is_abelian:
                orbit = [s.mask]
            else:
                orbit, todo = {s.mask}, [s.mask]
                while todo:
                    m = todo.pop()
                    for g in gens:
                        c = self.conjugate_mask(g, m)
                        if c not in orbit:
                            orbit.add(c)
                            todo.append(c)
            members = tuple(sorted(index[m] for m in orbit))
            for j in members:
                seen[j] = len(classes)
            classes.append(SubgroupClass(i, members, self.order // len(members)))
        self._cache["class_of"] = seen
        return classes

    def class_of(self, sub: int | Subgroup) -> int:
        """Class index of a subgroup given by index or :class:`Subgroup`."""
        self.subgroup_classes()
        if isinstance(sub, Subgroup):
            sub = self.subgroup_index(sub.mask)
        return self._cache["class_of"][sub]

    def class_of_mask(self, mask: int) -> int:
        return self.class_of(self.subgroup_index(mask))

    def class_rep(self, c: int) -> Subgroup:
        return self.subgroups()[self.subgroup_classes()[c].rep]

    def normalizer_mask(self, mask: int) -> int:
        return mask_of(g for g in range(self.order) if self.conjugate_mask(g, mask) == mask)

    def normalizer(self, H: Subgroup) -> Subgroup:
        _own(self, H)
        return self.subgroup(self.normalizer_mask(H.mask))

    def is_normal_mask(self, mask: int) -> bool:
        return all(self.conjugate_mask(g, mask) == mask for g in self.generators)

    def normal_subgroups(self) -> list[Subgroup]:
        subs = self.subgroups()
        return [subs[c.rep] for c in self.subgroup_classes() if len(c.members) == 1]

    def minimal_normal_subgroups(self) -> list[Subgroup]:
        nontriv = [n for n in self.normal_subgroups() if n.order > 1]
        return [n for n in nontriv if not any(m < n for m in nontriv)]

    def maximal_subgroup_classes(self) -> list[int]:
        """Class indices of maximal subgroups (class reps are used)."""
        subs = self.subgroups()
        out = []
        for c, cl in enumerate(self.subgroup_classes()):
            h = subs[cl.rep]
            if h.order == self.order:
                continue
            hm = h.mask
            if not any(s.mask != hm and s.mask & hm == hm and s.order < self.order for s in subs):
                out.append(c)
        return out

    def maximal_subgroups(self) -> list[Subgroup]:
        return [self.class_rep(c) for c in self.maximal_subgroup_classes()]

    def subgroup_generators(self, mask: int) -> tuple[int, ...]:
        self.subgroups()
        return self._cache["subgroup_gens"][mask]

    def subgroup_group(self, H: Subgroup | int) -> tuple["Group", GroupHom]:
        """``H`` as a group of its own, together with the inclusion into ``self``."""
        mask = H.mask if isinstance(H, Subgroup) else H
        return self._memo(("subgroup_group", mask), lambda: self._build_subgroup_group(mask))

    def _build_subgroup_group(self, mask: int):
        if mask == (1 << self.order) - 1:
            return self, GroupHom(self, self, tuple(range(self.order)))
        el = bits(mask)
        pos = {x: i for i, x in enumerate(el)}
        t = self.table
        table = [[pos[t[a][b]] for b in el] for a in el]
        sub = Group(table, name="1" if len(el) == 1 else f"{self.name}[{len(el)}]")
        return sub, GroupHom(sub, self, tuple(el))

    def quotient(self, N: Subgroup | int) -> tuple["Group", GroupHom]:
        mask = N.mask if isinstance(N, Subgroup) else N
        return self._memo(("quotient", mask), lambda: self._build_quotient(mask))

    def _build_quotient(self, mask: int):
        if not self.is_subgroup_mask(mask) or not self.is_normal_mask(mask):
            raise ValidationError("quotient requires a normal subgroup")
        if mask == 1 << self.identity:
            return self, GroupHom(self, self, tuple(range(self.order)))
        t = self.table
        nel = bits(mask)
        coset = [-1] * self.order
        reps = []
        for x in range(self.order):
            if coset[x] < 0:
                for m in nel:
                    coset[t[x][m]] = len(reps)
                reps.append(x)
        table = [[coset[t[a][b]] for b in reps] for a in reps]
        if len(nel) == 1:
            name = self.name
        elif len(nel) == self.order:
            name = "1"
        else:
            name = f"{self.name}/{len(nel)}"
        q = Group(table, name=name)
        return q, GroupHom(self, q, tuple(coset))

    def moebius(self) -> MoebiusTable:
        return self._memo("moebius", lambda: MoebiusTable(self))

    # -- slices -----------------------------------------------------------

    def slice_classes(self) -> list[SliceClass]:
        return self._memo("slices", self._classify_slices)

    def _classify_slices(self) -> list[SliceClass]:
        subs = self.subgroups()
        index = {s.mask: i for i, s in enumerate(subs)}
        out = []
        class_of: dict[tuple[int, int], int] = {}
        for cl in self.subgroup_classes():
            T = subs[cl.rep]
            nt = bits(self.normalizer_mask(T.mask))
            below = [i for i in range(cl.rep + 1) if subs[i].mask & ~T.mask == 0]
            done: set[int] = set()
            for s in below:
                if s in done:
                    continue
                sm = subs[s].mask
                orbit = {self.conjugate_mask(g, sm) for g in nt}
                done.update(index[m] for m in orbit)
                stab = popcount(mask_of(g for g in nt if self.conjugate_mask(g, sm) == sm))
                out.append((T, subs[s], stab, len(orbit) * len(cl.members)))
        out.sort(key=lambda r: (r[0].order, r[1].order, r[0].elements, r[1].elements))
        classes = []
        for k, (T, S, stab, size) in enumerate(out):
            ti, si = index[T.mask], index[S.mask]
            classes.append(SliceClass(ti, si, stab, size))
            pairs = {(self.conjugate_mask(g, T.mask), self.conjugate_mask(g, S.mask)) for g in range(self.order)}
            for tm, sm in pairs:
                class_of[index[tm], index[sm]] = k
        self._cache["slice_class_of"] = class_of
        return classes

    def slice_class_of(self, big: int, small: int) -> int:
        """Slice class of the pair of subgroup indices ``(T, S)``."""
        self.slice_classes()
        try:
            return self._cache["slice_class_of"][big, small]
        except KeyError:
            raise ValidationError("not a slice of this group") from None

    def slice_class_of_masks(self, big: int, small: int) -> int:
        return self.slice_class_of(self.subgroup_index(big), self.subgroup_index(small))


def _own(G: Group, H: Subgroup) -> None:
    if H.parent is not G:
        raise ValidationError("subgroup belongs to a different group")


# -- constructors ---------------------------------------------------------


def _perm_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # (a*b)(i) = a(b(i))
    return tuple(a[i] for i in b)


def from_permutations(degree: int, generators: Sequence[Sequence[int]], name: str = "G", cap: int | None = None) -> Group:
    """The permutation group generated by ``generators`` (0-based image arrays).

    Elements are numbered breadth-first over generator words, generators taken
    in input order, starting from the identity at index 0.
    """
    cap = CAPS["order"] if cap is None else cap
    if degree < 1:
        raise ValidationError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValidationError(f"generator {list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = _perm_mul(x, g)
            if y not in index:
                if len(elems) >= cap:
                    raise ResourceError(f"generated group exceeds the order cap {cap}")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[_perm_mul(a, b)] for b in elems] for a in elems]
    return Group(table, name=name, labels=elems)


@dataclass(frozen=True)
class Product:
    group: Group
    p1: GroupHom
    p2: GroupHom
    i1: GroupHom
    i2: GroupHom


def direct_product(G: Group, H: Group, name: str | None = None) -> Product:
    """``G x H`` with element ``(g, h)`` at index ``g*|H| + h``.

    Products are memoised on ``G`` so repeated calls return the same objects.
    """
    n, m = G.order, H.order
    if n * m > CAPS["product"]:
        raise ResourceError(f"product {G.name} x {H.name} of order {n * m} exceeds the product cap {CAPS['product']}")
    key = ("product", id(H))
    got = G._cache.get(key)
    if got is not None and got.p2.target is H:
        return got
    gt, ht = G.table, H.table
    table = []
    for g in range(n):
        grow = gt[g]
        for h in range(m):
            hrow = ht[h]
            table.append([grow[g2] * m + hrow[h2] for g2 in range(n) for h2 in range(m)])
    if name is None:
        name = _product_name(G, H)
    P = Group(table, name=name)
    prod = Product(
        P,
        GroupHom(P, G, tuple(x // m for x in range(n * m))),
        GroupHom(P, H, tuple(x % m for x in range(n * m))),
        GroupHom(G, P, tuple(g * m + H.identity for g in range(n))),
        GroupHom(H, P, tuple(G.identity * m + h for h in range(m))),
    )
    with G._lock:
        G._cache[key] = prod
    return prod


def _product_name(G: Group, H: Group) -> str:
    if G.order == 1:
        return H.name
    if H.order == 1:
        return G.name
    return f"{G.name}x{H.name}"


def hom_product(f: GroupHom, g: GroupHom) -> GroupHom:
    """``f x g`` between the (memoised) direct products."""
    src = direct_product(f.source, g.source).group
    dst = direct_product(f.target, g.target).group
    m, m2 = g.source.order, g.target.order
    fi, gi = f.image_of, g.image_of
    return GroupHom(src, dst, tuple(fi[x // m] * m2 + gi[x % m] for x in range(src.order)))


def identity_hom(G: Group) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


# -- functional surface ---------------------------------------------------


def all_subgroups(G: Group) -> list[Subgroup]:
    return G.subgroups()


def conjugacy_classes_of_subgroups(G: Group) -> list[tuple[Subgroup, list[Subgroup]]]:
    subs = G.subgroups()
    return [(subs[c.rep], [subs[i] for i in c.members]) for c in G.subgroup_classes()]


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    _own(G, H)
    if not G.is_subgroup_mask(H.mask):
        raise ValidationError("not a subgroup")
    return G.normalizer(H)


def normal_subgroups(G: Group) -> list[Subgroup]:
    return G.normal_subgroups()


def is_normal(G: Group, H: Subgroup) -> bool:
    _own(G, H)
    if not G.is_subgroup_mask(H.mask):
        raise ValidationError("not a subgroup")
    return G.is_normal_mask(H.mask)


def quotient(G: Group, N: Subgroup) -> tuple[Group, GroupHom]:
    _own(G, N)
    return G.quotient(N)


def double_cosets(G: Group, H: Subgroup, K: Subgroup) -> list[int]:
    """Least element of each double coset ``H g K``."""
    return [r for r, _ in double_coset_masks(G, H.mask, K.mask)]


def double_coset_masks(G: Group, hmask: int, kmask: int) -> list[tuple[int, int]]:
    key = ("dc", hmask, kmask)
    got = G._cache.get(key)
    if got is not None:
        return got
    t = G.table
    hel, kel = bits(hmask), bits(kmask)
    seen = 0
    out = []
    for g in range(G.order):
        if seen >> g & 1:
            continue
        m = 0
        for h in hel:
            hg = t[h][g]
            row = t[hg]
            for k in kel:
                m |= 1 << row[k]
        seen |= m
        out.append((g, m))
    G._cache[key] = out
    return out


def moebius_table(G: Group) -> MoebiusTable:
    return G.moebius()


def slice_classes(G: Group) -> list[tuple[Slice, Subgroup]]:
    subs = G.subgroups()
    out = []
    for c in G.slice_classes():
        T, S = subs[c.big], subs[c.small]
        n = G.subgroup(G.normalizer_mask(T.mask) & G.normalizer_mask(S.mask))
        out.append((Slice(G, T, S), n))
    return out


# -- homomorphisms and isomorphism ----------------------------------------


def _extend(G: Group, H: Group, gens: Sequence[int], imgs: Sequence[int]) -> list[int] | None:
    """Extend ``gens[i] -> imgs[i]`` multiplicatively over <gens>, or None if inconsistent."""
    img = [-1] * G.order
    img[G.identity] = H.identity
    queue = [G.identity]
    gt, ht = G.table, H.table
    pairs = list(zip(gens, imgs))
    i = 0
    while i < len(queue):
        x = queue[i]
        ix = img[x]
        grow, hrow = gt[x], ht[ix]
        for g, a in pairs:
            y, b = grow[g], hrow[a]
            if img[y] < 0:
                img[y] = b
                queue.append(y)
            elif img[y] != b:
                return None
        i += 1
    return img


def homomorphisms(L: Group, K: Group) -> list[GroupHom]:
    """Every homomorphism ``L -> K`` (backtracking over generator images)."""
    gens = L.generators
    out = []

    def rec(i: int, imgs: list[int]):
        if i == len(gens):
            img = _extend(L, K, gens, imgs)
            out.append(GroupHom(L, K, tuple(img)))
            return
        o = L.element_orders[gens[i]]
        for a in range(K.order):
            if o % K.element_orders[a]:
                continue
            if _extend(L, K, gens[: i + 1], imgs + [a]) is None:
                continue
            rec(i + 1, imgs + [a])

    rec(0, [])
    return out


def invariants(G: Group) -> tuple:
    return (
        G.order,
        G.is_abelian,
        tuple(sorted(Counter(G.element_orders).items())),
        popcount(G.center_mask),
    )


def _class_profile(G: Group) -> tuple:
    subs = G.subgroups()
    return tuple(sorted(Counter((subs[c.rep].order, len(c.members)) for c in G.subgroup_classes()).items()))


def are_isomorphic(G: Group, H: Group, allowed: Callable[[int, int], bool] | None = None) -> GroupHom | None:
    """An isomorphism ``G -> H`` if one exists, else ``None``.

    ``allowed(g, a)``, if given, restricts the image of each generator ``g``
    of ``G``; it is only consulted on generators.
    """
    if invariants(G) != invariants(H):
        return None
    if G.order <= 64 and _class_profile(G) != _class_profile(H):
        return None
    gens = G.generators
    cent_g = _centralizer_sizes(G)
    cent_h = _centralizer_sizes(H)

    def rec(i: int, imgs: list[int], img_mask: int):
        if i == len(gens):
            img = _extend(G, H, gens, imgs)
            if img is None or len(set(img)) != H.order:
                return None
            return GroupHom(G, H, tuple(img))
        g = gens[i]
        for a in range(H.order):
            if H.element_orders[a] != G.element_orders[g] or cent_h[a] != cent_g[g]:
                continue
            if img_mask >> a & 1:
                continue
            if allowed is not None and not allowed(g, a):
                continue
            part = _extend(G, H, gens[: i + 1], imgs + [a])
            if part is None:
                continue
            reached = [x for x in part if x >= 0]
            if len(set(reached)) != len(reached):
                continue
            got = rec(i + 1, imgs + [a], mask_of(reached))
            if got is not None:
                return got
        return None

    return rec(0, [], 0)


def _centralizer_sizes(G: Group) -> list[int]:
    t = G.table
    return [sum(1 for y in range(G.order) if t[x][y] == t[y][x]) for x in range(G.order)]


def inner_automorphisms(K: Group) -> list[GroupHom]:
    """Distinct conjugation maps of ``K``."""
    seen = {}
    t, inv = K.table, K.inverse
    for k in range(K.order):
        img = tuple(t[t[k][x]][inv[k]] for x in range(K.order))
        seen.setdefault(img, GroupHom(K, K, img))
    return list(seen.values())
