"""Posets of MC-pairs, their closed subsets, and the ideals they classify.

Everything here is truncated: the groups considered are the catalog groups of
order at most a bound, and every output records that bound.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import green
from .catalog import catalog
from .errors import ResourceError, TheoremViolation, ValidationError
from .green import GreenFunctor
from .grp import Group, GroupHom, are_isomorphic, direct_product
from .ops import Op, deflate, inf, ind, res
from .qburnside import is_B_group
from .shifted import GroupOverK, beta_K, graph_over_K, is_BK_group, iso_over_K, quotient_over_K, shifted_instance

CLOSED_SET_LIMIT = 20


@dataclass(frozen=True, eq=False)
class Node:
    group: Group
    index: int
    label: str


@dataclass(eq=False)
class MCPoset:
    """Nodes are classes of MC-pairs under mutual domination; ``rel[a][b]`` is ``a >> b``."""

    instance: str
    bound: int
    nodes: list[Node]
    rel: list[list[bool]]
    members: list[list[Node]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.nodes)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(a, b)`` with ``a >> b`` and nothing strictly between."""
        n = len(self.nodes)
        out = []
        for a in range(n):
            for b in range(n):
                if a == b or not self.rel[a][b]:
                    continue
                if not any(c not in (a, b) and self.rel[a][c] and self.rel[c][b] for c in range(n)):
                    out.append((a, b))
        return out

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "instance": self.instance,
            "bound": self.bound,
            "nodes": [{"id": i, "group": n.group.name, "idempotent": n.index, "label": n.label} for i, n in enumerate(self.nodes)],
            "edges": [list(e) for e in self.covers()],
        }

    def to_dot(self) -> str:
        lines = [f'digraph "{self.instance} bound {self.bound}" {{']
        for i, n in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{n.group.name}:{n.index}"];')
        for a, b in self.covers():
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_preorder(rel: list[list[bool]], what: str) -> None:
    n = len(rel)
    for a in range(n):
        if not rel[a][a]:
            raise TheoremViolation(f"{what}: relation is not reflexive")
        for b in range(n):
            if rel[a][b]:
                for c in range(n):
                    if rel[b][c] and not rel[a][c]:
                        raise TheoremViolation(f"{what}: relation is not transitive")


def _collapse(instance: str, bound: int, pairs: list[Node], rel: list[list[bool]]) -> MCPoset:
    _check_preorder(rel, instance)
    n = len(pairs)
    cls = [-1] * n
    reps: list[int] = []
    for a in range(n):
        if cls[a] < 0:
            cls[a] = len(reps)
            reps.append(a)
            for b in range(a + 1, n):
                if cls[b] < 0 and rel[a][b] and rel[b][a]:
                    cls[b] = cls[a]
    nodes = [pairs[r] for r in reps]
    members = [[pairs[b] for b in range(n) if cls[b] == c] for c in range(len(reps))]
    crel = [[rel[a][b] for b in reps] for a in reps]
    return MCPoset(instance, bound, nodes, crel, members)


def mc_pairs(inst: GreenFunctor, groups: list[Group]) -> list[Node]:
    out = []
    for G in groups:
        labels = inst.evaluation(G).idempotent_labels()
        for i in green.mc_idempotents(inst, G):
            out.append(Node(G, i, labels[i]))
    return out


def build_poset(inst: GreenFunctor, max_order: int, cross_check: bool = False) -> MCPoset:
    """MC-pairs over the catalog up to ``max_order``, collapsed by mutual domination.

    Pairs are ordered by (group order, catalog position, idempotent index) and
    each class is represented by its first pair.  With ``cross_check`` the
    domination criterion is compared with ideal membership, and for the
    Burnside functor with the quotient relation.
    """
    groups = catalog(max_order)
    pairs = mc_pairs(inst, groups)
    rel = [[green.dominates(inst, a.group, a.index, b.group, b.index, cross_check) for b in pairs] for a in pairs]
    if cross_check and inst.name == "burnside":
        for x, a in enumerate(pairs):
            for y, b in enumerate(pairs):
                if rel[x][y] != has_quotient(a.group, b.group):
                    raise TheoremViolation(f"domination of {a.group.name} over {b.group.name} differs from the quotient relation")
    return _collapse(inst.name, max_order, pairs, rel)


def has_quotient(G: Group, H: Group) -> bool:
    """Whether ``H`` is isomorphic to a quotient of ``G``."""
    if G.order % H.order:
        return False
    for N in G.normal_subgroups():
        if N.order * H.order == G.order and are_isomorphic(G.quotient(N)[0], H) is not None:
            return True
    return False


def bgroup_poset(max_order: int) -> MCPoset:
    """B-groups up to ``max_order`` ordered by ``G >> H`` iff ``H`` is a quotient of ``G``."""
    groups = [G for G in catalog(max_order) if is_B_group(G)[0]]
    nodes = [Node(G, len(G.subgroup_classes()) - 1, f"e_{G.name}") for G in groups]
    rel = [[has_quotient(a.group, b.group) for b in nodes] for a in nodes]
    return _collapse("burnside-quotient", max_order, nodes, rel)


# ---------------------------------------------------------------------------
# closed sets


@dataclass(frozen=True, eq=False)
class ClosedSet:
    poset: MCPoset
    members: frozenset[int]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ClosedSet) and other.poset is self.poset and other.members == self.members

    def __hash__(self) -> int:
        return hash(self.members)

    def labels(self) -> list[str]:
        return [f"{self.poset.nodes[i].group.name}:{self.poset.nodes[i].index}" for i in sorted(self.members)]


def is_closed(poset: MCPoset, members) -> bool:
    s = set(members)
    return all(a in s for b in s for a in range(len(poset)) if poset.rel[a][b])


def closed_sets(poset: MCPoset, limit: int | None = None) -> list[ClosedSet]:
    """Every subset ``B`` with ``a >> b in B => a in B``, sorted by size then members."""
    limit = CLOSED_SET_LIMIT if limit is None else limit
    n = len(poset)
    if n > limit:
        raise ResourceError(f"{n} nodes exceed the closed-set enumeration limit {limit}; lower --max-order")
    down = [sum(poset.rel[a]) for a in range(n)]
    order = sorted(range(n), key=lambda a: (-down[a], a))  # dominators first
    above = [[a for a in range(n) if a != b and poset.rel[a][b]] for b in range(n)]
    out: list[frozenset[int]] = []

    def rec(pos: int, chosen: set[int]):
        if pos == n:
            out.append(frozenset(chosen))
            return
        b = order[pos]
        rec(pos + 1, chosen)
        if all(a in chosen for a in above[b]):
            chosen.add(b)
            rec(pos + 1, chosen)
            chosen.discard(b)

    rec(0, set())
    out.sort(key=lambda s: (len(s), sorted(s)))
    return [ClosedSet(poset, s) for s in out]


# ---------------------------------------------------------------------------
# truncated ideals


@dataclass(eq=False)
class TruncatedIdeal:
    """Idempotent supports of an ideal at every catalog group up to ``bound``."""

    instance: GreenFunctor
    bound: int
    groups: list[Group]
    support: list[frozenset[int]]

    def at(self, G: Group) -> frozenset[int]:
        for H, s in zip(self.groups, self.support):
            if H is G:
                return s
        raise ValidationError(f"{G.name} is outside the truncation")

    def key(self) -> tuple:
        return tuple(tuple(sorted(s)) for s in self.support)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncatedIdeal) and self.bound == other.bound and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __le__(self, other: "TruncatedIdeal") -> bool:
        return all(a <= b for a, b in zip(self.support, other.support))

    def to_json(self) -> dict:
        return {G.name: sorted(s) for G, s in zip(self.groups, self.support)}


def ideal_of(inst: GreenFunctor, generators: list[tuple[Group, int]], bound: int) -> TruncatedIdeal:
    """The ideal generated by the given idempotents, evaluated up to ``bound``."""
    groups = catalog(bound)
    support = []
    for G in groups:
        s: set[int] = set()
        for H, h in generators:
            s |= green.ideal_support(inst, H, h, G)
        support.append(frozenset(s))
    return TruncatedIdeal(inst, bound, groups, support)


def _catalog_match(X: Group, groups: list[Group]) -> tuple[Group, GroupHom] | None:
    for C in groups:
        if C.order == X.order:
            if C is X:
                return C, GroupHom(X, C, tuple(range(X.order)))
            phi = are_isomorphic(X, C)
            if phi is not None:
                return C, phi
    return None


def check_ideal(ideal: TruncatedIdeal) -> list[str]:
    """Closure of the supports under the elementary operations between truncation groups.

    Each subgroup and quotient of a truncation group is matched with an
    isomorphic truncation group; the returned list describes violations.
    """
    inst, groups = ideal.instance, ideal.groups
    problems = []
    for G, sG in zip(groups, ideal.support):
        targets = []
        for c in G.subgroup_classes()[:-1]:
            H = G.subgroups()[c.rep]
            targets.append((res(G, H), ind(G, H)))
        for N in G.normal_subgroups():
            if N.order > 1:
                targets.append((deflate(G, N), inf(G, N)))
        for down, up in targets:
            X = down.target
            m = _catalog_match(X, groups)
            if m is None:
                continue
            C, phi = m
            sC = ideal.at(C)
            to_c, from_c = Op("iso", phi), Op("iso", phi.inverse())
            for e in sG:
                for x in inst.idem_apply(down, e):
                    if not set(inst.idem_apply(to_c, x)) <= sC:
                        problems.append(f"{down} leaves the ideal at {G.name}")
            for e in sC:
                for x in inst.idem_apply(from_c, e):
                    if not set(inst.idem_apply(up, x)) <= sG:
                        problems.append(f"{up} leaves the ideal at {C.name}")
    return problems


class LatticeContext:
    """A poset together with the ideal evaluations of its nodes."""

    def __init__(self, inst: GreenFunctor, poset: MCPoset):
        self.inst = inst
        self.poset = poset
        self.groups = catalog(poset.bound)
        self.node_support = [
            [green.ideal_support(inst, n.group, n.index, G) for G in self.groups] for n in poset.nodes
        ]

    def psi(self, B: ClosedSet) -> TruncatedIdeal:
        if not is_closed(self.poset, B.members):
            raise ValidationError("psi needs a closed set")
        support = []
        for g in range(len(self.groups)):
            s: set[int] = set()
            for b in B.members:
                s |= self.node_support[b][g]
            support.append(frozenset(s))
        return TruncatedIdeal(self.inst, self.poset.bound, self.groups, support)

    def theta(self, ideal: TruncatedIdeal) -> ClosedSet:
        if ideal.bound < self.poset.bound:
            raise ValidationError("ideal truncation is below the poset bound")
        members = frozenset(i for i, n in enumerate(self.poset.nodes) if n.index in ideal.at(n.group))
        if not is_closed(self.poset, members):
            raise TheoremViolation("theta produced a set that is not closed")
        return ClosedSet(self.poset, members)


def theta(inst: GreenFunctor, ideal: TruncatedIdeal, poset: MCPoset) -> ClosedSet:
    return LatticeContext(inst, poset).theta(ideal)


def psi(poset: MCPoset, B: ClosedSet, inst: GreenFunctor) -> TruncatedIdeal:
    return LatticeContext(inst, poset).psi(B)


@dataclass
class Report:
    instance: str
    bound: int
    checks: list[dict] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "pass": bool(ok), "detail": detail})

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {"schema": 1, "instance": self.instance, "bound": self.bound, "pass": self.ok, "checks": self.checks}


def verify_lattice_iso(inst: GreenFunctor, max_order: int, triple_limit: int = 1_000_000) -> tuple[Report, list[ClosedSet], list[TruncatedIdeal]]:
    """Round-trip Theta/Psi on every closed set and check the lattice laws.

    Returns the report, the closed sets and their ideals.
    """
    rep = Report(inst.name, max_order)
    poset = build_poset(inst, max_order)
    ctx = LatticeContext(inst, poset)
    sets = closed_sets(poset)
    ideals = [ctx.psi(B) for B in sets]
    rep.add("closed sets", True, f"{len(poset)} nodes, {len(sets)} closed sets")
    for B, I in zip(sets, ideals):
        name = "{" + ", ".join(B.labels()) + "}"
        problems = check_ideal(I)
        rep.add(f"psi{name} is an ideal", not problems, "; ".join(problems[:3]))
        rep.add(f"theta(psi{name}) = {name}", ctx.theta(I) == B)
        rep.add(f"psi(theta(psi{name})) = psi{name}", ctx.psi(ctx.theta(I)) == I)
    rep.add("psi is injective", len(set(ideals)) == len(ideals))
    mono = all((A.members <= B.members) == (I <= J) for A, I in zip(sets, ideals) for B, J in zip(sets, ideals))
    rep.add("theta and psi are monotone", mono)
    index = {B.members: k for k, B in enumerate(sets)}
    closed_ops = all(a.members | b.members in index and a.members & b.members in index for a in sets for b in sets)
    rep.add("closed sets are closed under union and intersection", closed_ops)
    if len(sets) ** 3 <= triple_limit:
        dist = True
        for a, b, c in itertools.product(sets, repeat=3):
            x, y, z = a.members, b.members, c.members
            if x & (y | z) != (x & y) | (x & z) or x | (y & z) != (x | y) & (x | z):
                dist = False
                break
        rep.add("distributive on all triples", dist, f"{len(sets) ** 3} triples")
    else:
        rep.add("distributive on all triples", True, f"skipped: {len(sets) ** 3} triples exceed {triple_limit}")
    return rep, sets, ideals


# ---------------------------------------------------------------------------
# B_K-groups


@dataclass(eq=False)
class BKPoset:
    K: Group
    bound: int
    nodes: list[GroupOverK]
    rel: list[list[bool]]  # rel[a][b]: a ->> b (b is a quotient of a)

    def to_poset(self) -> MCPoset:
        nodes = [Node(n.L, 0, f"({n.label},{list(n.phi.image_of)})") for n in self.nodes]
        return MCPoset(f"bk:{self.K.name}", self.bound, nodes, self.rel, [[x] for x in nodes])


def rho(K: Group, L: Group, i: int) -> GroupOverK:
    """``(L, e^{L x K}_X) -> beta_K(X, p_2)``."""
    P = direct_product(L, K).group
    out = beta_K(graph_over_K(L, K, P.class_rep(i)))
    if not is_BK_group(out)[0]:
        raise TheoremViolation("beta_K returned a group that is not a B_K-group")
    return out


def bk_poset(K: Group, max_order: int) -> tuple[BKPoset, MCPoset, list[int]]:
    """B_K-groups reached by ``rho`` from the shifted MC-poset up to ``max_order``.

    Returns the B_K poset, the generic shifted MC-poset and the node map
    ``rho``; raises if ``rho`` is not an order isomorphism.
    """
    inst = shifted_instance(K)
    generic = build_poset(inst, max_order)
    nodes: list[GroupOverK] = []
    image = []
    for members in generic.members:
        imgs = [rho(K, m.group, m.index) for m in members]
        first = imgs[0]
        for other in imgs[1:]:
            if not iso_over_K(first, other):
                raise TheoremViolation("rho is not constant on a domination class")
        for n in nodes:
            if iso_over_K(n, first):
                raise TheoremViolation("rho identifies two distinct domination classes")
        image.append(len(nodes))
        nodes.append(first)
    rel = [[quotient_over_K(a, b) for b in nodes] for a in nodes]
    for a in range(len(nodes)):
        for b in range(len(nodes)):
            if generic.rel[a][b] != rel[image[a]][image[b]]:
                raise TheoremViolation("rho does not preserve the order")
    return BKPoset(K, max_order, nodes, rel), generic, image
