"""The shifted Burnside functor ``QB_K``: ``G -> QB(G x K)``.

Elementary operations act through ``U x K``, which for the five elementary
bisets means applying the same operation along ``f x id_K``.  Groups over
``K`` are pairs ``(L, phi: L -> K)``; they index the idempotents of the
evaluations through the subgroups ``L_phi`` of ``L x K``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .catalog import identify
from .errors import TheoremViolation, ValidationError
from .green import GreenFunctor
from .grp import (
    Group,
    GroupHom,
    Subgroup,
    are_isomorphic,
    direct_product,
    hom_product,
    identity_hom,
    inner_automorphisms,
    mask_of,
    popcount,
)
from .linalg import Vec
from .ops import Op
from .qburnside import BURNSIDE, BurnsideAlgebra, m_constant


class ShiftedBurnside(GreenFunctor):
    def __init__(self, K: Group):
        super().__init__()
        self.K = K
        self.name = f"shifted:{K.name}"
        self._lifted: dict[int, tuple[Op, Op]] = {}
        self._llock = threading.Lock()

    def shift(self, G: Group) -> Group:
        return direct_product(G, self.K).group

    def evaluation(self, G: Group) -> BurnsideAlgebra:
        return BURNSIDE.evaluation(self.shift(G))

    def lift(self, op: Op) -> Op:
        """``op`` along ``f x id_K``."""
        got = self._lifted.get(id(op))
        if got is None or got[0] is not op:
            lifted = Op(op.kind, hom_product(op.hom, identity_hom(self.K)))
            got = (op, lifted)
            with self._llock:
                self._lifted[id(op)] = got
        return got[1]

    def apply_basis(self, op: Op, k: int) -> Vec:
        return BURNSIDE.apply_basis(self.lift(op), k)

    def idem_apply(self, op: Op, i: int) -> Vec:
        return BURNSIDE.idem_apply(self.lift(op), i)


_instances: dict[int, tuple[Group, ShiftedBurnside]] = {}
_ilock = threading.Lock()


def shifted_instance(K: Group) -> ShiftedBurnside:
    got = _instances.get(id(K))
    if got is None or got[0] is not K:
        with _ilock:
            got = (K, ShiftedBurnside(K))
            _instances[id(K)] = got
    return got[1]


def shifted_external_product(K: Group, G: Group, H: Group, a: Vec, b: Vec) -> tuple[Group, Vec]:
    """``a x_{A_K} b`` computed directly in ``QB``.

    Form ``a x b`` in ``QB(G x K x H x K)``, restrict to
    ``{(g, k, h, k)}`` and transport to ``(G x H) x K``.
    """
    GK, HK = direct_product(G, K), direct_product(H, K)
    big = direct_product(GK.group, HK.group)
    evb = BURNSIDE.evaluation(big.group)
    x = evb.mult(BURNSIDE.apply(Op("inf", big.p1), a), BURNSIDE.apply(Op("inf", big.p2), b))
    GH = direct_product(G, H)
    target = direct_product(GH.group, K)
    n, m, k = G.order, H.order, K.order
    # (g, h, c) in (G x H) x K  ->  ((g, c), (h, c)) in (G x K) x (H x K)
    emb = GroupHom(
        target.group,
        big.group,
        tuple(
            ((x // (m * k)) * k + x % k) * (m * k) + ((x // k) % m) * k + x % k for x in range(target.group.order)
        ),
    )
    delta, incl = big.group.subgroup_group(big.group.subgroup(emb.image_mask))
    restricted = BURNSIDE.apply(Op("res", incl), x)
    to_delta = GroupHom(target.group, delta, tuple(incl.image_of.index(emb(x)) for x in range(target.group.order)))
    return target.group, BURNSIDE.apply(Op("iso", to_delta.inverse()), restricted)


# ---------------------------------------------------------------------------
# groups over K


@dataclass(frozen=True, eq=False)
class GroupOverK:
    L: Group
    phi: GroupHom

    def __post_init__(self):
        if self.phi.source is not self.L:
            raise ValidationError("phi must start at L")

    @property
    def K(self) -> Group:
        return self.phi.target

    @property
    def label(self) -> str:
        """Catalog name of ``L`` when it has one."""
        return identify(self.L) or self.L.name

    def to_json(self) -> dict:
        return {"L": self.label, "phi": list(self.phi.image_of)}


def trivial_over(L: Group, K: Group) -> GroupOverK:
    return GroupOverK(L, GroupHom(L, K, (K.identity,) * L.order))


@dataclass(frozen=True)
class GoursatData:
    ambient: Group
    X: Subgroup
    p1: Subgroup
    p2: Subgroup
    k1: Subgroup
    k2: Subgroup


def subgroup_to_pair(G: Group, K: Group, X: Subgroup) -> GoursatData:
    P = direct_product(G, K)
    if X.parent is not P.group:
        raise ValidationError("X must be a subgroup of G x K")
    left = P.i1.image_mask
    right = P.i2.image_mask
    p1 = G.subgroup(P.p1.image(X.mask))
    p2 = K.subgroup(P.p2.image(X.mask))
    k1 = G.subgroup(P.p1.image(X.mask & left))
    k2 = K.subgroup(P.p2.image(X.mask & right))
    return GoursatData(P.group, X, p1, p2, k1, k2)


def pair_to_subgroup(LK: GroupOverK) -> Subgroup:
    """``L_phi = {(l, phi(l))}`` in ``L x K``."""
    L, K = LK.L, LK.K
    P = direct_product(L, K).group
    return P.subgroup(mask_of(l * K.order + LK.phi(l) for l in range(L.order)))


def graph_over_K(G: Group, K: Group, X: Subgroup) -> GroupOverK:
    """``(X, p_2)`` as a group over ``K``."""
    P = direct_product(G, K)
    Xg, incl = P.group.subgroup_group(X)
    return GroupOverK(Xg, P.p2.compose(incl))


def _kernel_normals(LK: GroupOverK) -> list[Subgroup]:
    ker = LK.phi.kernel
    return [N for N in LK.L.normal_subgroups() if N.mask & ~ker == 0]


def is_BK_group(LK: GroupOverK) -> tuple[bool, list[tuple[Subgroup, Fraction]]]:
    """``m_{L,N} = 0`` for every nontrivial normal ``N`` inside ``Ker phi``."""
    witnesses = []
    for N in _kernel_normals(LK):
        if N.order > 1:
            m = m_constant(LK.L, N)
            if m:
                witnesses.append((N, m))
    return not witnesses, witnesses


def _quotient_over(LK: GroupOverK, Q: Subgroup) -> GroupOverK:
    Lq, proj = LK.L.quotient(Q)
    reps = [0] * Lq.order
    for x in range(LK.L.order - 1, -1, -1):
        reps[proj(x)] = x
    return GroupOverK(Lq, GroupHom(Lq, LK.K, tuple(LK.phi(r) for r in reps)))


def _beta_kernels(LK: GroupOverK) -> list[Subgroup]:
    cands = [N for N in _kernel_normals(LK) if m_constant(LK.L, N)]
    return [Q for Q in cands if not any(Q < R for R in cands)]


def beta_K(LK: GroupOverK) -> GroupOverK:
    """``(L/Q, phi/Q)`` for ``Q`` maximal normal in ``Ker phi`` with ``m_{L,Q} != 0``.

    All maximal choices are checked to give isomorphic groups over ``K``.
    """
    results = [_quotient_over(LK, Q) for Q in _beta_kernels(LK)]
    for other in results[1:]:
        if not iso_over_K(results[0], other):
            raise TheoremViolation(f"beta_K of {LK.L.name} depends on the choice of Q")
    return results[0]


def quotient_over_K(a: GroupOverK, b: GroupOverK) -> bool:
    """Whether some surjection ``f: L -> L'`` has ``i o phi = phi' o f`` for an inner ``i`` of ``K``."""
    if a.K is not b.K:
        raise ValidationError("groups over different K")
    L, Lp = a.L, b.L
    if L.order % Lp.order:
        return False
    inner = inner_automorphisms(a.K)
    idx = Lp.order
    for N in _kernel_normals(a):
        if N.order * idx != L.order:
            continue
        Q = _quotient_over(a, N)
        for i in inner:
            # both sides are homomorphisms, so matching on generators suffices
            if are_isomorphic(Q.L, Lp, lambda g, x: b.phi(x) == i(Q.phi(g))) is not None:
                return True
    return False


def iso_over_K(a: GroupOverK, b: GroupOverK) -> bool:
    return a.L.order == b.L.order and quotient_over_K(a, b)


def is_MC_group_shifted(K: Group, L: Group) -> tuple[bool, Subgroup | None]:
    """Search ``X <= L x K`` with ``p1(X) = L``, ``k1(X)`` meeting every
    minimal normal subgroup of ``L``, and ``(X, p2)`` a ``B_K``-group.
    """
    P = direct_product(L, K)
    subs = P.group.subgroups()
    mins = L.minimal_normal_subgroups()
    for c in P.group.subgroup_classes():
        X = subs[c.rep]
        gd = subgroup_to_pair(L, K, X)
        if gd.p1.order != L.order:
            continue
        if any(popcount(gd.k1.mask & N.mask) == 1 for N in mins):
            continue
        if is_BK_group(graph_over_K(L, K, X))[0]:
            return True, X
    return False, None


def beta_ideal_certificate(LK: GroupOverK, cross_check: bool = False) -> tuple[Fraction, Fraction]:
    """Both inclusions of ``e_{L,phi} = e_{beta_K(L,phi)}`` inside ``QB_K``.

    With ``p: L -> L/Q`` the quotient defining ``beta_K``, returns
    ``(a, b)`` where ``Inf_p`` of the top idempotent of ``beta_K`` has
    coefficient ``a`` on ``e_{L_phi}`` and ``Def_p(e_{L_phi}) = b`` times that
    idempotent.  ``a == 1`` gives one inclusion (multiply by ``e_{L_phi}``),
    ``b != 0`` the other.
    """
    K = LK.K
    Q = _beta_kernels(LK)[0]
    Lq, proj = LK.L.quotient(Q)
    top = _quotient_over(LK, Q)
    inst = shifted_instance(K)
    i = direct_product(LK.L, K).group.class_of(pair_to_subgroup(LK))
    j = direct_product(Lq, K).group.class_of(pair_to_subgroup(top))
    up, down = Op("inf", proj), Op("def", proj)
    lifted = inst.idem_apply(up, j)
    pushed = inst.idem_apply(down, i)
    if cross_check:
        if lifted != inst.idem_apply_via_basis(up, j) or pushed != inst.idem_apply_via_basis(down, i):
            raise TheoremViolation("closed forms disagree with the basis route")
    if set(pushed) - {j}:
        raise TheoremViolation("deflation of a primitive idempotent is not a multiple of one")
    return lifted.get(i, Fraction(0)), pushed.get(j, Fraction(0))
