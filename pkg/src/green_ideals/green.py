"""Generic machinery for Green biset functors with split semisimple evaluations.

An instance (:class:`GreenFunctor`) presents each evaluation ``A(G)`` as an
:class:`Evaluation`: a distinguished basis with its product, the primitive
idempotents ``E_G`` written in that basis, and a *ghost map* sending an
element to its coordinates in the idempotent basis.  The ghost map is only
trusted after :meth:`Evaluation.verify` has checked that it inverts the
idempotent matrix.

Elementary operations (:mod:`green_ideals.ops`) act in two ways:

* :meth:`GreenFunctor.apply` in the distinguished basis, by closed formulas;
* :meth:`GreenFunctor.idem_apply` on a single idempotent, returning idempotent
  coordinates.  The default goes through :meth:`apply` and the ghost map;
  instances may override it with a direct formula, which the test-suite
  compares against the default.

On top of that this module implements transport of idempotents with shape
classification, the sets of restriction-/deflation-killed idempotents,
MC-groups, the reduction lemmas, composition in the category of
``A``-bimodule morphisms, principal ideals and the domination relation.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import ResourceError, TheoremViolation, ValidationError
from .grp import CAPS, Group, GroupHom, Subgroup, direct_product, identity_hom
from .linalg import Vec
from .ops import Op


class Evaluation:
    """``A(G)`` for one group: basis, product, idempotents and ghost map."""

    def __init__(self, group: Group):
        self.group = group
        self._products: dict[tuple[int, int], Vec] = {}
        self._verified = False
        self._lock = threading.Lock()

    # -- to be supplied by instances --------------------------------------

    dim: int

    def basis_product(self, i: int, j: int) -> Vec:
        raise NotImplementedError

    def unit(self) -> Vec:
        raise NotImplementedError

    def idempotent(self, i: int) -> Vec:
        raise NotImplementedError

    def ghost(self, v: Vec) -> Vec:
        raise NotImplementedError

    def labels(self) -> list[str]:
        return [f"b{i}" for i in range(self.dim)]

    def idempotent_labels(self) -> list[str]:
        return [f"e{i}" for i in range(self.dim)]

    # -- generic ----------------------------------------------------------

    def product(self, i: int, j: int) -> Vec:
        if i > j:
            i, j = j, i
        got = self._products.get((i, j))
        if got is None:
            got = self.basis_product(i, j)
            self._products[i, j] = got
        return got

    def mult(self, a: Vec, b: Vec) -> Vec:
        out: dict[int, Fraction] = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, z in self.product(i, j).items():
                    out[k] = out.get(k, 0) + x * y * z
        return {k: v for k, v in out.items() if v != 0}

    def idempotents(self) -> list[Vec]:
        return [self.idempotent(i) for i in range(self.dim)]

    def verify(self) -> None:
        """Check that the ghost map sends idempotent ``i`` to the ``i``-th unit vector.

        The ghost map is square, so this proves it is the inverse of the
        idempotent change of basis.
        """
        if self._verified:
            return
        with self._lock:
            if self._verified:
                return
            for i in range(self.dim):
                g = self.ghost(self.idempotent(i))
                if g != {i: 1}:
                    raise TheoremViolation(
                        f"ghost map does not diagonalise idempotent {i} of {self.group.name}: {g}"
                    )
            self._verified = True

    def to_idem(self, v: Vec) -> Vec:
        self.verify()
        return self.ghost(v)

    def from_idem(self, coords: Vec) -> Vec:
        return linalg.combine((self.idempotent(i), c) for i, c in coords.items())


class Element:
    """An element of ``A(G)`` in the distinguished basis of its functor."""

    __slots__ = ("group", "coeffs", "functor")

    def __init__(self, functor: "GreenFunctor", group: Group, coeffs: Mapping[int, Fraction]):
        n = functor.evaluation(group).dim
        c = linalg.clean(coeffs)
        if any(not 0 <= k < n for k in c):
            raise ValidationError(f"basis index out of range for {group.name}")
        self.functor, self.group, self.coeffs = functor, group, c

    def _new(self, coeffs: Mapping[int, Fraction]) -> "Element":
        return type(self)(self.functor, self.group, coeffs)

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.group is not self.group or other.functor is not self.functor:
            raise ValidationError("elements live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return self._new(linalg.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return self._new(linalg.add(self.coeffs, other.coeffs, -1))

    def __neg__(self) -> "Element":
        return self._new(linalg.scale(self.coeffs, -1))

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            self._same(other)
            return self._new(self.functor.evaluation(self.group).mult(self.coeffs, other.coeffs))
        return self._new(linalg.scale(self.coeffs, Fraction(other)))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.group is other.group and self.functor is other.functor and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.group), tuple(sorted(self.coeffs.items()))))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def to_json(self) -> dict[str, str]:
        labels = self.functor.evaluation(self.group).labels()
        return {labels[k]: linalg.fmt(v) for k, v in sorted(self.coeffs.items())}

    def __repr__(self) -> str:
        labels = self.functor.evaluation(self.group).labels()
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in sorted(self.coeffs.items(), key=lambda kv: -kv[0]):
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            term = labels[k] if mag == 1 else f"{linalg.fmt(mag)} {labels[k]}"
            parts.append((sign, term))
        first = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([first] + [f"{s} {t}" for s, t in parts[1:]])


class GreenFunctor:
    """Base class for a Green biset functor given evaluation by evaluation."""

    name = "abstract"

    def __init__(self):
        self._evals: dict[int, tuple[Group, Evaluation]] = {}
        self._lock = threading.Lock()

    def _build(self, G: Group) -> Evaluation:
        raise NotImplementedError

    def evaluation(self, G: Group) -> Evaluation:
        got = self._evals.get(id(G))
        if got is None or got[0] is not G:
            with self._lock:
                got = self._evals.get(id(G))
                if got is None or got[0] is not G:
                    got = (G, self._build(G))
                    self._evals[id(G)] = got
        return got[1]

    def apply_basis(self, op: Op, k: int) -> Vec:
        """Image of the ``k``-th distinguished basis element."""
        raise NotImplementedError

    def apply(self, op: Op, v: Vec) -> Vec:
        return linalg.combine((self.apply_basis(op, k), c) for k, c in v.items())

    def idem_apply_via_basis(self, op: Op, i: int) -> Vec:
        src, dst = self.evaluation(op.source), self.evaluation(op.target)
        return dst.to_idem(self.apply(op, src.idempotent(i)))

    def idem_apply(self, op: Op, i: int) -> Vec:
        return self.idem_apply_via_basis(op, i)

    def element(self, G: Group, coeffs: Mapping[int, Fraction]) -> Element:
        return Element(self, G, coeffs)

    def unit_trivial(self) -> Vec:
        """The identity element of ``A(1)``."""
        from .catalog import build

        return self.evaluation(build("1")).unit()


# ---------------------------------------------------------------------------
# transport of idempotents


ZERO = "zero"
ZERO_ONE_SUM = "zero-one-sum"
SCALAR_SINGLE = "scalar-times-single"
SINGLE = "single"


@dataclass(frozen=True)
class Transport:
    coords: Vec  # idempotent coordinates in the target evaluation
    tag: str


def classify(coords: Vec, kind: str | None = None) -> str:
    """Shape of a transported idempotent.

    With ``kind`` given, a lone coefficient 1 is read as the case of the
    operation: a 0/1 sum for res/inf, a multiple for ind/def.
    """
    if not coords:
        return ZERO
    vals = set(coords.values())
    if len(coords) == 1 and vals == {1}:
        if kind in ("res", "inf"):
            return ZERO_ONE_SUM
        if kind in ("ind", "def"):
            return SCALAR_SINGLE
        return SINGLE
    if vals == {1}:
        return ZERO_ONE_SUM
    if len(coords) == 1:
        return SCALAR_SINGLE
    return "other"


_ALLOWED = {
    "res": {ZERO, ZERO_ONE_SUM},
    "inf": {ZERO, ZERO_ONE_SUM},
    "ind": {ZERO, SCALAR_SINGLE},
    "def": {ZERO, SCALAR_SINGLE},
    "iso": {SINGLE},
}


def transport(inst: GreenFunctor, op: Op, i: int) -> Transport:
    """Image of idempotent ``i`` of ``A(op.source)`` in idempotent coordinates.

    Computed through the distinguished basis, then checked against the shape
    that the operation must produce: restriction and inflation give sums of
    distinct idempotents, induction and deflation a multiple of one
    idempotent, transport of structure a single idempotent.
    """
    coords = inst.idem_apply_via_basis(op, i)
    tag = classify(coords, op.kind)
    if tag not in _ALLOWED[op.kind]:
        raise TheoremViolation(
            f"{inst.name}: {op.kind} from {op.source.name} to {op.target.name} sends idempotent {i} "
            f"to {{{', '.join(f'{k}: {linalg.fmt(v)}' for k, v in sorted(coords.items()))}}}"
        )
    return Transport(coords, tag)


# ---------------------------------------------------------------------------
# MC-groups


def _res_ops(G: Group, full: bool) -> list[Op]:
    from .ops import res

    if full:
        subs = G.subgroups()
        reps = [subs[c.rep] for c in G.subgroup_classes() if subs[c.rep].order < G.order]
    else:
        reps = G.maximal_subgroups()
    return [res(G, H) for H in reps]


def _def_ops(G: Group, full: bool) -> list[Op]:
    from .ops import deflate

    if full:
        ns = [N for N in G.normal_subgroups() if N.order > 1]
    else:
        ns = G.minimal_normal_subgroups()
    return [deflate(G, N) for N in ns]


def underline_E(inst: GreenFunctor, G: Group, full: bool = False) -> list[int]:
    """Idempotents of ``A(G)`` killed by restriction to every proper subgroup.

    By default only maximal subgroups are tested; ``full=True`` tests every
    proper subgroup class.
    """
    ops = _res_ops(G, full)
    n = inst.evaluation(G).dim
    return [i for i in range(n) if all(not inst.idem_apply(op, i) for op in ops)]


def double_underline_E(inst: GreenFunctor, G: Group, full: bool = False) -> list[int]:
    """Idempotents of ``A(G)`` killed by deflation to every proper quotient.

    By default only minimal normal subgroups are tested.
    """
    ops = _def_ops(G, full)
    n = inst.evaluation(G).dim
    return [i for i in range(n) if all(not inst.idem_apply(op, i) for op in ops)]


def mc_idempotents(inst: GreenFunctor, G: Group) -> list[int]:
    under = set(underline_E(inst, G))
    if not under:
        return []
    return [i for i in double_underline_E(inst, G) if i in under]


def is_MC_group(inst: GreenFunctor, G: Group) -> tuple[bool, list[int]]:
    w = mc_idempotents(inst, G)
    return bool(w), w


# ---------------------------------------------------------------------------
# reduction lemmas


@dataclass(frozen=True)
class Reduction:
    group: Group
    index: int
    alpha: Fraction
    via: Subgroup  # the subgroup H (res/ind) or normal subgroup N (def/inf)


def reduce_res_ind(inst: GreenFunctor, G: Group, i: int) -> Reduction:
    """Smallest subgroup ``H`` with ``Res(e) != 0``, ``e_H`` below it, and ``alpha``
    with ``e = alpha * Ind(e_H)``.
    """
    from .ops import ind, res

    subs = G.subgroups()
    for c in G.subgroup_classes():
        H = subs[c.rep]
        op = res(G, H)
        r = inst.idem_apply(op, i)
        if not r:
            continue
        h = min(r)
        Hg = op.target
        back = inst.idem_apply(ind(G, H), h)
        if set(back) != {i}:
            raise TheoremViolation(f"induction of a minimal restriction component is not a multiple of e_{i}")
        alpha = 1 / back[i]
        ev_g = inst.evaluation(G)
        lhs = linalg.scale(inst.apply(ind(G, H), inst.evaluation(Hg).idempotent(h)), alpha)
        if lhs != ev_g.idempotent(i):
            raise TheoremViolation("e_G != alpha * Ind(e_H)")
        return Reduction(Hg, h, alpha, H)
    raise AssertionError("restriction to G itself cannot vanish")


def reduce_def_inf(inst: GreenFunctor, G: Group, i: int) -> Reduction:
    """Largest normal ``N`` with ``Def(e) != 0`` and ``e_{G/N} = alpha * Def(e)``."""
    from .ops import deflate, inf

    normals = sorted(G.normal_subgroups(), key=lambda N: (-N.order, N.elements))
    ev = inst.evaluation(G)
    for N in normals:
        op = deflate(G, N)
        d = inst.idem_apply(op, i)
        if not d:
            continue
        (j, lam), = d.items()
        Q = op.target
        alpha = 1 / lam
        lhs = linalg.scale(inst.apply(op, ev.idempotent(i)), alpha)
        if lhs != inst.evaluation(Q).idempotent(j):
            raise TheoremViolation("e_{G/N} != alpha * Def(e_G)")
        up = inst.apply(inf(G, N), inst.evaluation(Q).idempotent(j))
        if ev.mult(ev.idempotent(i), up) != ev.idempotent(i):
            raise TheoremViolation("e_G * Inf(e_{G/N}) != e_G")
        return Reduction(Q, j, alpha, N)
    raise AssertionError("deflation by the trivial subgroup cannot vanish")


def reduce_to_MC(inst: GreenFunctor, G: Group, i: int) -> tuple[Group, int]:
    """An MC pair generating the same ideal as ``(G, e_i)``."""
    r1 = reduce_res_ind(inst, G, i)
    r2 = reduce_def_inf(inst, r1.group, r1.index)
    H, h = r2.group, r2.index
    if h not in underline_E(inst, H) or h not in double_underline_E(inst, H):
        raise TheoremViolation(f"reduction of ({G.name}, {i}) is not an MC pair")
    return H, h


# ---------------------------------------------------------------------------
# products and composition


def external_product(inst: GreenFunctor, G: Group, H: Group, a: Vec, b: Vec) -> tuple[Group, Vec]:
    """``a x b`` in ``A(G x H)``, as ``Inf(a) . Inf(b)``."""
    P = direct_product(G, H)
    ev = inst.evaluation(P.group)
    x = inst.apply(Op("inf", P.p1), a)
    y = inst.apply(Op("inf", P.p2), b)
    return P.group, ev.mult(x, y)


def compose(inst: GreenFunctor, H: Group, K: Group, G: Group, alpha: Vec, beta: Vec) -> Vec:
    """``alpha o beta`` for ``alpha`` in ``A(H x K)`` and ``beta`` in ``A(K x G)``.

    Deflate ``Inf(alpha) . Inf(beta)`` from ``H x K x G`` to ``H x G``.
    """
    HK = direct_product(H, K)
    KG = direct_product(K, G)
    HG = direct_product(H, G)
    T = direct_product(HK.group, G)
    if T.group.order > CAPS["product"]:
        raise ResourceError(f"composition needs a group of order {T.group.order}")
    n, k, g = H.order, K.order, G.order
    P = T.group
    # (h, k, g) sits at (h*k_ord + k)*g_ord + g
    to_hk = T.p1
    to_kg = GroupHom(P, KG.group, tuple((x // g % k) * g + x % g for x in range(P.order)))
    to_hg = GroupHom(P, HG.group, tuple((x // (g * k)) * g + x % g for x in range(P.order)))
    ev = inst.evaluation(P)
    prod = ev.mult(inst.apply(Op("inf", to_hk), alpha), inst.apply(Op("inf", to_kg), beta))
    return inst.apply(Op("def", to_hg), prod)


def identity_morphism(inst: GreenFunctor, G: Group) -> Vec:
    """``Ind_{Delta(G)}^{G x G} Inf_1^{Delta(G)}`` of the unit of ``A(1)``."""
    from .catalog import build

    P = direct_product(G, G)
    diag = P.group.subgroup([g * G.order + g for g in range(G.order)])
    D, incl = P.group.subgroup_group(diag)
    one = build("1")
    to_one = GroupHom(D, one, (0,) * D.order)
    x = inst.apply(Op("inf", to_one), inst.evaluation(one).unit())
    return inst.apply(Op("ind", incl), x)


def _as_trivial_product(inst: GreenFunctor, G: Group, v: Vec) -> Vec:
    """Transport ``v`` from ``A(G)`` to ``A(G x 1)``."""
    from .catalog import build

    P = direct_product(G, build("1"))
    return inst.apply(Op("iso", P.i1), v) if P.group is not G else v


def _from_trivial_product(inst: GreenFunctor, G: Group, v: Vec) -> Vec:
    from .catalog import build

    P = direct_product(G, build("1"))
    return inst.apply(Op("iso", P.p1), v) if P.group is not G else v


def act_via_compose(inst: GreenFunctor, G: Group, H: Group, b: Vec, e: Vec) -> Vec:
    """``b o e`` through :func:`compose` with a trivial third group."""
    from .catalog import build

    one = build("1")
    out = compose(inst, G, H, one, b, _as_trivial_product(inst, H, e))
    return _from_trivial_product(inst, G, out)


def act(inst: GreenFunctor, G: Group, H: Group, b: Vec, e: Vec) -> Vec:
    """``b o e`` for ``b`` in ``A(G x H)`` and ``e`` in ``A(H)``, landing in ``A(G)``.

    This is composition with a trivial third group, where it reduces to
    ``Def^{G x H}_G(b . Inf^{G x H}_H(e))``.
    """
    P = direct_product(G, H)
    y = inst.apply(Op("inf", P.p2), e)
    return inst.apply(Op("def", P.p1), inst.evaluation(P.group).mult(b, y))


# ---------------------------------------------------------------------------
# principal ideals and domination


def principal_ideal_eval(inst: GreenFunctor, H: Group, h: int, G: Group) -> list[Vec]:
    """Echelon basis, in idempotent coordinates of ``A(G)``, of the ideal
    generated by idempotent ``h`` of ``A(H)`` evaluated at ``G``.

    Spans ``b o e_h`` for ``b`` running over the distinguished basis of
    ``A(G x H)``.  The result is asserted to be spanned by idempotents.
    """
    P = direct_product(G, H)
    evp, evg = inst.evaluation(P.group), inst.evaluation(G)
    y = inst.apply(Op("inf", P.p2), inst.evaluation(H).idempotent(h))
    down = Op("def", P.p1)
    rows = [evg.to_idem(inst.apply(down, evp.mult({k: Fraction(1)}, y))) for k in range(evp.dim)]
    basis = linalg.rref(rows)
    for r in basis:
        if len(r) != 1:
            raise TheoremViolation(f"ideal evaluation at {G.name} is not spanned by idempotents")
    return basis


def ideal_support_slow(inst: GreenFunctor, H: Group, h: int, G: Group) -> frozenset[int]:
    return frozenset(min(r) for r in principal_ideal_eval(inst, H, h, G))


def ideal_support(inst: GreenFunctor, H: Group, h: int, G: Group) -> frozenset[int]:
    """Idempotents of ``A(G)`` lying in the ideal generated by ``(H, e_h)``.

    Works in idempotent coordinates: ``A(G x H) . Inf(e_h)`` is spanned by the
    idempotents of ``G x H`` under ``Inf(e_h)``; their deflations to ``G``
    span the evaluation.
    """
    P = direct_product(G, H)
    support = inst.idem_apply(Op("inf", P.p2), h)
    out = set()
    for x in support:
        d = inst.idem_apply(Op("def", P.p1), x)
        out.update(d)
    return frozenset(out)


def dominates_criterion(inst: GreenFunctor, H: Group, h: int, K: Group, k: int) -> bool:
    """``(H, e_h) >> (K, e_k)``: some ``e_X`` of ``H x K`` has
    ``e_h . Def(e_X . Inf(e_k)) != 0``.
    """
    P = direct_product(H, K)
    for x in inst.idem_apply(Op("inf", P.p2), k):
        # e_X . Inf(e_k) = e_X because X is in the support
        d = inst.idem_apply(Op("def", P.p1), x)
        if d.get(h):
            return True
    return False


def dominates_ideal(inst: GreenFunctor, H: Group, h: int, K: Group, k: int) -> bool:
    """Same relation via membership of ``e_h`` in the principal ideal of ``e_k``."""
    return h in ideal_support_slow(inst, K, k, H)


def dominates(inst: GreenFunctor, H: Group, h: int, K: Group, k: int, cross_check: bool = False) -> bool:
    a = dominates_criterion(inst, H, h, K, k)
    if cross_check:
        b = dominates_ideal(inst, H, h, K, k)
        if a != b:
            raise TheoremViolation(f"domination routes disagree on ({H.name},{h}) >> ({K.name},{k})")
    return a


def minimal_groups_of_ideal(
    inst: GreenFunctor, generators: Sequence[tuple[Group, int]], groups: Iterable[Group]
) -> list[Group]:
    """Groups of least order on which the ideal generated by ``generators`` is nonzero.

    Each returned group is checked to be an MC-group.
    """
    found: list[Group] = []
    order = None
    for G in sorted(groups, key=lambda g: g.order):
        if order is not None and G.order > order:
            break
        if any(ideal_support(inst, H, h, G) for H, h in generators):
            if not is_MC_group(inst, G)[0]:
                raise TheoremViolation(f"minimal group {G.name} of an ideal is not an MC-group")
            found.append(G)
            order = G.order
    return found
