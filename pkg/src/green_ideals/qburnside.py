"""The rational Burnside algebra ``QB(G)``.

Basis element ``k`` is ``[G/K]`` for the ``k``-th subgroup class of
:meth:`Group.subgroup_classes`.  The mark of ``Y`` on ``[G/K]`` is the number
of fixed points of ``Y`` on ``G/K``; the primitive idempotent ``e^G_H`` is the
element whose marks are the indicator of the class of ``H``, so the mark map
is also the change to idempotent coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .catalog import subgroup_class_labels
from .errors import ValidationError
from .green import Element, Evaluation, GreenFunctor
from .grp import Group, GroupHom, Subgroup, double_coset_masks, popcount
from .linalg import Vec
from .ops import Op, coerce


class BurnsideAlgebra(Evaluation):
    def __init__(self, G: Group):
        super().__init__(G)
        self.classes = G.subgroup_classes()
        subs = G.subgroups()
        self.reps = [subs[c.rep] for c in self.classes]
        self.dim = len(self.classes)
        self._marks: list[dict[int, Fraction]] | None = None
        self._idem: dict[int, Vec] = {}

    def labels(self) -> list[str]:
        return [f"[{self.group.name}/{n}]" for n in subgroup_class_labels(self.group)]

    def idempotent_labels(self) -> list[str]:
        return [f"e_{n}" for n in subgroup_class_labels(self.group)]

    def basis_product(self, i: int, j: int) -> Vec:
        G = self.group
        hm, km = self.reps[i].mask, self.reps[j].mask
        out: dict[int, Fraction] = {}
        for g, _ in double_coset_masks(G, hm, km):
            c = G.class_of_mask(hm & G.conjugate_mask(g, km))
            out[c] = out.get(c, 0) + 1
        return {c: Fraction(v) for c, v in out.items()}

    def unit(self) -> Vec:
        return {self.dim - 1: Fraction(1)}

    def mark_columns(self) -> list[dict[int, Fraction]]:
        """``cols[k][y]`` = number of fixed points of ``Y`` on ``G/K``."""
        if self._marks is None:
            G = self.group
            subs = G.subgroups()
            cols = []
            for k, K in enumerate(self.reps):
                col = {}
                for y, cl in enumerate(self.classes[: k + 1]):
                    inside = sum(1 for m in cl.members if subs[m].mask & ~K.mask == 0)
                    if inside:
                        col[y] = Fraction(inside * cl.normalizer_order, K.order)
                cols.append(col)
            self._marks = cols
        return self._marks

    def ghost(self, v: Vec) -> Vec:
        return linalg.matmul_vec(self.mark_columns(), v)

    def from_marks(self, m: Vec) -> Vec:
        """Invert the (upper triangular) mark matrix by back-substitution."""
        cols = self.mark_columns()
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.dim)]
        for k, col in enumerate(cols):
            for y, x in col.items():
                rows[y][k] = x
        out: dict[int, Fraction] = {}
        for y in range(self.dim - 1, -1, -1):
            r = m.get(y, 0) - sum(x * out[k] for k, x in rows[y].items() if k > y and k in out)
            if r:
                out[y] = r / rows[y][y]
        return out

    def idempotent(self, i: int) -> Vec:
        got = self._idem.get(i)
        if got is None:
            G = self.group
            subs = G.subgroups()
            h = self.classes[i].rep
            out: dict[int, Fraction] = {}
            for k, mu in G.moebius().mu_to(h).items():
                if mu:
                    c = G.class_of(k)
                    out[c] = out.get(c, 0) + subs[k].order * mu
            n = self.classes[i].normalizer_order
            got = {c: Fraction(v, n) for c, v in out.items() if v}
            self._idem[i] = got
        return got


def class_map(hom: GroupHom) -> list[int]:
    """Class of ``hom(rep)`` in the target, for each subgroup class of the source."""
    S, T = hom.source, hom.target
    key = ("class_map", id(T), hom.image_of)
    got = S._cache.get(key)
    if got is None or got[0] is not T:
        got = (T, [T.class_of_mask(hom.image(S.class_rep(c).mask)) for c in range(len(S.subgroup_classes()))])
        S._cache[key] = got
    return got[1]


class Burnside(GreenFunctor):
    """The Burnside functor with rational coefficients."""

    name = "burnside"

    def _build(self, G: Group) -> BurnsideAlgebra:
        return BurnsideAlgebra(G)

    def evaluation(self, G: Group) -> BurnsideAlgebra:
        return super().evaluation(G)  # type: ignore[return-value]

    def apply_basis(self, op: Op, k: int) -> Vec:
        f, kind = op.hom, op.kind
        if kind == "res":
            H, G = f.source, f.target
            hm, km = f.image_mask, G.class_rep(k).mask
            out: dict[int, Fraction] = {}
            for g, _ in double_coset_masks(G, hm, km):
                c = H.class_of_mask(f.preimage(hm & G.conjugate_mask(g, km)))
                out[c] = out.get(c, 0) + 1
            return {c: Fraction(v) for c, v in out.items()}
        if kind == "inf":
            G, Q = f.source, f.target
            return {G.class_of_mask(f.preimage(Q.class_rep(k).mask)): Fraction(1)}
        # ind, def and iso all send [S/K] to [T/f(K)]
        return {class_map(f)[k]: Fraction(1)}

    def idem_apply(self, op: Op, i: int) -> Vec:
        f, kind = op.hom, op.kind
        if kind == "res":
            cm = class_map(f)
            return {y: Fraction(1) for y, x in enumerate(cm) if x == i}
        if kind == "inf":
            cm = class_map(f)
            return {x: Fraction(1) for x, y in enumerate(cm) if y == i}
        if kind == "iso":
            return {class_map(f)[i]: Fraction(1)}
        if kind == "ind":
            H, G = f.source, f.target
            j = class_map(f)[i]
            lam = Fraction(G.subgroup_classes()[j].normalizer_order, H.subgroup_classes()[i].normalizer_order)
            return {j: lam}
        # def
        G, Q = f.source, f.target
        X = G.class_rep(i)
        img = f.image(X.mask)
        subs = G.subgroups()
        total = 0
        for k, mu in G.moebius().mu_to(G.subgroup_index(X.mask)).items():
            if mu and f.image(subs[k].mask) == img:
                total += subs[k].order * mu
        if not total:
            return {}
        j = Q.class_of_mask(img)
        lam = Fraction(total * Q.subgroup_classes()[j].normalizer_order, G.subgroup_classes()[i].normalizer_order * popcount(img))
        return {j: lam}


BURNSIDE = Burnside()


class BurnsideElt(Element):
    """An element of ``QB(G)``: rational coefficients over subgroup classes."""

    def __init__(self, functor_or_group, group_or_coeffs=None, coeffs=None):
        # BurnsideElt(G, coeffs) or the generic (functor, G, coeffs)
        if isinstance(functor_or_group, Group):
            super().__init__(BURNSIDE, functor_or_group, group_or_coeffs or {})
        else:
            super().__init__(functor_or_group, group_or_coeffs, coeffs or {})


@dataclass(frozen=True)
class MarkVector:
    group: Group
    values: tuple[Fraction, ...]


def _class_index(G: Group, H: Subgroup | int) -> int:
    if isinstance(H, Subgroup):
        if H.parent is not G:
            raise ValidationError("subgroup belongs to a different group")
        return G.class_of(H)
    if not 0 <= H < len(G.subgroup_classes()):
        raise ValidationError("subgroup class index out of range")
    return H


def basis(G: Group) -> list[str]:
    return BURNSIDE.evaluation(G).labels()


def gset(G: Group, K: Subgroup | int, coeff=1) -> BurnsideElt:
    """``coeff * [G/K]``."""
    return BurnsideElt(G, {_class_index(G, K): Fraction(coeff)})


def mult(a: BurnsideElt, b: BurnsideElt) -> BurnsideElt:
    return a * b


def marks(a: BurnsideElt) -> MarkVector:
    ev = BURNSIDE.evaluation(a.group)
    m = ev.ghost(a.coeffs)
    return MarkVector(a.group, tuple(m.get(y, Fraction(0)) for y in range(ev.dim)))


def from_marks(v: MarkVector) -> BurnsideElt:
    ev = BURNSIDE.evaluation(v.group)
    if len(v.values) != ev.dim:
        raise ValidationError("mark vector has the wrong length")
    return BurnsideElt(v.group, ev.from_marks({y: Fraction(x) for y, x in enumerate(v.values) if x}))


def idempotent(G: Group, H: Subgroup | int) -> BurnsideElt:
    """``e^G_H``."""
    return BurnsideElt(G, BURNSIDE.evaluation(G).idempotent(_class_index(G, H)))


def elementary_op(kind: str, data, a: BurnsideElt) -> BurnsideElt:
    op = coerce(kind, data, a.group)
    return BurnsideElt(op.target, BURNSIDE.apply(op, a.coeffs))


def m_constant(G: Group, N: Subgroup) -> Fraction:
    """``m_{G,N} = (1/|G|) sum_{XN = G} |X| mu(X, G)``."""
    if N.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    if not G.is_normal_mask(N.mask):
        raise ValidationError("m_{G,N} needs a normal subgroup")
    subs = G.subgroups()
    total = 0
    for x, mu in G.moebius().mu_to(len(subs) - 1).items():
        X = subs[x]
        if mu and X.order * N.order == G.order * popcount(X.mask & N.mask):
            total += X.order * mu
    return Fraction(total, G.order)


def is_B_group(G: Group) -> tuple[bool, list[tuple[Subgroup, Fraction]]]:
    """Whether every nontrivial normal subgroup has ``m_{G,N} = 0``, with the
    list of ``(N, m_{G,N})`` for those where it does not.
    """
    witnesses = []
    for N in G.normal_subgroups():
        if N.order > 1:
            m = m_constant(G, N)
            if m:
                witnesses.append((N, m))
    return not witnesses, witnesses
