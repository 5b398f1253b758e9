"""The rational slice Burnside algebra ``QXi(G)``.

Basis element ``k`` is ``<T,S>_G``, the class of the projection
``G/S -> G/T``, for the ``k``-th class of :meth:`Group.slice_classes`.  Marks
are indexed by slice classes too: the mark of ``(T,S)`` on a morphism
``f: X -> Y`` counts ``x`` fixed by ``S`` with ``f(x)`` fixed by ``T``.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg
from .catalog import dedupe, subgroup_class_labels
from .errors import ValidationError
from .green import Element, Evaluation, GreenFunctor
from .grp import Group, GroupHom, Subgroup, double_coset_masks, popcount
from .linalg import Vec
from .ops import Op, coerce


def _pairs(G: Group) -> dict[tuple[int, int], int]:
    G.slice_classes()
    return G._cache["slice_class_of"]


class SliceAlgebra(Evaluation):
    def __init__(self, G: Group):
        super().__init__(G)
        self.classes = G.slice_classes()
        self.dim = len(self.classes)
        self._marks: list[dict[int, Fraction]] | None = None
        self._idem: dict[int, Vec] = {}

    def _pair_label(self, c: int) -> str:
        G = self.group
        names = subgroup_class_labels(G)
        sc = self.classes[c]
        return f"({names[G.class_of(sc.big)]},{names[G.class_of(sc.small)]})"

    def labels(self) -> list[str]:
        return [f"<{p[1:-1]}>" for p in self.pair_labels()]

    def pair_labels(self) -> list[str]:
        return self.group._memo("slice_labels", lambda: dedupe([self._pair_label(c) for c in range(self.dim)]))

    def idempotent_labels(self) -> list[str]:
        return [f"xi_{p}" for p in self.pair_labels()]

    def basis_product(self, i: int, j: int) -> Vec:
        G = self.group
        subs = G.subgroups()
        a, b = self.classes[i], self.classes[j]
        tm, sm = subs[a.big].mask, subs[a.small].mask
        vm, um = subs[b.big].mask, subs[b.small].mask
        out: dict[int, Fraction] = {}
        for g, _ in double_coset_masks(G, sm, um):
            c = G.slice_class_of_masks(tm & G.conjugate_mask(g, vm), sm & G.conjugate_mask(g, um))
            out[c] = out.get(c, 0) + 1
        return {c: Fraction(v) for c, v in out.items()}

    def unit(self) -> Vec:
        return {self.dim - 1: Fraction(1)}

    def mark_columns(self) -> list[dict[int, Fraction]]:
        if self._marks is None:
            G = self.group
            subs = G.subgroups()
            pairs = list(_pairs(G).items())
            cols = []
            for b in self.classes:
                vm, um = subs[b.big].mask, subs[b.small].mask
                counts: dict[int, int] = {}
                for (t, s), c in pairs:
                    if subs[t].mask & ~vm == 0 and subs[s].mask & ~um == 0:
                        counts[c] = counts.get(c, 0) + 1
                uo = subs[b.small].order
                cols.append({c: Fraction(n * self.classes[c].normalizer_order, uo) for c, n in counts.items()})
            self._marks = cols
        return self._marks

    def ghost(self, v: Vec) -> Vec:
        return linalg.matmul_vec(self.mark_columns(), v)

    def from_marks(self, m: Vec) -> Vec:
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
            sc = self.classes[i]
            got = linalg.scale(_xi_sum(self.group, sc.big, sc.small, None), Fraction(1, sc.normalizer_order))
            self._idem[i] = got
        return got


def _xi_sum(G: Group, t: int, s: int, keep) -> Vec:
    """``sum |U| mu(U,S) mu(V,T) <V,U>`` over ``U <= S <= V <= T`` with ``keep(V, U)``."""
    subs = G.subgroups()
    mob = G.moebius()
    sm = subs[s].mask
    lower = [(u, mu) for u, mu in mob.mu_to(s).items() if mu]
    upper = [(v, mu) for v, mu in mob.mu_to(t).items() if mu and subs[v].mask & sm == sm]
    out: dict[int, Fraction] = {}
    for v, mv in upper:
        for u, mu in lower:
            if keep is not None and not keep(subs[v], subs[u]):
                continue
            c = G.slice_class_of(v, u)
            out[c] = out.get(c, 0) + subs[u].order * mu * mv
    return {c: Fraction(x) for c, x in out.items() if x}


def slice_class_map(hom: GroupHom) -> list[int]:
    """Slice class of ``(hom(T), hom(S))`` in the target, per source slice class."""
    S, T = hom.source, hom.target
    key = ("slice_class_map", id(T), hom.image_of)
    got = S._cache.get(key)
    if got is None or got[0] is not T:
        subs = S.subgroups()
        got = (
            T,
            [
                T.slice_class_of_masks(hom.image(subs[c.big].mask), hom.image(subs[c.small].mask))
                for c in S.slice_classes()
            ],
        )
        S._cache[key] = got
    return got[1]


class SliceBurnside(GreenFunctor):
    """The slice Burnside functor with rational coefficients."""

    name = "slice"

    def _build(self, G: Group) -> SliceAlgebra:
        return SliceAlgebra(G)

    def evaluation(self, G: Group) -> SliceAlgebra:
        return super().evaluation(G)  # type: ignore[return-value]

    def apply_basis(self, op: Op, k: int) -> Vec:
        f, kind = op.hom, op.kind
        if kind == "res":
            H, G = f.source, f.target
            subs = G.subgroups()
            sc = G.slice_classes()[k]
            hm, tm, sm = f.image_mask, subs[sc.big].mask, subs[sc.small].mask
            out: dict[int, Fraction] = {}
            for x, _ in double_coset_masks(G, hm, sm):
                c = H.slice_class_of_masks(
                    f.preimage(hm & G.conjugate_mask(x, tm)), f.preimage(hm & G.conjugate_mask(x, sm))
                )
                out[c] = out.get(c, 0) + 1
            return {c: Fraction(v) for c, v in out.items()}
        if kind == "inf":
            G, Q = f.source, f.target
            subs = Q.subgroups()
            sc = Q.slice_classes()[k]
            c = G.slice_class_of_masks(f.preimage(subs[sc.big].mask), f.preimage(subs[sc.small].mask))
            return {c: Fraction(1)}
        return {slice_class_map(f)[k]: Fraction(1)}

    def idem_apply(self, op: Op, i: int) -> Vec:
        f, kind = op.hom, op.kind
        if kind == "res":
            return {y: Fraction(1) for y, x in enumerate(slice_class_map(f)) if x == i}
        if kind == "inf":
            return {x: Fraction(1) for x, y in enumerate(slice_class_map(f)) if y == i}
        if kind == "iso":
            return {slice_class_map(f)[i]: Fraction(1)}
        S, T = f.source, f.target
        j = slice_class_map(f)[i]
        if kind == "ind":
            return {j: Fraction(T.slice_classes()[j].normalizer_order, S.slice_classes()[i].normalizer_order)}
        # def
        sc = S.slice_classes()[i]
        subs = S.subgroups()
        ti, si = f.image(subs[sc.big].mask), f.image(subs[sc.small].mask)
        total = 0
        mob = S.moebius()
        sm = subs[sc.small].mask
        lower = [(u, mu) for u, mu in mob.mu_to(sc.small).items() if mu and f.image(subs[u].mask) == si]
        if lower:
            for v, mv in mob.mu_to(sc.big).items():
                if mv and subs[v].mask & sm == sm and f.image(subs[v].mask) == ti:
                    total += mv * sum(subs[u].order * mu for u, mu in lower)
        if not total:
            return {}
        lam = Fraction(total * T.slice_classes()[j].normalizer_order, sc.normalizer_order * popcount(si))
        return {j: lam}


SLICE = SliceBurnside()


class SliceElt(Element):
    """An element of ``QXi(G)``: rational coefficients over slice classes."""

    def __init__(self, functor_or_group, group_or_coeffs=None, coeffs=None):
        if isinstance(functor_or_group, Group):
            super().__init__(SLICE, functor_or_group, group_or_coeffs or {})
        else:
            super().__init__(functor_or_group, group_or_coeffs, coeffs or {})


def _slice_index(G: Group, ts) -> int:
    if isinstance(ts, int):
        if not 0 <= ts < len(G.slice_classes()):
            raise ValidationError("slice class index out of range")
        return ts
    T, S = ts
    for X in (T, S):
        if X.parent is not G:
            raise ValidationError("subgroup belongs to a different group")
    if not S <= T:
        raise ValidationError("slice requires S <= T")
    return G.slice_class_of_masks(T.mask, S.mask)


def slice_basis(G: Group) -> list[str]:
    return SLICE.evaluation(G).labels()


def slice_elt(G: Group, ts, coeff=1) -> SliceElt:
    """``coeff * <T,S>_G`` for a slice-class index or a pair ``(T, S)``."""
    return SliceElt(G, {_slice_index(G, ts): Fraction(coeff)})


def mult(a: SliceElt, b: SliceElt) -> SliceElt:
    return a * b


def marks(a: SliceElt) -> tuple[Fraction, ...]:
    ev = SLICE.evaluation(a.group)
    m = ev.ghost(a.coeffs)
    return tuple(m.get(y, Fraction(0)) for y in range(ev.dim))


def from_marks(G: Group, values) -> SliceElt:
    ev = SLICE.evaluation(G)
    return SliceElt(G, ev.from_marks({y: Fraction(x) for y, x in enumerate(values) if x}))


def xi_idempotent(G: Group, ts) -> SliceElt:
    """``xi^G_{T,S}``."""
    return SliceElt(G, SLICE.evaluation(G).idempotent(_slice_index(G, ts)))


def elementary_op(kind: str, data, a: SliceElt) -> SliceElt:
    op = coerce(kind, data, a.group)
    return SliceElt(op.target, SLICE.apply(op, a.coeffs))


def m_slice(G: Group, S: Subgroup, N: Subgroup) -> Fraction:
    """``m_{G,S,N}``: the scalar with ``Def^G_{G/N} xi_{G,S} = m xi_{G/N,SN/N}``."""
    for X in (S, N):
        if X.parent is not G:
            raise ValidationError("subgroup belongs to a different group")
    if not G.is_normal_mask(N.mask):
        raise ValidationError("m_{G,S,N} needs a normal subgroup")
    snm = G.generated(S.elements + N.elements)
    subs = G.subgroups()
    mob = G.moebius()
    s = G.subgroup_index(S.mask)
    total = 0
    for u, mu in mob.mu_to(s).items():
        if not mu or G.generated(subs[u].elements + N.elements) != snm:
            continue
        for v, mv in mob.mu_to(len(subs) - 1).items():
            V = subs[v]
            if mv and V.mask & S.mask == S.mask and V.order * N.order == G.order * popcount(V.mask & N.mask):
                total += subs[u].order * mu * mv
    nsn = popcount(G.normalizer_mask(snm))
    return Fraction(total * nsn, popcount(snm) * popcount(G.normalizer_mask(S.mask)))


def is_T_slice(G: Group, S: Subgroup) -> bool:
    return all(m_slice(G, S, N) == 0 for N in G.normal_subgroups() if N.order > 1)


def t_slices(G: Group) -> list[Subgroup]:
    """Representatives ``S`` of the subgroup classes for which ``(G, S)`` is a T-slice."""
    subs = G.subgroups()
    return [subs[c.rep] for c in G.subgroup_classes() if is_T_slice(G, subs[c.rep])]
