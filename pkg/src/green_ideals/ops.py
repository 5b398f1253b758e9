"""The five elementary biset operations as data.

Every operation carries one group homomorphism:

======  ===================  ==========  ==========
kind    hom                  source      target
======  ===================  ==========  ==========
res     inclusion H -> G     G           H
ind     inclusion H -> G     H           G
inf     surjection G -> Q    Q           G
def     surjection G -> Q    G           Q
iso     isomorphism G -> G'  G           G'
======  ===================  ==========  ==========
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .grp import Group, GroupHom, Subgroup

KINDS = ("res", "ind", "inf", "def", "iso")


@dataclass(frozen=True, eq=False)
class Op:
    kind: str
    hom: GroupHom

    def __post_init__(self):
        k, f = self.kind, self.hom
        if k not in KINDS:
            raise ValidationError(f"unknown operation {k!r}")
        if k in ("res", "ind") and not f.is_injective():
            raise ValidationError(f"{k} needs an injective homomorphism")
        if k in ("inf", "def") and not f.is_surjective():
            raise ValidationError(f"{k} needs a surjective homomorphism")
        if k == "iso" and not (f.is_injective() and f.is_surjective()):
            raise ValidationError("iso needs an isomorphism")

    @property
    def source(self) -> Group:
        return self.hom.target if self.kind in ("res", "inf") else self.hom.source

    @property
    def target(self) -> Group:
        return self.hom.source if self.kind in ("res", "inf") else self.hom.target

    def __repr__(self) -> str:
        return f"Op({self.kind}: {self.source.name} -> {self.target.name})"


def _sub(G: Group, H: Subgroup) -> GroupHom:
    if H.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    return G.subgroup_group(H)[1]


def res(G: Group, H: Subgroup) -> Op:
    return Op("res", _sub(G, H))


def ind(G: Group, H: Subgroup) -> Op:
    return Op("ind", _sub(G, H))


def inf(G: Group, N: Subgroup) -> Op:
    if N.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    return Op("inf", G.quotient(N)[1])


def deflate(G: Group, N: Subgroup) -> Op:
    if N.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    return Op("def", G.quotient(N)[1])


def iso(phi: GroupHom) -> Op:
    return Op("iso", phi)


def coerce(kind: str, data, group: Group | None = None) -> Op:
    """Build an :class:`Op` from a homomorphism, a subgroup, or an existing op.

    A subgroup ``H`` of ``G`` means ``res(G, H)`` / ``ind(G, H)``; a normal
    subgroup ``N`` means ``deflate(G, N)`` / ``inf(G, N)``.  ``group``, when
    given, must be the source of the resulting op.
    """
    if isinstance(data, Op):
        op = data
        if op.kind != kind:
            raise ValidationError(f"expected a {kind} operation, got {op.kind}")
    elif isinstance(data, GroupHom):
        op = Op(kind, data)
    elif isinstance(data, Subgroup):
        G = data.parent
        if kind == "res":
            op = res(G, data)
        elif kind == "ind":
            op = ind(G, data)
        elif kind == "def":
            op = deflate(G, data)
        elif kind == "inf":
            op = inf(G, data)
        else:
            raise ValidationError("iso needs a homomorphism")
    else:
        raise ValidationError(f"cannot build a {kind} operation from {type(data).__name__}")
    if group is not None and op.source is not group:
        raise ValidationError(f"{kind} acts on {op.source.name}, not on {group.name}")
    return op
