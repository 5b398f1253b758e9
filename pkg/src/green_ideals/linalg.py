"""Sparse exact vectors and row reduction over the rationals.

A vector is a ``dict`` from coordinate index to :class:`~fractions.Fraction`
with zero entries omitted.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Vec = dict[int, Fraction]


def clean(v: Mapping[int, Fraction]) -> Vec:
    return {k: Fraction(x) for k, x in v.items() if x != 0}


def add(a: Mapping[int, Fraction], b: Mapping[int, Fraction], scale=1) -> Vec:
    out = dict(a)
    for k, x in b.items():
        y = out.get(k, 0) + scale * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def scale(a: Mapping[int, Fraction], s) -> Vec:
    if s == 0:
        return {}
    return {k: x * s for k, x in a.items()}


def combine(terms: Iterable[tuple[Mapping[int, Fraction], Fraction]]) -> Vec:
    out: dict[int, Fraction] = {}
    for v, s in terms:
        if s == 0:
            continue
        for k, x in v.items():
            out[k] = out.get(k, 0) + s * x
    return {k: x for k, x in out.items() if x != 0}


def rref(rows: Iterable[Mapping[int, Fraction]]) -> list[Vec]:
    """Reduced row-echelon basis of the span, rows sorted by pivot."""
    basis: dict[int, Vec] = {}  # pivot -> row with 1 at pivot
    for r in rows:
        r = clean(r)
        for p, b in basis.items():
            c = r.get(p)
            if c:
                r = add(r, b, -c)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, b in list(basis.items()):
            c = b.get(p)
            if c:
                basis[q] = add(b, r, -c)
        basis[p] = r
    return [basis[p] for p in sorted(basis)]


def in_span(v: Mapping[int, Fraction], echelon: list[Vec]) -> bool:
    r = clean(v)
    for b in echelon:
        p = min(b)
        c = r.get(p)
        if c:
            r = add(r, b, -c)
    return not r


def matmul_vec(columns: list[Mapping[int, Fraction]], coords: Mapping[int, Fraction]) -> Vec:
    """``sum_j coords[j] * columns[j]``."""
    return combine((columns[j], c) for j, c in coords.items())


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse(s: str) -> Fraction:
    return Fraction(s)
