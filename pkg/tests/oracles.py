"""Brute-force oracles written without the package's lattice code."""
import itertools
from fractions import Fraction


def closure(G, gens):
    t = G.table
    got = {G.identity} | set(gens)
    frontier = list(got)
    while frontier:
        new = []
        for a in frontier:
            for b in list(got):
                for c in (t[a][b], t[b][a]):
                    if c not in got:
                        got.add(c)
                        new.append(c)
        frontier = new
    return frozenset(got)


def all_subgroups(G, max_gens=3):
    """Every subgroup generated by at most ``max_gens`` elements."""
    subs = set()
    for r in range(max_gens + 1):
        for gens in itertools.combinations(range(G.order), r):
            subs.add(closure(G, gens))
    return subs


def mu_to_top(G):
    """``mu(X, G)`` for every subgroup ``X``, by the defining recursion."""
    subs = sorted(all_subgroups(G), key=len, reverse=True)
    top = frozenset(range(G.order))
    mu = {}
    for X in subs:
        mu[X] = 1 if X == top else -sum(mu[Y] for Y in mu if X < Y)
    return mu


def oracle_m(G, N):
    """``(1/|G|) sum |X| mu(X, G)`` over ``X`` with ``XN = G``."""
    n = frozenset(N.elements)
    total = sum(len(X) * m for X, m in mu_to_top(G).items() if len(X) * len(n) == G.order * len(X & n))
    return Fraction(total, G.order)
