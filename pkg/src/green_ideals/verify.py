"""Self-checks run by ``green-ideals verify``.

Each suite returns ``{"suite": name, "cases": n, "failures": [...]}``; a
failure is a short string naming the offending case.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import green, gsets
from .catalog import catalog
from .errors import TheoremViolation
from .green import GreenFunctor
from .grp import Group, inner_automorphisms
from .lattice import has_quotient, mc_pairs, verify_lattice_iso
from .ops import Op, deflate, ind, inf, iso, res
from .qburnside import is_B_group
from .shifted import ShiftedBurnside, is_MC_group_shifted
from .slice import t_slices


class Suite:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)

    def guard(self, what: str, fn: Callable[[], bool]) -> None:
        try:
            ok = fn()
        except TheoremViolation as exc:
            self.cases += 1
            self.failures.append(f"{what}: {exc}")
            return
        self.check(ok, what)

    def to_json(self) -> dict:
        return {"suite": self.name, "cases": self.cases, "failures": self.failures}


def elementary_ops(G: Group) -> list[Op]:
    """Every restriction, induction, deflation and inflation out of or into ``G``
    (one per subgroup class / normal subgroup), plus a few isomorphisms.
    """
    ops = []
    subs = G.subgroups()
    for c in G.subgroup_classes():
        H = subs[c.rep]
        ops += [res(G, H), ind(G, H)]
    for N in G.normal_subgroups():
        ops += [deflate(G, N), inf(G, N)]
    ops.append(iso(G.quotient(G.trivial)[1]))
    ops += [iso(a) for a in inner_automorphisms(G)[:4]]
    return ops


def idempotent_axioms(inst: GreenFunctor, G: Group) -> bool:
    """Orthogonal, idempotent, summing to the unit, one per basis element."""
    ev = inst.evaluation(G)
    es = ev.idempotents()
    if len(es) != ev.dim:
        return False
    total: dict[int, Fraction] = {}
    for i, e in enumerate(es):
        if not e or ev.mult(e, e) != e:
            return False
        for j in range(i + 1, len(es)):
            if ev.mult(e, es[j]):
                return False
        for k, v in e.items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v} == ev.unit()


def suite_idempotents(inst: GreenFunctor, groups: list[Group]) -> Suite:
    s = Suite("idempotents")
    for G in groups:
        s.guard(f"{G.name}", lambda: idempotent_axioms(inst, G))
    return s


def suite_oracle(inst: GreenFunctor, groups: list[Group]) -> Suite:
    """Closed-form basis operations against explicit biset tensor products."""
    s = Suite("oracle")
    if inst.name not in ("burnside", "slice"):
        return s
    for G in groups:
        for op in elementary_ops(G):
            U = gsets.elementary_biset(op.kind, op)
            A = op.source
            subs = A.subgroups()
            if inst.name == "burnside":
                for c in range(len(A.subgroup_classes())):
                    got = gsets.orbit_decompose(gsets.tensor(U, gsets.coset_gset(A, A.class_rep(c)))).coeffs
                    s.check(got == inst.apply(op, {c: Fraction(1)}), f"{op} on class {c}")
            else:
                for k, sc in enumerate(A.slice_classes()):
                    f = gsets.coset_map(A, subs[sc.big], subs[sc.small])
                    got = gsets.decompose_morphism(gsets.gmor_tensor(U, f)).coeffs
                    s.check(got == inst.apply(op, {k: Fraction(1)}), f"{op} on slice {k}")
    return s


def suite_transport(inst: GreenFunctor, groups: list[Group]) -> Suite:
    """Shapes of transported idempotents, and fast formulas against the basis route."""
    s = Suite("transport")
    for G in groups:
        for op in elementary_ops(G):
            for i in range(inst.evaluation(op.source).dim):
                def one(op=op, i=i):
                    t = green.transport(inst, op, i)
                    return t.coords == inst.idem_apply(op, i)

                s.guard(f"{op} on idempotent {i}", one)
    return s


def suite_quantifiers(inst: GreenFunctor, groups: list[Group]) -> Suite:
    """Maximal/minimal reductions of the two quantifiers against the full ones."""
    s = Suite("quantifiers")
    for G in groups:
        if G.order > 12:
            continue
        s.check(green.underline_E(inst, G) == green.underline_E(inst, G, full=True), f"res-killed set of {G.name}")
        s.check(
            green.double_underline_E(inst, G) == green.double_underline_E(inst, G, full=True),
            f"def-killed set of {G.name}",
        )
    return s


def suite_mc(inst: GreenFunctor, groups: list[Group]) -> Suite:
    """MC-groups against the instance-specific criterion."""
    s = Suite("mc-groups")
    for G in groups:
        mc = green.is_MC_group(inst, G)[0]
        if inst.name == "burnside":
            s.check(mc == is_B_group(G)[0], f"{G.name}: MC-group vs B-group")
        elif inst.name == "slice":
            s.check(mc == bool(t_slices(G)), f"{G.name}: MC-group vs T-slice")
        elif isinstance(inst, ShiftedBurnside):
            s.check(mc == is_MC_group_shifted(inst.K, G)[0], f"{G.name}: MC-group vs shifted criterion")
    return s


def suite_reduction(inst: GreenFunctor, groups: list[Group]) -> Suite:
    s = Suite("reduction")
    for G in groups:
        for i in range(inst.evaluation(G).dim):
            def one(G=G, i=i):
                H, h = green.reduce_to_MC(inst, G, i)
                return green.is_MC_group(inst, H)[0] and h in green.mc_idempotents(inst, H)

            s.guard(f"{G.name} idempotent {i}", one)
    return s


def suite_domination(inst: GreenFunctor, groups: list[Group], product_bound: int = 36) -> Suite:
    s = Suite("domination")
    pairs = mc_pairs(inst, groups)
    for a in pairs:
        for b in pairs:
            if a.group.order * b.group.order > product_bound:
                continue
            x = green.dominates_criterion(inst, a.group, a.index, b.group, b.index)
            y = green.dominates_ideal(inst, a.group, a.index, b.group, b.index)
            what = f"{a.group.name}:{a.index} >> {b.group.name}:{b.index}"
            s.check(x == y, what + " (criterion vs ideal)")
            if inst.name == "burnside":
                s.check(x == has_quotient(a.group, b.group), what + " (criterion vs quotient)")
    return s


def suite_lattice(inst: GreenFunctor, bound: int) -> Suite:
    s = Suite("lattice")
    rep, _, _ = verify_lattice_iso(inst, bound)
    for c in rep.checks:
        s.check(c["pass"], c["name"] + (f" ({c['detail']})" if c["detail"] else ""))
    return s


def run_all(inst: GreenFunctor, bound: int) -> list[Suite]:
    groups = catalog(bound)
    small = [G for G in groups if G.order <= 12]
    suites = [
        suite_idempotents(inst, groups),
        suite_oracle(inst, small),
        suite_transport(inst, groups),
        suite_quantifiers(inst, groups),
        suite_mc(inst, groups),
        suite_reduction(inst, groups),
        suite_domination(inst, groups),
        suite_lattice(inst, bound),
    ]
    return suites
