"""The ten acceptance criteria, one test each.

Each test prints a ``PASS``/``FAIL`` line; the lines are repeated in the
terminal summary.  Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import time
from fractions import Fraction

from green_ideals import green
from green_ideals.catalog import build, catalog
from green_ideals.grp import direct_product, popcount
from green_ideals.lattice import closed_sets, build_poset, verify_lattice_iso
from green_ideals.ops import deflate
from green_ideals.qburnside import BURNSIDE, is_B_group
from green_ideals.shifted import (
    beta_K,
    beta_ideal_certificate,
    graph_over_K,
    is_BK_group,
    is_MC_group_shifted,
    iso_over_K,
    quotient_over_K,
    shifted_instance,
    subgroup_to_pair,
)
from green_ideals.slice import SLICE, m_slice
from green_ideals.verify import idempotent_axioms, suite_domination, suite_oracle, suite_transport
from oracles import oracle_m

RUN_START = time.perf_counter()
REQUIRED = ["C%d" % n for n in range(1, 17)] + ["V4", "S3", "S4", "A4", "D8", "D12", "Q8", "C2xC4", "C3xC3", "C2xC2xC2"]


def _sub(G, order):
    return next(H for H in G.subgroups() if H.order == order)


# -- criteria


def test_criterion_1_burnside_idempotents(record):
    t = time.perf_counter()
    groups = catalog(24)
    names = {G.name for G in groups} | {"C1"}
    missing = [n for n in REQUIRED if n not in names]
    bad = [G.name for G in groups if not idempotent_axioms(BURNSIDE, G)]
    counted = all(len(BURNSIDE.evaluation(G).idempotents()) == len(G.subgroup_classes()) for G in groups)
    dt = time.perf_counter() - t
    ok = len(groups) >= 20 and not missing and not bad and counted and dt <= 60
    record(1, ok, f"{len(groups)} groups, failures {bad}, missing {missing}, {dt:.1f}s")


def test_criterion_2_slice_idempotents(record):
    t = time.perf_counter()
    groups = catalog(16)
    bad = [G.name for G in groups if not idempotent_axioms(SLICE, G)]
    counted = all(len(SLICE.evaluation(G).idempotents()) == len(G.slice_classes()) for G in groups)
    dt = time.perf_counter() - t
    record(2, not bad and counted and dt <= 120, f"{len(groups)} groups, failures {bad}, {dt:.1f}s")


def test_criterion_3_oracle(record):
    groups = catalog(12)
    suites = [suite_oracle(BURNSIDE, groups), suite_oracle(SLICE, groups)]
    cases = sum(s.cases for s in suites)
    failures = [f for s in suites for f in s.failures]
    record(3, cases > 0 and not failures, f"{cases} cases, failures {failures[:3]}")


def test_criterion_4_transport_shapes(record):
    groups = catalog(16)
    suites = [suite_transport(BURNSIDE, groups), suite_transport(SLICE, groups)]
    cases = sum(s.cases for s in suites)
    failures = [f for s in suites for f in s.failures]
    record(4, cases > 0 and not failures, f"{cases} cases, failures {failures[:3]}")


def test_criterion_5_bgroups(record):
    from green_ideals.qburnside import m_constant

    C2, V4 = build("C2"), build("V4")
    facts = [
        oracle_m(C2, C2.whole) == Fraction(1, 2) == m_constant(C2, C2.whole),
        oracle_m(V4, _sub(V4, 2)) == 0 == m_constant(V4, _sub(V4, 2)),
    ]
    small = catalog(8)
    facts += [oracle_m(G, G.trivial) == 1 == m_constant(G, G.trivial) for G in small]
    agree = all(oracle_m(G, N) == m_constant(G, N) for G in small for N in G.normal_subgroups())
    scan = [G.name for G in small if is_B_group(G)[0]]
    mc_scan = [G.name for G in small if green.is_MC_group(BURNSIDE, G)[0]]
    equiv = [G.name for G in catalog(24) if is_B_group(G)[0] != green.is_MC_group(BURNSIDE, G)[0]]
    ok = all(facts) and agree and scan == ["1", "V4", "S3"] and mc_scan == scan and not equiv
    record(5, ok, f"B-groups of order <= 8: {scan}; MC scan {mc_scan}; mismatches {equiv}")


def test_criterion_6_slice_divergence(record):
    C2 = build("C2")
    mc, witnesses = green.is_MC_group(SLICE, C2)
    labels = [SLICE.evaluation(C2).idempotent_labels()[i] for i in witnesses]
    m = m_slice(C2, C2.trivial, C2.whole)
    ok = mc and labels == ["xi_(C2,1)"] and m == 0 and not green.is_MC_group(BURNSIDE, C2)[0]
    record(6, ok, f"slice witnesses {labels}, m = {m}")


def test_criterion_7_domination(record):
    groups = catalog(24)
    suites = [suite_domination(BURNSIDE, groups), suite_domination(SLICE, groups)]
    cases = sum(s.cases for s in suites)
    failures = [f for s in suites for f in s.failures]
    record(7, cases > 0 and not failures, f"{cases} comparisons, failures {failures[:3]}")


def test_criterion_8_deflation_constants(record):
    cases, bad = 0, []
    for G in catalog(12):
        full = (1 << G.order) - 1
        subs = G.subgroups()
        ev = SLICE.evaluation(G)
        for c in G.subgroup_classes():
            S = subs[c.rep]
            xi = ev.idempotent(G.slice_class_of_masks(full, S.mask))
            for N in G.normal_subgroups():
                op = deflate(G, N)
                Q, proj = G.quotient(N)
                target = Q.slice_class_of_masks((1 << Q.order) - 1, proj.image(S.mask))
                m = m_slice(G, S, N)
                want = {k: m * v for k, v in SLICE.evaluation(Q).idempotent(target).items() if m * v}
                cases += 1
                if SLICE.apply(op, xi) != want:
                    bad.append((G.name, S.order, N.order))
    record(8, cases > 0 and not bad, f"{cases} cases, failures {bad[:3]}")


def test_criterion_9_shifted(record):
    groups = catalog(16)
    mismatches, cases = [], 0
    for K in groups:
        inst = shifted_instance(K)
        for L in groups:
            if L.order * K.order > 16:
                continue
            cases += 1
            if green.is_MC_group(inst, L)[0] != is_MC_group_shifted(K, L)[0]:
                mismatches.append((K.name, L.name))
    C2 = build("C2")
    positive = is_MC_group_shifted(C2, C2)[0] and green.is_MC_group(shifted_instance(C2), C2)[0]

    beta_bad, beta_cases = [], 0
    for K in [G for G in groups if G.order <= 4]:
        for L in catalog(8):
            P = direct_product(L, K).group
            subs = P.subgroups()
            for c in P.subgroup_classes():
                X = subs[c.rep]
                gd = subgroup_to_pair(L, K, X)
                if gd.p1.order != L.order or gd.k2.order != 1:
                    continue
                LK = graph_over_K(L, K, X)
                B = beta_K(LK)
                a, b = beta_ideal_certificate(LK)
                beta_cases += 1
                if not (is_BK_group(B)[0] and iso_over_K(beta_K(B), B) and quotient_over_K(LK, B) and a == 1 and b != 0):
                    beta_bad.append((K.name, L.name, popcount(X.mask)))
    ok = not mismatches and positive and not beta_bad
    record(9, ok, f"{cases} (K, L) pairs, mismatches {mismatches}; {beta_cases} groups over K, beta failures {beta_bad[:3]}")


def test_criterion_10_lattice(record):
    P4 = build_poset(BURNSIDE, 4)
    three = len(closed_sets(P4)) == 3
    failures = []
    for inst, top in ((BURNSIDE, 8), (SLICE, 6)):
        for bound in range(1, top + 1):
            rep, sets, ideals = verify_lattice_iso(inst, bound)
            if inst is BURNSIDE and bound == 4:
                three = three and len(set(ideals)) == 3
            skipped = [c["name"] for c in rep.checks if c["detail"].startswith("skipped")]
            failures += [f"{inst.name} {bound}: {c['name']}" for c in rep.checks if not c["pass"]]
            failures += [f"{inst.name} {bound}: skipped {s}" for s in skipped]
    total = time.perf_counter() - RUN_START
    ok = three and not failures and total <= 300
    record(10, ok, f"3 ideals at bound 4: {three}; failures {failures[:3]}; acceptance run {total:.1f}s")
