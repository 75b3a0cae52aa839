"""Acceptance suite: one test per criterion, each printing a pass/fail line."""

import math
import time

from posat.constructions import audit_all, construct_saturated_multipartite, normalize_layers, verify_seed_free
from posat.embedding import find_induced_copy, oracle_find_copy
from posat.exact import enumerate_saturated, sat_star_exact
from posat.family import SubsetFamily
from posat.poset import BUTTERFLY, DIAMOND, EMPTY, POINT, antichain, chain, linear_sum
from posat.saturation import check_gluing_property, check_saturated
from posat.structure import VIOLATED, f_empirical, verify_prelim_lemmas

V2 = linear_sum(antichain(2), POINT)    # A2 * point
L2 = linear_sum(POINT, antichain(2))    # point * A2


def test_criterion_01_embedding_oracle_equivalence(criterion):
    battery = [antichain(2), antichain(3), chain(2), chain(3), V2, L2, DIAMOND, BUTTERFLY]
    start = time.perf_counter()
    agree = total = 0
    for mask in range(256):
        F = SubsetFamily(3, tuple(s for s in range(8) if mask >> s & 1))
        for P in battery:
            total += 1
            agree += (find_induced_copy(F, P) is None) == (oracle_find_copy(F, P) is None)
    elapsed = time.perf_counter() - start
    ok = agree == total == 2048 and elapsed < 10
    assert criterion(1, ok, f"{agree}/{total} agree in {elapsed:.2f}s (limit 10s)")


def test_criterion_02_chain_two_is_one(criterion):
    values = {}
    ok = True
    for n in (1, 2, 3, 4):
        r = sat_star_exact(n, chain(2))
        values[n] = r.sat_star
        ok &= r.sat_star == 1 and r.witness.sets() == [[]]
        ok &= check_saturated(SubsetFamily.of(n, [0]), chain(2)).is_saturated
    assert criterion(2, ok, f"sat*(n, C2) = {values}")


def test_criterion_03_antichain_two(criterion):
    values = {n: sat_star_exact(n, antichain(2), method="exhaustive").sat_star for n in (1, 2, 3)}
    r4 = sat_star_exact(4, antichain(2), method="bnb")
    values[4] = r4.sat_star
    ok = r4.complete and all(v == n + 1 for n, v in values.items())
    assert criterion(3, ok, f"sat*(n, A2) = {values} (n=4 by branch-and-bound)")


def test_criterion_04_diamond_linear_bound(criterion):
    exact = {n: sat_star_exact(n, DIAMOND).sat_star for n in (2, 3, 4)}
    violations = sum(v < math.ceil((n + 1) / 9) for n, v in exact.items())
    counted = 0
    for n in (1, 2, 3):
        for F in enumerate_saturated(n, DIAMOND):
            counted += 1
            violations += len(F) < math.ceil((n + 1) / 9)
    assert criterion(4, violations == 0,
                     f"exact {exact}; {counted} saturated families at n <= 3; {violations} violations")


def test_criterion_05_empty_part_bound(criterion):
    rows = []
    ok = True
    for P, name in ((V2, "A2*."), (L2, ".*A2")):
        for n in (2, 3):
            v = sat_star_exact(n, P).sat_star
            rows.append(f"{name}@{n}={v}")
            ok &= v >= n + 1
    assert criterion(5, ok, ", ".join(rows))


def test_criterion_06_seed_is_free(criterion):
    start = time.perf_counter()
    failures = []
    checked = 0
    for layers in ([2, 2], [2, 3], [2, 2, 2], [1, 2, 1], [2, 1, 2]):
        m = normalize_layers(layers).m
        for n in range(2 * m + 1, 15):
            checked += 1
            if not verify_seed_free(n, layers):
                failures.append((tuple(layers), n))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    assert criterion(6, ok, f"{checked} (layers, n) checked in {elapsed:.1f}s; "
                            f"{len(failures)} not free: {failures}")


def test_criterion_07_bipartite_size_ledger(criterion):
    rows, ok = [], True
    for n in range(7, 13):
        c = construct_saturated_multipartite(n, [2, 2])
        audits = audit_all(c)
        bound = 6 + 4 * (n + 1)
        row_ok = bool(c.saturated) and len(c.family) <= bound and all(a.passed for a in audits)
        ok &= row_ok
        rows.append(f"n={n}:{len(c.family)}/{bound}{'' if row_ok else '!'}")
    assert criterion(7, ok, "size/bound " + " ".join(rows))


def test_criterion_08_gluing_corollary(criterion):
    fams = enumerate_saturated(3, antichain(2))
    bad = 0
    for F in fams:
        bad += not check_gluing_property(F, EMPTY, antichain(2), 3)
        bad += not check_gluing_property(F, antichain(2), EMPTY, 3)
    assert criterion(8, bad == 0, f"{len(fams)} A2-saturated families at n=3, {bad} counterexamples")


def test_criterion_09_lemma_battery(criterion):
    targeted = violated = 0
    scanned = 0
    for n in (3, 4):
        for F in enumerate_saturated(n, DIAMOND):
            report = verify_prelim_lemmas(F, POINT, 2, POINT)
            scanned += 1
            targeted += len(F) < n
            violated += any(c.status == VIOLATED for c in report.entries)
    assert criterion(9, violated == 0,
                     f"{targeted} families with |F| < n (vacuous when 0); "
                     f"{scanned} diamond-saturated families scanned, {violated} with a violation")


def test_criterion_10_pair_function_bound(criterion):
    start = time.perf_counter()
    est = f_empirical(3, 1, 2, POINT)
    elapsed = time.perf_counter() - start
    value = "inf (no member pairs)" if est.min_found is None else est.min_found
    ok = est.exhausted and (est.min_found is None or est.min_found >= 1) and elapsed < 300
    assert criterion(10, ok, f"min_found={value}, exhausted={est.exhausted}, "
                             f"{est.pairs_examined} pairs in {elapsed:.2f}s")
