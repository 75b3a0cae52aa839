import itertools

import pytest

from posat.constructions import (
    ANTICHAIN, CHAIN, audit_all, audit_C_T, class_bound, construct_saturated_multipartite,
    interval_ledger, normalize_layers, seed_family, trace_class, verify_seed_free,
)
from posat.dilworth import max_antichain
from posat.embedding import EmbeddingWitness, find_induced_copy
from posat.errors import PosatError, PreconditionError
from posat.family import SubsetFamily, from_elements
from posat.poset import make_multipartite
from posat.saturation import is_free


def test_normalize_examples():
    assert normalize_layers([2, 1, 2]).blocks == ((ANTICHAIN, 2), (ANTICHAIN, 2))
    assert normalize_layers([1, 1, 2]).blocks == ((CHAIN, 2), (ANTICHAIN, 2))
    b = normalize_layers([1, 1, 1])
    assert b.blocks == ((CHAIN, 3),) and b.degenerate


def test_normalize_keeps_endpoint_singletons():
    b = normalize_layers([1, 2, 1])
    assert b.blocks == ((CHAIN, 1), (ANTICHAIN, 2), (CHAIN, 1))
    assert b.m == 3


def test_normalize_errors():
    for bad in ([], [2, 0]):
        with pytest.raises(PosatError):
            normalize_layers(bad)


def test_interval_ledger_bipartite():
    led = interval_ledger(normalize_layers([2, 2]))
    assert led.T == (frozenset({1}),) and led.U == (frozenset({1}),)


def test_interval_ledger_diamond():
    led = interval_ledger(normalize_layers([1, 2, 1]))
    assert led.T == (frozenset({1}), frozenset({2}))
    assert led.U == (frozenset({2}), frozenset({1}))


def test_interval_ledger_chain_block():
    led = interval_ledger(normalize_layers([1, 1, 3]))
    assert led.T == (frozenset({1, 2}),)


def _sets(*lists):
    return sorted(from_elements(s) for s in lists)


def test_seed_bipartite_n7():
    seed = seed_family(7, normalize_layers([2, 2]))
    full = set(range(1, 8))
    expected = _sets([1], [2], [3], *(sorted(full - {i}) for i in (1, 2, 3)))
    assert list(seed.members) == expected and len(seed) == 6


@pytest.mark.parametrize("n", range(7, 15))
def test_seed_size_constant(n):
    assert len(seed_family(n, normalize_layers([2, 2]))) == 6
    assert len(seed_family(n, normalize_layers([2, 1, 2]))) == 6


def test_seed_preconditions():
    with pytest.raises(PreconditionError):
        seed_family(6, normalize_layers([2, 2]))
    with pytest.raises(PreconditionError):
        seed_family(7, normalize_layers([1, 1, 1]))
    with pytest.raises(PreconditionError):
        construct_saturated_multipartite(5, [1, 1])


@pytest.mark.parametrize("layers,n", [([2, 2], 7), ([2, 3], 9), ([3, 2], 9), ([2, 1, 2], 7)])
def test_seed_free_examples(layers, n):
    assert verify_seed_free(n, layers)


def test_seed_subfamily_stays_free():
    seed = seed_family(7, normalize_layers([2, 2]))
    smaller = seed.remove(max(seed.members))
    assert is_free(smaller, make_multipartite([2, 2]))


@pytest.mark.parametrize("layers", [[2, 2], [2, 3], [3, 2], [2, 1, 2]])
def test_seed_free_over_range(layers):
    m = normalize_layers(layers).m
    for n in range(2 * m + 1, 15):
        assert verify_seed_free(n, layers), (layers, n)


def test_three_layer_seed_counterexample():
    # an explicit K_{2,2,2} inside the seed at n = 11
    n = 11
    seed = seed_family(n, normalize_layers([2, 2, 2]))
    full = set(range(1, n + 1))
    images = [[1], [2], [1, 2, 3], sorted(full - {3, 4, 5}), sorted(full - {5}), sorted(full - {4})]
    w = EmbeddingWitness(tuple(from_elements(s) for s in images))
    assert all(x in seed for x in w.assignment)
    assert w.is_valid(make_multipartite([2, 2, 2]))
    assert not verify_seed_free(n, [2, 2, 2])


def test_diamond_seed_counterexample():
    n = 7
    seed = seed_family(n, normalize_layers([1, 2, 1]))
    full = set(range(1, n + 1))
    images = [[1], [1, 2], sorted(full - {2, 3}), sorted(full - {3})]
    w = EmbeddingWitness(tuple(from_elements(s) for s in images))
    assert all(x in seed for x in w.assignment)
    assert w.is_valid(make_multipartite([1, 2, 1]))


def test_construction_n7():
    c = construct_saturated_multipartite(7, [2, 2])
    assert c.saturated and len(c.seed) == 6
    assert c.bound == 38 and len(c.family) <= 38
    assert set(c.seed.members) <= set(c.family.members)


def test_construction_schema(schema):
    import jsonschema
    c = construct_saturated_multipartite(7, [2, 2])
    data = c.to_json()
    data["audit"] = [a.to_json() for a in audit_all(c)]
    data["audit_passed"] = True
    jsonschema.validate(data, schema("construction"))


def test_audit_singleton_trace_is_chain():
    c = construct_saturated_multipartite(7, [2, 2])
    a = audit_C_T(c, 0b001)
    assert a.block == 1 and a.kind == ANTICHAIN and a.passed
    members = trace_class(c.family, 3, 0b001)
    assert all(x & y in (x, y) for x, y in itertools.combinations(members, 2))


def test_audit_boundary_traces():
    c = construct_saturated_multipartite(7, [2, 2])
    assert audit_C_T(c, 0).block == 1
    assert audit_C_T(c, 0b111).block == 2
    with pytest.raises(PosatError):
        audit_C_T(c, 0b1000)


@pytest.mark.parametrize("n", range(7, 13))
def test_traces_partition_family(n):
    c = construct_saturated_multipartite(n, [2, 2])
    audits = audit_all(c)
    assert sum(a.count for a in audits) == len(c.family)
    assert all(a.passed for a in audits)
    assert c.saturated
    assert len(c.family) <= c.class_bound


def test_chain_block_audit_flags_boundary_trace():
    # a bottom chain block lets singletons outside [m] into the empty trace class;
    # the audit reports this instead of passing it
    n = 9
    c = construct_saturated_multipartite(n, [1, 1, 2])
    assert c.saturated
    failing = [a for a in audit_all(c) if not a.passed]
    assert [(a.trace, a.kind) for a in failing] == [(0, CHAIN)]
    assert failing[0].outside_seed == [1 << i for i in range(3, n)]


def test_chain_block_interior_traces_pass():
    c = construct_saturated_multipartite(9, [1, 1, 2])
    for a in audit_all(c):
        if a.kind == CHAIN and a.trace:
            assert a.passed and not a.outside_seed


def test_class_bound_formula():
    b = normalize_layers([2, 2])
    # traces of size 0, 1 belong to block 1; sizes 2, 3 to block 2: 8 traces, all antichain
    assert class_bound(6, b, 7) == 6 + 8 * 2 * 8


def test_slope_report():
    sizes = [len(construct_saturated_multipartite(n, [2, 2]).family) for n in range(7, 13)]
    slopes = [b - a for a, b in zip(sizes, sizes[1:])]
    print("K22 sizes", sizes, "slopes", slopes)


def brute_width(members):
    best = 0
    for r in range(len(members) + 1):
        for combo in itertools.combinations(members, r):
            if all(x & y not in (x, y) for x, y in itertools.combinations(combo, 2)):
                best = max(best, r)
    return best


def test_max_antichain_matches_brute_force():
    import random
    rng = random.Random(3)
    for _ in range(200):
        members = rng.sample(range(32), rng.randint(0, 12))
        anti = max_antichain(members)
        assert all(x & y not in (x, y) for x, y in itertools.combinations(anti, 2))
        assert len(anti) == brute_width(members)
