import itertools

import pytest
from hypothesis import given, strategies as st

from posat.errors import PosatError, PosetSyntaxError, SizeLimitError
from posat.poset import (
    BUTTERFLY, DIAMOND, EMPTY, POINT, Poset, antichain, chain, covers, has_uctp,
    has_unique_maximal, has_unique_minimal, linear_sum, make_multipartite, parse_expr,
    parse_poset_expr, poset_from_json, reduce_endpoints, render, sum_of,
)

from conftest import small_posets


def brute_pairs(P):
    return sum(P.lt[a][b] for a in range(P.size) for b in range(P.size))


def brute_width(P):
    best = 0
    for r in range(P.size + 1):
        for combo in itertools.combinations(range(P.size), r):
            if all(not P.comparable(a, b) for a, b in itertools.combinations(combo, 2)):
                best = max(best, r)
    return best


def test_parse_point():
    P = parse_poset_expr(".")
    assert P.size == 1 and P.strict_pairs == 0


def test_parse_diamond():
    P = parse_poset_expr(".*A2*.")
    assert P.size == 4 and P.strict_pairs == 5
    assert P == DIAMOND


def test_parse_butterfly():
    P = parse_poset_expr("A2*A2")
    assert P.size == 4 and P.strict_pairs == 4


def test_whitespace_ignored():
    assert parse_poset_expr(" A2 *\t. ") == parse_poset_expr("A2*.")


def test_leftmost_atom_is_top():
    P = parse_poset_expr("A2*.")
    # bottom occupies index 0, the two top elements follow
    assert P.lt[0][1] and P.lt[0][2] and not P.lt[1][2]
    assert has_unique_minimal(P) and not has_unique_maximal(P)


@pytest.mark.parametrize("text,offset", [("A0", 1), ("A2**.", 3), ("*", 0), ("A2 x", 3), ("", 0), ("A", 1), (".*", 2)])
def test_syntax_errors_carry_offset(text, offset):
    with pytest.raises(PosetSyntaxError) as info:
        parse_poset_expr(text)
    assert info.value.offset == offset


def test_offset_is_in_bytes():
    with pytest.raises(PosetSyntaxError) as info:
        parse_poset_expr("é")
    assert info.value.offset == 0
    with pytest.raises(PosetSyntaxError) as info:
        parse_poset_expr(".*.é")
    assert info.value.offset == 3


def test_size_overflow():
    with pytest.raises(SizeLimitError):
        parse_poset_expr("A7*A6")
    assert parse_poset_expr("A6*A6").size == 12


def test_linear_sum_two_points_is_chain():
    assert linear_sum(POINT, POINT) == chain(2)


def test_linear_sum_empty_operand():
    assert linear_sum(antichain(2), EMPTY) == antichain(2)
    assert linear_sum(EMPTY, antichain(2)) == antichain(2)


def test_linear_sum_point_antichain_point_pairs():
    P = linear_sum(POINT, linear_sum(antichain(3), POINT))
    assert P.size == 5
    assert P.strict_pairs == brute_pairs(P) == 7


def test_linear_sum_overflow():
    with pytest.raises(SizeLimitError):
        linear_sum(antichain(7), antichain(6))


def test_multipartite_examples():
    assert make_multipartite([1, 2, 1]) == DIAMOND
    assert make_multipartite([2, 2]) == BUTTERFLY
    P = make_multipartite([2, 1, 3])
    assert P.size == 6 and P.strict_pairs == brute_pairs(P) == 11


@pytest.mark.parametrize("layers", [[], [2, 0], [0]])
def test_multipartite_errors(layers):
    with pytest.raises(PosatError):
        make_multipartite(layers)


def test_unique_extrema():
    assert (has_unique_minimal(DIAMOND), has_unique_maximal(DIAMOND)) == (True, True)
    assert (has_unique_minimal(antichain(2)), has_unique_maximal(antichain(2))) == (False, False)
    assert (has_unique_minimal(BUTTERFLY), has_unique_maximal(BUTTERFLY)) == (False, False)
    with pytest.raises(PosatError):
        has_unique_minimal(EMPTY)


def test_reduce_endpoints():
    assert reduce_endpoints(POINT, POINT) == (POINT, POINT)
    assert reduce_endpoints(antichain(2), POINT) == (linear_sum(antichain(2), POINT), POINT)
    assert reduce_endpoints(DIAMOND, BUTTERFLY) == (DIAMOND, linear_sum(POINT, BUTTERFLY))


def test_covers_and_uctp():
    C3 = chain(3)
    assert covers(C3, 0, 1) and not covers(C3, 0, 2)
    assert not has_uctp(chain(2))
    assert has_uctp(DIAMOND)
    with pytest.raises(PosatError):
        covers(C3, 0, 5)


def test_from_pairs_closure_and_cycle():
    P = Poset.from_pairs(3, [(0, 1), (1, 2)])
    assert P == chain(3)
    with pytest.raises(PosatError):
        Poset.from_pairs(2, [(0, 1), (1, 0)])


def test_validator_rejects_non_transitive():
    lt = ((False, True, False), (False, False, True), (False, False, False))
    with pytest.raises(PosatError):
        Poset(3, lt)


def test_json_round_trip():
    P = poset_from_json(DIAMOND.to_json())
    assert P == DIAMOND
    assert poset_from_json('{"size": 3, "covers": [[0, 1], [1, 2]]}') == chain(3)
    with pytest.raises(PosatError):
        poset_from_json("{bad")


@given(small_posets(max_size=4), small_posets(max_size=4), small_posets(max_size=4))
def test_linear_sum_associative(A, B, C):
    assert linear_sum(linear_sum(A, B), C) == linear_sum(A, linear_sum(B, C))


@given(st.lists(st.sampled_from([".", "A1", "A2", "A3", "C1", "C2", "C3"]), min_size=1, max_size=4))
def test_render_round_trip(atoms):
    text = "*".join(atoms)
    expr = parse_expr(text)
    assert parse_poset_expr(render(expr)) == parse_poset_expr(text)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_multipartite_height_and_width(layers):
    P = make_multipartite(layers)
    assert P.height() == len(layers)
    assert P.width() == brute_width(P) == max(layers)


@given(small_posets())
def test_constructed_posets_are_strict_orders(P):
    n = P.size
    for a in range(n):
        assert not P.lt[a][a]
        for b in range(n):
            assert not (P.lt[a][b] and P.lt[b][a])
            for c in range(n):
                if P.lt[a][b] and P.lt[b][c]:
                    assert P.lt[a][c]


def test_sum_of_first_argument_on_top():
    assert sum_of(POINT, antichain(2), POINT) == DIAMOND
    assert sum_of(antichain(2), POINT) == parse_poset_expr("A2*.")
