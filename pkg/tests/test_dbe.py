import itertools

import pytest
from hypothesis import given, strategies as st

from crownkernel.dbe import (
    DBE,
    compute_dbe,
    compute_fractional_dbe,
    extract_crown,
    round_fractional,
    uniform_demands,
    verify_crown,
    verify_dbe,
    verify_fractional,
)
from crownkernel.graph import WeightedGraph, connected_components, star_graph


def bipartite(head_weights, comps):
    """Heads 1..|A|; each component is (weight list, neighbour heads)."""
    weights = {i + 1: w for i, w in enumerate(head_weights)}
    edges = []
    body = []
    next_id = len(head_weights) + 1
    for comp_weights, nbrs in comps:
        ids = list(range(next_id, next_id + len(comp_weights)))
        next_id += len(ids)
        for v, w in zip(ids, comp_weights):
            weights[v] = w
        edges += list(zip(ids, ids[1:]))
        edges += [(ids[0], a) for a in nbrs]
        body += ids
    return WeightedGraph(sorted(weights), edges, weights), list(weights)[: len(head_weights)], body


def test_star_gives_single_head_crown():
    g = star_graph(3)
    dbe = compute_dbe(g, [1], [2, 3, 4], {1: 2}, 1)
    assert dbe.a1 == {1} and set(dbe.assignment.values()) == {1}
    assert len(dbe.assignment) == 3
    assert verify_dbe(g, [1], [2, 3, 4], dbe)
    crown = extract_crown(dbe)
    assert crown.head == {1} and crown.crown == {2, 3, 4}
    assert verify_crown(g, crown)


def test_unreachable_demand_puts_head_in_a2():
    g = WeightedGraph([1, 2], [(1, 2)])
    dbe = compute_dbe(g, [1], [2], {1: 10}, 1)
    assert dbe.a1 == frozenset() and dbe.a2 == {1}
    assert extract_crown(dbe) is None
    assert verify_dbe(g, [1], [2], dbe)


def test_empty_body_gives_empty_assignment():
    g = WeightedGraph([1])
    dbe = compute_dbe(g, [1], [], {1: 1}, 1)
    assert dbe.assignment == {}
    assert verify_dbe(g, [1], [], dbe)


def test_overlapping_sides_rejected():
    with pytest.raises(ValueError):
        compute_dbe(star_graph(2), [1, 2], [2, 3], {1: 1, 2: 1}, 1)


def test_split_component_is_rounded_whole():
    # one 2-vertex component between two heads, demand forces a split
    g, heads, body = bipartite([1, 1], [([1, 1], [1, 2]), ([1], [1]), ([1], [2])])
    fr = compute_fractional_dbe(g, heads, body, {1: 3, 2: 3}, 2)
    assert verify_fractional(fr)
    dbe = round_fractional(fr)
    assert set(dbe.assignment) == set(connected_components(g, body))
    assert verify_dbe(g, heads, body, dbe)


def test_two_a1_heads_keep_disjoint_crowns():
    g, heads, body = bipartite([1, 1], [([1], [1]), ([1], [1]), ([1], [2]), ([1], [2])])
    dbe = compute_dbe(g, heads, body, uniform_demands(heads, 2), 1)
    assert dbe.a1 == {1, 2}
    crown = extract_crown(dbe)
    assert verify_crown(g, crown)
    owners = [crown.assignment[q] for q in crown.components]
    assert sorted(owners) == [1, 1, 2, 2]


def test_verifier_flags_non_neighbour_assignment():
    g, heads, body = bipartite([1, 1], [([1], [1]), ([1], [2])])
    dbe = compute_dbe(g, heads, body, uniform_demands(heads, 1), 1)
    q1, q2 = sorted(dbe.assignment, key=min)
    bad = DBE(dbe.a1, dbe.a2, dbe.y, dbe.demands, {q1: 2, q2: 2}, dbe.component_weight, dbe.head_weight)
    check = verify_dbe(g, heads, body, bad)
    assert not check and check.condition == "2"


def test_verifier_flags_a1_component_touching_a2():
    g, heads, body = bipartite([1, 1], [([1], [1, 2])])
    q = connected_components(g, body)[0]
    bad = DBE(frozenset({1}), frozenset({2}), 1, {1: 1, 2: 1}, {q: 1}, {q: 1}, {1: 1, 2: 1})
    check = verify_dbe(g, heads, body, bad)
    assert not check and check.condition == "3"


@st.composite
def dbe_cases(draw):
    heads = draw(st.integers(1, 4))
    head_weights = [draw(st.integers(1, 3)) for _ in range(heads)]
    comps = []
    for _ in range(draw(st.integers(0, 6))):
        weights = draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
        nbrs = draw(st.sets(st.integers(1, heads), min_size=1))
        comps.append((weights, sorted(nbrs)))
    y = max([sum(w) for w, _ in comps], default=1)
    y += draw(st.integers(0, 2))
    demands = {a: draw(st.integers(1, 3 * y + 3)) for a in range(1, heads + 1)}
    return head_weights, comps, y, demands


@given(dbe_cases())
def test_computed_expansions_pass_all_conditions(case):
    head_weights, comps, y, demands = case
    g, heads, body = bipartite(head_weights, comps)
    fr = compute_fractional_dbe(g, heads, body, demands, y)
    assert verify_fractional(fr)
    dbe = round_fractional(fr)
    assert verify_dbe(g, heads, body, dbe)
    crown = extract_crown(dbe)
    if crown is not None:
        assert verify_crown(g, crown)


@given(dbe_cases())
def test_enough_total_mass_yields_nonempty_a1(case):
    head_weights, comps, y, demands = case
    g, heads, body = bipartite(head_weights, comps)
    components = connected_components(g, body)
    satisfiable = False
    for size in range(1, len(heads) + 1):
        for subset in itertools.combinations(heads, size):
            inside = [q for q in components if g.neighborhood(q) <= set(subset)]
            total = g.weight_of(subset) + sum(g.weight_of(q) for q in inside)
            if total >= sum(demands[a] for a in subset):
                satisfiable = True
    dbe = compute_dbe(g, heads, body, demands, y)
    if satisfiable:
        assert dbe.a1


@given(dbe_cases())
def test_rounding_moves_each_head_by_less_than_y(case):
    head_weights, comps, y, demands = case
    g, heads, body = bipartite(head_weights, comps)
    fr = compute_fractional_dbe(g, heads, body, demands, y)
    dbe = round_fractional(fr)
    for a in heads:
        assert abs(dbe.mass(a) - fr.mass(a)) <= y - 1
