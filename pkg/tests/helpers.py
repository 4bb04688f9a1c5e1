"""Shared generators and checks for the test suite."""

from __future__ import annotations

import random

from crownkernel.graph import WeightedGraph
from crownkernel.kernels import KernelOutcome, apply_record
from crownkernel.oracle import solve_instance


def planted_graph(rng: random.Random, hubs: int, comps: int, comp_size: int, max_weight: int = 1, hub_density: float = 0.3) -> WeightedGraph:
    """A few hub vertices, each small tree attached to one or two hubs."""
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    hub_ids = list(range(1, hubs + 1))
    for h in hub_ids:
        weights[h] = rng.randint(1, max_weight)
    for a in hub_ids:
        for b in hub_ids:
            if a < b and rng.random() < hub_density:
                edges.append((a, b))
    next_id = hubs + 1
    for _ in range(comps):
        size = rng.randint(1, comp_size)
        ids = list(range(next_id, next_id + size))
        next_id += size
        for v in ids:
            weights[v] = rng.randint(1, max_weight)
        for i in range(1, size):
            edges.append((ids[rng.randrange(i)], ids[i]))
        for h in rng.sample(hub_ids, rng.randint(1, min(2, hubs))):
            edges.append((h, rng.choice(ids)))
    return WeightedGraph(range(1, next_id), edges, weights)


def greedy_vertex_cover(g: WeightedGraph) -> set[int]:
    """Maximal-matching cover pruned of redundant vertices; an upper bound on the optimum."""
    cover: set[int] = set()
    for u, v in g.edges():
        if u not in cover and v not in cover:
            cover |= {u, v}
    for v in sorted(cover):
        if all(u in cover for u in g.neighbors(v)):
            cover.discard(v)
    return cover


def outcome_agrees(instance, outcome: KernelOutcome, truth: bool | None = None) -> bool:
    """Verdict or reduced instance matches the exhaustive answer."""
    if truth is None:
        truth = solve_instance(instance).answer
    if outcome.verdict == "decided-no":
        return not truth
    if outcome.verdict == "decided-yes":
        return truth
    return solve_instance(outcome.reduced_instance).answer == truth


def replays(instance, outcome: KernelOutcome) -> bool:
    current = instance
    if not instance.weighted:
        current = instance.with_graph(instance.graph.with_unit_weights(), instance.budget)
    for record in outcome.certificate:
        current = apply_record(current, record)
    return current == outcome.reduced_instance


def graphs(min_n: int = 0, max_n: int = 9, max_weight: int = 1):
    """Hypothesis strategy for small weighted graphs on vertices 1..n."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        weights = {v: draw(st.integers(1, max_weight)) for v in range(1, n + 1)}
        return WeightedGraph(range(1, n + 1), [e for e, keep in zip(pairs, chosen) if keep], weights)

    return build()
