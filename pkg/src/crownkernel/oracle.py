"""Exhaustive reference solvers used to validate kernels, verdicts and structures.

Subsets are enumerated by increasing cardinality and then lexicographically over
ascending vertex ids, so witnesses are deterministic.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable

from .graph import WeightedGraph, connected_components
from .maxflow import SINK, SOURCE, FlowNetwork, max_flow

if TYPE_CHECKING:
    from .kernels import Instance

DEFAULT_CAP = 14
STRICT_PAIR_CAP = 10


class OracleCapExceeded(ValueError):
    """The instance is larger than the configured exhaustive-search cap."""


def oracle_cap() -> int:
    value = os.environ.get("CROWNKERNEL_ORACLE_CAP")
    if value is None:
        return DEFAULT_CAP
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"CROWNKERNEL_ORACLE_CAP must be an integer, got {value!r}") from None


def _check_cap(g: WeightedGraph, cap: int | None) -> None:
    limit = oracle_cap() if cap is None else cap
    if g.n > limit:
        raise OracleCapExceeded(f"graph has {g.n} vertices, oracle cap is {limit}")


@dataclass(frozen=True)
class OracleResult:
    answer: bool
    optimum: int | None = None
    witness: frozenset[int] | None = None
    p_ell: int | None = None


class _BitGraph:
    """Bitmask view of a graph for fast component queries."""

    def __init__(self, g: WeightedGraph, weighted: bool):
        self.ids = g.vertices()
        self.n = len(self.ids)
        position = {v: i for i, v in enumerate(self.ids)}
        self.adj = [0] * self.n
        for u, v in g.edges():
            self.adj[position[u]] |= 1 << position[v]
            self.adj[position[v]] |= 1 << position[u]
        self.weight = [g.weight(v) if weighted else 1 for v in self.ids]
        self.full = (1 << self.n) - 1

    def mask_weight(self, mask: int) -> int:
        total = 0
        while mask:
            low = mask & -mask
            total += self.weight[low.bit_length() - 1]
            mask ^= low
        return total

    def components(self, mask: int) -> list[int]:
        result = []
        remaining = mask
        while remaining:
            low = remaining & -remaining
            comp = low
            frontier = low
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                grow = self.adj[bit.bit_length() - 1] & remaining & ~comp
                comp |= grow
                frontier |= grow
            result.append(comp)
            remaining &= ~comp
        return result

    def max_component(self, mask: int, limit: int | None = None) -> int:
        """Heaviest component weight of the induced subgraph; stops early above limit."""
        best = 0
        for comp in self.components(mask):
            best = max(best, self.mask_weight(comp))
            if limit is not None and best > limit:
                return best
        return best

    def to_set(self, mask: int) -> frozenset[int]:
        return frozenset(self.ids[i] for i in range(self.n) if mask >> i & 1)

    def subsets(self, size: int):
        for combo in itertools.combinations(range(self.n), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield mask


# vertex integrity


def _integrity(g: WeightedGraph, p: int, weighted: bool, cap: int | None) -> OracleResult:
    _check_cap(g, cap)
    if p < 0:
        return OracleResult(False)
    bits = _BitGraph(g, weighted)
    best: int | None = None
    witness = 0
    for size in range(bits.n + 1):
        if best is not None and size >= best:
            break
        for mask in bits.subsets(size):
            removed = bits.mask_weight(mask)
            if best is not None and removed >= best:
                continue
            cost = removed + bits.max_component(bits.full & ~mask)
            if best is None or cost < best:
                best, witness = cost, mask
    assert best is not None
    answer = best <= p
    p_ell = None
    if answer:
        # heaviest remaining component, minimised over all solutions of cost <= p
        p_ell = None
        for size in range(min(bits.n, p) + 1):
            for mask in bits.subsets(size):
                removed = bits.mask_weight(mask)
                if removed > p:
                    continue
                largest = bits.max_component(bits.full & ~mask, p - removed)
                if removed + largest <= p and (p_ell is None or largest < p_ell):
                    p_ell = largest
    return OracleResult(answer, best, bits.to_set(witness), p_ell)


def brute_vi(g: WeightedGraph, p: int, cap: int | None = None) -> OracleResult:
    """Unweighted vertex integrity: |S| + largest component size <= p."""
    return _integrity(g, p, weighted=False, cap=cap)


def brute_wvi(g: WeightedGraph, p: int, cap: int | None = None) -> OracleResult:
    """Weighted vertex integrity: w(S) + heaviest component weight <= p."""
    return _integrity(g, p, weighted=True, cap=cap)


# component order connectivity


def _separator(g: WeightedGraph, k: int, limit: int, weighted: bool, cap: int | None) -> OracleResult:
    _check_cap(g, cap)
    bits = _BitGraph(g, weighted)
    best: int | None = None
    witness = 0
    for size in range(bits.n + 1):
        if best is not None and size >= best:
            break
        for mask in bits.subsets(size):
            removed = bits.mask_weight(mask)
            if best is not None and removed >= best:
                continue
            if bits.max_component(bits.full & ~mask, limit) <= limit:
                best, witness = removed, mask
                if not weighted:
                    break
    assert best is not None
    return OracleResult(best <= k, best, bits.to_set(witness))


def brute_coc(g: WeightedGraph, k: int, W: int, cap: int | None = None) -> OracleResult:
    """Minimum number of vertices whose removal leaves components of size <= W."""
    return _separator(g, k, W, weighted=False, cap=cap)


def brute_wcoc(g: WeightedGraph, k: int, W: int, cap: int | None = None) -> OracleResult:
    """Minimum weight of a set whose removal leaves components of weight <= W."""
    return _separator(g, k, W, weighted=True, cap=cap)


# packings


def minimal_connected_sets(g: WeightedGraph, threshold: int, weighted: bool = True) -> list[frozenset[int]]:
    """Inclusion-minimal connected vertex sets of weight >= threshold."""
    bits = _BitGraph(g, weighted)
    found: set[int] = set()

    def grow(mask: int, weight: int, frontier: int, banned: int) -> None:
        if weight >= threshold:
            found.add(mask)
            return
        candidates = frontier & ~banned
        while candidates:
            bit = candidates & -candidates
            candidates ^= bit
            i = bit.bit_length() - 1
            grow(mask | bit, weight + bits.weight[i], (frontier | bits.adj[i]) & ~(mask | bit), banned)
            banned |= bit

    for i in range(bits.n):
        lower = (1 << i) - 1  # sets are rooted at their smallest index
        grow(1 << i, bits.weight[i], bits.adj[i] & ~lower & ~(1 << i), lower)

    def is_minimal(mask: int) -> bool:
        # a smaller connected set of enough weight exists iff dropping one vertex keeps both
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            smaller = mask & ~bit
            if bits.mask_weight(smaller) >= threshold and len(bits.components(smaller)) == 1:
                return False
        return True

    minimal = [mask for mask in found if is_minimal(mask)]
    return sorted((bits.to_set(mask) for mask in minimal), key=lambda s: (len(s), sorted(s)))


def brute_max_packing(
    g: WeightedGraph, threshold: int, weighted: bool = True, cap: int | None = None
) -> tuple[int, list[frozenset[int]]]:
    """Maximum number of disjoint connected sets of weight >= threshold."""
    _check_cap(g, cap)
    sets = minimal_connected_sets(g, threshold, weighted)
    ids = g.vertices()
    position = {v: i for i, v in enumerate(ids)}
    masks = []
    for s in sets:
        mask = 0
        for v in s:
            mask |= 1 << position[v]
        masks.append(mask)
    by_low: dict[int, list[int]] = {}
    for mask in masks:
        low = (mask & -mask).bit_length() - 1
        by_low.setdefault(low, []).append(mask)
    full = (1 << len(ids)) - 1

    @lru_cache(maxsize=None)
    def solve(used: int) -> tuple[int, tuple[int, ...]]:
        free = full & ~used
        if not free:
            return 0, ()
        low = (free & -free).bit_length() - 1
        best = solve(used | 1 << low)
        for mask in by_low.get(low, []):
            if mask & used == 0:
                count, chosen = solve(used | mask)
                if count + 1 > best[0]:
                    best = (count + 1, (mask,) + chosen)
        return best

    # sets are grouped by their lowest vertex, and a set can only be chosen once that
    # vertex is the lowest free one; lower free vertices are skipped explicitly
    count, chosen = solve(0)
    solve.cache_clear()
    parts = []
    for mask in chosen:
        parts.append(frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1))
    return count, parts


def brute_min_cut(network: FlowNetwork) -> int:
    """Minimum s-t cut by enumerating every source-side node subset."""
    inner = [node for node in network.nodes if node not in (network.source, network.sink)]
    if len(inner) > 16:
        raise OracleCapExceeded("min-cut enumeration is limited to 16 inner nodes")
    best = None
    for size in range(len(inner) + 1):
        for chosen in itertools.combinations(inner, size):
            side = set(chosen) | {network.source}
            value = sum(a.capacity for a in network.arcs if a.tail in side and a.head not in side)
            if best is None or value < best:
                best = value
    return best or 0


# reducible pairs


@dataclass(frozen=True)
class StrictPair:
    A: frozenset[int]
    B: frozenset[int]
    shares: dict[tuple[frozenset[int], int], int]
    strict_witness: int


def _pair_shares(
    g: WeightedGraph, heads: list[int], components: list[frozenset[int]], demands: dict[int, int]
) -> dict[tuple[frozenset[int], int], int] | None:
    network = FlowNetwork()
    for i, q in enumerate(components):
        network.add_arc(SOURCE, ("q", i), len(q))
        for a in sorted(g.neighborhood(q) & set(heads)):
            network.add_arc(("q", i), ("a", a), len(q))
    for a in heads:
        network.add_arc(("a", a), SINK, demands[a])
    value, _ = max_flow(network)
    if value < sum(demands.values()):
        return None
    shares = {}
    for arc in network.arcs:
        if arc.tail != SOURCE and arc.head != SINK and arc.flow:
            shares[(components[arc.tail[1]], arc.head[1])] = arc.flow
    return shares


def strict_pair_for_heads(g: WeightedGraph, heads: Iterable[int], W: int) -> StrictPair | None:
    """Strictly reducible pair with the given head set and its largest crown, if any."""
    head_list = sorted(heads)
    head_set = set(head_list)
    rest = set(g.vertices()) - head_set
    components = [
        q
        for q in connected_components(g, rest)
        if len(q) <= W and g.neighborhood(q) & head_set
    ]
    base = {a: 2 * W - 1 for a in head_list}
    for witness in head_list:
        demands = dict(base)
        demands[witness] = 2 * W
        shares = _pair_shares(g, head_list, components, demands)
        if shares is not None:
            crown = frozenset().union(*components) if components else frozenset()
            return StrictPair(frozenset(head_list), crown, shares, witness)
    return None


def brute_strict_pair(g: WeightedGraph, W: int, cap: int | None = None) -> StrictPair | None:
    """A minimal strictly reducible pair (smallest head set first), or None."""
    _check_cap(g, STRICT_PAIR_CAP if cap is None else cap)
    vertices = g.vertices()
    for size in range(1, len(vertices) + 1):
        for heads in itertools.combinations(vertices, size):
            pair = strict_pair_for_heads(g, heads, W)
            if pair is not None:
                return pair
    return None


# equivalence


def solve_instance(instance: "Instance", cap: int | None = None) -> OracleResult:
    problem = instance.problem
    if problem == "vi":
        return brute_vi(instance.graph, instance.p, cap)
    if problem == "wvi":
        return brute_wvi(instance.graph, instance.p, cap)
    if problem == "coc":
        if instance.k < 0:
            return OracleResult(False)
        return brute_coc(instance.graph, instance.k, instance.W, cap)
    if problem == "wcoc":
        if instance.k < 0:
            return OracleResult(False)
        return brute_wcoc(instance.graph, instance.k, instance.W, cap)
    raise ValueError(f"unknown problem {problem!r}")


def check_equivalence(
    original: "Instance", kernel: "Instance", problem: str | None = None, cap: int | None = None
) -> bool:
    """True when both instances have the same yes/no answer."""
    kind = problem or original.problem
    if original.problem != kind or kernel.problem != kind:
        raise ValueError("instances belong to different problems")
    return solve_instance(original, cap).answer == solve_instance(kernel, cap).answer
