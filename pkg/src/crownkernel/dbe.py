"""Demanded balanced expansions: fractional flow construction, rounding, crowns.

Convention for the head classes (see the decisions ledger):
  A1 heads satisfy  w(a) + w(f^-1(a)) >= d_a - y + 1
  A2 heads satisfy  w(a) + w(f^-1(a)) <= d_a + y - 1
With this reading the existence guarantee "some A' has w(A') + w(B_A') >= sum d_a
implies A1 is non-empty" always holds.  Callers that need a strict lower bound of
x on head mass ask for demand x + y.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import WeightedGraph, connected_components
from .maxflow import build_dbe_network, component_node, head_node, max_flow

Component = frozenset[int]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural verifier; falsy when a condition is violated."""

    ok: bool
    condition: str | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def passed() -> "CheckResult":
        return CheckResult(True)

    @staticmethod
    def failed(condition: str, message: str) -> "CheckResult":
        return CheckResult(False, condition, message)


def uniform_demands(heads: Iterable[int], demand: int) -> dict[int, int]:
    return {a: demand for a in heads}


@dataclass(frozen=True)
class FractionalDBE:
    a1: frozenset[int]
    a2: frozenset[int]
    y: int
    demands: dict[int, int]
    components: tuple[Component, ...]
    neighbors: dict[Component, frozenset[int]]
    component_weight: dict[Component, int]
    head_weight: dict[int, int]
    shares: dict[tuple[Component, int], int]

    def mass(self, a: int) -> int:
        """w(a) plus all fractional mass assigned to a."""
        return self.head_weight[a] + sum(
            value for (_, head), value in self.shares.items() if head == a
        )


@dataclass(frozen=True)
class DBE:
    a1: frozenset[int]
    a2: frozenset[int]
    y: int
    demands: dict[int, int]
    assignment: dict[Component, int]
    component_weight: dict[Component, int]
    head_weight: dict[int, int]

    def assigned_to(self, heads: Iterable[int]) -> list[Component]:
        targets = set(heads)
        return sorted(
            (q for q, a in self.assignment.items() if a in targets), key=lambda q: min(q)
        )

    def mass(self, a: int) -> int:
        """w(a) + w(f^-1(a))."""
        return self.head_weight[a] + sum(
            self.component_weight[q] for q, head in self.assignment.items() if head == a
        )


@dataclass(frozen=True)
class CrownDecomposition:
    crown: frozenset[int]
    head: frozenset[int]
    assignment: dict[Component, int]
    x: int
    y: int
    components: tuple[Component, ...] = field(default=())


def _components_against(
    g: WeightedGraph, a_side: set[int], b_side: set[int]
) -> tuple[list[Component], dict[Component, frozenset[int]]]:
    components = connected_components(g, b_side)
    neighbors = {q: frozenset(g.neighborhood(q) & a_side) for q in components}
    return components, neighbors


def compute_fractional_dbe(
    g: WeightedGraph,
    a_side: Iterable[int],
    b_side: Iterable[int],
    demands: Mapping[int, int],
    y: int,
) -> FractionalDBE:
    """One max flow, then heads that can still reach the sink form A2.

    Every component adjacent to an A2 head is routed completely into A2 heads
    within their capacities; the remaining heads are saturated by components
    whose neighbourhood lies inside A1.  Unrouted mass of those components is
    charged to their smallest-id neighbour.
    """
    heads = set(a_side)
    body = set(b_side)
    if heads & body:
        raise ValueError("head side and component side overlap")
    missing = heads - set(demands)
    if missing:
        raise ValueError(f"missing demands for heads {sorted(missing)}")
    components, neighbors = _components_against(g, heads, body)
    weights = g.weights()
    component_weight = {q: g.weight_of(q) for q in components}
    for q in components:
        if not neighbors[q]:
            raise ValueError(f"component {sorted(q)} is isolated from the head side")
        if component_weight[q] > y:
            raise ValueError(f"component {sorted(q)} weighs {component_weight[q]} > y={y}")
    network = build_dbe_network(
        heads,
        components,
        {i: neighbors[q] for i, q in enumerate(components)},
        weights,
        {a: demands[a] for a in heads},
    )
    max_flow(network)
    reaches_sink = network.residual_reachable_to_sink()
    a2 = frozenset(a for a in heads if head_node(a) in reaches_sink)
    a1 = frozenset(heads - a2)
    shares: dict[tuple[Component, int], int] = {}
    index_of = {component_node(i): q for i, q in enumerate(components)}
    routed = {q: 0 for q in components}
    for arc in network.arcs:
        if arc.tail in index_of and arc.flow > 0:
            q = index_of[arc.tail]
            a = arc.head[1]
            shares[(q, a)] = arc.flow
            routed[q] += arc.flow
    for q in components:
        touches_a2 = bool(neighbors[q] & a2)
        if touches_a2:
            if routed[q] != component_weight[q] or any(
                shares.get((q, a), 0) for a in neighbors[q] & a1
            ):
                raise AssertionError("component next to an A2 head was not absorbed by A2")
        elif routed[q] < component_weight[q]:
            a = min(neighbors[q])
            shares[(q, a)] = shares.get((q, a), 0) + component_weight[q] - routed[q]
    return FractionalDBE(
        a1=a1,
        a2=a2,
        y=y,
        demands={a: demands[a] for a in heads},
        components=tuple(components),
        neighbors=neighbors,
        component_weight=component_weight,
        head_weight={a: weights[a] for a in heads},
        shares=shares,
    )


def _cancel_cycles(
    shares: dict[tuple[Component, int], int], split: list[Component]
) -> None:
    """Shift mass around alternating cycles until the split support is a forest."""
    while True:
        cycle = _find_cycle(shares, split)
        if cycle is None:
            return
        # cycle = [q1, a1, q2, a2, ..., qk, ak]; q_i gains on a_i and loses on a_{i-1}
        comps = cycle[0::2]
        heads = cycle[1::2]
        losing = [(comps[i], heads[i - 1]) for i in range(len(comps))]
        gaining = [(comps[i], heads[i]) for i in range(len(comps))]
        delta = min(shares[edge] for edge in losing)
        for edge in losing:
            shares[edge] -= delta
            if shares[edge] == 0:
                del shares[edge]
        for edge in gaining:
            shares[edge] += delta


def _support(shares: dict[tuple[Component, int], int], split: list[Component]):
    split_set = set(split)
    adjacency: dict[object, list[object]] = {}
    for (q, a), value in sorted(shares.items(), key=lambda item: (min(item[0][0]), item[0][1])):
        if value <= 0 or q not in split_set:
            continue
        adjacency.setdefault(("q", q), []).append(("a", a))
        adjacency.setdefault(("a", a), []).append(("q", q))
    return adjacency


def _find_cycle(shares, split):
    """Return an alternating cycle [q1, a1, q2, a2, ...] of the split support, if any."""
    adjacency = _support(shares, split)
    state: dict[object, int] = {}
    for start in adjacency:
        if start in state:
            continue
        state[start] = 1
        path = [start]
        stack = [(start, None, iter(adjacency[start]))]
        while stack:
            node, parent, neighbours = stack[-1]
            pushed = False
            for nxt in neighbours:
                if nxt == parent:
                    continue
                if state.get(nxt) == 1:
                    cycle = path[path.index(nxt):]
                    if cycle[0][0] != "q":
                        cycle = cycle[1:] + cycle[:1]
                    return [item[1] for item in cycle]
                if nxt not in state:
                    state[nxt] = 1
                    path.append(nxt)
                    stack.append((nxt, node, iter(adjacency[nxt])))
                    pushed = True
                    break
            if not pushed:
                state[node] = 2
                path.pop()
                stack.pop()
    return None


def round_fractional(fr: FractionalDBE) -> DBE:
    """Assign each component wholly to one head; per-head change stays within y-1."""
    shares = dict(fr.shares)
    assignment: dict[Component, int] = {}
    split = []
    for q in fr.components:
        holders = sorted(a for a in fr.neighbors[q] if shares.get((q, a), 0) > 0)
        if len(holders) == 1:
            assignment[q] = holders[0]
        elif len(holders) > 1:
            split.append(q)
        else:
            raise AssertionError("component without fractional holder")
    _cancel_cycles(shares, split)
    still_split = []
    for q in split:
        holders = sorted(a for a in fr.neighbors[q] if shares.get((q, a), 0) > 0)
        if len(holders) == 1:
            assignment[q] = holders[0]
        else:
            still_split.append(q)
    adjacency = _support(shares, still_split)
    drift: dict[int, int] = {}
    seen: set[object] = set()
    roots = sorted((node for node in adjacency if node[0] == "a"), key=lambda node: node[1])
    for root in roots:
        if root in seen:
            continue
        seen.add(root)
        drift[root[1]] = 0
        queue = deque([root])
        while queue:
            head_key = queue.popleft()
            a = head_key[1]
            for comp_key in adjacency[head_key]:
                if comp_key in seen:
                    continue
                seen.add(comp_key)
                q = comp_key[1]
                weight = fr.component_weight[q]
                children = sorted(node[1] for node in adjacency[comp_key] if node not in seen)
                if drift[a] <= 0 or not children:
                    assignment[q] = a
                    drift[a] += weight - shares[(q, a)]
                    receiver = None
                else:
                    receiver = children[0]
                    assignment[q] = receiver
                    drift[a] -= shares[(q, a)]
                for c in children:
                    seen.add(("a", c))
                    if c == receiver:
                        drift[c] = weight - shares[(q, c)]
                    else:
                        drift[c] = -shares[(q, c)]
                    queue.append(("a", c))
    return DBE(
        a1=fr.a1,
        a2=fr.a2,
        y=fr.y,
        demands=dict(fr.demands),
        assignment=assignment,
        component_weight=dict(fr.component_weight),
        head_weight=dict(fr.head_weight),
    )


def compute_dbe(
    g: WeightedGraph,
    a_side: Iterable[int],
    b_side: Iterable[int],
    demands: Mapping[int, int],
    y: int,
) -> DBE:
    return round_fractional(compute_fractional_dbe(g, a_side, b_side, demands, y))


def extract_crown(dbe: DBE) -> CrownDecomposition | None:
    """Head A1 with crown f^-1(A1); x is the largest value with per-head mass > x."""
    if not dbe.a1:
        return None
    crown_components = dbe.assigned_to(dbe.a1)
    crown = frozenset().union(*crown_components) if crown_components else frozenset()
    x = min(dbe.demands[a] for a in dbe.a1) - dbe.y
    return CrownDecomposition(
        crown=crown,
        head=dbe.a1,
        assignment={q: dbe.assignment[q] for q in crown_components},
        x=x,
        y=dbe.y,
        components=tuple(crown_components),
    )


def verify_dbe(
    g: WeightedGraph, a_side: Iterable[int], b_side: Iterable[int], dbe: DBE
) -> CheckResult:
    """Re-check the four expansion conditions inside g[A u B]."""
    heads = set(a_side)
    body = set(b_side)
    if dbe.a1 | dbe.a2 != heads or dbe.a1 & dbe.a2:
        return CheckResult.failed("partition", "A1 and A2 do not partition the head side")
    components, neighbors = _components_against(g, heads, body)
    for q in components:
        if g.weight_of(q) > dbe.y:
            return CheckResult.failed("1", f"component {sorted(q)} weighs more than y={dbe.y}")
    if set(dbe.assignment) != set(components):
        return CheckResult.failed("2", "assignment does not cover exactly the components of G[B]")
    for q in components:
        if dbe.assignment[q] not in neighbors[q]:
            return CheckResult.failed("2", f"component {sorted(q)} assigned to a non-neighbour")
    for q in components:
        if dbe.assignment[q] in dbe.a1 and not neighbors[q] <= dbe.a1:
            return CheckResult.failed(
                "3", f"component {sorted(q)} assigned into A1 has a neighbour in A2"
            )
    for a in sorted(heads):
        mass = g.weight(a) + sum(
            g.weight_of(q) for q in components if dbe.assignment[q] == a
        )
        demand = dbe.demands[a]
        if a in dbe.a1 and mass < demand - dbe.y + 1:
            return CheckResult.failed("4", f"A1 head {a} holds {mass} < d-y+1={demand - dbe.y + 1}")
        if a in dbe.a2 and mass > demand + dbe.y - 1:
            return CheckResult.failed("4", f"A2 head {a} holds {mass} > d+y-1={demand + dbe.y - 1}")
    return CheckResult.passed()


def verify_fractional(fr: FractionalDBE) -> CheckResult:
    """Conditions of the fractional expansion (A1 heads reach their demand)."""
    for a in fr.a1:
        if fr.mass(a) < fr.demands[a]:
            return CheckResult.failed("1", f"A1 head {a} below its demand")
    for a in fr.a2:
        if fr.mass(a) > max(fr.demands[a], fr.head_weight[a]):
            return CheckResult.failed("1", f"A2 head {a} above its demand")
    for q in fr.components:
        total = sum(fr.shares.get((q, a), 0) for a in fr.neighbors[q])
        if total > fr.component_weight[q]:
            return CheckResult.failed("2", f"component {sorted(q)} over-assigned")
    for (q, a), value in fr.shares.items():
        if value and a not in fr.neighbors[q]:
            return CheckResult.failed("3", f"mass of {sorted(q)} on non-neighbour {a}")
    for q in fr.components:
        into_a1 = sum(fr.shares.get((q, a), 0) for a in fr.neighbors[q] & fr.a1)
        total = sum(fr.shares.get((q, a), 0) for a in fr.neighbors[q])
        if (into_a1 > 0 or total < fr.component_weight[q]) and not fr.neighbors[q] <= fr.a1:
            return CheckResult.failed("4", f"component {sorted(q)} leaks into A1")
    return CheckResult.passed()


def verify_crown(g: WeightedGraph, crown: CrownDecomposition) -> CheckResult:
    """(x, y) crown decomposition checks in the host graph."""
    if g.neighborhood(crown.crown) - crown.head:
        return CheckResult.failed("separation", "crown has neighbours outside the head")
    components = connected_components(g, crown.crown)
    if set(components) != set(crown.assignment):
        return CheckResult.failed("components", "assignment does not match crown components")
    for q in components:
        if g.weight_of(q) > crown.y:
            return CheckResult.failed("size", f"crown component {sorted(q)} exceeds y")
        if crown.assignment[q] not in g.neighborhood(q) or crown.assignment[q] not in crown.head:
            return CheckResult.failed("assignment", f"component {sorted(q)} wrongly assigned")
    for h in crown.head:
        mass = g.weight(h) + sum(g.weight_of(q) for q in components if crown.assignment[q] == h)
        if mass <= crown.x:
            return CheckResult.failed("mass", f"head {h} holds {mass} <= x={crown.x}")
    return CheckResult.passed()
