"""Deterministic integral max-flow (Dinic) and the head/component assignment network."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

SOURCE = "s"
SINK = "t"


def head_node(a: int) -> tuple[str, int]:
    return ("head", a)


def component_node(index: int) -> tuple[str, int]:
    return ("comp", index)


@dataclass
class Arc:
    tail: Hashable
    head: Hashable
    capacity: int
    flow: int = 0


@dataclass
class FlowNetwork:
    """Directed network with integer capacities; arcs keep insertion order."""

    source: Hashable = SOURCE
    sink: Hashable = SINK
    nodes: list[Hashable] = field(default_factory=list)
    arcs: list[Arc] = field(default_factory=list)
    _node_index: dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for node in (self.source, self.sink):
            self.add_node(node)

    def add_node(self, node: Hashable) -> None:
        if node not in self._node_index:
            self._node_index[node] = len(self.nodes)
            self.nodes.append(node)

    def add_arc(self, tail: Hashable, head: Hashable, capacity: int) -> int:
        if capacity < 0:
            raise ValueError("arc capacity must be non-negative")
        self.add_node(tail)
        self.add_node(head)
        self.arcs.append(Arc(tail, head, capacity))
        return len(self.arcs) - 1

    def arc_between(self, tail: Hashable, head: Hashable) -> Arc | None:
        for arc in self.arcs:
            if arc.tail == tail and arc.head == head:
                return arc
        return None

    def flow_value(self) -> int:
        return sum(a.flow for a in self.arcs if a.tail == self.source) - sum(
            a.flow for a in self.arcs if a.head == self.source
        )

    def check_flow(self) -> None:
        """Raise AssertionError unless capacities and conservation hold."""
        balance = {node: 0 for node in self.nodes}
        for arc in self.arcs:
            assert 0 <= arc.flow <= arc.capacity, f"capacity violated on {arc}"
            balance[arc.tail] -= arc.flow
            balance[arc.head] += arc.flow
        for node, value in balance.items():
            if node not in (self.source, self.sink):
                assert value == 0, f"conservation violated at {node}"

    def residual_reachable_to_sink(self) -> set[Hashable]:
        """Nodes from which the sink is reachable in the residual network."""
        reverse: dict[Hashable, list[Hashable]] = {node: [] for node in self.nodes}
        for arc in self.arcs:
            if arc.flow < arc.capacity:
                reverse[arc.head].append(arc.tail)
            if arc.flow > 0:
                reverse[arc.tail].append(arc.head)
        seen = {self.sink}
        queue = deque([self.sink])
        while queue:
            node = queue.popleft()
            for prev in reverse[node]:
                if prev not in seen:
                    seen.add(prev)
                    queue.append(prev)
        return seen

    def residual_reachable_from_source(self) -> set[Hashable]:
        forward: dict[Hashable, list[Hashable]] = {node: [] for node in self.nodes}
        for arc in self.arcs:
            if arc.flow < arc.capacity:
                forward[arc.tail].append(arc.head)
            if arc.flow > 0:
                forward[arc.head].append(arc.tail)
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            node = queue.popleft()
            for nxt in forward[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen


def max_flow(network: FlowNetwork) -> tuple[int, list[int]]:
    """Dinic's algorithm; returns (value, flow per arc) and stores flows on arcs.

    Arcs are explored in insertion order, so results are reproducible.
    """
    index = {node: i for i, node in enumerate(network.nodes)}
    size = len(network.nodes)
    # residual edges: to, capacity, partner position
    graph: list[list[list[int]]] = [[] for _ in range(size)]
    handles = []
    for arc in network.arcs:
        u, v = index[arc.tail], index[arc.head]
        forward = [v, arc.capacity, len(graph[v])]
        backward = [u, 0, len(graph[u])]
        graph[u].append(forward)
        graph[v].append(backward)
        handles.append((u, len(graph[u]) - 1))
    source, sink = index[network.source], index[network.sink]
    total = 0
    while True:
        level = [-1] * size
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for to, cap, _ in graph[u]:
                if cap > 0 and level[to] < 0:
                    level[to] = level[u] + 1
                    queue.append(to)
        if level[sink] < 0:
            break
        pointer = [0] * size
        while True:
            pushed = _augment(graph, level, pointer, source, sink)
            if not pushed:
                break
            total += pushed
    flows = []
    for arc, (u, position) in zip(network.arcs, handles):
        arc.flow = arc.capacity - graph[u][position][1]
        flows.append(arc.flow)
    return total, flows


def _augment(
    graph: list[list[list[int]]], level: list[int], pointer: list[int], source: int, sink: int
) -> int:
    """Find one blocking-flow augmenting path iteratively and apply it."""
    path: list[tuple[int, list[int]]] = []
    u = source
    while True:
        if u == sink:
            bottleneck = min(edge[1] for _, edge in path)
            for _, edge in path:
                to, _, rev = edge
                edge[1] -= bottleneck
                graph[to][rev][1] += bottleneck
            return bottleneck
        advanced = False
        while pointer[u] < len(graph[u]):
            edge = graph[u][pointer[u]]
            if edge[1] > 0 and level[edge[0]] == level[u] + 1:
                path.append((u, edge))
                u = edge[0]
                advanced = True
                break
            pointer[u] += 1
        if not advanced:
            if not path:
                return 0
            level[u] = -1
            u, _ = path.pop()
            pointer[u] += 1


def build_dbe_network(
    a_side: Iterable[int],
    components: list[frozenset[int]],
    neighbors: Mapping[int, Iterable[int]],
    weights: Mapping[int, int],
    demands: Mapping[int, int],
) -> FlowNetwork:
    """Assignment network: s->Q (w(Q)), Q->a (w(Q)) for a in N(Q), a->t (max(0, d_a - w(a))).

    `neighbors` maps a component index to its neighbours on the head side.
    """
    heads = sorted(a_side)
    head_set = set(heads)
    network = FlowNetwork()
    for a in heads:
        network.add_node(head_node(a))
    for index, component in enumerate(components):
        nbrs = sorted(set(neighbors[index]))
        if not nbrs:
            raise ValueError(f"component {sorted(component)} has no neighbour on the head side")
        if not set(nbrs) <= head_set:
            raise ValueError(f"component {sorted(component)} has neighbours outside the head side")
        mass = sum(weights[v] for v in component)
        network.add_arc(SOURCE, component_node(index), mass)
        for a in nbrs:
            network.add_arc(component_node(index), head_node(a), mass)
    for a in heads:
        if demands[a] < 0:
            raise ValueError(f"negative demand for head {a}")
        network.add_arc(head_node(a), SINK, max(0, demands[a] - weights[a]))
    return network
