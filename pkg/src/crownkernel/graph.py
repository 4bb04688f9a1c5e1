"""Vertex-weighted undirected graphs, components, file I/O and generators."""

from __future__ import annotations

import itertools
import random
import warnings
from typing import Iterable, Iterator, Mapping


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class WeightedGraph:
    """Simple undirected graph with positive integer vertex weights.

    Vertex ids are arbitrary positive integers and survive deletions.
    Instances are treated as immutable; all "modifying" helpers return copies.
    """

    __slots__ = ("_adj", "_weight")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        weights: Mapping[int, int] | None = None,
    ):
        self._adj: dict[int, set[int]] = {}
        self._weight: dict[int, int] = {}
        weights = weights or {}
        for v in vertices:
            self._add_vertex(v, weights.get(v, 1))
        for v, w in weights.items():
            if v not in self._adj:
                self._add_vertex(v, w)
        for u, v in edges:
            self._add_edge(u, v)

    def _add_vertex(self, v: int, weight: int) -> None:
        if not isinstance(weight, int) or weight < 1:
            raise ValueError(f"vertex {v}: weight must be a positive integer")
        self._adj.setdefault(v, set())
        self._weight[v] = weight

    def _add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if u not in self._adj or v not in self._adj:
            raise ValueError(f"edge {u}-{v} uses an unknown vertex")
        self._adj[u].add(v)
        self._adj[v].add(u)

    # queries
    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices())

    def weight(self, v: int) -> int:
        return self._weight[v]

    def weights(self) -> dict[int, int]:
        return dict(self._weight)

    def weight_of(self, vertex_set: Iterable[int]) -> int:
        return sum(self._weight[v] for v in vertex_set)

    def total_weight(self) -> int:
        return sum(self._weight.values())

    def max_weight(self) -> int:
        return max(self._weight.values(), default=0)

    def is_unit_weighted(self) -> bool:
        return all(w == 1 for w in self._weight.values())

    def neighbors(self, v: int) -> set[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def neighborhood(self, vertex_set: Iterable[int]) -> set[int]:
        """Open neighbourhood N(X) of a vertex set."""
        inside = set(vertex_set)
        result: set[int] = set()
        for v in inside:
            result |= self._adj[v]
        return result - inside

    def is_connected_set(self, vertex_set: Iterable[int]) -> bool:
        inside = set(vertex_set)
        if not inside:
            return False
        start = min(inside)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self._adj[v]:
                if u in inside and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(inside)

    # derived graphs
    def induced(self, vertex_set: Iterable[int]) -> "WeightedGraph":
        keep = set(vertex_set)
        g = WeightedGraph()
        for v in sorted(keep):
            g._add_vertex(v, self._weight[v])
        for v in keep:
            g._adj[v] = self._adj[v] & keep
        return g

    def without(self, vertex_set: Iterable[int]) -> "WeightedGraph":
        drop = set(vertex_set)
        return self.induced(v for v in self._adj if v not in drop)

    def with_unit_weights(self) -> "WeightedGraph":
        g = self.induced(self._adj)
        for v in g._weight:
            g._weight[v] = 1
        return g

    def disjoint_union(self, other: "WeightedGraph") -> "WeightedGraph":
        """Union with `other`; ids of `other` are shifted past our largest id."""
        offset = max(self._adj, default=0)
        g = self.induced(self._adj)
        for v in other.vertices():
            g._add_vertex(v + offset, other.weight(v))
        for u, v in other.edges():
            g._add_edge(u + offset, v + offset)
        return g

    def copy(self) -> "WeightedGraph":
        return self.induced(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._weight == other._weight and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((tuple(sorted(self._weight.items())), tuple(self.edges())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, weight={self.total_weight()})"


# components


def connected_components(
    g: WeightedGraph, within: Iterable[int] | None = None
) -> list[frozenset[int]]:
    """Components of g (or of g[within]) ordered by ascending minimum id."""
    allowed = set(g.vertices()) if within is None else set(within)
    seen: set[int] = set()
    components = []
    for start in sorted(allowed):
        if start in seen:
            continue
        seen.add(start)
        members = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u in allowed and u not in seen:
                    seen.add(u)
                    members.append(u)
                    stack.append(u)
        components.append(frozenset(members))
    return components


def component_size(g: WeightedGraph, component: Iterable[int], weighted: bool) -> int:
    return g.weight_of(component) if weighted else len(set(component))


def drop_light_components(g: WeightedGraph, lam: int, weighted: bool = True) -> WeightedGraph:
    """Keep only components whose weight (or cardinality) exceeds lam."""
    keep: set[int] = set()
    for component in connected_components(g):
        if component_size(g, component, weighted) > lam:
            keep |= component
    return g.induced(keep)


def warn_if_weighted(g: WeightedGraph, algorithm: str) -> None:
    if not g.is_unit_weighted():
        warnings.warn(
            f"{algorithm} ignores vertex weights; non-unit weights were found",
            stacklevel=3,
        )


def find_induced_claw(g: WeightedGraph) -> tuple[int, int, int, int] | None:
    """Return (center, a, b, c) of an induced K_{1,3}, or None."""
    for center in g.vertices():
        nbrs = sorted(g.neighbors(center))
        if len(nbrs) < 3:
            continue
        for a, b, c in itertools.combinations(nbrs, 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return (center, a, b, c)
    return None


def is_claw_free(g: WeightedGraph) -> bool:
    return find_induced_claw(g) is None


# file format


def parse_graph(text: str | bytes) -> WeightedGraph:
    """Parse the line-oriented `p`/`v`/`e` graph format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n: int | None = None
    declared_edges = 0
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()

    def parse_ints(fields: list[str], count: int, line_number: int) -> list[int]:
        if len(fields) != count:
            raise GraphFormatError(line_number, f"expected {count} fields, got {len(fields)}")
        try:
            return [int(x) for x in fields]
        except ValueError:
            raise GraphFormatError(line_number, "non-integer field") from None

    def check_id(v: int, line_number: int) -> None:
        if not 1 <= v <= (n or 0):
            raise GraphFormatError(line_number, f"vertex id {v} out of range 1..{n}")

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        kind, *fields = line.split()
        if kind == "c":
            continue
        if n is None and kind != "p":
            raise GraphFormatError(line_number, "the first record must be the 'p' line")
        if kind == "p":
            if n is not None:
                raise GraphFormatError(line_number, "duplicate 'p' line")
            n, declared_edges = parse_ints(fields, 2, line_number)
            if n < 0 or declared_edges < 0:
                raise GraphFormatError(line_number, "negative count in 'p' line")
        elif kind == "v":
            v, w = parse_ints(fields, 2, line_number)
            check_id(v, line_number)
            if v in weights:
                raise GraphFormatError(line_number, f"duplicate weight for vertex {v}")
            if w < 1:
                raise GraphFormatError(line_number, f"non-positive weight {w}")
            weights[v] = w
        elif kind == "e":
            u, v = parse_ints(fields, 2, line_number)
            check_id(u, line_number)
            check_id(v, line_number)
            if u == v:
                raise GraphFormatError(line_number, f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise GraphFormatError(line_number, f"duplicate edge {u}-{v}")
            seen_edges.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(line_number, f"unknown record type {kind!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'p' line")
    if len(edges) != declared_edges:
        raise GraphFormatError(0, f"'p' line declares {declared_edges} edges, found {len(edges)}")
    return WeightedGraph(range(1, n + 1), edges, weights)


def relabel_contiguous(g: WeightedGraph) -> tuple[WeightedGraph, list[int]]:
    """Map ids to 1..n in ascending order; returns the graph and new->old ids."""
    order = g.vertices()
    index = {v: i + 1 for i, v in enumerate(order)}
    relabeled = WeightedGraph(
        range(1, len(order) + 1),
        [(index[u], index[v]) for u, v in g.edges()],
        {index[v]: g.weight(v) for v in order},
    )
    return relabeled, order


def render_graph(g: WeightedGraph) -> str:
    """Canonical text rendering.

    Graphs whose ids are not exactly 1..n are relabeled in ascending id order and
    the original ids are listed on `c original-ids` comment lines.
    """
    lines = []
    relabeled, order = relabel_contiguous(g)
    if order != list(range(1, len(order) + 1)):
        for start in range(0, len(order), 20):
            chunk = " ".join(str(v) for v in order[start : start + 20])
            lines.append(f"c original-ids {chunk}")
    lines.append(f"p {relabeled.n} {relabeled.m}")
    for v in relabeled.vertices():
        if relabeled.weight(v) != 1:
            lines.append(f"v {v} {relabeled.weight(v)}")
    for u, v in relabeled.edges():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def original_ids_from_text(text: str) -> list[int] | None:
    """Recover the id list written by render_graph for relabeled graphs."""
    ids: list[int] = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 2 and parts[0] == "c" and parts[1] == "original-ids":
            ids.extend(int(x) for x in parts[2:])
    return ids or None


# generators


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> WeightedGraph:
    edges = [(i, i + 1) for i in range(1, n)] + ([(n, 1)] if n > 2 else [])
    return WeightedGraph(range(1, n + 1), edges)


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph(range(1, n + 1), itertools.combinations(range(1, n + 1), 2))


def star_graph(leaves: int) -> WeightedGraph:
    """K_{1,leaves} with center 1."""
    return WeightedGraph(range(1, leaves + 2), [(1, i) for i in range(2, leaves + 2)])


def disjoint_cliques(count: int, size: int) -> WeightedGraph:
    g = WeightedGraph()
    for _ in range(count):
        g = g.disjoint_union(complete_graph(size))
    return g


def random_gnp(n: int, p: float, rng: random.Random, max_weight: int = 1) -> WeightedGraph:
    weights = {v: rng.randint(1, max_weight) for v in range(1, n + 1)}
    edges = [
        (u, v) for u, v in itertools.combinations(range(1, n + 1), 2) if rng.random() < p
    ]
    return WeightedGraph(range(1, n + 1), edges, weights)


def line_graph(base: WeightedGraph) -> WeightedGraph:
    """Line graph; vertex i+1 stands for the i-th edge in sorted order."""
    base_edges = base.edges()
    edges = []
    for i, j in itertools.combinations(range(len(base_edges)), 2):
        if set(base_edges[i]) & set(base_edges[j]):
            edges.append((i + 1, j + 1))
    return WeightedGraph(range(1, len(base_edges) + 1), edges)


def generate_instance(kind: str, params: Mapping[str, object], seed: int) -> WeightedGraph:
    """Deterministic instance generator.

    kinds and params:
      random-gnp: n, p, max_weight (default 1)
      clawfree-linegraph: base_n, p, max_weight (default 1); line graph of G(base_n, p)
      disjoint-cliques: count, size
    """
    rng = random.Random(seed)

    def get_int(name: str, default: int | None = None, minimum: int = 0) -> int:
        value = params.get(name, default)
        if value is None:
            raise ValueError(f"{kind}: missing parameter {name!r}")
        if isinstance(value, bool) or int(value) != value or int(value) < minimum:
            raise ValueError(f"{kind}: parameter {name!r} must be an integer >= {minimum}")
        return int(value)

    def get_prob(name: str) -> float:
        value = params.get(name)
        if value is None:
            raise ValueError(f"{kind}: missing parameter {name!r}")
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{kind}: parameter {name!r} must lie in [0, 1]")
        return value

    if kind == "random-gnp":
        return random_gnp(get_int("n"), get_prob("p"), rng, get_int("max_weight", 1, 1))
    if kind == "clawfree-linegraph":
        base = random_gnp(get_int("base_n"), get_prob("p"), rng)
        g = line_graph(base)
        max_weight = get_int("max_weight", 1, 1)
        if max_weight > 1:
            g = WeightedGraph(
                g.vertices(), g.edges(), {v: rng.randint(1, max_weight) for v in g.vertices()}
            )
        claw = find_induced_claw(g)
        if claw is not None:
            raise AssertionError(f"line graph contains an induced claw {claw}")
        return g
    if kind == "disjoint-cliques":
        return disjoint_cliques(get_int("count"), get_int("size", minimum=1))
    raise ValueError(f"unknown instance kind {kind!r}")
