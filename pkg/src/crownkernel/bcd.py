"""Balanced crown decompositions (general, packing-seeded and claw-free).

The general constructor keeps a packing of connected parts plus heads with
crowns and only ever makes moves that do not shrink |heads| + |parts|:

  * leftover components heavier than lam become new parts,
  * leftover components touching only heads join the crown,
  * leftover components are spread over adjacent parts by a part-level
    expansion; if every part stays within 3*lam we are done,
  * otherwise the over-full region either yields new heads (vertex-level
    expansion or a single separating vertex) or a larger packing.

Every move strictly increases (|heads| + |parts|, |heads|), so the loop ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dbe import CheckResult, compute_dbe, uniform_demands
from .graph import WeightedGraph, connected_components, find_induced_claw

VertexSet = frozenset[int]


class BCDError(RuntimeError):
    """Internal failure of the decomposition search (should not happen)."""


@dataclass(frozen=True)
class Packing:
    parts: tuple[VertexSet, ...]
    threshold: int

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class BCD:
    crown: VertexSet
    head: VertexSet
    parts: tuple[VertexSet, ...]
    assignment: dict[VertexSet, int]
    lam: int

    @property
    def body(self) -> VertexSet:
        return frozenset().union(*self.parts) if self.parts else frozenset()

    def crown_of(self, h: int) -> list[VertexSet]:
        return sorted((q for q, a in self.assignment.items() if a == h), key=min)

    @property
    def size(self) -> int:
        """|H| + |parts|, the size of the derived packing."""
        return len(self.head) + len(self.parts)


def verify_packing(g: WeightedGraph, packing: Packing) -> CheckResult:
    used: set[int] = set()
    for part in packing.parts:
        if used & part:
            return CheckResult.failed("disjoint", f"part {sorted(part)} overlaps another part")
        used |= part
        if not part <= set(g.vertices()):
            return CheckResult.failed("vertices", f"part {sorted(part)} uses unknown vertices")
        if not g.is_connected_set(part):
            return CheckResult.failed("connected", f"part {sorted(part)} is not connected")
        if g.weight_of(part) < packing.threshold:
            return CheckResult.failed("weight", f"part {sorted(part)} is lighter than {packing.threshold}")
    return CheckResult.passed()


def verify_bcd(g: WeightedGraph, lam: int, b: BCD) -> CheckResult:
    """Check the five decomposition items against g."""
    vertices = set(g.vertices())
    body = set()
    for part in b.parts:
        if body & part:
            return CheckResult.failed("1", "parts overlap")
        body |= part
    pieces = [set(b.crown), set(b.head), body]
    if sum(len(x) for x in pieces) != len(set().union(*pieces)) or set().union(*pieces) != vertices:
        return CheckResult.failed("1", "crown, head and parts do not partition the vertex set")
    if g.neighborhood(b.crown) - b.head:
        return CheckResult.failed("1", "crown has a neighbour outside the head")
    components = connected_components(g, b.crown)
    for q in components:
        if g.weight_of(q) > lam:
            return CheckResult.failed("2", f"crown component {sorted(q)} weighs more than {lam}")
    if set(components) != set(b.assignment):
        return CheckResult.failed("3", "assignment does not match the crown components")
    for q in components:
        h = b.assignment[q]
        if h not in b.head or h not in g.neighborhood(q):
            return CheckResult.failed("3", f"crown component {sorted(q)} assigned to non-neighbour {h}")
    for h in sorted(b.head):
        mass = g.weight(h) + sum(g.weight_of(q) for q in b.crown_of(h))
        if mass <= lam:
            return CheckResult.failed("4", f"head {h} holds only {mass} <= {lam}")
    for part in b.parts:
        if not g.is_connected_set(part):
            return CheckResult.failed("5", f"part {sorted(part)} is not connected")
        weight = g.weight_of(part)
        if not lam < weight <= 3 * lam:
            return CheckResult.failed("5", f"part {sorted(part)} weighs {weight}, outside ({lam}, {3 * lam}]")
    return CheckResult.passed()


def packing_from_bcd(b: BCD) -> Packing:
    parts = list(b.parts)
    for h in sorted(b.head):
        parts.append(frozenset({h}).union(*b.crown_of(h)))
    return Packing(tuple(parts), b.lam + 1)


# helpers


def _grow_piece(g: WeightedGraph, start: int, allowed: set[int], lam: int) -> VertexSet:
    """Breadth-first growth inside `allowed` until the weight exceeds lam.

    The last vertex added weighs at most lam (when all vertices do), so the
    piece weighs at most 2*lam.
    """
    piece = [start]
    seen = {start}
    weight = g.weight(start)
    index = 0
    while weight <= lam and index < len(piece):
        v = piece[index]
        index += 1
        for u in sorted(g.neighbors(v)):
            if u in allowed and u not in seen:
                seen.add(u)
                piece.append(u)
                weight += g.weight(u)
                if weight > lam:
                    break
    return frozenset(piece)


def _carve_count(g: WeightedGraph, region: set[int], lam: int, root: int, depth_first: bool) -> list[VertexSet]:
    """Cut subtrees heavier than lam bottom-up from a search tree of g[region]."""
    order = []
    parent = {root: None}
    if depth_first:
        stack = [(root, iter(sorted(g.neighbors(root) & region)))]
        order.append(root)
        while stack:
            v, it = stack[-1]
            for u in it:
                if u not in parent:
                    parent[u] = v
                    order.append(u)
                    stack.append((u, iter(sorted(g.neighbors(u) & region))))
                    break
            else:
                stack.pop()
    else:
        queue = [root]
        for v in queue:
            order.append(v)
            for u in sorted(g.neighbors(v) & region):
                if u not in parent:
                    parent[u] = v
                    queue.append(u)
        order = queue
    residual: dict[int, list[int]] = {v: [v] for v in order}
    weight = {v: g.weight(v) for v in order}
    pieces = []
    for v in reversed(order):
        if weight[v] > lam:
            pieces.append(frozenset(residual[v]))
            continue
        p = parent[v]
        if p is not None:
            residual[p].extend(residual[v])
            weight[p] += weight[v]
    return pieces


def _best_carving(g: WeightedGraph, region: set[int], lam: int) -> list[VertexSet]:
    best: list[VertexSet] = []
    for component in connected_components(g, region):
        found: list[VertexSet] = []
        for root in sorted(component):
            for depth_first in (True, False):
                pieces = _carve_count(g, set(component), lam, root, depth_first)
                if len(pieces) > len(found):
                    found = pieces
        best.extend(found)
    return best


def _exact_packing(g: WeightedGraph, region: set[int], lam: int) -> list[VertexSet]:
    from .oracle import brute_max_packing

    _, parts = brute_max_packing(g.induced(region), lam + 1, weighted=True, cap=len(region))
    return parts


EXACT_REGION_LIMIT = 16


class _State:
    def __init__(self, g: WeightedGraph, lam: int):
        self.g = g
        self.lam = lam
        self.heads: dict[int, list[VertexSet]] = {}
        self.parts: list[VertexSet] = []
        # cluster -> index of the part it was last assigned to
        self.owner: dict[VertexSet, int] = {}

    def crown_vertices(self) -> set[int]:
        result: set[int] = set()
        for comps in self.heads.values():
            for q in comps:
                result |= q
        return result

    def part_vertices(self) -> set[int]:
        return set().union(*self.parts) if self.parts else set()

    def leftover(self) -> set[int]:
        return (
            set(self.g.vertices()) - set(self.heads) - self.crown_vertices() - self.part_vertices()
        )

    def potential(self) -> tuple[int, int]:
        return (len(self.heads) + len(self.parts), len(self.heads))

    def add_part(self, piece: VertexSet) -> None:
        self.parts.append(piece)

    def make_heads(self, crowns: dict[int, list[VertexSet]]) -> None:
        """Turn part or leftover vertices into heads; damaged parts are split up."""
        new_heads = set(crowns)
        taken = set(new_heads)
        for comps in crowns.values():
            for q in comps:
                taken |= q
        survivors = []
        for part in self.parts:
            if not part & taken:
                survivors.append(part)
                continue
            for fragment in connected_components(self.g, part - taken):
                if self.g.weight_of(fragment) > self.lam:
                    survivors.append(fragment)
        self.parts = survivors
        for h in sorted(new_heads):
            self.heads[h] = list(crowns[h])


def _normalise_leftover(state: _State) -> None:
    """Leftover components: heavy ones seed parts, head-only ones join the crown."""
    g, lam = state.g, state.lam
    changed = True
    while changed:
        changed = False
        leftover = state.leftover()
        body = state.part_vertices()
        for comp in connected_components(g, leftover):
            if g.weight_of(comp) > lam:
                state.add_part(_grow_piece(g, min(comp), set(comp), lam))
                changed = True
                break
            nbrs = g.neighborhood(comp)
            if not nbrs & body:
                heads = sorted(nbrs & set(state.heads))
                if not heads:
                    raise BCDError(f"component {sorted(comp)} weighs at most {lam}")
                state.heads[heads[0]].append(comp)


def _spread_clusters(state: _State):
    """Part-level expansion of leftover clusters into parts.

    Returns (None, final_parts) on success or (overfull_parts, clusters) otherwise.
    """
    g, lam = state.g, state.lam
    leftover = state.leftover()
    clusters = connected_components(g, leftover)
    offset = max(g.vertices()) + 1
    part_ids = [offset + i for i in range(len(state.parts))]
    owner = {}
    for i, part in enumerate(state.parts):
        for v in part:
            owner[v] = part_ids[i]
    weights = {pid: g.weight_of(part) for pid, part in zip(part_ids, state.parts)}
    edges = set()
    for cluster in clusters:
        for v in cluster:
            weights[v] = g.weight(v)
            for u in g.neighbors(v):
                if u in owner:
                    edges.add((v, owner[u]))
                elif u in cluster and v < u:
                    edges.add((v, u))
    contracted = WeightedGraph(sorted(weights), sorted(edges), weights)
    demand = 2 * lam + 1
    dbe = compute_dbe(contracted, part_ids, leftover, uniform_demands(part_ids, demand), lam)
    extended = {pid: set(part) for pid, part in zip(part_ids, state.parts)}
    for cluster, pid in dbe.assignment.items():
        extended[pid] |= cluster
    if all(g.weight_of(extended[pid]) <= 3 * lam for pid in part_ids):
        return None, [frozenset(extended[pid]) for pid in part_ids]
    overfull = [i for i, pid in enumerate(part_ids) if pid in dbe.a1]
    region_clusters = [q for q, pid in dbe.assignment.items() if pid in dbe.a1]
    packed = _pack_clusters(state, [state.parts[i] for i in overfull], region_clusters)
    if packed is not None:
        for i, pid in enumerate(part_ids):
            if pid in dbe.a1:
                extended[pid] = set(packed[state.parts[i]])
        return None, [frozenset(extended[pid]) for pid in part_ids]
    state.owner = {q: part_ids.index(pid) for q, pid in dbe.assignment.items()}
    return overfull, region_clusters


PACKING_SEARCH_LIMIT = 20000


def _pack_clusters(state: _State, parts: list[VertexSet], clusters: list[VertexSet]) -> dict[VertexSet, set[int]] | None:
    """Bounded backtracking: give each cluster to an adjacent part, keeping every part <= 3*lam."""
    g, lam = state.g, state.lam
    order = sorted(clusters, key=lambda q: (-g.weight_of(q), min(q)))
    options = []
    for q in order:
        nbrs = g.neighborhood(q)
        options.append([i for i, part in enumerate(parts) if part & nbrs])
    load = [g.weight_of(part) for part in parts]
    if max(load, default=0) > 3 * lam:
        return None
    choice = [0] * len(order)
    budget = [PACKING_SEARCH_LIMIT]

    def place(index: int) -> bool:
        if index == len(order):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        weight = g.weight_of(order[index])
        for i in sorted(options[index], key=lambda j: (load[j], j)):
            if load[i] + weight <= 3 * lam:
                load[i] += weight
                choice[index] = i
                if place(index + 1):
                    return True
                load[i] -= weight
        return False

    if not place(0):
        return None
    result = {part: set(part) for part in parts}
    for q, i in zip(order, choice):
        result[parts[i]] |= q
    return result


def _head_expansion(local: WeightedGraph, a_side: set[int], body: set[int], lam: int):
    """Expansion whose A1 heads each hold more than lam.

    With y the heaviest body component and demand lam + y, an A1 head keeps at
    least demand - y + 1 = lam + 1.
    """
    y = max(local.weight_of(q) for q in connected_components(local, body))
    return compute_dbe(local, a_side, body, uniform_demands(a_side, lam + y), y)


def _vertex_heads(state: _State, region_parts: list[VertexSet], clusters: list[VertexSet]):
    """Vertex-level expansion: part vertices against the enclosed leftover clusters."""
    g, lam = state.g, state.lam
    heads_side = set().union(*region_parts)
    body_side = set().union(*clusters) if clusters else set()
    heads_side = {a for a in heads_side if g.neighbors(a) & body_side}
    if not heads_side or not body_side:
        return None
    local = g.induced(heads_side | body_side)
    dbe = _head_expansion(local, heads_side, body_side, lam)
    if not dbe.a1:
        return None
    return {a: dbe.assigned_to([a]) for a in sorted(dbe.a1)}


def _single_vertex_head(state: _State, candidates: Iterable[int]):
    """A vertex whose private small pieces outweigh lam together with it."""
    g, lam = state.g, state.lam
    heads = set(state.heads)
    free = set(g.vertices()) - heads - state.crown_vertices()
    for v in sorted(candidates):
        crown = []
        mass = g.weight(v)
        for comp in connected_components(g, free - {v}):
            if v in g.neighborhood(comp) and g.weight_of(comp) <= lam and g.neighborhood(comp) <= heads | {v}:
                crown.append(comp)
                mass += g.weight_of(comp)
        if mass > lam:
            return {v: crown}
    return None


def _hub_heads(state: _State, region_parts: list[VertexSet], clusters: list[VertexSet]):
    """Heads among the highest-degree region vertices, crowned by the small pieces they enclose."""
    g = state.g
    free = set(g.vertices()) - set(state.heads) - state.crown_vertices()
    region = set().union(*region_parts, *clusters) & free
    near = (region | g.neighborhood(region)) & free
    for candidates in (region, near, free):
        crowns = _hub_prefix_heads(state, free, candidates)
        if crowns is not None:
            return crowns
    return None


def _hub_prefix_heads(state: _State, free: set[int], candidates: set[int]):
    g, lam = state.g, state.lam
    heads = set(state.heads)
    order = sorted(candidates, key=lambda v: (-len(g.neighbors(v) & free), v))
    for t in range(1, len(order) + 1):
        chosen = set(order[:t])
        pieces = [
            q
            for q in connected_components(g, free - chosen)
            if g.weight_of(q) <= lam and g.neighborhood(q) & chosen and g.neighborhood(q) <= chosen | heads
        ]
        if not pieces:
            continue
        body = set().union(*pieces)
        a_side = chosen & g.neighborhood(body)
        local = g.induced(a_side | body)
        dbe = _head_expansion(local, a_side, body, lam)
        if dbe.a1:
            return {a: dbe.assigned_to([a]) for a in sorted(dbe.a1)}
    return None


def _rebalance(state: _State, overfull: list[int]) -> bool:
    """Move a piece of an overfull part, with the clusters only it touches, to a lighter neighbour part.

    A move is taken only if the receiving part ends lighter than the donor was,
    so the sum of squared loads under the current assignment decreases.
    """
    g, lam = state.g, state.lam
    load = [g.weight_of(part) for part in state.parts]
    owned: dict[int, list[VertexSet]] = {}
    for q, i in state.owner.items():
        load[i] += g.weight_of(q)
        owned.setdefault(i, []).append(q)
    where = {v: i for i, part in enumerate(state.parts) for v in part}
    best = None
    for i in sorted(overfull, key=lambda j: (-load[j], j)):
        part = state.parts[i]
        for v in sorted(part):
            for piece in connected_components(g, part - {v}):
                riders = [q for q in owned.get(i, []) if not (g.neighborhood(q) & part) - piece]
                mass = g.weight_of(piece) + sum(g.weight_of(q) for q in riders)
                if load[i] - mass <= lam:
                    continue
                for j in sorted({where[u] for u in g.neighborhood(piece) if u in where} - {i}):
                    if load[j] + mass < load[i]:
                        key = (load[j] + mass - load[i], -mass, i, j, min(piece))
                        if best is None or key < best[0]:
                            best = (key, i, j, piece, riders)
        if best is not None:
            break
    if best is None:
        return False
    _, i, j, piece, riders = best
    # the donor keeps the clusters it still owns so that it stays heavier than lam
    kept = [q for q in owned.get(i, []) if q not in riders]
    parts = list(state.parts)
    parts[i] = frozenset((parts[i] - piece).union(*kept))
    parts[j] = frozenset(parts[j] | piece.union(*riders))
    state.parts = parts
    return True


def _repack_region(state: _State, region_parts: list[VertexSet], clusters: list[VertexSet]) -> bool:
    """Replace the region's parts by a larger packing, if one is found.

    A second attempt also draws in leftover clusters touching the region.
    """
    g, lam = state.g, state.lam
    region = set().union(*region_parts)
    for q in clusters:
        region |= q
    pieces = _region_packing(g, region, lam, len(region_parts))
    if pieces is None:
        leftover = state.leftover()
        touching = [q for q in connected_components(g, leftover - region) if g.neighborhood(q) & region]
        if not touching:
            return False
        region = region.union(*touching)
        pieces = _region_packing(g, region, lam, len(region_parts))
        if pieces is None:
            return False
    keep = [part for part in state.parts if not part & region]
    for piece in pieces:
        keep.append(_grow_piece(g, min(piece), set(piece), lam))
    state.parts = keep
    return True


def _region_packing(g: WeightedGraph, region: set[int], lam: int, current: int) -> list[VertexSet] | None:
    pieces = _best_carving(g, region, lam)
    if len(pieces) <= current and len(region) <= EXACT_REGION_LIMIT:
        pieces = _exact_packing(g, region, lam)
    return pieces if len(pieces) > current else None


def _validate_seed(g: WeightedGraph, lam: int, seed: Packing | Sequence[Iterable[int]]) -> list[VertexSet]:
    parts = [frozenset(p) for p in (seed.parts if isinstance(seed, Packing) else seed)]
    used: set[int] = set()
    for part in parts:
        if not part or not part <= set(g.vertices()):
            raise ValueError(f"seed part {sorted(part)} is empty or uses unknown vertices")
        if used & part:
            raise ValueError(f"seed part {sorted(part)} overlaps another part")
        used |= part
        if not g.is_connected_set(part):
            raise ValueError(f"seed part {sorted(part)} is not connected")
        if g.weight_of(part) <= lam:
            raise ValueError(f"seed part {sorted(part)} weighs at most {lam}")
    return parts


def compute_bcd_seeded(
    g: WeightedGraph, lam: int, seed_packing: Packing | Sequence[Iterable[int]]
) -> BCD:
    """BCD whose derived packing is at least as large as the seed packing."""
    if lam < 1:
        raise ValueError("lam must be positive")
    for comp in connected_components(g):
        if g.weight_of(comp) <= lam:
            raise ValueError(f"component {sorted(comp)} weighs at most {lam}")
    seed = _validate_seed(g, lam, seed_packing)
    state = _State(g, lam)
    heavy = {v for v in g.vertices() if g.weight(v) > lam}
    for v in sorted(heavy):
        state.heads[v] = []
    for part in seed:
        if part & heavy:
            continue
        state.add_part(_grow_piece(g, min(part), set(part), lam))
    limit = 4 * (g.n + 1) ** 2
    rebalances, rebalance_limit = 0, 4 * g.n
    for _ in range(limit):
        before = state.potential()
        _normalise_leftover(state)
        overfull, payload = _spread_clusters(state)
        if overfull is None:
            result = _finish(state, payload)
            check = verify_bcd(g, lam, result)
            if not check:
                raise BCDError(f"constructed decomposition is invalid: {check.message}")
            return result
        region_parts = [state.parts[i] for i in overfull]
        crowns = _vertex_heads(state, region_parts, payload)
        if crowns is None:
            crowns = _single_vertex_head(state, sorted(set().union(*region_parts)))
        if crowns is not None:
            state.make_heads(crowns)
        elif _repack_region(state, region_parts, payload):
            pass
        elif (crowns := _hub_heads(state, region_parts, payload)) is not None:
            state.make_heads(crowns)
        elif rebalances < rebalance_limit and _rebalance(state, overfull):
            rebalances += 1
            continue
        else:
            raise BCDError(
                f"no progress on region of {len(region_parts)} parts "
                f"({sorted(set().union(*region_parts))}) with clusters {[sorted(q) for q in payload]}"
            )
        if state.potential() <= before:
            raise BCDError("potential did not increase")
    raise BCDError("iteration limit reached")


def _finish(state: _State, final_parts: list[VertexSet]) -> BCD:
    assignment = {}
    crown: set[int] = set()
    for h, comps in state.heads.items():
        for q in comps:
            assignment[q] = h
            crown |= q
    parts = tuple(sorted(final_parts, key=min))
    return BCD(frozenset(crown), frozenset(state.heads), parts, assignment, state.lam)


def compute_bcd(g: WeightedGraph, lam: int) -> BCD:
    """A lam-balanced crown decomposition of a graph whose components all exceed lam."""
    return compute_bcd_seeded(g, lam, [])


def maximum_matching(g: WeightedGraph) -> Packing:
    """Maximum-cardinality matching as a packing of 2-vertex parts."""
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    nxg.add_edges_from(g.edges())
    matching = nx.max_weight_matching(nxg, maxcardinality=True)
    parts = sorted((frozenset(edge) for edge in matching), key=lambda e: sorted(e))
    return Packing(tuple(parts), 2)


# claw-free machinery


def _dfs_tree(g: WeightedGraph, root: int) -> tuple[dict[int, int | None], dict[int, list[int]], list[int]]:
    parent: dict[int, int | None] = {root: None}
    children: dict[int, list[int]] = {root: []}
    order = [root]
    stack = [(root, iter(sorted(g.neighbors(root))))]
    while stack:
        v, it = stack[-1]
        for u in it:
            if u not in parent:
                parent[u] = v
                children[v].append(u)
                children[u] = []
                order.append(u)
                stack.append((u, iter(sorted(g.neighbors(u)))))
                break
        else:
            stack.pop()
    return parent, children, order


def carve_connected_piece(g: WeightedGraph, W: int) -> VertexSet:
    """Connected S with W+1 <= w(S) <= 2W and g - S connected (g claw-free)."""
    if g.n == 0 or g.total_weight() < W + 1:
        raise ValueError(f"graph weight must be at least {W + 1}")
    if g.max_weight() >= W + 1:
        raise ValueError(f"every vertex must weigh less than {W + 1}")
    if not g.is_connected_set(g.vertices()):
        raise ValueError("graph must be connected")
    root = min(g.vertices())
    parent, children, order = _dfs_tree(g, root)
    subtree_weight: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    target = None
    for v in reversed(order):
        subtree_weight[v] = g.weight(v) + sum(subtree_weight[c] for c in children[v])
        if subtree_weight[v] >= W + 1:
            target = v
            break
    assert target is not None

    def subtree(v: int) -> set[int]:
        result = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for c in children[x]:
                result.add(c)
                stack.append(c)
        return result

    whole = subtree(target)
    if subtree_weight[target] <= 2 * W:
        return frozenset(whole)
    kids = children[target]
    if len(kids) != 2:
        raise ValueError("a vertex has more than two DFS children; the graph has a claw")
    first, second = kids
    if parent[target] is None:
        return frozenset(whole - subtree(second))
    above = parent[target]
    if g.has_edge(above, second):
        return frozenset(whole - subtree(second))
    if g.has_edge(above, first):
        return frozenset(whole - subtree(first))
    raise ValueError(f"induced claw at {target}; the graph is not claw-free")


def clawfree_bcd(g: WeightedGraph, W: int) -> BCD:
    """Partition a connected claw-free graph into parts of weight (W, 2W], one possibly up to 3W."""
    if g.n == 0 or not g.is_connected_set(g.vertices()):
        raise ValueError("graph must be connected and non-empty")
    if g.max_weight() > W:
        raise ValueError(f"vertex weights must not exceed W={W}")
    if g.total_weight() <= W:
        raise ValueError(f"graph weight must exceed W={W}")
    claw = find_induced_claw(g)
    if claw is not None:
        raise ValueError(f"graph contains an induced claw {claw}")
    pieces: list[VertexSet] = []
    rest = g
    while rest.n and rest.total_weight() >= W + 1:
        piece = carve_connected_piece(rest, W)
        pieces.append(piece)
        rest = rest.without(piece)
    if rest.n:
        remainder = frozenset(rest.vertices())
        nbrs = g.neighborhood(remainder)
        for i, piece in enumerate(pieces):
            if piece & nbrs:
                pieces[i] = piece | remainder
                break
        else:
            raise BCDError("remainder is not adjacent to any piece")
    return BCD(frozenset(), frozenset(), tuple(pieces), {}, W)


def has_claw(g: WeightedGraph) -> bool:
    return find_induced_claw(g) is not None


__all__ = [
    "BCD",
    "BCDError",
    "Packing",
    "carve_connected_piece",
    "clawfree_bcd",
    "compute_bcd",
    "compute_bcd_seeded",
    "maximum_matching",
    "packing_from_bcd",
    "verify_bcd",
    "verify_packing",
]
