"""Kernelization algorithms for vertex integrity and component order connectivity.

Every algorithm works on a private copy of the instance and records each reduction
as a (head, crown, decrement) triple, optionally with an isolated gadget that is
added afterwards.  Replaying the records on the input reproduces the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .bcd import BCD, clawfree_bcd, compute_bcd, compute_bcd_seeded, maximum_matching
from .dbe import DBE, FractionalDBE, compute_fractional_dbe, round_fractional
from .graph import WeightedGraph, connected_components, find_induced_claw, warn_if_weighted

VertexSet = frozenset[int]

PROBLEMS = ("vi", "wvi", "coc", "wcoc")


@dataclass(frozen=True)
class Instance:
    problem: str
    graph: WeightedGraph
    p: int | None = None
    k: int | None = None
    W: int | None = None

    def __post_init__(self) -> None:
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.problem in ("vi", "wvi") and self.p is None:
            raise ValueError(f"{self.problem} needs p")
        if self.problem in ("coc", "wcoc") and (self.k is None or self.W is None):
            raise ValueError(f"{self.problem} needs k and W")
        if self.W is not None and self.W < 1:
            raise ValueError("W must be positive")

    @property
    def budget(self) -> int:
        return self.p if self.problem in ("vi", "wvi") else self.k

    @property
    def weighted(self) -> bool:
        return self.problem in ("wvi", "wcoc")

    def with_graph(self, graph: WeightedGraph, budget: int) -> "Instance":
        if self.problem in ("vi", "wvi"):
            return replace(self, graph=graph, p=budget)
        return replace(self, graph=graph, k=budget)


def ViInstance(graph: WeightedGraph, p: int) -> Instance:
    return Instance("vi", graph, p=p)


def WviInstance(graph: WeightedGraph, p: int) -> Instance:
    return Instance("wvi", graph, p=p)


def CocInstance(graph: WeightedGraph, k: int, W: int) -> Instance:
    return Instance("coc", graph, k=k, W=W)


def WcocInstance(graph: WeightedGraph, k: int, W: int) -> Instance:
    return Instance("wcoc", graph, k=k, W=W)


@dataclass(frozen=True)
class ReductionRecord:
    """Remove head and crown, lower the budget, then add an isolated clique gadget."""

    head: VertexSet
    crown: VertexSet
    decrement: int
    gadget: tuple[int, ...] = ()
    gadget_weight: int = 1


@dataclass
class KernelOutcome:
    verdict: str  # decided-no | decided-yes | reduced | already-small
    reduced_instance: Instance | None
    certificate: list[ReductionRecord] = field(default_factory=list)
    lambda_lb: int | None = None
    witness: VertexSet | None = None
    note: str = ""
    stats: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class ReduciblePair:
    A: VertexSet
    B: VertexSet
    g: dict[tuple[VertexSet, int], int]
    strict_witness: int | None


class KernelError(RuntimeError):
    """An internal bound (iteration cap) was exceeded."""


# audit hook: tests register a callback to inspect every structure produced

_audit: list[Callable[..., None]] = []


def set_audit(callback: Callable[..., None] | None) -> None:
    _audit.clear()
    if callback is not None:
        _audit.append(callback)


def _emit(kind: str, *args) -> None:
    for callback in _audit:
        callback(kind, *args)


def _bcd(g: WeightedGraph, lam: int) -> BCD:
    b = compute_bcd(g, lam)
    _emit("bcd", g, lam, b)
    return b


def _dbe(g: WeightedGraph, a_side, b_side, demands, y) -> tuple[FractionalDBE, DBE]:
    fr = compute_fractional_dbe(g, a_side, b_side, demands, y)
    dbe = round_fractional(fr)
    _emit("dbe", g, frozenset(a_side), frozenset(b_side), dbe)
    return fr, dbe


# integer arithmetic for square roots


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def exceeds_two_pow15(x: int, p: int) -> bool:
    """x > 2 * p**1.5, compared exactly."""
    return x > 0 and x * x > 4 * p**3


def wvi_small(total: int, p: int, lam: int = 1) -> bool:
    """total < 3p(p + sqrt(p) * lam), compared exactly."""
    slack = total - 3 * p * p
    return slack < 0 or slack * slack < 9 * lam * lam * p**3


def wvi_bound_holds(total: int, p: int, p_ell: int) -> bool:
    """total <= 3(p^2 + p^1.5 * p_ell), compared exactly."""
    slack = total - 3 * p * p
    return slack <= 0 or slack * slack <= 9 * p_ell * p_ell * p**3


def wcoc_small(total: int, k: int, W: int) -> bool:
    """total < 3 mu (k + sqrt(mu) W) with mu = max(k, W)."""
    mu = max(k, W)
    slack = total - 3 * mu * k
    return slack < 0 or slack * slack < 9 * W * W * mu**3


def wcoc_bound_holds(total: int, k: int, W: int) -> bool:
    mu = max(k, W)
    slack = total - 3 * mu * k
    return slack <= 0 or slack * slack <= 9 * W * W * mu**3


# shared helpers


def apply_reduction(
    inst: Instance,
    head: Iterable[int],
    crown: Iterable[int],
    decrement: int,
    gadget: tuple[int, ...] = (),
    gadget_weight: int = 1,
) -> Instance:
    """Remove head and crown (the head must separate the crown) and charge the budget."""
    head = frozenset(head)
    crown = frozenset(crown)
    g = inst.graph
    if head & crown:
        raise ValueError("head and crown overlap")
    if not (head | crown) <= set(g.vertices()):
        raise ValueError("reduction uses vertices outside the graph")
    if g.neighborhood(crown) - head:
        raise ValueError("crown has neighbours outside the head")
    reduced = g.without(head | crown)
    if gadget:
        reduced = _add_clique(reduced, gadget, gadget_weight)
    return inst.with_graph(reduced, inst.budget - decrement)


def apply_record(inst: Instance, record: ReductionRecord) -> Instance:
    return apply_reduction(
        inst, record.head, record.crown, record.decrement, record.gadget, record.gadget_weight
    )


def _add_clique(g: WeightedGraph, ids: tuple[int, ...], weight: int) -> WeightedGraph:
    clash = set(ids) & set(g.vertices())
    if clash:
        raise ValueError(f"gadget ids {sorted(clash)} already present")
    weights = g.weights()
    for v in ids:
        weights[v] = weight
    edges = list(g.edges()) + [(u, v) for i, u in enumerate(ids) for v in ids[i + 1 :]]
    return WeightedGraph(sorted(weights), edges, weights)


def _is_clique_gadget(g: WeightedGraph, comp: VertexSet, weighted: bool, q: int) -> bool:
    if weighted:
        return len(comp) == 1 and g.weight_of(comp) == q
    return len(comp) == q and all(g.degree(v) == q - 1 for v in comp)


def _light_components(g: WeightedGraph, lam: int) -> list[VertexSet]:
    return [q for q in connected_components(g) if g.weight_of(q) <= lam]


def _heavy_part(g: WeightedGraph, lam: int) -> WeightedGraph:
    light = set().union(*_light_components(g, lam)) if g.n else set()
    return g.without(light)


def _max_separator_lb(g: WeightedGraph, parts: Iterable[VertexSet], crowns: dict[int, list[VertexSet]], lam: int) -> int:
    """Lower bound on the weight needed so that no component exceeds lam.

    Disjoint connected parts heavier than lam need at least one deletion each;
    a head h with crown components (each of weight <= lam) needs either h or
    ceil((w(V_h) - lam) / lam) crown vertices.
    """
    bound = 0
    for part in parts:
        if g.weight_of(part) > lam:
            bound += 1
    for h, comps in crowns.items():
        total = g.weight(h) + sum(g.weight_of(q) for q in comps)
        if total > lam:
            bound += min(g.weight(h), -(-(total - lam) // lam))
    return bound


class _Run:
    """Mutable state of one kernelization run."""

    def __init__(self, inst: Instance, max_iterations: int | None):
        self.original = inst
        self.inst = inst
        self.records: list[ReductionRecord] = []
        self.lambda_lb: int | None = None
        self.next_id = max(inst.graph.vertices(), default=0) + 1
        self.stats: dict[str, int] = {"iterations": 0, "nodes": 0, "max_branching": 0}
        self.limit = max_iterations if max_iterations is not None else 4 * (inst.graph.n + inst.budget + 4)

    def tick(self) -> None:
        self.stats["iterations"] += 1
        if self.stats["iterations"] > self.limit:
            raise KernelError(f"iteration cap {self.limit} exceeded")

    def reduce(self, head, crown, decrement: int, gadget_size: int = 0) -> None:
        gadget: tuple[int, ...] = ()
        gadget_weight = 1
        if gadget_size > 0 and not self._has_gadget(frozenset(head) | frozenset(crown), gadget_size):
            if self.inst.weighted:
                gadget = (self.next_id,)
                gadget_weight = gadget_size
            else:
                gadget = tuple(range(self.next_id, self.next_id + gadget_size))
            self.next_id += len(gadget)
        record = ReductionRecord(frozenset(head), frozenset(crown), decrement, gadget, gadget_weight)
        self.inst = apply_record(self.inst, record)
        self.records.append(record)

    def _has_gadget(self, removed: VertexSet, q: int) -> bool:
        g = self.inst.graph
        for comp in connected_components(g):
            if comp & removed:
                continue
            if self.inst.weighted:
                if len(comp) == 1 and g.weight_of(comp) >= q:
                    return True
            elif _is_clique_gadget(g, comp, False, len(comp)) and len(comp) >= q:
                return True
        return False

    def outcome(self, verdict: str, note: str = "", witness: VertexSet | None = None) -> KernelOutcome:
        if verdict in ("reduced", "already-small"):
            verdict = "reduced" if self.records else "already-small"
        return KernelOutcome(
            verdict=verdict,
            reduced_instance=self.inst,
            certificate=list(self.records),
            lambda_lb=self.lambda_lb,
            witness=witness,
            note=note,
            stats=dict(self.stats),
        )

    def raise_lb(self, value: int) -> None:
        self.lambda_lb = value if self.lambda_lb is None else max(self.lambda_lb, value)


def _strip_for_integrity(run: _Run, lam: int) -> bool:
    """Replace all components of weight <= lam by one isolated clique of the largest such weight.

    Safe whenever lam <= p_ell.  Returns True when the graph changed.
    """
    g = run.inst.graph
    light = _light_components(g, lam)
    if not light:
        return False
    q = max(g.weight_of(c) for c in light)
    weighted = run.inst.weighted
    if len(light) == 1:
        return False
    keep = next((c for c in light if _is_clique_gadget(g, c, weighted, q)), None)
    removed = frozenset().union(*(c for c in light if c is not keep))
    if keep is not None:
        run.reduce(frozenset(), removed, 0)
    else:
        run.reduce(frozenset(), removed, 0, gadget_size=q)
    return True


def _packing_exceeds(g: WeightedGraph, lam: int, budget: int) -> bool:
    """A lam-BCD packing of parts heavier than lam with more than budget members."""
    heavy = _heavy_part(g, lam)
    return heavy.n > 0 and _bcd(heavy, lam).size > budget


def _integrity_trivial(g: WeightedGraph, p: int) -> bool | None:
    """Yes/no for instances outside the assumptions (no heavy component, or a vertex of weight >= p)."""
    if p < 0:
        return False
    components = connected_components(g)
    if all(g.weight_of(c) <= p for c in components):
        return True
    if any(g.weight(v) >= p for v in g.vertices()):
        return False
    if greedy_clique_weight(g) > p:
        return False
    return None


def greedy_clique_weight(g: WeightedGraph) -> int:
    """Weight of the heaviest clique found by greedy growth from every vertex.

    Any solution pays at least the weight of a clique, deleted or left in one piece.
    """
    best = 0
    for start in g.vertices():
        clique = [start]
        candidates = set(g.neighbors(start))
        while candidates:
            v = max(candidates, key=lambda u: (g.weight(u), len(g.neighbors(u) & candidates), -u))
            clique.append(v)
            candidates &= g.neighbors(v)
        best = max(best, sum(g.weight(v) for v in clique))
    return best


def _crown_mass_dbe(g: WeightedGraph, b: BCD, demands: dict[int, int], y: int) -> tuple[FractionalDBE, DBE] | None:
    if not b.head:
        return None
    sub = g.induced(b.head | b.crown)
    return _dbe(sub, b.head, b.crown, demands, y)


def _crown_from(dbe: DBE) -> tuple[VertexSet, VertexSet, int]:
    comps = dbe.assigned_to(dbe.a1)
    crown = frozenset().union(*comps) if comps else frozenset()
    q = max((dbe.component_weight[c] for c in comps), default=0)
    return frozenset(dbe.a1), crown, q


# vertex integrity


def kernelize_vi(inst: Instance, max_iterations: int | None = None, force: bool = False) -> KernelOutcome:
    """Reduce to at most 3p^2 vertices or decide the instance.

    force=True ignores the size gate (used to exercise reductions on small graphs).
    """
    if inst.problem != "vi":
        raise ValueError("kernelize_vi expects a vi instance")
    warn_if_weighted(inst.graph, "kernelize_vi")
    run = _Run(replace(inst, graph=inst.graph.with_unit_weights()), max_iterations)
    while True:
        run.tick()
        g, p = run.inst.graph, run.inst.p
        trivial = _integrity_trivial(g, p)
        if trivial is not None:
            return run.outcome("decided-yes" if trivial else "decided-no", "trivial instance")
        if _packing_exceeds(g, p, p):
            return run.outcome("decided-no", f"{p + 1}-packing larger than p")
        if not force and g.n <= 3 * p * p:
            return run.outcome("reduced")
        first = _bcd(_heavy_part(g, 1), 1)
        if first.size <= p:
            if _strip_for_integrity(run, 1):
                continue
            if not _vi_crown_step(run, first, 1):
                return run.outcome("reduced", "no crown found below the size bound")
            continue
        sizes: dict[int, BCD] = {}

        def packing(lam: int) -> int:
            if lam not in sizes:
                sizes[lam] = _bcd(_heavy_part(g, lam), lam)
            return sizes[lam].size

        lam = next(l for l in range(1, p) if packing(l) > p and packing(l + 1) <= p)
        run.raise_lb(lam + 1)
        if _strip_for_integrity(run, lam + 1):
            continue
        if not _vi_crown_step(run, sizes[lam + 1], lam + 1):
            return run.outcome("reduced", "no crown found below the size bound")


def _vi_crown_step(run: _Run, b: BCD, y: int) -> bool:
    p = run.inst.p
    result = _crown_mass_dbe(run.inst.graph, b, {h: p + y for h in b.head}, y)
    if result is None or not result[1].a1:
        return False
    head, crown, q = _crown_from(result[1])
    run.reduce(head, crown, len(head), gadget_size=q)
    return True


def kernelize_wvi(inst: Instance, max_iterations: int | None = None, force: bool = False) -> KernelOutcome:
    """Reduce a weighted vertex integrity instance or decide it."""
    if inst.problem != "wvi":
        raise ValueError("kernelize_wvi expects a wvi instance")
    run = _Run(inst, max_iterations)
    while True:
        run.tick()
        g, p = run.inst.graph, run.inst.p
        trivial = _integrity_trivial(g, p)
        if trivial is not None:
            return run.outcome("decided-yes" if trivial else "decided-no", "trivial instance")
        if _packing_exceeds(g, p, p):
            return run.outcome("decided-no", f"packing of parts heavier than p exceeds p")
        if not force and wvi_small(g.total_weight(), p):
            return run.outcome("reduced")
        root = ceil_sqrt(p)
        if _strip_for_integrity(run, 1):
            continue
        step = _wvi_structures(g, p, 1, root)
        if not step.bad:
            if not _wvi_reduce(run, step.bcd, 1):
                return run.outcome("reduced", "no reducible crown found")
            continue
        cache = {1: step}

        def structures(lam: int) -> "_WviStructures":
            if lam not in cache:
                cache[lam] = _wvi_structures(g, p, lam, root)
            return cache[lam]

        top = structures(p)
        if top.bad:
            if top.certified_no:
                return run.outcome("decided-no", "packing or separator lower bound exceeds p")
            return run.outcome("reduced", "no-instance suspected but not certified")
        lam = next(l for l in range(1, p) if structures(l).bad and not structures(l + 1).bad)
        run.raise_lb(lam + 1)
        if _strip_for_integrity(run, lam + 1):
            continue
        if not force and wvi_small(g.total_weight(), p, lam + 1):
            return run.outcome("reduced", f"weight below 3p(p + sqrt(p) * {lam + 1})")
        if not _wvi_reduce(run, structures(lam + 1).bcd, lam + 1):
            return run.outcome("reduced", "no reducible crown found")


@dataclass
class _WviStructures:
    bcd: BCD
    z_weight: int
    z_bound: int
    bad: bool
    certified_no: bool


def _wvi_structures(g: WeightedGraph, p: int, lam: int, root: int) -> _WviStructures:
    """lam-BCD plus the expansion that detects heavy heads.

    A lam is bad when the packing exceeds p or the heavy-head test fires and
    its separator lower bound confirms that no solution keeps components <= lam.
    """
    heavy = _heavy_part(g, lam)
    b = _bcd(heavy, lam)
    z_weight = 0
    z_bound = _max_separator_lb(heavy, b.parts, {h: b.crown_of(h) for h in b.head}, lam)
    demands = {h: heavy.weight(h) + lam + lam * root for h in b.head}
    result = _crown_mass_dbe(heavy, b, demands, lam)
    if result is not None:
        dbe = result[1]
        z_weight = heavy.weight_of(dbe.a1)
        crowns = {h: dbe.assigned_to([h]) for h in dbe.a1}
        z_bound = max(z_bound, _max_separator_lb(heavy, [], crowns, lam))
    packing_bad = b.size > p
    z_bad = exceeds_two_pow15(z_weight, p) and z_bound > p
    bad = packing_bad or z_bad
    certified_no = lam == p and bad
    return _WviStructures(b, z_weight, z_bound, bad, certified_no)


def _wvi_reduce(run: _Run, b: BCD, lam: int) -> bool:
    g, p = run.inst.graph, run.inst.p
    demands = {h: p - 1 + lam * (g.weight(h) + 1) for h in b.head}
    result = _crown_mass_dbe(g, b, demands, lam)
    if result is None or not result[1].a1:
        return False
    head, crown, q = _crown_from(result[1])
    run.reduce(head, crown, g.weight_of(head), gadget_size=q)
    return True


# weighted component order connectivity


def _strip_light(run: _Run, W: int) -> bool:
    light = _light_components(run.inst.graph, W)
    if not light:
        return False
    run.reduce(frozenset(), frozenset().union(*light), 0)
    return True


def kernelize_wcoc(inst: Instance, max_iterations: int | None = None, force: bool = False) -> KernelOutcome:
    """Reduce a weighted component order connectivity instance or decide it."""
    if inst.problem not in ("wcoc", "coc"):
        raise ValueError("kernelize_wcoc expects a wcoc instance")
    run = _Run(inst, max_iterations)
    W = inst.W
    while True:
        run.tick()
        _strip_light(run, W)
        g, k = run.inst.graph, run.inst.k
        if k < 0:
            return run.outcome("decided-no", "budget exhausted")
        if any(g.weight(v) > max(k, W) for v in g.vertices()):
            return run.outcome("decided-no", "a vertex heavier than both k and W")
        if g.n == 0 or (not force and wcoc_small(g.total_weight(), k, W)):
            if g.n and _packing_exceeds(g, W, k):
                return run.outcome("decided-no", f"packing of parts heavier than W exceeds k")
            return run.outcome("reduced")
        b = _bcd(g, W)
        if b.size > k:
            return run.outcome("decided-no", f"packing of parts heavier than W exceeds k")
        demands = {h: W - 1 + W * (g.weight(h) + 1) for h in b.head}
        result = _crown_mass_dbe(g, b, demands, W)
        if result is not None and result[1].a1:
            head, crown, _ = _crown_from(result[1])
            run.reduce(head, crown, g.weight_of(head))
            continue
        root = ceil_sqrt(k) if k > 0 else 0
        bound = _max_separator_lb(g, b.parts, {h: b.crown_of(h) for h in b.head}, W)
        z = _crown_mass_dbe(g, b, {h: g.weight(h) + W + W * root for h in b.head}, W)
        if z is not None:
            crowns = {h: z[1].assigned_to([h]) for h in z[1].a1}
            bound = max(bound, _max_separator_lb(g, [], crowns, W))
        if bound > k:
            return run.outcome("decided-no", "separator lower bound exceeds k")
        return run.outcome("reduced", "no-instance suspected but not certified")


# component order connectivity


def unique_w_separator(g_r: WeightedGraph, W: int) -> int | None:
    """The single vertex whose removal leaves components of size <= W, if any."""
    if g_r.n <= 2 * W:
        return None
    for v in g_r.vertices():
        rest = g_r.without([v])
        if all(len(c) <= W for c in connected_components(rest)):
            return v
    return None


def compute_r_prime(g: WeightedGraph, bcd: BCD, W: int) -> tuple[list[VertexSet], VertexSet]:
    parts: list[VertexSet] = []
    separators: set[int] = set()
    for part in bcd.parts:
        if len(part) > 2 * W:
            s = unique_w_separator(g.induced(part), W)
            if s is not None:
                parts.append(part)
                separators.add(s)
    return parts, frozenset(separators)


def find_reducible_structure(g: WeightedGraph, S: Iterable[int], bcd: BCD, W: int) -> ReduciblePair | None:
    """Expansion of S and the heads over the small components they enclose."""
    S = frozenset(S)
    heads = S | bcd.head
    rest = set(g.vertices()) - S
    small = [q for q in connected_components(g, rest) if len(q) <= W]
    body = set(bcd.crown)
    for q in small:
        body |= q
    if not heads or not body:
        return None
    sub = g.induced(heads | body)
    fr, dbe = _dbe(sub, heads, body, {a: 2 * W for a in heads}, W)
    if not dbe.a1:
        return None
    comps = dbe.assigned_to(dbe.a1)
    crown = frozenset().union(*comps) if comps else frozenset()
    shares = {(q, a): s for (q, a), s in fr.shares.items() if a in dbe.a1 and s}
    totals = {a: 0 for a in dbe.a1}
    for (_, a), s in shares.items():
        totals[a] += s
    witness = next((a for a in sorted(dbe.a1) if totals[a] >= 2 * W), None)
    return ReduciblePair(frozenset(dbe.a1), crown, shares, witness)


def _coc_prepare(run: _Run) -> KernelOutcome | None:
    W = run.inst.W
    _strip_light(run, W)
    g, k = run.inst.graph, run.inst.k
    if k < 0:
        return run.outcome("decided-no", "budget exhausted")
    if g.n <= 2 * k * W:
        if g.n and _packing_exceeds(g, W, k):
            return run.outcome("decided-no", f"{W + 1}-packing larger than k")
        return run.outcome("reduced")
    return None


def kernelize_coc_fpt(inst: Instance, max_iterations: int | None = None) -> KernelOutcome:
    """Bounded search tree for strictly reducible pairs; kernel of at most 2kW vertices."""
    if inst.problem != "coc":
        raise ValueError("kernelize_coc_fpt expects a coc instance")
    warn_if_weighted(inst.graph, "kernelize_coc_fpt")
    run = _Run(replace(inst, graph=inst.graph.with_unit_weights()), max_iterations)
    while True:
        run.tick()
        done = _coc_prepare(run)
        if done is not None:
            return done
        g, k, W = run.inst.graph, run.inst.k, run.inst.W
        result = _coc_search(g, k, W, run.stats)
        if result[0] == "no":
            return run.outcome("decided-no", result[1])
        if result[0] == "yes":
            return run.outcome("decided-yes", witness=result[1])
        pair = result[1]
        run.reduce(pair.A, pair.B, len(pair.A))


def _strip(g: WeightedGraph, W: int) -> WeightedGraph:
    return _heavy_part(g, W)


def _coc_search(g: WeightedGraph, k: int, W: int, stats: dict[str, int]):
    t = _bcd(g, W).size
    depth_cap = min(3 * t, k)
    stats["depth_cap"] = max(stats.get("depth_cap", 0), depth_cap)
    seen: set[VertexSet] = set()

    def visit(S: VertexSet, depth: int):
        stats["nodes"] += 1
        current = _strip(g.without(S), W)
        if current.n == 0:
            return ("yes", S)
        b = _bcd(current, W)
        if b.size > k:
            return ("no", f"{W + 1}-packing larger than k")
        pair = find_reducible_structure(g, S, b, W)
        if pair is not None:
            return ("reduce", pair)
        if depth >= depth_cap:
            return None
        _, separators = compute_r_prime(current, b, W)
        branch = sorted(b.head) + sorted(separators - b.head)
        stats["max_branching"] = max(stats["max_branching"], len(branch))
        for v in branch:
            child = S | {v}
            if child in seen:
                continue
            seen.add(child)
            found = visit(child, depth + 1)
            if found is not None:
                return found
        return None

    before = stats["nodes"]
    found = visit(frozenset(), 0)
    used = stats["nodes"] - before
    branching = stats["max_branching"]
    bound = sum(branching**d for d in range(depth_cap + 1))
    if used > bound:
        stats["node_bound_violations"] = stats.get("node_bound_violations", 0) + 1
    stats["max_search_nodes"] = max(stats.get("max_search_nodes", 0), used)
    if found is None:
        return ("no", "search tree exhausted without a reducible pair")
    return found


BCD_MODES = ("matching-seeded", "clawfree")


def kernelize_coc2(inst: Instance, bcd_mode: str, max_iterations: int | None = None) -> KernelOutcome:
    """Polynomial 2kW kernel for W=1 (matching-seeded) or claw-free graphs."""
    if inst.problem != "coc":
        raise ValueError("kernelize_coc2 expects a coc instance")
    if bcd_mode not in BCD_MODES:
        raise ValueError(f"unknown mode {bcd_mode!r}")
    if bcd_mode == "matching-seeded" and inst.W != 1:
        raise ValueError("matching-seeded mode requires W=1")
    if bcd_mode == "clawfree":
        claw = find_induced_claw(inst.graph)
        if claw is not None:
            raise ValueError(f"graph has an induced claw {claw}")
    warn_if_weighted(inst.graph, "kernelize_coc2")
    run = _Run(replace(inst, graph=inst.graph.with_unit_weights()), max_iterations)
    while True:
        run.tick()
        done = _coc_prepare(run)
        if done is not None:
            return done
        g, k, W = run.inst.graph, run.inst.k, run.inst.W
        result = _coc2_search(g, k, W, bcd_mode, run.stats)
        if result[0] == "no":
            return run.outcome("decided-no", result[1])
        if result[0] == "yes":
            return run.outcome("decided-yes", witness=result[1])
        pair = result[1]
        run.reduce(pair.A, pair.B, len(pair.A))


def _mode_bcd(g: WeightedGraph, W: int, mode: str) -> BCD:
    if mode == "matching-seeded":
        b = compute_bcd_seeded(g, W, maximum_matching(g))
    else:
        parts: list[VertexSet] = []
        for comp in connected_components(g):
            parts.extend(clawfree_bcd(g.induced(comp), W).parts)
        b = BCD(frozenset(), frozenset(), tuple(parts), {}, W)
    _emit("bcd", g, W, b)
    return b


def _coc2_search(g: WeightedGraph, k: int, W: int, mode: str, stats: dict[str, int]):
    S: VertexSet = frozenset()
    current = g
    while current.n:
        stats["nodes"] += 1
        b = _mode_bcd(current, W, mode)
        parts, separators = compute_r_prime(current, b, W)
        if b.size > k:
            return ("no", f"{W + 1}-packing larger than k")
        if not parts and not b.head:
            break
        S = S | separators | b.head
        pair = find_reducible_structure(g, S, b, W)
        if pair is not None:
            return ("reduce", pair)
        current = _strip(g.without(S), W)
    if current.n == 0 and len(S) <= k:
        return ("yes", S)
    return ("no", "no reducible pair located")


__all__ = [
    "BCD_MODES",
    "CocInstance",
    "Instance",
    "KernelError",
    "KernelOutcome",
    "ReduciblePair",
    "ReductionRecord",
    "ViInstance",
    "WcocInstance",
    "WviInstance",
    "apply_record",
    "apply_reduction",
    "ceil_sqrt",
    "compute_r_prime",
    "find_reducible_structure",
    "kernelize_coc2",
    "kernelize_coc_fpt",
    "kernelize_vi",
    "kernelize_wcoc",
    "kernelize_wvi",
    "set_audit",
    "unique_w_separator",
    "wcoc_bound_holds",
    "wvi_bound_holds",
]
