"""Kernelize hub-and-pendant yes-instances of each problem and compare kernel sizes with their bounds."""

import random

from crownkernel.graph import WeightedGraph
from crownkernel.kernels import (
    CocInstance,
    ViInstance,
    WcocInstance,
    WviInstance,
    kernelize_coc2,
    kernelize_coc_fpt,
    kernelize_vi,
    kernelize_wcoc,
    kernelize_wvi,
)


def hub_graph(rng: random.Random, hubs: int, pendants: int, length: int, max_weight: int = 1) -> WeightedGraph:
    """Hubs on a path, each carrying pendant paths with `length` vertices."""
    edges = [(h, h + 1) for h in range(1, hubs)]
    next_id = hubs + 1
    for h in range(1, hubs + 1):
        for _ in range(pendants):
            ids = list(range(next_id, next_id + length))
            next_id += length
            edges.append((h, ids[0]))
            edges += list(zip(ids, ids[1:]))
    weights = {v: rng.randint(1, max_weight) for v in range(1, next_id)}
    return WeightedGraph(range(1, next_id), edges, weights)


def main() -> None:
    rng = random.Random(1)
    print(f"{'hubs':>4}  {'problem':<18}{'verdict':<15}{'|V|':>5}{'kernel':>8}{'budget':>8}{'records':>9}")
    for hubs, pendants in ((2, 8), (3, 15), (4, 30)):
        unit = hub_graph(rng, hubs, pendants, 1)
        pairs = hub_graph(rng, hubs, pendants, 2)
        weighted = hub_graph(rng, hubs, pendants, 1, max_weight=2)
        runs = [
            ("coc fpt k W=1", unit, kernelize_coc_fpt(CocInstance(unit, hubs, 1))),
            ("coc poly k W=1", unit, kernelize_coc2(CocInstance(unit, hubs, 1), "matching-seeded")),
            ("vi p=hubs+2", pairs, kernelize_vi(ViInstance(pairs, hubs + 2))),
            ("wvi p=2hubs+2", weighted, kernelize_wvi(WviInstance(weighted, 2 * hubs + 2))),
            ("wcoc k=2hubs W=2", weighted, kernelize_wcoc(WcocInstance(weighted, 2 * hubs, 2))),
        ]
        for name, g, out in runs:
            kernel = out.reduced_instance
            print(
                f"{hubs:>4}  {name:<18}{out.verdict:<15}{g.n:>5}{kernel.graph.n:>8}"
                f"{kernel.budget:>8}{len(out.certificate):>9}"
            )


if __name__ == "__main__":
    main()
