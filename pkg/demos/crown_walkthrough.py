"""Step through one crown decomposition and one balanced crown decomposition."""

from crownkernel.bcd import compute_bcd, packing_from_bcd, verify_bcd
from crownkernel.dbe import compute_dbe, extract_crown, verify_crown, verify_dbe
from crownkernel.graph import WeightedGraph


def main() -> None:
    # two hubs, five pendant edges on hub 1, two pendant vertices on hub 2
    edges = [(1, 2)] + [(1, v) for v in (3, 5, 7, 9, 11)] + [(v, v + 1) for v in (3, 5, 7, 9, 11)]
    edges += [(2, 13), (2, 14)]
    g = WeightedGraph(range(1, 15), edges)
    heads = [1, 2]
    body = [v for v in g.vertices() if v not in heads]
    dbe = compute_dbe(g, heads, body, {1: 4, 2: 4}, 2)
    print("expansion heads A1:", sorted(dbe.a1), "A2:", sorted(dbe.a2), "valid:", bool(verify_dbe(g, heads, body, dbe)))
    crown = extract_crown(dbe)
    if crown is not None:
        print("crown head:", sorted(crown.head), "crown:", sorted(crown.crown), "valid:", bool(verify_crown(g, crown)))

    b = compute_bcd(g, 2)
    print("bcd head:", sorted(b.head), "crown:", sorted(b.crown))
    print("bcd parts:", [sorted(p) for p in b.parts], "valid:", bool(verify_bcd(g, 2, b)))
    print("derived 3-packing:", [sorted(p) for p in packing_from_bcd(b).parts])


if __name__ == "__main__":
    main()
