#!/usr/bin/env python3
"""Generate the frozen exhaustive graph corpora under tests/data/.

Enumerates connected graphs on 2..8 nodes and connected bipartite graphs
on 2..10 nodes, one representative per isomorphism class, by vertex
augmentation with Weisfeiler-Lehman bucketing and VF2 deduplication.

Completeness and distinctness are verified by a mass check: the number
of labelings of the generated classes (sum of n!/|Aut|) must equal the
exact labeled count computed independently by inclusion-exclusion
recursions.  The known class counts are asserted as well.

Output: connected_n2_8.g6, bipartite_connected_n2_10.g6, manifest.json.
Runs in a few minutes; needs networkx.
"""

from __future__ import annotations

import json
import sys
from collections import defaultdict
from math import comb, factorial
from pathlib import Path

import networkx as nx

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"
CONNECTED_MAX = 8
BIPARTITE_MAX = 10

KNOWN_CONNECTED = {2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
KNOWN_BIPARTITE = {2: 1, 3: 1, 4: 3, 5: 5, 6: 17, 7: 44, 8: 182, 9: 730, 10: 4032}


def to_graph6(g: nx.Graph) -> str:
    n = g.number_of_nodes()
    assert n <= 62
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(63 + n)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def certificate(g: nx.Graph) -> tuple:
    degs = tuple(sorted(d for _, d in g.degree()))
    return (g.number_of_nodes(), g.number_of_edges(), degs,
            nx.weisfeiler_lehman_graph_hash(g, iterations=3))


def augment(parents: list[nx.Graph], n: int, bipartite_only: bool) -> list[nx.Graph]:
    buckets: dict[tuple, list[nx.Graph]] = defaultdict(list)
    found: list[nx.Graph] = []
    for g in parents:
        for mask in range(1, 1 << (n - 1)):
            h = g.copy()
            h.add_node(n - 1)
            for u in range(n - 1):
                if mask >> u & 1:
                    h.add_edge(u, n - 1)
            if bipartite_only and not nx.is_bipartite(h):
                continue
            cert = certificate(h)
            if any(nx.is_isomorphic(h, x) for x in buckets[cert]):
                continue
            buckets[cert].append(h)
            found.append(h)
    return found


def automorphism_count(g: nx.Graph) -> int:
    gm = nx.algorithms.isomorphism.GraphMatcher(g, g)
    return sum(1 for _ in gm.isomorphisms_iter())


def labeled_connected_counts(n_max: int) -> dict[int, int]:
    total = {n: 2 ** comb(n, 2) for n in range(n_max + 1)}
    c: dict[int, int] = {}
    for n in range(1, n_max + 1):
        c[n] = total[n] - sum(comb(n - 1, k - 1) * c[k] * total[n - k]
                              for k in range(1, n))
    return c


def labeled_connected_bipartite_counts(n_max: int) -> dict[int, int]:
    # D(n): vertex-2-coloured graphs whose edges cross the colour classes
    d_all = {n: sum(comb(n, k) * 2 ** (k * (n - k)) for k in range(n + 1))
             for n in range(n_max + 1)}
    d_conn: dict[int, int] = {}
    for n in range(1, n_max + 1):
        d_conn[n] = d_all[n] - sum(comb(n - 1, j - 1) * d_conn[j] * d_all[n - j]
                                   for j in range(1, n))
    # every connected bipartite graph admits exactly two proper colourings
    return {n: d_conn[n] // 2 for n in range(1, n_max + 1)}


def mass_check(classes: list[nx.Graph], n: int, expected_labeled: int, tag: str):
    got = sum(factorial(n) // automorphism_count(g) for g in classes)
    if got != expected_labeled:
        raise SystemExit(f"{tag} n={n}: {got} labelings from generated classes, "
                         f"expected {expected_labeled}; enumeration is wrong")
    print(f"  mass check {tag} n={n}: {len(classes)} classes, "
          f"{got} labelings OK")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    k2 = nx.Graph([(0, 1)])

    print("enumerating connected graphs ...")
    connected: dict[int, list[nx.Graph]] = {2: [k2]}
    for n in range(3, CONNECTED_MAX + 1):
        connected[n] = augment(connected[n - 1], n, bipartite_only=False)
        print(f"  n={n}: {len(connected[n])} classes")

    print("verifying connected corpus ...")
    labeled_c = labeled_connected_counts(CONNECTED_MAX)
    for n in range(2, CONNECTED_MAX + 1):
        assert len(connected[n]) == KNOWN_CONNECTED[n], \
            f"n={n}: got {len(connected[n])}, known {KNOWN_CONNECTED[n]}"
        mass_check(connected[n], n, labeled_c[n], "connected")

    print("enumerating connected bipartite graphs ...")
    bipartite: dict[int, list[nx.Graph]] = {
        n: [g for g in connected[n] if nx.is_bipartite(g)]
        for n in range(2, CONNECTED_MAX + 1)
    }
    for n in range(CONNECTED_MAX + 1, BIPARTITE_MAX + 1):
        bipartite[n] = augment(bipartite[n - 1], n, bipartite_only=True)
        print(f"  n={n}: {len(bipartite[n])} classes")

    print("verifying bipartite corpus ...")
    labeled_b = labeled_connected_bipartite_counts(BIPARTITE_MAX)
    for n in range(2, BIPARTITE_MAX + 1):
        assert len(bipartite[n]) == KNOWN_BIPARTITE[n], \
            f"n={n}: got {len(bipartite[n])}, known {KNOWN_BIPARTITE[n]}"
        mass_check(bipartite[n], n, labeled_b[n], "bipartite")

    print("checking graph6 round trip against networkx ...")
    for g in connected[5] + bipartite[6]:
        enc = to_graph6(g)
        back = nx.from_graph6_bytes(enc.encode())
        assert nx.is_isomorphic(g, back) and sorted(back.nodes) == sorted(g.nodes)

    with open(DATA_DIR / "connected_n2_8.g6", "w") as fh:
        for n in range(2, CONNECTED_MAX + 1):
            for g in connected[n]:
                fh.write(to_graph6(g) + "\n")
    with open(DATA_DIR / "bipartite_connected_n2_10.g6", "w") as fh:
        for n in range(2, BIPARTITE_MAX + 1):
            for g in bipartite[n]:
                fh.write(to_graph6(g) + "\n")
    manifest = {
        "connected_counts": {str(n): len(connected[n])
                             for n in range(2, CONNECTED_MAX + 1)},
        "bipartite_counts": {str(n): len(bipartite[n])
                             for n in range(2, BIPARTITE_MAX + 1)},
    }
    with open(DATA_DIR / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("corpora written to", DATA_DIR)


if __name__ == "__main__":
    sys.exit(main())
