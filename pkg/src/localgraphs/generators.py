"""Adversarial instance constructions, extraction procedures, random families.

The deterministic constructions realize the reductions that drive the
lower bounds: powers of a directed cycle, the 2-coloured blowup, the
layered weakly coloured graph, and the fully port-symmetric clique.
Random families provide the bulk test corpora.  Port assignment is part
of every fixture: ascending neighbour id unless the construction
dictates otherwise, or explicitly randomized.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (DegenerateParamsError, DeltaTooSmallError, EvenDeltaError,
                     NotInCycleError, NotIndependentError,
                     NotProperlyColouredError, OddCycleLengthError,
                     TooSmallError)
from .graph import (BLACK, WHITE, ColouringClass, Edge, Graph, build_graph,
                    classify_colouring, normalize_edge)
from .oddds import fixup_weak_colouring
from .oracles import validate_matching


@dataclass(frozen=True)
class DirectedCycle:
    """Directed n-cycle; node v's successor is v+1 mod n."""

    n: int
    graph: Graph

    def successor(self, v: int) -> int:
        return (v + 1) % self.n

    def predecessor(self, v: int) -> int:
        return (v - 1) % self.n

    def forward_distance(self, u: int, v: int) -> int:
        """Edges on the directed path from u to v."""
        return (v - u) % self.n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Directed edges (v, successor(v))."""
        return tuple((v, self.successor(v)) for v in range(self.n))


def numbered_cycle(n: int) -> DirectedCycle:
    """Oriented n-cycle with port 1 toward the successor, port 2 back."""
    if n < 3:
        raise TooSmallError(f"cycle needs at least 3 nodes, got {n}")
    specs = [(v, (v + 1) % n, 1, 2, "uv") for v in range(n)]
    return DirectedCycle(n, build_graph(n, specs))


def _ascending_port_specs(n: int, pairs: Iterable[Edge],
                          directions: dict[Edge, tuple[int, int]] | None = None):
    """Edge specs with each node's ports in ascending neighbour-id order."""
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        nbrs[u].append(v)
        nbrs[v].append(u)
    port = {}
    for v in range(n):
        for idx, u in enumerate(sorted(nbrs[v]), start=1):
            port[(v, u)] = idx
    specs = []
    for u, v in sorted(normalize_edge(a, b) for a, b in pairs):
        direction = None
        if directions is not None:
            tail, _ = directions[(u, v)]
            direction = "uv" if tail == u else "vu"
        specs.append((u, v, port[(u, v)], port[(v, u)], direction))
    return specs


def cycle_power(c: DirectedCycle, k: int) -> Graph:
    """k-th power of the cycle: u ~ v iff their cycle distance is at most k."""
    if k < 1 or c.n <= 2 * k:
        raise DegenerateParamsError(f"need n > 2k >= 2, got n={c.n}, k={k}")
    pairs = []
    directions = {}
    for u in range(c.n):
        for d in range(1, k + 1):
            v = (u + d) % c.n
            pairs.append((u, v))
            directions[normalize_edge(u, v)] = (u, v)
    return build_graph(c.n, _ascending_port_specs(c.n, pairs, directions))


def strong_blowup(c: DirectedCycle, delta: int) -> Graph:
    """Properly 2-coloured delta-regular blowup of the cycle.

    Cycle node v contributes white 2v and black 2v+1; white 2u is
    adjacent to black 2v+1 iff the directed path u -> v has at most
    delta-1 edges (length 0 included, which makes the graph regular).
    """
    if delta < 1 or c.n <= delta:
        raise DegenerateParamsError(f"need n > delta >= 1, got n={c.n}, delta={delta}")
    pairs = []
    for u in range(c.n):
        for d in range(delta):
            pairs.append((2 * u, 2 * ((u + d) % c.n) + 1))
    colours = [WHITE if x % 2 == 0 else BLACK for x in range(2 * c.n)]
    return build_graph(2 * c.n, _ascending_port_specs(2 * c.n, pairs), colours)


def _layer_id(v: int, layer: int, delta: int) -> int:
    return v * (delta + 1) + layer


def weak_layered(c: DirectedCycle, delta: int) -> Graph:
    """Weakly (not properly) 2-coloured layered graph over the cycle.

    Cycle node v contributes black hub v0 and whites v1..v_delta; the
    hub joins its own whites, and layer i copies the cycle.  Blacks have
    degree delta, whites degree 3.
    """
    if c.n % 2 != 0:
        raise OddCycleLengthError(f"need an even cycle, got n={c.n}")
    if delta < 3:
        raise DeltaTooSmallError(f"need delta >= 3, got {delta}")
    pairs = []
    for v in range(c.n):
        for i in range(1, delta + 1):
            pairs.append((_layer_id(v, 0, delta), _layer_id(v, i, delta)))
            pairs.append((_layer_id(v, i, delta),
                          _layer_id(c.successor(v), i, delta)))
    n = (delta + 1) * c.n
    colours = [BLACK if x % (delta + 1) == 0 else WHITE for x in range(n)]
    return build_graph(n, _ascending_port_specs(n, pairs), colours)


def weak_layered_perfect_matching(c: DirectedCycle, delta: int) -> frozenset[Edge]:
    """The explicit perfect matching of (delta+1)n/2 edges in the layered graph.

    Pair the cycle nodes along a perfect matching of the cycle; for each
    matched cycle edge (u, v) take hub-to-top edges at u and v plus the
    layer edges u_i - v_i for i < delta.
    """
    if c.n % 2 != 0:
        raise OddCycleLengthError(f"need an even cycle, got n={c.n}")
    edges = []
    for u in range(0, c.n, 2):
        v = u + 1
        edges.append(normalize_edge(_layer_id(u, 0, delta), _layer_id(u, delta, delta)))
        edges.append(normalize_edge(_layer_id(v, 0, delta), _layer_id(v, delta, delta)))
        for i in range(1, delta):
            edges.append(normalize_edge(_layer_id(u, i, delta), _layer_id(v, i, delta)))
    return frozenset(edges)


def symmetric_complete(delta: int) -> Graph:
    """K_{delta+1} whose ports come from a proper delta-edge-colouring.

    Each colour class is a perfect matching and its edges carry the same
    port number at both ends, so all nodes have pairwise equivalent
    views at every radius.  Needs odd delta.
    """
    if delta < 1 or delta % 2 == 0:
        raise EvenDeltaError(f"K_(delta+1) is delta-edge-colourable only for odd delta, got {delta}")
    n = delta + 1
    specs = []
    for r in range(delta):                      # round-robin 1-factorization
        port = r + 1
        specs.append((n - 1, r, port, port))
        for j in range(1, n // 2):
            u = (r + j) % delta
            v = (r - j) % delta
            specs.append((u, v, port, port))
    return build_graph(n, specs)


# -- extraction procedures -----------------------------------------------------

def matching_to_independent_set(c: DirectedCycle, m) -> frozenset[int]:
    """Tails of the matched directed cycle edges; same size, independent."""
    tails = set()
    for a, b in m:
        if c.forward_distance(a, b) == 1:
            tails.add(a)
        elif c.forward_distance(b, a) == 1:
            tails.add(b)
        else:
            raise NotInCycleError(f"({a}, {b}) is not a cycle edge")
    validate_matching(c.graph, m)
    return frozenset(tails)


def merge_layer_independent_sets(c: DirectedCycle,
                                 sets: Sequence[Iterable[int]]) -> frozenset[int]:
    """Merge per-layer independent sets into one, losing at most a
    (2 * layers - 1) factor.

    Iterate over the layers; adopt every survivor of the current layer,
    then delete it and its cycle neighbours from this and all later
    layers.
    """
    working = []
    for i, s in enumerate(sets):
        s = set(s)
        for v in s:
            if not 0 <= v < c.n:
                raise NotInCycleError(f"{v} is not a cycle node")
            if c.successor(v) in s:
                raise NotIndependentError(f"layer {i} contains adjacent nodes")
        working.append(s)
    result: set[int] = set()
    for i in range(len(working)):
        survivors = sorted(working[i])
        result.update(survivors)
        for v in survivors:
            for w in (c.predecessor(v), v, c.successor(v)):
                for j in range(i, len(working)):
                    working[j].discard(w)
    return frozenset(result)


def trivial_white_independent_set(g: Graph) -> frozenset[int]:
    """All white nodes of a properly 2-coloured graph."""
    if classify_colouring(g) != ColouringClass.PROPER:
        raise NotProperlyColouredError("needs a proper 2-colouring")
    return frozenset(v for v in g.nodes if g.colour(v) == WHITE)


# -- random families --------------------------------------------------------------

def _fill_random_edges(n: int, delta: int, rng: random.Random, allowed,
                       chosen: set[Edge]) -> list[Edge]:
    """Add random extra edges to a covering set, respecting the degree cap."""
    degree = [0] * n
    for u, v in chosen:
        degree[u] += 1
        degree[v] += 1
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n)
                  if allowed(u, v) and (u, v) not in chosen]
    rng.shuffle(candidates)
    extra = rng.randint(0, max(0, delta * n // 2 - len(chosen)))
    for u, v in candidates:
        if extra <= 0:
            break
        if degree[u] < delta and degree[v] < delta:
            chosen.add((u, v))
            degree[u] += 1
            degree[v] += 1
            extra -= 1
    return sorted(chosen)


def _bipartite_cover(blacks: list[int], whites: list[int],
                     rng: random.Random) -> set[Edge]:
    """One edge per node: the larger side is dealt round-robin to the smaller."""
    blacks, whites = list(blacks), list(whites)
    rng.shuffle(blacks)
    rng.shuffle(whites)
    small, big = sorted((blacks, whites), key=len)
    return {normalize_edge(small[i % len(small)], v) for i, v in enumerate(big)}


def _pairing_cover(n: int, delta: int, rng: random.Random) -> set[Edge]:
    """One edge per node: a random near-perfect pairing."""
    order = list(range(n))
    rng.shuffle(order)
    cover = {normalize_edge(order[i], order[i + 1])
             for i in range(0, n - 1, 2)}
    if n % 2:
        if delta < 2:
            raise DegenerateParamsError(
                f"no degree-{delta} graph without isolated nodes on {n} nodes")
        cover.add(normalize_edge(order[-1], order[0]))
    return cover


def shuffle_ports(g: Graph, seed: int) -> Graph:
    """Same graph with freshly randomized port numberings."""
    rng = random.Random(seed)
    order: dict[int, list[int]] = {}
    for v in g.nodes:
        nbrs = list(g.neighbours(v))
        rng.shuffle(nbrs)
        order[v] = nbrs
    specs = []
    for u, v in sorted(g.edges):
        direction = None
        if g.orientation is not None:
            tail, _ = g.orientation[(u, v)]
            direction = "uv" if tail == u else "vu"
        specs.append((u, v, order[u].index(v) + 1, order[v].index(u) + 1, direction))
    colours = list(g.colours) if g.colours is not None else None
    return build_graph(g.n, specs, colours)


def random_bipartite(n: int, delta: int, seed: int) -> Graph:
    """Random properly 2-coloured graph with random ports, degrees <= delta."""
    if n < 2 or delta < 1:
        raise DegenerateParamsError(f"need n >= 2 and delta >= 1, got {n}, {delta}")
    rng = random.Random(f"bipartite:{n}:{delta}:{seed}")
    lo = -(-n // (delta + 1))   # each side must be able to host the other
    blacks = set(rng.sample(range(n), rng.randint(lo, n - lo)))
    colours = [BLACK if v in blacks else WHITE for v in range(n)]
    cover = _bipartite_cover(sorted(blacks), sorted(set(range(n)) - blacks), rng)
    pairs = _fill_random_edges(n, delta, rng,
                               lambda u, v: colours[u] != colours[v], cover)
    g = build_graph(n, _ascending_port_specs(n, pairs), colours)
    return shuffle_ports(g, rng.getrandbits(32))


def random_weak(n: int, delta: int, seed: int, oriented: bool = True) -> Graph:
    """Random weakly 2-coloured graph with random ports and orientation."""
    if n < 2 or delta < 1:
        raise DegenerateParamsError(f"need n >= 2 and delta >= 1, got {n}, {delta}")
    rng = random.Random(f"weak:{n}:{delta}:{seed}")
    pairs = _fill_random_edges(n, delta, rng, lambda u, v: True,
                               _pairing_cover(n, delta, rng))
    directions = None
    if oriented:
        directions = {normalize_edge(u, v): (u, v) if rng.random() < 0.5 else (v, u)
                      for u, v in pairs}
    g = build_graph(n, _ascending_port_specs(n, pairs, directions))
    colours = fixup_weak_colouring(
        g, [rng.choice((BLACK, WHITE)) for _ in range(n)])
    g = build_graph(n, _ascending_port_specs(n, pairs, directions), colours)
    return shuffle_ports(g, rng.getrandbits(32))


def random_weak_colouring(g: Graph, seed: int) -> list[str]:
    """A random valid weak 2-colouring of g."""
    rng = random.Random(f"colouring:{seed}")
    return fixup_weak_colouring(g, [rng.choice((BLACK, WHITE)) for _ in range(g.n)])
