"""Simple graphs with per-node port numbering, optional orientation and colours.

Node ids are dense integers 0..n-1 used by the harness and the oracles only;
simulated algorithms never see them.  Ports are 1-based: at every node the
ports form a bijection {1..deg(v)} -> neighbours(v).
"""

from __future__ import annotations

import json
from enum import IntEnum
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    DuplicateEdgeError,
    GraphFormatError,
    IsolatedNodeError,
    MissingColoursError,
    PortClashError,
    PortGapError,
    PortOutOfRangeError,
    SelfLoopError,
)

BLACK = "black"
WHITE = "white"
COLOURS = (BLACK, WHITE)

Edge = tuple[int, int]


def opposite(colour: str) -> str:
    return WHITE if colour == BLACK else BLACK


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class ColouringClass(IntEnum):
    """How strong a black/white assignment is; PROPER implies WEAK."""

    NONE = 0
    WEAK = 1
    PROPER = 2


class Graph:
    """Immutable validated graph.  Build instances through :func:`build_graph`."""

    __slots__ = ("n", "colours", "edges", "orientation",
                 "_port_to", "_port_back", "_port_of", "_max_degree")

    def __init__(self, n, colours, edges, orientation, port_to, port_back, port_of):
        self.n = n
        self.colours = colours          # tuple[str, ...] | None
        self.edges = edges              # frozenset[Edge], normalized u < v
        self.orientation = orientation  # dict[Edge, (tail, head)] | None
        self._port_to = port_to         # tuple[tuple[int, ...], ...]
        self._port_back = port_back     # arrival port at the far end, per port
        self._port_of = port_of         # tuple[dict[neighbour, port], ...]
        self._max_degree = max((len(p) for p in port_to), default=0)

    # -- structure accessors --------------------------------------------

    @property
    def nodes(self) -> range:
        return range(self.n)

    @property
    def max_degree(self) -> int:
        return self._max_degree

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._port_to[v])

    def neighbours(self, v: int) -> tuple[int, ...]:
        """Neighbours of v in port order (port p sits at index p-1)."""
        return self._port_to[v]

    def port_neighbour(self, v: int, p: int) -> int:
        """The unique neighbour reached from v through port p."""
        if not 1 <= p <= len(self._port_to[v]):
            raise PortOutOfRangeError(
                f"node {v} has ports 1..{len(self._port_to[v])}, got {p}")
        return self._port_to[v][p - 1]

    def arrival_port(self, v: int, p: int) -> int:
        """The port at the far endpoint through which v's port p arrives."""
        if not 1 <= p <= len(self._port_back[v]):
            raise PortOutOfRangeError(
                f"node {v} has ports 1..{len(self._port_back[v])}, got {p}")
        return self._port_back[v][p - 1]

    def port_of(self, v: int, u: int) -> int:
        """The port at v leading to neighbour u."""
        return self._port_of[v][u]

    def colour(self, v: int) -> str | None:
        return None if self.colours is None else self.colours[v]

    @property
    def has_colours(self) -> bool:
        return self.colours is not None

    @property
    def has_orientation(self) -> bool:
        return self.orientation is not None

    def edge_direction(self, u: int, v: int) -> tuple[int, int] | None:
        if self.orientation is None:
            return None
        return self.orientation[normalize_edge(u, v)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.colours == other.colours
                and self._port_to == other._port_to
                and self.orientation == other.orientation)

    __hash__ = None  # mutable-free but identity hashing would be a trap

    def __repr__(self):
        return (f"Graph(n={self.n}, m={len(self.edges)}, "
                f"coloured={self.has_colours}, oriented={self.has_orientation})")


def build_graph(node_count: int,
                edges: Iterable[Sequence],
                colours: Sequence[str] | Mapping[int, str] | None = None) -> Graph:
    """Validate and build a Graph.

    ``edges`` holds tuples ``(u, v, port_u, port_v)`` or
    ``(u, v, port_u, port_v, direction)`` with direction in
    ``{"uv", "vu", None}``.  Directions must be given for all edges or none.
    """
    if node_count < 0:
        raise ValueError("node_count must be non-negative")
    colour_list = _normalize_colours(node_count, colours)

    edge_set: set[Edge] = set()
    ports: list[dict[int, int]] = [dict() for _ in range(node_count)]
    orientation: dict[Edge, tuple[int, int]] = {}
    directed_seen = 0

    for spec in edges:
        if len(spec) == 4:
            u, v, pu, pv = spec
            direction = None
        elif len(spec) == 5:
            u, v, pu, pv, direction = spec
        else:
            raise ValueError(f"edge spec must have 4 or 5 fields, got {spec!r}")
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise ValueError(f"edge ({u}, {v}) out of range for {node_count} nodes")
        if u == v:
            raise SelfLoopError(f"self-loop at node {u}")
        e = normalize_edge(u, v)
        if e in edge_set:
            raise DuplicateEdgeError(f"edge {e} listed twice")
        edge_set.add(e)
        for node, port in ((u, pu), (v, pv)):
            if port in ports[node]:
                raise PortClashError(f"port {port} reused at node {node}")
            ports[node][port] = v if node == u else u
        if direction is not None:
            if direction == "uv":
                orientation[e] = (u, v)
            elif direction == "vu":
                orientation[e] = (v, u)
            else:
                raise ValueError(f"direction must be 'uv', 'vu' or None, got {direction!r}")
            directed_seen += 1

    if directed_seen not in (0, len(edge_set)):
        raise GraphFormatError("orientation must be given for all edges or none")

    port_to: list[tuple[int, ...]] = []
    for v in range(node_count):
        deg = len(ports[v])
        if deg == 0:
            raise IsolatedNodeError(f"node {v} has no neighbours")
        if set(ports[v]) != set(range(1, deg + 1)):
            raise PortGapError(
                f"node {v}: ports {sorted(ports[v])} are not exactly 1..{deg}")
        port_to.append(tuple(ports[v][p] for p in range(1, deg + 1)))

    port_of = tuple({u: p + 1 for p, u in enumerate(port_to[v])}
                    for v in range(node_count))
    port_back = tuple(tuple(port_of[u][v] for u in port_to[v])
                      for v in range(node_count))
    return Graph(node_count, colour_list, frozenset(edge_set),
                 orientation if directed_seen else None,
                 tuple(port_to), port_back, port_of)


def _normalize_colours(n, colours):
    if colours is None:
        return None
    if isinstance(colours, Mapping):
        if set(colours) != set(range(n)):
            raise ValueError("colour map must cover exactly the nodes 0..n-1")
        colours = [colours[v] for v in range(n)]
    colours = tuple(colours)
    if len(colours) != n:
        raise ValueError(f"expected {n} colours, got {len(colours)}")
    for c in colours:
        if c not in COLOURS:
            raise ValueError(f"unknown colour {c!r}")
    return colours


# -- colouring classification ------------------------------------------------

def classify_colouring(g: Graph, colours: Sequence[str] | None = None) -> ColouringClass:
    """Strongest class the (given or stored) colouring satisfies.

    PROPER: every edge joins opposite colours.  WEAK: every node has at
    least one opposite-coloured neighbour.  NONE otherwise.
    """
    cols = g.colours if colours is None else tuple(colours)
    if cols is None or len(cols) != g.n:
        raise MissingColoursError("graph has no complete colour assignment")
    proper = all(cols[u] != cols[v] for u, v in g.edges)
    if proper:
        return ColouringClass.PROPER
    weak = all(any(cols[u] != cols[v] for u in g.neighbours(v)) for v in g.nodes)
    return ColouringClass.WEAK if weak else ColouringClass.NONE


def neighbour_via_port(g: Graph, v: int, p: int) -> int:
    """Module-level alias for :meth:`Graph.port_neighbour`."""
    return g.port_neighbour(v, p)


# -- structural utilities -----------------------------------------------------

def _edge_specs(g: Graph, node_map: Callable[[int], int] | None = None):
    """Edge tuples reconstructing g, with ids optionally remapped."""
    f = node_map or (lambda x: x)
    specs = []
    for u, v in sorted(g.edges):
        direction = None
        if g.orientation is not None:
            tail, _ = g.orientation[(u, v)]
            direction = "uv" if tail == u else "vu"
        specs.append((f(u), f(v), g.port_of(u, v), g.port_of(v, u), direction))
    return specs


def with_colours(g: Graph, colours: Sequence[str] | None) -> Graph:
    """Copy of g with the colour map replaced (or removed)."""
    return build_graph(g.n, _edge_specs(g), colours)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Copy of g with node v renamed perm[v]; ports travel with their node."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    colours = None
    if g.colours is not None:
        colours = [BLACK] * g.n
        for v in g.nodes:
            colours[perm[v]] = g.colours[v]
    return build_graph(g.n, _edge_specs(g, lambda v: perm[v]), colours)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; g2's ids are shifted up by g1.n."""
    if g1.has_colours != g2.has_colours:
        raise GraphFormatError("cannot union a coloured and an uncoloured graph")
    if g1.has_orientation != g2.has_orientation:
        raise GraphFormatError("cannot union an oriented and an unoriented graph")
    colours = None
    if g1.has_colours:
        colours = list(g1.colours) + list(g2.colours)
    shift = g1.n
    specs = _edge_specs(g1) + _edge_specs(g2, lambda v: v + shift)
    return build_graph(g1.n + g2.n, specs, colours)


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph with dense ids; relative port order is preserved.

    Returns the subgraph and the original id of each new node.  The kept
    node set must leave no node isolated.
    """
    kept = sorted(set(nodes))
    new_id = {old: i for i, old in enumerate(kept)}
    kept_set = set(kept)
    # renumber surviving ports at each kept node, keeping their order
    new_port: dict[tuple[int, int], int] = {}
    for old in kept:
        nxt = 1
        for p, u in enumerate(g.neighbours(old), start=1):
            if u in kept_set:
                new_port[(old, p)] = nxt
                nxt += 1
    specs = []
    for u, v in sorted(g.edges):
        if u in kept_set and v in kept_set:
            direction = None
            if g.orientation is not None:
                tail, _ = g.orientation[(u, v)]
                direction = "uv" if tail == u else "vu"
            specs.append((new_id[u], new_id[v],
                          new_port[(u, g.port_of(u, v))],
                          new_port[(v, g.port_of(v, u))],
                          direction))
    colours = None
    if g.colours is not None:
        colours = [g.colours[old] for old in kept]
    return build_graph(len(kept), specs, colours), tuple(kept)


# -- JSON interchange ----------------------------------------------------------

def graph_to_json_dict(g: Graph) -> dict:
    nodes = [{"id": v, "colour": g.colour(v)} for v in g.nodes]
    edges = []
    for u, v in sorted(g.edges):
        direction = None
        if g.orientation is not None:
            tail, _ = g.orientation[(u, v)]
            direction = "uv" if tail == u else "vu"
        edges.append({"u": u, "v": v,
                      "port_u": g.port_of(u, v), "port_v": g.port_of(v, u),
                      "dir": direction})
    return {"nodes": nodes, "edges": edges}


def graph_from_json_dict(doc: dict) -> Graph:
    try:
        node_docs = doc["nodes"]
        edge_docs = doc["edges"]
    except (TypeError, KeyError) as exc:
        raise GraphFormatError(f"missing field: {exc}") from exc
    ids = [nd.get("id") for nd in node_docs]
    if sorted(ids) != list(range(len(ids))):
        raise GraphFormatError("node ids must be exactly 0..n-1")
    colour_by_id = {}
    for nd in node_docs:
        colour_by_id[nd["id"]] = nd.get("colour")
    given = [c for c in colour_by_id.values() if c is not None]
    if given and len(given) != len(ids):
        raise GraphFormatError("colours must be given for all nodes or none")
    colours = [colour_by_id[v] for v in range(len(ids))] if given else None
    if colours is not None:
        for c in colours:
            if c not in COLOURS:
                raise GraphFormatError(f"unknown colour {c!r}")

    specs = []
    dirs = [ed.get("dir") for ed in edge_docs]
    given_dirs = [d for d in dirs if d is not None]
    if given_dirs and len(given_dirs) != len(edge_docs):
        raise GraphFormatError("dir must be given for all edges or none")
    for ed in edge_docs:
        try:
            spec = (ed["u"], ed["v"], ed["port_u"], ed["port_v"], ed.get("dir"))
        except (TypeError, KeyError) as exc:
            raise GraphFormatError(f"bad edge document: {ed!r}") from exc
        if spec[4] not in ("uv", "vu", None):
            raise GraphFormatError(f"bad dir {spec[4]!r}")
        specs.append(spec)
    try:
        return build_graph(len(ids), specs, colours)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def dumps(g: Graph) -> str:
    return json.dumps(graph_to_json_dict(g), sort_keys=True)


def loads(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return graph_from_json_dict(doc)


def save(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g) + "\n")


def load(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
