"""Synchronous round-based execution of per-node local algorithms.

The engine enforces the information model: a node sees its own degree,
colour, incident orientations and the global degree bound, and exchanges
opaque byte payloads addressed by port.  Sends of round r are delivered at
the start of round r+1 (barrier semantics); node ids never reach the
algorithm.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

from .errors import MissingInputError
from .graph import Graph, normalize_edge

OUTGOING = "out"
INCOMING = "in"

Sends = Mapping[int, bytes]          # port -> payload
Inbox = Mapping[int, bytes]          # port -> payload received this round


@dataclass(frozen=True)
class NodeView:
    """Exactly what one node may legally see before any message arrives."""

    degree: int
    max_degree: int
    colour: str | None = None
    port_directions: tuple[str, ...] | None = None


class LocalAlgorithm:
    """Behavioural contract for a deterministic per-node algorithm.

    ``init`` maps the node's view to an initial state plus the messages
    sent in round 0; ``step`` consumes one inbox per round; ``finalize``
    maps the final state to the node's output.  ``round_budget`` may
    depend on the degree bound only, never on the node count.
    """

    name = "local-algorithm"
    needs_colour = False
    needs_orientation = False

    def round_budget(self, max_degree: int) -> int:
        raise NotImplementedError

    def virtual_ports(self, view: NodeView) -> int:
        """Number of simulated degree-1 attachments this node hosts."""
        return 0

    def init(self, view: NodeView) -> tuple[Any, Sends]:
        raise NotImplementedError

    def step(self, state: Any, inbox: Inbox) -> tuple[Any, Sends]:
        raise NotImplementedError

    def finalize(self, state: Any) -> Any:
        raise NotImplementedError


@dataclass
class RunResult:
    outputs: dict[int, Any]
    rounds_used: int
    max_message_bits: int


def _base_view(g: Graph, v: int, max_degree: int) -> NodeView:
    directions = None
    if g.has_orientation:
        dirs = []
        for p in range(1, g.degree(v) + 1):
            tail, _ = g.orientation[normalize_edge(v, g.port_neighbour(v, p))]
            dirs.append(OUTGOING if tail == v else INCOMING)
        directions = tuple(dirs)
    return NodeView(degree=g.degree(v), max_degree=max_degree,
                    colour=g.colour(v), port_directions=directions)


def run_local_algorithm(g: Graph,
                        alg: LocalAlgorithm,
                        *,
                        max_degree: int | None = None,
                        node_order: Sequence[int] | None = None,
                        trace: Callable[[str], None] | None = None) -> RunResult:
    """Run ``alg`` on every node of ``g`` for exactly its round budget.

    ``node_order`` only permutes the engine's evaluation order inside a
    round; outputs are independent of it.  ``trace`` receives one JSON
    line per (round, node).
    """
    if alg.needs_colour and not g.has_colours:
        raise MissingInputError(f"{alg.name} needs node colours")
    if alg.needs_orientation and not g.has_orientation:
        raise MissingInputError(f"{alg.name} needs an edge orientation")
    delta = g.max_degree if max_degree is None else max_degree
    if delta < g.max_degree:
        raise ValueError(f"declared degree bound {delta} below actual {g.max_degree}")

    order = list(node_order) if node_order is not None else list(g.nodes)
    if sorted(order) != list(g.nodes):
        raise ValueError("node_order must be a permutation of the nodes")

    # entities: real nodes (int) plus virtual degree-1 attachments (host, port)
    states: dict[Any, Any] = {}
    degrees: dict[Any, int] = {}
    entities: list[Any] = []
    virtuals: dict[int, int] = {}
    max_bits = 0

    def route(entity, port):
        if isinstance(entity, tuple):       # virtual node: its port 1 is the host
            host, hport = entity
            return host, hport
        if port <= g.degree(entity):
            return g.port_neighbour(entity, port), g.arrival_port(entity, port)
        return (entity, port), 1            # into the virtual attachment

    outbox: dict[tuple[Any, int], bytes] = {}

    def record_sends(entity, sends, round_no):
        nonlocal max_bits
        for port, payload in sends.items():
            if not isinstance(payload, bytes):
                raise TypeError(f"payload on port {port} is not bytes")
            if not 1 <= port <= degrees[entity]:
                raise ValueError(f"send on invalid port {port}")
            outbox[(entity, port)] = payload
            max_bits = max(max_bits, 8 * len(payload))
        if trace is not None and not isinstance(entity, tuple):
            trace(json.dumps({
                "round": round_no,
                "node": entity,
                "sent": sorted([p, payload.hex()] for p, payload in sends.items()),
                "state_digest": _digest(states[entity]),
            }, sort_keys=True))

    for v in order:
        base = _base_view(g, v, delta)
        k = alg.virtual_ports(base)
        virtuals[v] = k
        if k:
            dirs = base.port_directions
            if dirs is not None:
                dirs = dirs + (OUTGOING,) * k
            base = NodeView(degree=base.degree + k, max_degree=delta,
                            colour=base.colour, port_directions=dirs)
        degrees[v] = base.degree
        entities.append(v)
        states[v], sends = alg.init(base)
        record_sends(v, sends, 0)
        for i in range(k):
            ent = (v, g.degree(v) + 1 + i)
            vdirs = (INCOMING,) if g.has_orientation else None
            degrees[ent] = 1
            entities.append(ent)
            states[ent], vsends = alg.init(
                NodeView(degree=1, max_degree=delta, colour=None,
                         port_directions=vdirs))
            record_sends(ent, vsends, 0)

    budget = alg.round_budget(delta)
    for round_no in range(1, budget + 1):
        inboxes: dict[Any, dict[int, bytes]] = {}
        for (entity, port), payload in outbox.items():
            target, arrival = route(entity, port)
            inboxes.setdefault(target, {})[arrival] = payload
        outbox = {}
        for entity in entities:
            states[entity], sends = alg.step(states[entity], inboxes.get(entity, {}))
            record_sends(entity, sends, round_no)

    outputs = {v: alg.finalize(states[v]) for v in g.nodes}
    return RunResult(outputs=outputs, rounds_used=budget, max_message_bits=max_bits)


def _digest(state: Any) -> str:
    return hashlib.sha256(repr(state).encode()).hexdigest()[:16]


# -- locality helper -----------------------------------------------------------

def _node_label(g: Graph, v: int):
    dirs = None
    if g.has_orientation:
        dirs = []
        for p in range(1, g.degree(v) + 1):
            tail, _ = g.orientation[normalize_edge(v, g.port_neighbour(v, p))]
            dirs.append(OUTGOING if tail == v else INCOMING)
        dirs = tuple(dirs)
    return (g.degree(v), g.colour(v), dirs)


def _view_codes(g: Graph, radius: int, intern: dict) -> list[int]:
    """Canonical code of every node's depth-``radius`` view tree.

    Codes are interned in a table shared between graphs, so equal codes
    mean isomorphic port-and-label-preserving rooted views.
    """
    def get(key):
        code = intern.get(key)
        if code is None:
            code = len(intern)
            intern[key] = code
        return code

    codes = [get(("leaf", _node_label(g, v))) for v in g.nodes]
    for _ in range(radius):
        codes = [get((_node_label(g, v),
                      tuple((g.arrival_port(v, p), codes[g.port_neighbour(v, p)])
                            for p in range(1, g.degree(v) + 1))))
                 for v in g.nodes]
    return codes


def local_views_equivalent(g1: Graph, v1: int, g2: Graph, v2: int, radius: int) -> bool:
    """True iff the radius-r rooted views of v1 and v2 are isomorphic.

    Views respect ports, colours and orientations; two nodes with
    equivalent radius-T views are indistinguishable to any T-round
    port-numbering algorithm.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    intern: dict = {}
    c1 = _view_codes(g1, radius, intern)
    c2 = _view_codes(g2, radius, intern) if g2 is not g1 else c1
    return c1[v1] == c2[v2]
