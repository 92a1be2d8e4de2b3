"""Approximation scheme for maximum matching in properly 2-coloured graphs.

For i = 1..k the scheme removes augmenting paths of length 2i-1 by
invoking a three-phase subroutine a fixed number of times: a flooding
phase grows vertex-disjoint augmenting trees from the unmatched black
nodes, a proposal phase picks one root-leaf path per tree, and the
augmenting phase flips all chosen paths in parallel.  The final matching
has no augmenting path of length 2k-1 or less, hence at least k/(k+1)
times the maximum size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .engine import Inbox, LocalAlgorithm, NodeView, Sends, run_local_algorithm
from .errors import (NotAugmentingError, NotProperlyColouredError,
                     PathsNotDisjointError, ShorterPathExistsError)
from .graph import (BLACK, WHITE, ColouringClass, Edge, Graph,
                    classify_colouring, normalize_edge)
from .oracles import shortest_augmenting_path_length, validate_matching

Matching = frozenset[Edge]
Path = tuple[int, ...]


def invocation_count(max_degree: int, i: int) -> int:
    """How many subroutine invocations remove every length-(2i-1) path."""
    return max_degree * (max_degree - 1) ** (i - 1)


@dataclass(frozen=True)
class AugmentingForest:
    """Disjoint trees whose every root-leaf path is an augmenting path.

    Roots are unmatched black nodes, leaves are the unmatched white
    endpoints of length-``height`` augmenting paths, and parents are
    stored as port indices.  Branches that reach no leaf are pruned.
    """

    height: int
    parent_port: dict[int, int]
    roots: frozenset[int]
    leaves: frozenset[int]


def _check_proper(g: Graph) -> None:
    if classify_colouring(g) != ColouringClass.PROPER:
        raise NotProperlyColouredError("scheme requires a proper 2-colouring")


def flood_phase(g: Graph, m, h: int, *, assert_no_shorter: bool = False) -> AugmentingForest:
    """Grow augmenting trees of height ``h`` from the unmatched black nodes.

    Assumes no augmenting path shorter than ``h`` exists; an unmatched
    white node reached early is a witness against that assumption and
    raises.  With ``assert_no_shorter`` the assumption is checked up
    front with the path-length oracle.
    """
    _check_proper(g)
    if h < 1 or h % 2 == 0:
        raise ValueError(f"path length must be a positive odd number, got {h}")
    edges = validate_matching(g, m)
    if assert_no_shorter:
        spl = shortest_augmenting_path_length(g, edges)
        if spl is not None and spl < h:
            raise ShorterPathExistsError(f"an augmenting path of length {spl} exists")
    partner: dict[int, int] = {}
    for u, v in edges:
        partner[u] = v
        partner[v] = u

    joined: dict[int, int | None] = {}       # node -> arrival port, None at roots
    leaves: set[int] = set()
    sends: list[tuple[int, int]] = []        # (sender, port)
    for b in g.nodes:
        if g.colour(b) == BLACK and b not in partner:
            joined[b] = None
            sends.extend((b, p) for p in range(1, g.degree(b) + 1))

    for t in range(1, h + 1):
        arrivals: dict[int, list[int]] = {}
        for sender, port in sends:
            target = g.port_neighbour(sender, port)
            arrivals.setdefault(target, []).append(g.arrival_port(sender, port))
        sends = []
        for v, ports in arrivals.items():
            if v in joined:
                continue
            port = min(ports)
            if g.colour(v) == WHITE:
                if v not in partner:
                    if t < h:
                        raise ShorterPathExistsError(
                            f"flood reached an unmatched white node after {t} < {h} hops")
                    joined[v] = port
                    leaves.add(v)
                elif t < h:
                    joined[v] = port
                    sends.append((v, g.port_of(v, partner[v])))
                # matched white on the last hop: message discarded
            else:
                assert v in partner and len(ports) == 1
                joined[v] = port
                mp = g.port_of(v, partner[v])
                sends.extend((v, p) for p in range(1, g.degree(v) + 1) if p != mp)

    parent_port: dict[int, int] = {}
    roots: set[int] = set()
    kept: set[int] = set()
    for leaf in leaves:
        v = leaf
        while v not in kept:
            kept.add(v)
            p = joined[v]
            if p is None:
                roots.add(v)
                break
            parent_port[v] = p
            v = g.port_neighbour(v, p)
    return AugmentingForest(height=h, parent_port=parent_port,
                            roots=frozenset(roots), leaves=frozenset(leaves))


def proposal_phase(g: Graph, forest: AugmentingForest) -> tuple[Path, ...]:
    """One root-leaf path per tree; competing branches lose to a lower port."""
    children: dict[int, list[int]] = {}
    for v, p in forest.parent_port.items():
        children.setdefault(g.port_neighbour(v, p), []).append(v)
    paths = []
    for root in sorted(forest.roots):
        path = [root]
        cur = root
        while cur not in forest.leaves:
            kids = children[cur]
            cur = min(kids, key=lambda c: g.port_of(path[-1], c))
            path.append(cur)
        assert len(path) == forest.height + 1
        paths.append(tuple(path))
    return tuple(paths)


def augment_phase(g: Graph, m, paths: Sequence[Path]) -> Matching:
    """Flip every path against the matching; grows it by one edge per path."""
    edges = validate_matching(g, m)
    matched_nodes = {x for e in edges for x in e}
    used: set[int] = set()
    for path in paths:
        nodes = set(path)
        if len(nodes) != len(path):
            raise NotAugmentingError(f"path {path} repeats a node")
        if len(path) % 2 != 0:
            raise NotAugmentingError(f"path {path} has even edge count")
        if used & nodes:
            raise PathsNotDisjointError(f"path {path} overlaps another path")
        used |= nodes
        if path[0] in matched_nodes or path[-1] in matched_nodes:
            raise NotAugmentingError(f"path {path} does not join unmatched endpoints")
        for idx in range(len(path) - 1):
            e = normalize_edge(path[idx], path[idx + 1])
            if e not in g.edges:
                raise NotAugmentingError(f"{e} is not an edge")
            if (e in edges) != (idx % 2 == 1):
                raise NotAugmentingError(f"path {path} does not alternate at {e}")
    out = set(edges)
    for path in paths:
        for idx in range(len(path) - 1):
            e = normalize_edge(path[idx], path[idx + 1])
            if idx % 2 == 0:
                out.add(e)
            else:
                out.discard(e)
    assert len(out) == len(edges) + len(paths)
    return frozenset(out)


@dataclass
class SchemeStats:
    """Counters the tests use to pin the invocation schedule."""

    invocations: dict[int, int] = field(default_factory=dict)
    augmentations: list[int] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)

    def record(self, i: int, paths: int, size: int) -> None:
        self.invocations[i] = self.invocations.get(i, 0) + 1
        self.augmentations.append(paths)
        self.sizes.append(size)


def eliminate_length(g: Graph, m, i: int, *,
                     max_degree: int | None = None,
                     stats: SchemeStats | None = None,
                     assert_oracle: bool = False) -> Matching:
    """Invoke the subroutine exactly t_i times with path length 2i-1."""
    delta = g.max_degree if max_degree is None else max_degree
    if delta < g.max_degree:
        raise ValueError(f"declared degree bound {delta} below actual {g.max_degree}")
    h = 2 * i - 1
    matching = validate_matching(g, m)
    for _ in range(invocation_count(delta, i)):
        forest = flood_phase(g, matching, h)
        paths = proposal_phase(g, forest)
        matching = augment_phase(g, matching, paths)
        if stats is not None:
            stats.record(i, len(paths), len(matching))
        if assert_oracle:
            spl = shortest_augmenting_path_length(g, matching)
            if spl is not None and spl < h:
                raise ShorterPathExistsError(
                    f"invocation left an augmenting path of length {spl} < {h}")
    if assert_oracle:
        spl = shortest_augmenting_path_length(g, matching)
        if spl is not None and spl <= h:
            raise ShorterPathExistsError(
                f"length-{spl} augmenting path survived elimination at h={h}")
    return matching


def approximate_maximum_matching(g: Graph, k: int, *,
                                 max_degree: int | None = None,
                                 stats: SchemeStats | None = None,
                                 assert_oracle: bool = False) -> Matching:
    """Matching with no augmenting path of length <= 2k-1; a (1+1/k)-approximation."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _check_proper(g)
    matching: Matching = frozenset()
    for i in range(1, k + 1):
        matching = eliminate_length(g, matching, i, max_degree=max_degree,
                                    stats=stats, assert_oracle=assert_oracle)
    return matching


# -- per-node implementation -----------------------------------------------------

_FLOOD = 0x01
_PROPOSE = b"\x02"
_ACCEPT = b"\x03"


def scheme_schedule(max_degree: int, k: int) -> list[tuple[int, int]]:
    """(path length, round within invocation) for every simulated round.

    Every invocation takes 3h rounds: h of flooding, h of proposals
    travelling up, h of acceptances travelling down.  The initial flood
    is sent at the end of the previous invocation (or at wake-up).
    """
    rounds: list[tuple[int, int]] = []
    for i in range(1, k + 1):
        h = 2 * i - 1
        for _ in range(invocation_count(max_degree, i)):
            rounds.extend((h, rho) for rho in range(1, 3 * h + 1))
    return rounds


def scheme_round_budget(max_degree: int, k: int) -> int:
    return len(scheme_schedule(max_degree, k))


class MatchingSchemeAlgorithm(LocalAlgorithm):
    """Port-numbering implementation of the whole scheme for a fixed k.

    Every node derives the same global schedule from the degree bound,
    so phase boundaries need no coordination.  Output is the port of the
    node's matched edge, or None.
    """

    name = "matching-scheme"
    needs_colour = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.k = k
        self._schedules: dict[int, list[tuple[int, int]]] = {}

    def round_budget(self, max_degree: int) -> int:
        return len(self._schedule(max_degree))

    def _schedule(self, max_degree: int) -> list[tuple[int, int]]:
        if max_degree not in self._schedules:
            self._schedules[max_degree] = scheme_schedule(max_degree, self.k)
        return self._schedules[max_degree]

    def init(self, view: NodeView) -> tuple[Any, Sends]:
        state = {
            "colour": view.colour,
            "degree": view.degree,
            "delta": view.max_degree,
            "round": 0,
            "matched_port": None,
        }
        self._reset_invocation(state)
        sends: dict[int, bytes] = {}
        if view.colour == BLACK:
            state["joined"] = True
            state["depth"] = 0
            sends = {p: bytes([_FLOOD, 1]) for p in range(1, view.degree + 1)}
        return state, sends

    @staticmethod
    def _reset_invocation(state: dict) -> None:
        state["joined"] = False
        state["parent_port"] = None
        state["depth"] = None
        state["chosen_child_port"] = None

    def step(self, state: dict, inbox: Inbox) -> tuple[Any, Sends]:
        state = dict(state)
        state["round"] = r = state["round"] + 1
        schedule = self._schedule(state["delta"])
        h, rho = schedule[r - 1]
        sends: dict[int, bytes] = {}
        black = state["colour"] == BLACK
        white = not black

        if rho == 1:
            self._reset_invocation(state)
            if black and state["matched_port"] is None:
                state["joined"] = True
                state["depth"] = 0

        flood_ports = sorted(p for p, msg in inbox.items()
                             if len(msg) == 2 and msg[0] == _FLOOD)
        if flood_ports and not state["joined"]:
            port = min(flood_ports)
            matched = state["matched_port"]
            if white and matched is None:
                if rho < h:
                    raise ShorterPathExistsError(
                        f"flood reached an unmatched white node after {rho} < {h} hops")
                state.update(joined=True, parent_port=port, depth=rho)
                sends[port] = _PROPOSE
            elif white:
                if rho < h:
                    state.update(joined=True, parent_port=port, depth=rho)
                    sends[matched] = bytes([_FLOOD, rho + 1])
                # discarded on the last hop
            else:
                assert matched is not None  # floods reach blacks via matched edges
                state.update(joined=True, parent_port=port, depth=rho)
                for p in range(1, state["degree"] + 1):
                    if p != matched:
                        sends[p] = bytes([_FLOOD, rho + 1])

        propose_ports = sorted(p for p, msg in inbox.items() if msg == _PROPOSE)
        if propose_ports:
            state["chosen_child_port"] = min(propose_ports)
            if state["depth"] == 0:
                state["matched_port"] = state["chosen_child_port"]
                sends[state["chosen_child_port"]] = _ACCEPT
            else:
                sends[state["parent_port"]] = _PROPOSE

        if any(msg == _ACCEPT for msg in inbox.values()):
            if white:
                state["matched_port"] = state["parent_port"]
            else:
                state["matched_port"] = state["chosen_child_port"]
            if state["chosen_child_port"] is not None and state["depth"] != h:
                sends[state["chosen_child_port"]] = _ACCEPT

        if rho == 3 * h and r < len(schedule):
            if black and state["matched_port"] is None:
                for p in range(1, state["degree"] + 1):
                    sends[p] = bytes([_FLOOD, 1])
        return state, sends

    def finalize(self, state: dict) -> dict:
        return {"matched_port": state["matched_port"]}


def matching_from_outputs(g: Graph, outputs) -> Matching:
    """Collect the matched edges from per-node outputs; both ends must agree."""
    edges: set[Edge] = set()
    for v, out in outputs.items():
        p = out["matched_port"]
        if p is None:
            continue
        u = g.port_neighbour(v, p)
        if outputs[u]["matched_port"] != g.port_of(u, v):
            raise NotAugmentingError(f"nodes {v} and {u} disagree on their matched edge")
        edges.add(normalize_edge(v, u))
    return frozenset(edges)


def run_matching_scheme(g: Graph, k: int, **kwargs):
    """Simulate the scheme; returns (Matching, RunResult)."""
    _check_proper(g)
    result = run_local_algorithm(g, MatchingSchemeAlgorithm(k), **kwargs)
    return matching_from_outputs(g, result.outputs), result
