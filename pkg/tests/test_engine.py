"""Engine: barrier semantics, locality, determinism, virtual attachments."""

from __future__ import annotations

import json

import pytest

from localgraphs import (LocalAlgorithm, build_graph, disjoint_union,
                         local_views_equivalent, relabel, run_local_algorithm)
from localgraphs.baselines import NeighbourhoodProbe
from localgraphs.errors import MissingInputError
from localgraphs.starforest import StarForestAlgorithm

from conftest import path_graph


class ColourEcho(LocalAlgorithm):
    """Zero rounds; every node outputs its own colour."""

    name = "colour-echo"
    needs_colour = True

    def round_budget(self, max_degree):
        return 0

    def init(self, view):
        return view.colour, {}

    def step(self, state, inbox):
        return state, {}

    def finalize(self, state):
        return state


class CountEcho(LocalAlgorithm):
    """One round; send a byte everywhere, output how many were received."""

    name = "count-echo"

    def round_budget(self, max_degree):
        return 1

    def init(self, view):
        return 0, {p: b"x" for p in range(1, view.degree + 1)}

    def step(self, state, inbox):
        return len(inbox), {}

    def finalize(self, state):
        return state


class VirtualDegree(LocalAlgorithm):
    """One virtual attachment per node; outputs replies heard in one round."""

    name = "virtual-degree"

    def round_budget(self, max_degree):
        return 2

    def virtual_ports(self, view):
        return 0 if view.degree == 1 and view.colour is None else 1

    def init(self, view):
        return {"deg": view.degree, "heard": 0}, \
            {p: b"?" for p in range(1, view.degree + 1)}

    def step(self, state, inbox):
        state = dict(state)
        replies = {p: b"!" for p, m in inbox.items() if m == b"?"}
        state["heard"] += sum(1 for m in inbox.values() if m == b"!")
        return state, replies

    def finalize(self, state):
        return state["heard"]


def test_colour_echo(single_edge):
    result = run_local_algorithm(single_edge, ColourEcho())
    assert result.outputs == {0: "black", 1: "white"}
    assert result.rounds_used == 0


def test_echo_handshake(single_edge):
    result = run_local_algorithm(single_edge, CountEcho())
    assert result.outputs == {0: 1, 1: 1}
    assert result.rounds_used == 1
    assert result.max_message_bits == 8


def test_missing_colour_raises(single_edge):
    from localgraphs.graph import with_colours
    with pytest.raises(MissingInputError):
        run_local_algorithm(with_colours(single_edge, None), ColourEcho())


def test_star_forest_output_on_p3(p3_wbw):
    # hand-executed case 3: the black centre ends up the root
    result = run_local_algorithm(p3_wbw, StarForestAlgorithm())
    assert result.outputs[1] == {"parent_port": None, "matched_port": 1}
    assert result.outputs[0]["parent_port"] == 1
    assert result.outputs[2]["parent_port"] == 1
    assert result.rounds_used == 5


def test_determinism(c4_coloured):
    a = run_local_algorithm(c4_coloured, StarForestAlgorithm())
    b = run_local_algorithm(c4_coloured, StarForestAlgorithm())
    assert a.outputs == b.outputs and a.max_message_bits == b.max_message_bits


def test_evaluation_order_independence(c4_coloured):
    base = run_local_algorithm(c4_coloured, StarForestAlgorithm())
    for order in ([3, 2, 1, 0], [2, 0, 3, 1]):
        permuted = run_local_algorithm(c4_coloured, StarForestAlgorithm(),
                                       node_order=order)
        assert permuted.outputs == base.outputs


def test_virtual_ports_simulated_inside_host(p3_wbw):
    result = run_local_algorithm(p3_wbw, VirtualDegree())
    # every node hears one reply per real neighbour plus one per dummy
    assert result.outputs == {0: 2, 1: 3, 2: 2}


def test_payload_must_be_bytes(single_edge):
    class Bad(CountEcho):
        def init(self, view):
            return 0, {1: "not-bytes"}

    with pytest.raises(TypeError):
        run_local_algorithm(single_edge, Bad())


def test_trace_lines(single_edge):
    lines = []
    run_local_algorithm(single_edge, CountEcho(), trace=lines.append)
    docs = [json.loads(line) for line in lines]
    assert {(d["round"], d["node"]) for d in docs} == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert docs[0]["sent"] == [[1, b"x".hex()]] or docs[0]["sent"] == [[1, "78"]]


class TestViewEquivalence:
    def test_identity(self, p3_wbw):
        assert local_views_equivalent(p3_wbw, 0, p3_wbw, 0, 4)

    def test_disjoint_union_copies(self, p3_wbw):
        doubled = disjoint_union(p3_wbw, p3_wbw)
        for v in p3_wbw.nodes:
            assert local_views_equivalent(p3_wbw, v, doubled, v + p3_wbw.n, 5)

    def test_endpoint_vs_midpoint(self):
        p3 = path_graph("wbw")
        assert not local_views_equivalent(p3, 0, p3, 1, 1)
        # radius 0 only sees degree and colour: both endpoints agree
        assert local_views_equivalent(p3, 0, p3, 2, 0)
        # at radius 1 the centre's differing ports tell them apart
        assert not local_views_equivalent(p3, 0, p3, 2, 1)

    def test_rotation_symmetric_cycle(self, c4_coloured):
        # rotating by two preserves ports and colours
        assert local_views_equivalent(c4_coloured, 0, c4_coloured, 2, 4)
        assert local_views_equivalent(c4_coloured, 1, c4_coloured, 3, 4)
        assert not local_views_equivalent(c4_coloured, 0, c4_coloured, 1, 0)

    def test_colours_respected(self):
        assert not local_views_equivalent(path_graph("wb"), 0, path_graph("wb"), 1, 0)

    def test_ports_respected(self):
        # same path, the centre's ports swapped
        a = build_graph(3, [(0, 1, 1, 1), (1, 2, 2, 1)], ["white", "black", "white"])
        b = build_graph(3, [(0, 1, 1, 2), (1, 2, 1, 1)], ["white", "black", "white"])
        assert local_views_equivalent(a, 1, b, 1, 0)
        assert not local_views_equivalent(a, 0, b, 0, 1)

    def test_orientation_respected(self):
        fwd = build_graph(2, [(0, 1, 1, 1, "uv")])
        rev = build_graph(2, [(0, 1, 1, 1, "vu")])
        assert not local_views_equivalent(fwd, 0, rev, 0, 0)
        assert local_views_equivalent(fwd, 0, rev, 1, 3)


def test_locality_of_probe_on_union(c4_coloured):
    doubled = disjoint_union(c4_coloured, c4_coloured)
    probe = NeighbourhoodProbe(rounds=3)
    single_run = run_local_algorithm(c4_coloured, probe)
    double_run = run_local_algorithm(doubled, probe)
    for v in c4_coloured.nodes:
        assert local_views_equivalent(c4_coloured, v, doubled, v + 4, 3)
        assert single_run.outputs[v] == double_run.outputs[v + 4]


def test_relabelling_invariance(c4_coloured):
    perm = [2, 0, 3, 1]
    relabelled = relabel(c4_coloured, perm)
    base = run_local_algorithm(c4_coloured, StarForestAlgorithm())
    moved = run_local_algorithm(relabelled, StarForestAlgorithm())
    for v in c4_coloured.nodes:
        assert moved.outputs[perm[v]] == base.outputs[v]
