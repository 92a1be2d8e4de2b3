"""Shared fixtures and small helpers for the test suite."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from localgraphs import BLACK, WHITE, build_graph
from localgraphs.graph import Graph


def ascending_ports(n: int, pairs, colours=None, directions=None) -> Graph:
    """Build a graph with each node's ports in ascending neighbour order."""
    nbrs = {v: [] for v in range(n)}
    for u, v in pairs:
        nbrs[u].append(v)
        nbrs[v].append(u)
    port = {}
    for v in range(n):
        for i, u in enumerate(sorted(nbrs[v]), start=1):
            port[(v, u)] = i
    specs = []
    for u, v in pairs:
        direction = None
        if directions is not None:
            direction = directions.get((u, v), "uv" if (u, v) in directions else None)
            if direction is None and (v, u) in directions:
                direction = "vu"
        specs.append((u, v, port[(u, v)], port[(v, u)], direction))
    return build_graph(n, specs, colours)


def path_graph(colour_string: str) -> Graph:
    """Path with one node per character, 'b' black and 'w' white."""
    n = len(colour_string)
    colours = [BLACK if c == "b" else WHITE for c in colour_string]
    return ascending_ports(n, [(i, i + 1) for i in range(n - 1)], colours)


@pytest.fixture
def single_edge() -> Graph:
    return build_graph(2, [(0, 1, 1, 1)], [BLACK, WHITE])


@pytest.fixture
def p3_wbw() -> Graph:
    # white - black - white with the black node's port 1 toward node 0
    return build_graph(3, [(0, 1, 1, 1), (1, 2, 2, 1)], [WHITE, BLACK, WHITE])


@pytest.fixture
def c4_coloured() -> Graph:
    # clockwise port 1, counterclockwise port 2, alternating colours
    return build_graph(4, [(0, 1, 1, 2), (1, 2, 1, 2), (2, 3, 1, 2), (3, 0, 1, 2)],
                       [BLACK, WHITE, BLACK, WHITE])


@pytest.fixture
def p4_coloured() -> Graph:
    # w1 - b1 - w2 - b2 as in the length-3 augmenting path walkthroughs
    return path_graph("wbwb")


@pytest.fixture
def k4_oriented() -> Graph:
    return build_graph(4, [(0, 1, 1, 1, "uv"), (0, 2, 2, 1, "uv"), (0, 3, 3, 1, "uv"),
                           (1, 2, 2, 2, "uv"), (1, 3, 3, 2, "uv"), (2, 3, 3, 3, "uv")])
