"""
Shared fixtures and brute-force oracles.

The oracles are deliberately naive: they enumerate colorings, orbits and
Hamiltonian cycles directly so that the library can be checked against an
independent computation on small graphs.
"""

from __future__ import annotations

import os
from itertools import permutations, product
from typing import Callable, List

import networkx as nx
import pytest
from click.testing import CliRunner

from chromatic_forge.core.graph import Graph
from chromatic_forge.core.perm import PermGroup


def count_colorings(g: Graph, k: int) -> int:
    """Proper colorings of ``g`` with ``k`` colors, by enumeration."""
    if g.has_loops:
        return 0
    return sum(
        1
        for colors in product(range(k), repeat=g.num_vertices)
        if all(colors[u] != colors[v] for u, v in g.edges)
    )


def count_orbits(g: Graph, group: PermGroup, k: int) -> int:
    """Orbits of ``group`` on the proper k-colorings of ``g``, by canonical representatives."""
    if g.has_loops:
        return 0
    seen = set()
    for colors in product(range(k), repeat=g.num_vertices):
        if any(colors[u] == colors[v] for u, v in g.edges):
            continue
        # (c∘h)(v) = c(h(v)); the orbit is {c∘h : h in G}
        rep = min(tuple(colors[h(v)] for v in range(g.num_vertices)) for h in group.elements)
        seen.add(rep)
    return len(seen)


def _block_is_outerplanar(nxg: nx.Graph) -> bool:
    nodes = sorted(nxg.nodes())
    if len(nodes) <= 3:
        return True
    first, rest = nodes[0], nodes[1:]
    for perm in permutations(rest):
        order = (first,) + perm
        if perm[0] > perm[-1]:
            continue  # each cycle once per direction
        if not all(nxg.has_edge(order[i], order[(i + 1) % len(order)]) for i in range(len(order))):
            continue
        pos = {v: i for i, v in enumerate(order)}
        chords = []
        for u, v in nxg.edges():
            a, b = sorted((pos[u], pos[v]))
            if b - a not in (1, len(order) - 1):
                chords.append((a, b))
        if not any(a < c < b < d for a, b in chords for c, d in chords):
            return True
    return False


def outerplanar_oracle(g: Graph) -> bool:
    """A graph is outerplanar iff every biconnected block has a Hamiltonian cycle with non-crossing chords."""
    nxg = g.to_networkx()
    return all(
        _block_is_outerplanar(nxg.subgraph(block)) for block in nx.biconnected_components(nxg)
    )


def atlas_graphs(max_vertices: int, connected: bool = True) -> List[Graph]:
    """Every graph of the NetworkX atlas (all graphs up to seven vertices) with 1..max_vertices vertices."""
    out = []
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if n < 1 or n > max_vertices:
            continue
        if connected and not nx.is_connected(nxg):
            continue
        out.append(Graph.from_networkx(nxg))
    return out


# ── Fixtures ───────────────────────────────────────────────────────────


@pytest.fixture
def brute_colorings() -> Callable[[Graph, int], int]:
    return count_colorings


@pytest.fixture
def brute_orbits() -> Callable[[Graph, PermGroup, int], int]:
    return count_orbits


@pytest.fixture
def outerplanar_check() -> Callable[[Graph], bool]:
    return outerplanar_oracle


@pytest.fixture(scope="session")
def small_connected_graphs() -> List[Graph]:
    """Connected graphs on at most five vertices."""
    return atlas_graphs(5)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep tests away from a real ~/.chromatic-forge config and CHROMFORGE_* variables."""
    from chromatic_forge import config

    for name in list(os.environ):
        if name.startswith("CHROMFORGE_"):
            monkeypatch.delenv(name)
    monkeypatch.setattr(config, "DEFAULT_CONFIG_FILE", tmp_path / "absent.yaml")
