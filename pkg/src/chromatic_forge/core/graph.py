"""
Finite undirected graphs with optional loops.

Vertices are dense integer indices ``0..n-1``. Graph values are immutable;
every construction returns a new ``Graph``. NetworkX is used for the
structural tests (connectivity, planarity) on an exported copy.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from chromatic_forge.core.errors import GraphValidationError, ParseError
from chromatic_forge.utils.logger import get_logger

logger = get_logger("graph")

VertexPair = Tuple[int, int]


def normalize_pair(u: int, v: int) -> VertexPair:
    """Return the unordered pair ``{u, v}`` in (min, max) order."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph, possibly carrying self-loops.

    Loops only arise from quotient constructions. A graph with a loop has
    no proper colorings, so its chromatic polynomial is zero.
    """

    num_vertices: int
    edges: FrozenSet[VertexPair] = field(default_factory=frozenset)
    loops: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.num_vertices < 0:
            raise GraphValidationError(f"num_vertices must be >= 0, got {self.num_vertices}")
        for u, v in self.edges:
            if not (0 <= u < v < self.num_vertices):
                raise GraphValidationError(
                    f"edge ({u}, {v}) is not a normalized pair of vertices below {self.num_vertices}"
                )
        for v in self.loops:
            if not 0 <= v < self.num_vertices:
                raise GraphValidationError(f"loop vertex {v} out of range")

    # ── Construction helpers ──────────────────────────────────────────

    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[Sequence[int]] = (),
        loops: Iterable[int] = (),
    ) -> "Graph":
        """
        Build a graph from raw vertex pairs.

        Pairs are normalized and parallel edges collapsed; a pair ``(v, v)``
        becomes a loop on ``v``.
        """
        edge_set = set()
        loop_set = set(loops)
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if u == v:
                loop_set.add(u)
            else:
                edge_set.add(normalize_pair(u, v))
        return cls(num_vertices, frozenset(edge_set), frozenset(loop_set))

    # ── Basic queries ─────────────────────────────────────────────────

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def has_loops(self) -> bool:
        return bool(self.loops)

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        """Neighbor sets indexed by vertex; loops are not included."""
        adj: List[set] = [set() for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degree_sequence(self) -> Tuple[int, ...]:
        """Degrees sorted in descending order."""
        return tuple(sorted((len(a) for a in self.adjacency), reverse=True))

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and normalize_pair(u, v) in self.edges

    def sorted_edges(self) -> List[VertexPair]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        """True for a connected graph; the empty graph counts as connected."""
        if self.num_vertices == 0:
            return True
        return nx.is_connected(self.to_networkx())

    # ── Conversions ───────────────────────────────────────────────────

    def to_networkx(self) -> nx.Graph:
        """Export to a NetworkX graph (loops become self-loop edges)."""
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.num_vertices))
        nxg.add_edges_from(self.edges)
        nxg.add_edges_from((v, v) for v in self.loops)
        return nxg

    @classmethod
    def from_networkx(cls, nxg: nx.Graph) -> "Graph":
        """Import a NetworkX graph, relabeling its nodes densely in sorted order."""
        order = {node: i for i, node in enumerate(sorted(nxg.nodes()))}
        return cls.from_edges(len(order), ((order[u], order[v]) for u, v in nxg.edges()))

    def to_dict(self) -> Dict[str, Any]:
        """Graph JSON: ``{"n": int, "edges": [[u, v], ...], "loops": [v, ...]}``."""
        return {
            "n": self.num_vertices,
            "edges": [list(e) for e in self.sorted_edges()],
            "loops": sorted(self.loops),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Graph":
        try:
            n = int(data["n"])
            edges = [(int(e[0]), int(e[1])) for e in data.get("edges", [])]
            loops = [int(v) for v in data.get("loops", [])]
        except (KeyError, TypeError, IndexError, ValueError) as e:
            raise ParseError(f"malformed Graph JSON: {e}") from e
        try:
            return cls.from_edges(n, edges, loops)
        except GraphValidationError as e:
            raise ParseError(str(e)) from e

    def __repr__(self) -> str:
        loops = f", loops={sorted(self.loops)}" if self.loops else ""
        return f"Graph(n={self.num_vertices}, edges={self.sorted_edges()}{loops})"


# ── Named families ─────────────────────────────────────────────────────


def _require_loop_free(g: Graph, op: str) -> None:
    if g.has_loops:
        raise GraphValidationError(f"{op}: input graph carries loops at {sorted(g.loops)}")


def complete(n: int) -> Graph:
    """The complete graph K_n."""
    if n < 1:
        raise GraphValidationError(f"complete: n must be >= 1, got {n}")
    return Graph(n, frozenset(combinations(range(n), 2)))


def empty(s: int) -> Graph:
    """The edgeless graph N_s on s vertices."""
    if s < 1:
        raise GraphValidationError(f"empty: s must be >= 1, got {s}")
    return Graph(s)


def path(n: int) -> Graph:
    """The path on vertices 0..n-1 in order."""
    if n < 1:
        raise GraphValidationError(f"path: n must be >= 1, got {n}")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    """The cycle on vertices 0..n-1 in cyclic order."""
    if n < 3:
        raise GraphValidationError(f"cycle: n must be >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Place g2 after g1, offsetting its vertices by |V(g1)|."""
    k = g1.num_vertices
    edges = set(g1.edges) | {(u + k, v + k) for u, v in g2.edges}
    loops = set(g1.loops) | {v + k for v in g2.loops}
    return Graph(k + g2.num_vertices, frozenset(edges), frozenset(loops))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union of g1 and g2 plus every edge between the two parts."""
    _require_loop_free(g1, "join")
    _require_loop_free(g2, "join")
    union = disjoint_union(g1, g2)
    k = g1.num_vertices
    cross = {(u, k + v) for u in range(k) for v in range(g2.num_vertices)}
    return Graph(union.num_vertices, union.edges | frozenset(cross))


def hns(n: int, s: int) -> Graph:
    """H_{n,s}: the join of K_n and N_s. Clique vertices come first."""
    return join(complete(n), empty(s))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabeled densely in ascending order."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    loops = [index[v] for v in g.loops if v in index]
    return Graph.from_edges(len(keep), edges, loops)


def add_ear(g: Graph, u: int, v: int, n: int) -> Graph:
    """Add a u–v path through ``n`` fresh interior vertices."""
    if u == v:
        raise GraphValidationError("add_ear: endpoints must differ")
    if not g.has_edge(u, v):
        raise GraphValidationError(f"add_ear: vertices {u} and {v} are not adjacent")
    if n < 1:
        raise GraphValidationError(f"add_ear: n must be >= 1, got {n}")
    k = g.num_vertices
    chain = [u] + list(range(k, k + n)) + [v]
    new_edges = zip(chain, chain[1:])
    return Graph.from_edges(k + n, list(g.edges) + list(new_edges), g.loops)


def attach_at_every_vertex(base: Graph, gadget: Graph, anchor: int) -> Graph:
    """
    Glue one copy of ``gadget`` onto every vertex of ``base``.

    Copy ``i`` identifies ``anchor`` with base vertex ``i``; its remaining
    vertices occupy the block starting at ``k + i * (|V(gadget)| - 1)`` in
    the gadget's own index order.
    """
    _require_loop_free(base, "attach")
    _require_loop_free(gadget, "attach")
    if not 0 <= anchor < gadget.num_vertices:
        raise GraphValidationError(f"anchor {anchor} is not a vertex of the gadget")
    k = base.num_vertices
    block = gadget.num_vertices - 1
    others = [w for w in range(gadget.num_vertices) if w != anchor]
    edges = list(base.edges)
    for i in range(k):
        label = {anchor: i}
        label.update({w: k + i * block + j for j, w in enumerate(others)})
        edges.extend((label[a], label[b]) for a, b in gadget.edges)
    return Graph.from_edges(k + k * block, edges)


def suspend(g: Graph, n: int, s: int) -> Graph:
    """
    Build Γ^{(n,s)}: one copy of H_{n,s} per vertex of ``g``.

    The distinguished vertex of every copy is its first clique vertex, so
    copy ``i`` lists the other n-1 clique vertices and then the s
    independent vertices.
    """
    _require_loop_free(g, "suspend")
    if n < 1 or s < 1:
        raise GraphValidationError(f"suspend: n and s must be >= 1, got n={n}, s={s}")
    return attach_at_every_vertex(g, hns(n, s), anchor=0)


# ── Structural recognition ─────────────────────────────────────────────


@dataclass(frozen=True)
class BipartiteResult:
    """Bipartiteness verdict with an odd-cycle witness when it fails."""

    is_bipartite: bool
    odd_cycle: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.is_bipartite


def _canonical_cycle(cyc: List[int]) -> Tuple[int, ...]:
    """Rotate to start at the smallest vertex, oriented toward the smaller neighbor."""
    i = cyc.index(min(cyc))
    rot = cyc[i:] + cyc[:i]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def is_bipartite(g: Graph) -> BipartiteResult:
    """Two-color ``g`` by BFS; on a conflict, return an odd cycle through the BFS tree."""
    if g.loops:
        return BipartiteResult(False, (min(g.loops),))

    color: Dict[int, int] = {}
    parent: Dict[int, Optional[int]] = {}
    depth: Dict[int, int] = {}
    for root in range(g.num_vertices):
        if root in color:
            continue
        color[root], parent[root], depth[root] = 0, None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.neighbors(u)):
                if w not in color:
                    color[w], parent[w], depth[w] = 1 - color[u], u, depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return BipartiteResult(False, _odd_cycle(u, w, parent, depth))
    return BipartiteResult(True)


def _odd_cycle(
    u: int, w: int, parent: Dict[int, Optional[int]], depth: Dict[int, int]
) -> Tuple[int, ...]:
    side_u, side_w = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]  # type: ignore[assignment]
        side_u.append(a)
    while depth[b] > depth[a]:
        b = parent[b]  # type: ignore[assignment]
        side_w.append(b)
    while a != b:
        a, b = parent[a], parent[b]  # type: ignore[assignment]
        side_u.append(a)
        side_w.append(b)
    # side_u ends at the common ancestor; side_w repeats it
    return _canonical_cycle(side_u + side_w[-2::-1])


def is_outerplanar(g: Graph) -> bool:
    """A graph is outerplanar iff adding one apex vertex adjacent to everything keeps it planar."""
    _require_loop_free(g, "is_outerplanar")
    nxg = g.to_networkx()
    apex = g.num_vertices
    nxg.add_edges_from((apex, v) for v in range(g.num_vertices))
    planar, _ = nx.check_planarity(nxg)
    return bool(planar)


# ── Parsing ────────────────────────────────────────────────────────────

_FAMILY_RE = re.compile(r"^(cycle|path|complete|empty|hns):(\d+)(?:,(\d+))?$")


def parse_family(spec: str) -> Graph:
    """Parse family shorthand: ``cycle:6``, ``path:5``, ``complete:4``, ``empty:3``, ``hns:2,3``."""
    match = _FAMILY_RE.match(spec.strip())
    if not match:
        raise ParseError(f"not a graph family shorthand: {spec!r}")
    name, first, second = match.group(1), int(match.group(2)), match.group(3)
    try:
        if name == "hns":
            if second is None:
                raise ParseError("hns shorthand needs two parameters, e.g. hns:2,3")
            return hns(first, int(second))
        if second is not None:
            raise ParseError(f"{name} shorthand takes one parameter")
        builder = {"cycle": cycle, "path": path, "complete": complete, "empty": empty}[name]
        return builder(first)
    except GraphValidationError as e:
        raise ParseError(str(e)) from e


def parse_graph_spec(spec: str) -> Graph:
    """Resolve family shorthand, a path to a Graph JSON file, or inline Graph JSON."""
    text = spec.strip()
    if _FAMILY_RE.match(text):
        return parse_family(text)
    candidate = Path(text)
    if not text.startswith("{") and candidate.is_file():
        text = candidate.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"input is neither family shorthand nor Graph JSON: {spec!r}") from e
    if not isinstance(data, dict):
        raise ParseError("Graph JSON must be an object")
    return Graph.from_dict(data)
