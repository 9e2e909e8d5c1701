"""
Outerplanar corpus verification.

Enumerates connected outerplanar graphs up to isomorphism and, for each
one, checks the exact chromatic root set ({0,1,2} with an odd cycle, {0,1}
when bipartite with an edge) and the root-bound verdict for every subgroup
of its automorphism group, plus the observation that every quotient is
outerplanar or looped.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from chromatic_forge.core.errors import ConsistencyError, GraphValidationError, ResourceLimitError
from chromatic_forge.core.graph import Graph, is_bipartite, is_outerplanar
from chromatic_forge.core.perm import (
    DEFAULT_AUTOMORPHISM_VERTEX_LIMIT,
    DEFAULT_SUBGROUP_ORDER_LIMIT,
    PermGroup,
    automorphism_group,
    cyclic_subgroups,
    quotient,
    subgroups,
)
from chromatic_forge.core.poly import ChromaticEngine, chromatic
from chromatic_forge.core.roots import RootReport, isolate_real_roots
from chromatic_forge.forge.bounds import check_root_bound
from chromatic_forge.utils.logger import get_logger

logger = get_logger("verify")

DEFAULT_CORPUS_VERTEX_LIMIT = 9


# ── Enumeration ────────────────────────────────────────────────────────


def _sort_key(g: Graph) -> Tuple[int, Tuple[int, ...], List[Tuple[int, int]]]:
    return (g.num_edges, tuple(sorted(g.degree_sequence())), g.sorted_edges())


def _next_level(level: List[Graph]) -> List[Graph]:
    """Every connected outerplanar extension by one vertex, one per isomorphism class."""
    buckets: Dict[str, List[nx.Graph]] = {}
    found: List[Graph] = []
    for parent in level:
        k = parent.num_vertices
        for size in range(1, k + 1):
            for attach in combinations(range(k), size):
                child = Graph.from_edges(k + 1, list(parent.edges) + [(v, k) for v in attach])
                if child.num_edges > 2 * child.num_vertices - 3 or not is_outerplanar(child):
                    continue
                nxg = child.to_networkx()
                key = nx.weisfeiler_lehman_graph_hash(nxg)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(nxg, other) for other in bucket):
                    continue
                bucket.append(nxg)
                found.append(child)
    found.sort(key=_sort_key)
    return found


def enumerate_outerplanar(
    max_vertices: int, vertex_limit: int = DEFAULT_CORPUS_VERTEX_LIMIT
) -> Iterator[Graph]:
    """
    Connected outerplanar graphs on 1..max_vertices vertices, up to isomorphism.

    Each level grows the previous one by a vertex joined to a nonempty subset;
    deleting a non-cut vertex keeps a graph connected and outerplanar, so
    nothing is missed. Order is deterministic: by vertex count, then edges,
    degree sequence and edge list.
    """
    if max_vertices > vertex_limit:
        raise ResourceLimitError("outerplanar corpus vertices", max_vertices, vertex_limit)
    if max_vertices < 1:
        return
    level = [Graph(1, frozenset(), frozenset())]
    yield from level
    for n in range(2, max_vertices + 1):
        level = _next_level(level)
        logger.info(f"Corpus level {n}: {len(level)} graphs")
        yield from level


# ── Per-graph verification ─────────────────────────────────────────────


@dataclass
class SubgroupVerdict:
    order: int
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"order": self.order, "bound_holds": self.holds}


@dataclass
class OuterplanarReport:
    """Root set and bound verdicts for one outerplanar graph."""

    graph_id: int
    graph: Graph
    has_odd_cycle: bool
    chrom_roots: RootReport
    automorphism_order: int
    subgroup_results: List[SubgroupVerdict] = field(default_factory=list)
    subgroups_complete: bool = True
    quotients_closed: bool = True
    discrepancies: List[str] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.subgroup_results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph_id": self.graph_id,
            "graph": self.graph.to_dict(),
            "has_odd_cycle": self.has_odd_cycle,
            "chrom_roots": self.chrom_roots.to_dict(),
            "automorphism_order": self.automorphism_order,
            "subgroups_complete": self.subgroups_complete,
            "subgroup_results": [v.to_dict() for v in self.subgroup_results],
            "quotients_closed": self.quotients_closed,
            "discrepancies": list(self.discrepancies),
        }


def expected_root_set(g: Graph) -> Set[Fraction]:
    """The exact chromatic root set of an outerplanar graph."""
    if g.num_vertices == 0:
        return set()
    if g.num_edges == 0:
        return {Fraction(0)}
    if is_bipartite(g):
        return {Fraction(0), Fraction(1)}
    return {Fraction(0), Fraction(1), Fraction(2)}


def check_quotient_closure(g: Graph, group: PermGroup) -> bool:
    """Every quotient of ``g`` by an element of ``group`` is looped or outerplanar."""
    for h in group.elements:
        reduced = quotient(g, h)
        if not reduced.has_loops and not is_outerplanar(reduced):
            logger.debug(f"Quotient by {h!r} is neither looped nor outerplanar")
            return False
    return True


def groups_to_check(aut: PermGroup, subgroup_limit: int) -> Tuple[List[PermGroup], bool]:
    """All subgroups when the group is small enough, else cyclic subgroups plus the whole group."""
    if aut.order <= subgroup_limit:
        return subgroups(aut, order_limit=subgroup_limit), True
    logger.warning(
        f"Automorphism group of order {aut.order} exceeds {subgroup_limit}; "
        f"checking cyclic subgroups and the full group only"
    )
    groups = cyclic_subgroups(aut)
    if all(s.element_set != aut.element_set for s in groups):
        groups.append(aut)
    return groups, False


def verify_outerplanar_graph(
    g: Graph,
    graph_id: int = 0,
    vertex_limit: int = DEFAULT_AUTOMORPHISM_VERTEX_LIMIT,
    subgroup_limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT,
    strict: bool = True,
    engine: Optional[ChromaticEngine] = None,
) -> OuterplanarReport:
    """
    Verify the root set and every subgroup's bound verdict for one outerplanar graph.

    With ``strict`` a discrepancy raises ConsistencyError; otherwise it is
    recorded on the report. A false verdict only counts as a discrepancy
    when the graph has an odd cycle.
    """
    if g.has_loops or not is_outerplanar(g):
        raise GraphValidationError("verify_outerplanar_graph: input graph is not outerplanar")

    odd = not is_bipartite(g)
    roots = isolate_real_roots(chromatic(g, engine)) if g.num_vertices else RootReport()
    aut = automorphism_group(g, vertex_limit=vertex_limit)
    report = OuterplanarReport(
        graph_id=graph_id,
        graph=g,
        has_odd_cycle=odd,
        chrom_roots=roots,
        automorphism_order=aut.order,
    )

    expected = expected_root_set(g)
    if roots.intervals or set(roots.exact_rational_roots) != expected:
        report.discrepancies.append(
            f"chromatic roots {roots.to_dict()} differ from expected {sorted(str(r) for r in expected)}"
        )

    groups, report.subgroups_complete = groups_to_check(aut, subgroup_limit)
    for sub in groups:
        verdict = check_root_bound(g, sub, engine)
        report.subgroup_results.append(SubgroupVerdict(sub.order, verdict.holds))
        if odd and not verdict.holds:
            report.discrepancies.append(f"bound fails for a subgroup of order {sub.order}")

    report.quotients_closed = check_quotient_closure(g, aut)
    if not report.quotients_closed:
        report.discrepancies.append("a quotient is neither looped nor outerplanar")

    if report.discrepancies:
        for line in report.discrepancies:
            logger.error(f"Graph {graph_id}: {line}", extra={"graph_id": graph_id, "stage": "verify"})
        if strict:
            raise ConsistencyError(f"graph {graph_id}: {report.discrepancies[0]}")
    return report


# ── Corpus ─────────────────────────────────────────────────────────────


@dataclass
class CorpusSummary:
    """Running totals over a corpus run."""

    max_vertices: int
    graphs: int = 0
    odd_cycle_graphs: int = 0
    subgroups: int = 0
    verdicts_true: int = 0
    verdicts_false: int = 0
    incomplete_subgroup_lists: int = 0
    discrepancies: int = 0

    def add(self, report: OuterplanarReport) -> None:
        self.graphs += 1
        self.odd_cycle_graphs += int(report.has_odd_cycle)
        self.subgroups += len(report.subgroup_results)
        self.verdicts_true += sum(1 for v in report.subgroup_results if v.holds)
        self.verdicts_false += sum(1 for v in report.subgroup_results if not v.holds)
        self.incomplete_subgroup_lists += int(not report.subgroups_complete)
        self.discrepancies += len(report.discrepancies)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "summary": True,
            "max_vertices": self.max_vertices,
            "graphs": self.graphs,
            "odd_cycle_graphs": self.odd_cycle_graphs,
            "subgroups": self.subgroups,
            "verdicts_true": self.verdicts_true,
            "verdicts_false": self.verdicts_false,
            "incomplete_subgroup_lists": self.incomplete_subgroup_lists,
            "discrepancies": self.discrepancies,
        }


def _verify_job(job: Tuple[int, Graph, int, int]) -> OuterplanarReport:
    graph_id, g, vertex_limit, subgroup_limit = job
    return verify_outerplanar_graph(
        g,
        graph_id=graph_id,
        vertex_limit=vertex_limit,
        subgroup_limit=subgroup_limit,
        strict=False,
    )


def verify_corpus(
    max_vertices: int,
    workers: int = 1,
    sample: Optional[int] = None,
    seed: int = 0,
    corpus_limit: int = DEFAULT_CORPUS_VERTEX_LIMIT,
    vertex_limit: int = DEFAULT_AUTOMORPHISM_VERTEX_LIMIT,
    subgroup_limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT,
) -> Iterator[OuterplanarReport]:
    """
    Stream one report per corpus graph, in corpus order.

    ``sample`` picks that many graph ids with ``random.Random(seed)`` and
    keeps them in corpus order; the seed never changes any verdict.
    """
    corpus = list(enumerate(enumerate_outerplanar(max_vertices, vertex_limit=corpus_limit)))
    if sample is not None and sample < len(corpus):
        picked = sorted(random.Random(seed).sample(range(len(corpus)), sample))
        corpus = [corpus[i] for i in picked]
    jobs = [(gid, g, vertex_limit, subgroup_limit) for gid, g in corpus]
    logger.info(f"Verifying {len(jobs)} outerplanar graphs with {workers} worker(s)")

    if workers <= 1:
        for job in jobs:
            yield _verify_job(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_verify_job, jobs, chunksize=8)
