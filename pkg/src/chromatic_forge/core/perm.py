"""
Permutations, explicitly listed permutation groups, and graph quotients.

Groups are small (desk scale), so every group is stored as its full,
canonically sorted element list. Closure is computed by breadth-first
multiplication by generators; automorphism groups come from a backtracking
search over an equitable degree partition.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from chromatic_forge.core.errors import (
    GraphValidationError,
    GroupValidationError,
    ParseError,
    ResourceLimitError,
)
from chromatic_forge.core.graph import Graph
from chromatic_forge.utils.logger import get_logger

logger = get_logger("perm")

DEFAULT_AUTOMORPHISM_VERTEX_LIMIT = 16
DEFAULT_AUTOMORPHISM_ORDER_LIMIT = 40320
DEFAULT_SUBGROUP_ORDER_LIMIT = 48

Images = Tuple[int, ...]


def _compose(a: Images, b: Images) -> Images:
    """Images of a∘b (apply b first)."""
    return tuple(a[x] for x in b)


def _invert(a: Images) -> Images:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


# ── Permutation ────────────────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on ``0..n-1`` given by its image array."""

    images: Images

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupValidationError(f"not a bijection on 0..{len(self.images) - 1}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``p * q`` is p∘q: apply q, then p."""
        if self.degree != other.degree:
            raise GroupValidationError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_invert(self.images))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k) % max(self.order(), 1)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Disjoint cycles including fixed points, each starting at its smallest vertex."""
        seen: Set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            v = self.images[start]
            while v != start:
                cyc.append(v)
                seen.add(v)
                v = self.images[v]
            out.append(tuple(cyc))
        return out

    def orbits(self) -> List[Tuple[int, ...]]:
        """Orbits of ⟨p⟩, each sorted, listed by smallest member."""
        return [tuple(sorted(c)) for c in self.cycles()]

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // math.gcd(result, len(c))
        return result

    def to_list(self) -> List[int]:
        return list(self.images)

    def __repr__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        return "Permutation(" + ("".join(str(c) for c in moved) or "()") + f", n={self.degree})"


def rotation(n: int, k: int) -> Permutation:
    """r^k on the cycle labels: v ↦ v + k (mod n)."""
    return Permutation(tuple((v + k) % n for v in range(n)))


def reflection(n: int, k: int) -> Permutation:
    """The reflection v ↦ k - v (mod n); k = 0 is the flip fixing vertex 0."""
    return Permutation(tuple((k - v) % n for v in range(n)))


def is_automorphism(g: Graph, p: Permutation) -> bool:
    """True iff p maps edges onto edges and loops onto loops."""
    if p.degree != g.num_vertices:
        return False
    img = p.images
    for u, v in g.edges:
        a, b = img[u], img[v]
        if (a, b) not in g.edges and (b, a) not in g.edges:
            return False
    return all(img[v] in g.loops for v in g.loops)


# ── Groups ─────────────────────────────────────────────────────────────


def _closure(degree: int, generators: Iterable[Images], seed: Iterable[Images] = ()) -> Set[Images]:
    """Smallest set containing ``seed``, the identity and closed under right multiplication by generators."""
    gens = list(dict.fromkeys(generators))
    elements: Set[Images] = {tuple(range(degree))}
    elements.update(seed)
    frontier = list(elements)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _compose(a, g)
                if c not in elements:
                    elements.add(c)
                    nxt.append(c)
        frontier = nxt
    return elements


def _greedy_generators(degree: int, elements: Set[Images]) -> List[Images]:
    """
    Pick generators from ``elements`` in sorted order until they generate it.

    Raises if a product escapes ``elements``, i.e. the set is not a group.
    """
    gens: List[Images] = []
    generated: Set[Images] = {tuple(range(degree))}
    for e in sorted(elements):
        if e in generated:
            continue
        gens.append(e)
        generated = _closure(degree, gens, generated)
        if not generated <= elements:
            raise GroupValidationError("element list is not closed under composition")
    return gens


@dataclass(frozen=True)
class PermGroup:
    """
    A finite permutation group stored as its full sorted element list.

    Closure, identity membership and uniqueness are verified on construction.
    """

    degree: int
    elements: Tuple[Permutation, ...]
    generators: Tuple[Permutation, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        raw = [p.images for p in self.elements]
        if any(len(r) != self.degree for r in raw):
            raise GroupValidationError(f"every element must have degree {self.degree}")
        element_set = set(raw)
        if len(element_set) != len(raw):
            raise GroupValidationError("duplicate group elements")
        if tuple(range(self.degree)) not in element_set:
            raise GroupValidationError("group does not contain the identity")
        gens = _greedy_generators(self.degree, element_set)
        object.__setattr__(self, "elements", tuple(Permutation(r) for r in sorted(element_set)))
        object.__setattr__(self, "generators", tuple(Permutation(r) for r in gens))

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (Permutation.identity(degree),))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self.element_set

    @property
    def element_set(self) -> FrozenSet[Permutation]:
        return frozenset(self.elements)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.element_set <= other.element_set

    def to_dict(self) -> Dict[str, Any]:
        """Group JSON: degree plus a generating set; readers re-close on load."""
        return {
            "degree": self.degree,
            "order": self.order,
            "generators": [g.to_list() for g in self.generators],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PermGroup":
        try:
            degree = int(data["degree"])
            gens = [Permutation(tuple(int(x) for x in g)) for g in data.get("generators", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed group JSON: {e}") from e
        return close(gens, degree=degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def close(generators: Sequence[Permutation], degree: Optional[int] = None) -> PermGroup:
    """The smallest group containing ``generators``."""
    if not generators and degree is None:
        raise GroupValidationError("close: degree is required when there are no generators")
    n = degree if degree is not None else generators[0].degree
    for g in generators:
        if g.degree != n:
            raise GroupValidationError(f"close: generator of degree {g.degree}, expected {n}")
    elements = _closure(n, (g.images for g in generators))
    logger.debug(f"Closed {len(generators)} generator(s) of degree {n} into {len(elements)} elements")
    return PermGroup(n, tuple(Permutation(e) for e in elements))


def dihedral(n: int) -> PermGroup:
    """D_{2n} on the labels of ``cycle(n)``: r = +1 rotation, f = flip fixing 0."""
    if n < 3:
        raise GroupValidationError(f"dihedral: n must be >= 3, got {n}")
    return close([rotation(n, 1), reflection(n, 0)])


def cyclic(p: Permutation) -> PermGroup:
    """⟨p⟩."""
    return close([p])


# ── Automorphism search ────────────────────────────────────────────────


def _equitable_partition(g: Graph) -> List[int]:
    """
    Cell label per vertex after iterated degree refinement.

    Labels are ranks of signatures, so isomorphic positions always receive
    equal labels regardless of vertex numbering.
    """
    n = g.num_vertices

    def rank(signatures: List[Any]) -> List[int]:
        ranking = {s: i for i, s in enumerate(sorted(set(signatures)))}
        return [ranking[s] for s in signatures]

    labels = rank([(g.degree(v), v in g.loops) for v in range(n)])
    while True:
        cells = max(labels) + 1
        sig = []
        for v in range(n):
            counts = [0] * cells
            for w in g.neighbors(v):
                counts[labels[w]] += 1
            sig.append((labels[v], tuple(counts)))
        refined = rank(sig)
        # each pass refines the last one, so an equal cell count means it is stable
        if max(refined) == max(labels):
            return refined
        labels = refined


def _search_order(g: Graph, labels: List[int]) -> List[int]:
    """Map vertices in an order where each next vertex is adjacent to as many placed ones as possible."""
    cell_size: Dict[int, int] = {}
    for lab in labels:
        cell_size[lab] = cell_size.get(lab, 0) + 1
    remaining = set(range(g.num_vertices))
    order: List[int] = []
    placed: Set[int] = set()
    while remaining:
        v = min(
            remaining,
            key=lambda u: (-len(g.neighbors(u) & placed), cell_size[labels[u]], u),
        )
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    return order


def automorphism_group(
    g: Graph,
    vertex_limit: int = DEFAULT_AUTOMORPHISM_VERTEX_LIMIT,
    order_limit: int = DEFAULT_AUTOMORPHISM_ORDER_LIMIT,
) -> PermGroup:
    """
    The full automorphism group of ``g`` (loops must map to loops).

    Backtracks over the equitable partition, checking adjacency against
    every already-mapped vertex.
    """
    n = g.num_vertices
    if n > vertex_limit:
        raise ResourceLimitError("automorphism_group vertices", n, vertex_limit)
    if n == 0:
        return PermGroup.trivial(0)

    labels = _equitable_partition(g)
    order = _search_order(g, labels)
    candidates = {v: [w for w in range(n) if labels[w] == labels[v]] for v in range(n)}
    mapping: Dict[int, int] = {}
    used: Set[int] = set()
    found: List[Images] = []

    def extend(depth: int) -> None:
        if depth == n:
            found.append(tuple(mapping[v] for v in range(n)))
            if len(found) > order_limit:
                raise ResourceLimitError("automorphism_group order", len(found), order_limit)
            return
        v = order[depth]
        for w in candidates[v]:
            if w in used:
                continue
            if all(g.has_edge(v, u) == g.has_edge(w, mapping[u]) for u in order[:depth]):
                mapping[v] = w
                used.add(w)
                extend(depth + 1)
                used.discard(w)
                del mapping[v]

    extend(0)
    logger.debug(f"Automorphism search on {n} vertices found {len(found)} elements")
    return PermGroup(n, tuple(Permutation(e) for e in found))


# ── Subgroups ──────────────────────────────────────────────────────────


def subgroups(group: PermGroup, order_limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT) -> List[PermGroup]:
    """
    Every subgroup of ``group``, each listed once, sorted by (order, elements).

    Grows the lattice upward from the trivial group by adjoining one element
    at a time and closing.
    """
    if group.order > order_limit:
        raise ResourceLimitError("subgroups group order", group.order, order_limit)
    n = group.degree
    trivial: FrozenSet[Images] = frozenset({tuple(range(n))})
    found: Dict[FrozenSet[Images], List[Images]] = {trivial: []}
    queue = [trivial]
    while queue:
        h = queue.pop()
        gens = found[h]
        for p in group.elements:
            if p.images in h:
                continue
            k = frozenset(_closure(n, gens + [p.images], h))
            if k not in found:
                found[k] = gens + [p.images]
                queue.append(k)
    result = [PermGroup(n, tuple(Permutation(e) for e in elems)) for elems in found]
    result.sort(key=lambda s: (s.order, [p.images for p in s.elements]))
    logger.debug(f"Enumerated {len(result)} subgroups of a group of order {group.order}")
    return result


def cyclic_subgroups(group: PermGroup) -> List[PermGroup]:
    """Every cyclic subgroup ⟨p⟩ of ``group``, each listed once."""
    seen: Dict[FrozenSet[Images], PermGroup] = {}
    for p in group.elements:
        key = frozenset(_closure(group.degree, [p.images]))
        if key not in seen:
            seen[key] = PermGroup(group.degree, tuple(Permutation(e) for e in key))
    return sorted(seen.values(), key=lambda s: (s.order, [p.images for p in s.elements]))


# ── Quotients and lifts ────────────────────────────────────────────────


def quotient(g: Graph, p: Permutation) -> Graph:
    """
    Γ/p: one vertex per orbit of ⟨p⟩, numbered by smallest member.

    Orbits are adjacent when some members are; an orbit containing an edge
    (or a looped vertex) carries a loop.
    """
    if not is_automorphism(g, p):
        raise GroupValidationError(f"{p!r} is not an automorphism of the graph")
    index: Dict[int, int] = {}
    for i, orb in enumerate(p.orbits()):
        for v in orb:
            index[v] = i
    pairs = [(index[u], index[v]) for u, v in g.edges]
    loops = [index[v] for v in g.loops]
    return Graph.from_edges(len(set(index.values())), pairs, loops)


def lift_group_blocks(group: PermGroup, base: Graph, block: int) -> PermGroup:
    """
    Lift ``group`` to ``base`` with a block of ``block`` vertices glued at every vertex.

    Block ``i`` starts at ``k + i * block``; an element sending i to j moves
    block i onto block j preserving the in-block order.
    """
    if base.has_loops:
        raise GraphValidationError("lift_group: base graph carries loops")
    k = base.num_vertices
    if group.degree != k:
        raise GroupValidationError(f"lift_group: group degree {group.degree} != |V(base)| = {k}")
    lifted = []
    for h in group.elements:
        if not is_automorphism(base, h):
            raise GroupValidationError(f"lift_group: {h!r} is not an automorphism of the base")
        images = list(h.images)
        for i in range(k):
            target = h.images[i]
            images.extend(k + target * block + j for j in range(block))
        lifted.append(Permutation(tuple(images)))
    return PermGroup(k + k * block, tuple(lifted))


def lift_group(group: PermGroup, base: Graph, n: int, s: int) -> PermGroup:
    """G^{(n,s)} acting on ``suspend(base, n, s)``."""
    if n < 1 or s < 1:
        raise GraphValidationError(f"lift_group: n and s must be >= 1, got n={n}, s={s}")
    return lift_group_blocks(group, base, n + s - 1)


# ── Dihedral case table ────────────────────────────────────────────────


class DihedralKind(str, Enum):
    """Rotation r^k or reflection v ↦ k - v."""

    ROTATION = "rotation"
    REFLECTION = "reflection"


@dataclass(frozen=True)
class DihedralElement:
    kind: DihedralKind
    k: int


def classify_dihedral_element(n: int, p: Permutation) -> DihedralElement:
    """Identify p as a rotation or reflection of the n-cycle labels."""
    if p.degree != n:
        raise GroupValidationError(f"degree {p.degree} does not match n={n}")
    k = p.images[0]
    if p == rotation(n, k):
        return DihedralElement(DihedralKind.ROTATION, k)
    if p == reflection(n, k):
        return DihedralElement(DihedralKind.REFLECTION, k)
    raise GroupValidationError(f"{p!r} is not a symmetry of the {n}-cycle")


def expected_cycle_quotient(n: int, element: DihedralElement) -> Tuple[int, int]:
    """
    (vertex count, loop count) of cycle(n)/element from the dihedral case table.

    A rotation by k has gcd(k, n) orbits, collapsing to one looped vertex when
    coprime. Reflections give a path: n/2 + 1 loop-free vertices when they fix
    two vertices, n/2 with both ends looped when n is even and they fix none,
    and (n + 1)/2 with one looped end when n is odd.
    """
    if element.kind is DihedralKind.ROTATION:
        d = math.gcd(element.k % n, n)
        return (1, 1) if d == 1 else (d, 0)
    if n % 2 == 0:
        return (n // 2 + 1, 0) if element.k % 2 == 0 else (n // 2, 2)
    return ((n + 1) // 2, 1)


# ── Parsing ────────────────────────────────────────────────────────────

_ELEMENT_RE = re.compile(r"^(rot|flip):(-?\d+)$")


def _images_from_json(data: Any, n: int) -> Permutation:
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ParseError(f"a permutation must be a JSON list of integers, got {data!r}")
    try:
        p = Permutation(tuple(data))
    except GroupValidationError as e:
        raise ParseError(str(e)) from e
    if p.degree != n:
        raise ParseError(f"permutation of degree {p.degree} given for a {n}-vertex graph")
    return p


def parse_element(spec: str, n: int) -> Permutation:
    """``antipodal``, ``rot:k``, ``flip:k`` (cycle labels) or a JSON image list."""
    text = spec.strip()
    if text == "antipodal":
        if n % 2:
            raise ParseError(f"antipodal map needs an even number of vertices, got {n}")
        return rotation(n, n // 2)
    match = _ELEMENT_RE.match(text)
    if match:
        k = int(match.group(2))
        return rotation(n, k) if match.group(1) == "rot" else reflection(n, k)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"not a group element: {spec!r}") from e
    return _images_from_json(data, n)


def parse_group_spec(
    specs: Sequence[str],
    g: Graph,
    vertex_limit: int = DEFAULT_AUTOMORPHISM_VERTEX_LIMIT,
) -> PermGroup:
    """
    The group generated by every spec in ``specs`` (``full`` when empty).

    A spec is ``full``, ``trivial``, an element name accepted by
    ``parse_element``, Group JSON inline or in a file, or a JSON list of
    image lists. Every generator must be an automorphism of ``g``.
    """
    n = g.num_vertices
    gens: List[Permutation] = []
    for spec in specs or ["full"]:
        text = spec.strip()
        if text == "full":
            gens.extend(automorphism_group(g, vertex_limit=vertex_limit).generators)
            continue
        if text == "trivial":
            continue
        if not text.startswith(("{", "[")) and Path(text).is_file():
            text = Path(text).read_text().strip()
        if text.startswith("{"):
            try:
                group = PermGroup.from_dict(json.loads(text))
            except json.JSONDecodeError as e:
                raise ParseError(f"malformed group JSON: {e}") from e
            if group.degree != n:
                raise ParseError(f"group of degree {group.degree} given for a {n}-vertex graph")
            gens.extend(group.generators)
        elif text.startswith("[[") or text == "[]":
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ParseError(f"malformed generator list: {e}") from e
            gens.extend(_images_from_json(item, n) for item in data)
        else:
            gens.append(parse_element(text, n))

    for p in gens:
        if not is_automorphism(g, p):
            raise GroupValidationError(f"{p!r} is not an automorphism of the graph")
    return close(gens, degree=n)
