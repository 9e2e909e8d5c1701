"""
Root-bound verdicts.

``check_root_bound`` asks whether every real root of the orbital chromatic
polynomial is at most the largest real root of the chromatic polynomial.
``check_reduction_hypothesis`` checks the sufficient condition on block
sums of quotient polynomials over a partition of the group, and confirms
the conclusion it implies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from chromatic_forge.core.errors import ConsistencyError, GraphValidationError, GroupValidationError
from chromatic_forge.core.graph import Graph
from chromatic_forge.core.perm import (
    DihedralKind,
    Permutation,
    PermGroup,
    classify_dihedral_element,
)
from chromatic_forge.core.poly import ChromaticEngine, block_sum, chromatic, orbital_chromatic
from chromatic_forge.core.roots import RootValue, format_root, max_real_root, roots_bounded_by
from chromatic_forge.utils.logger import get_logger

logger = get_logger("forge")

Partition = List[List[Permutation]]


# ── Reports ────────────────────────────────────────────────────────────


@dataclass
class BoundReport:
    """Largest chromatic root, largest orbital root, and whether the first bounds the second."""

    group_order: int
    chrom_max_root: Optional[RootValue]
    op_max_root: Optional[RootValue]
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group_order": self.group_order,
            "chrom_max_root": format_root(self.chrom_max_root),
            "op_max_root": format_root(self.op_max_root),
            "bound_holds": self.holds,
        }


@dataclass
class BlockResult:
    size: int
    vanishes: bool
    max_root: Optional[RootValue] = None
    passes: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "vanishes": self.vanishes,
            "max_root": format_root(self.max_root),
            "passes": self.passes,
        }


@dataclass
class CheckReport:
    """Per-block verdicts; ``conclusion`` is filled in only when every block passes."""

    chrom_max_root: Optional[RootValue]
    blocks: List[BlockResult] = field(default_factory=list)
    conclusion: Optional[BoundReport] = None

    @property
    def all_pass(self) -> bool:
        return all(b.passes for b in self.blocks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "chrom_max_root": format_root(self.chrom_max_root),
            "all_pass": self.all_pass,
            "blocks": [b.to_dict() for b in self.blocks],
            "conclusion": self.conclusion.to_dict() if self.conclusion else None,
        }


# ── Checks ─────────────────────────────────────────────────────────────


def check_root_bound(
    g: Graph, group: PermGroup, engine: Optional[ChromaticEngine] = None
) -> BoundReport:
    """Bound verdict for (g, group), certified by exact root comparison."""
    if g.has_loops:
        raise GraphValidationError("check_root_bound: the chromatic polynomial of a looped graph is zero")
    p = chromatic(g, engine)
    op = orbital_chromatic(g, group, engine)
    chrom_top = max_real_root(p)
    op_top = max_real_root(op)
    holds = roots_bounded_by(op, chrom_top)
    logger.debug(
        f"|G|={group.order}: chromatic max {format_root(chrom_top)}, "
        f"orbital max {format_root(op_top)}, bound {'holds' if holds else 'FAILS'}"
    )
    return BoundReport(group.order, chrom_top, op_top, holds)


def validate_partition(group: PermGroup, partition: Sequence[Sequence[Permutation]]) -> None:
    """Every group element must appear in exactly one block."""
    seen: List[Permutation] = [p for block in partition for p in block]
    if any(p not in group for p in seen):
        raise GroupValidationError("partition contains an element outside the group")
    if len(seen) != len(set(seen)) or set(seen) != group.element_set:
        raise GroupValidationError("partition does not cover the group exactly once")
    if any(not block for block in partition):
        raise GroupValidationError("partition has an empty block")


def check_reduction_hypothesis(
    g: Graph,
    group: PermGroup,
    partition: Sequence[Sequence[Permutation]],
    engine: Optional[ChromaticEngine] = None,
) -> CheckReport:
    """
    Check each nonzero block sum against the largest chromatic root of ``g``.

    When every block passes, the orbital polynomial must satisfy the bound
    too; a contrary verdict raises ConsistencyError.
    """
    if g.has_loops:
        raise GraphValidationError("check_reduction_hypothesis: base graph carries loops")
    validate_partition(group, partition)
    chrom_top = max_real_root(chromatic(g, engine))
    report = CheckReport(chrom_max_root=chrom_top)
    for block in partition:
        total = block_sum(g, list(block), engine)
        if total.is_zero():
            report.blocks.append(BlockResult(size=len(block), vanishes=True))
            continue
        report.blocks.append(
            BlockResult(
                size=len(block),
                vanishes=False,
                max_root=max_real_root(total),
                passes=roots_bounded_by(total, chrom_top),
            )
        )

    if report.all_pass:
        conclusion = check_root_bound(g, group, engine)
        if not conclusion.holds:
            logger.error("Every block sum is bounded but the orbital polynomial is not")
            raise ConsistencyError("block sums are bounded yet the orbital polynomial exceeds the bound")
        report.conclusion = conclusion
    return report


# ── Partitions ─────────────────────────────────────────────────────────


def singleton_partition(group: PermGroup) -> Partition:
    """One block per element."""
    return [[p] for p in group.elements]


def cyclic_pair_partition(group: PermGroup, generator: Optional[Permutation] = None) -> Partition:
    """
    Blocks {g^{2k}, g^{2k+1}} for a cyclic group ⟨g⟩ of even order.

    Without an explicit ``generator`` the first element of full order is used.
    """
    m = group.order
    if m % 2:
        raise GroupValidationError(f"cyclic_pair_partition needs even order, got {m}")
    if generator is None:
        generator = next((p for p in group.elements if p.order() == m), None)
        if generator is None:
            raise GroupValidationError("group is not cyclic")
    elif generator not in group or generator.order() != m:
        raise GroupValidationError(f"{generator!r} does not generate the group")
    return [[generator ** (2 * k), generator ** (2 * k + 1)] for k in range(m // 2)]


def reflection_partition(group: PermGroup) -> Partition:
    """Rotations of the cycle as one block, each reflection alone."""
    rotations: List[Permutation] = []
    reflections: Partition = []
    for p in group.elements:
        if classify_dihedral_element(group.degree, p).kind is DihedralKind.ROTATION:
            rotations.append(p)
        else:
            reflections.append([p])
    return [rotations] + reflections
