"""Path and cycle sweep: bound verdicts, reduction certificates and the quotient case table."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from chromatic_forge.core.graph import Graph, cycle, path
from chromatic_forge.core.perm import (
    DihedralKind,
    PermGroup,
    automorphism_group,
    classify_dihedral_element,
    expected_cycle_quotient,
    quotient,
    subgroups,
)
from chromatic_forge.core.poly import ChromaticEngine
from chromatic_forge.forge.bounds import (
    Partition,
    check_root_bound,
    check_reduction_hypothesis,
    cyclic_pair_partition,
    reflection_partition,
    singleton_partition,
)
from chromatic_forge.utils.logger import get_logger

logger = get_logger("verify")


@dataclass
class FamilyReport:
    family: str
    n: int
    automorphism_order: int
    subgroup_verdicts: List[Tuple[int, bool]] = field(default_factory=list)
    reduction_passes: bool = True
    case_table_mismatches: List[str] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(holds for _, holds in self.subgroup_verdicts)

    @property
    def case_table_agrees(self) -> bool:
        return not self.case_table_mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "n": self.n,
            "automorphism_order": self.automorphism_order,
            "subgroup_verdicts": [{"order": o, "bound_holds": h} for o, h in self.subgroup_verdicts],
            "reduction_passes": self.reduction_passes,
            "case_table_agrees": self.case_table_agrees,
            "case_table_mismatches": list(self.case_table_mismatches),
        }


def expected_path_quotient(n: int) -> Tuple[int, int]:
    """
    (vertex count, loop count) of path(n) under its reversal.

    Even n folds onto n/2 vertices with a loop at the middle pair; odd n
    keeps the middle vertex, giving (n + 1)/2 vertices and no loop.
    """
    if n % 2 == 0:
        return n // 2, 1
    return (n + 1) // 2, 0


def _shape(g: Graph) -> Tuple[int, int]:
    return g.num_vertices, len(g.loops)


def cycle_partition(n: int, group: PermGroup) -> Partition:
    """The partition under which the reduction check succeeds for a subgroup of D_2n."""
    if n % 2 or group.order == 1:
        return singleton_partition(group)
    kinds = [classify_dihedral_element(n, p) for p in group.elements]
    if any(k.kind is DihedralKind.REFLECTION for k in kinds):
        return reflection_partition(group)
    step = n // group.order
    if step % 2 == 0:
        return singleton_partition(group)
    return cyclic_pair_partition(group)


def _sweep(
    family: str, g: Graph, partition_for, engine: Optional[ChromaticEngine]
) -> FamilyReport:
    aut = automorphism_group(g)
    report = FamilyReport(family=family, n=g.num_vertices, automorphism_order=aut.order)
    for sub in subgroups(aut):
        report.subgroup_verdicts.append((sub.order, check_root_bound(g, sub, engine).holds))
        check = check_reduction_hypothesis(g, sub, partition_for(sub), engine)
        report.reduction_passes = report.reduction_passes and check.all_pass
    return report


def verify_paths_and_cycles(
    max_n: int, engine: Optional[ChromaticEngine] = None
) -> List[FamilyReport]:
    """Paths P_1..P_max_n and cycles C_3..C_max_n over every subgroup of their automorphism groups."""
    reports: List[FamilyReport] = []
    for n in range(1, max_n + 1):
        g = path(n)
        report = _sweep("path", g, singleton_partition, engine)
        if n > 1:
            reversal = automorphism_group(g).elements[-1]
            got = _shape(quotient(g, reversal))
            if got != expected_path_quotient(n):
                report.case_table_mismatches.append(
                    f"reversal: expected {expected_path_quotient(n)}, got {got}"
                )
        reports.append(report)

    for n in range(3, max_n + 1):
        g = cycle(n)
        report = _sweep("cycle", g, lambda sub, n=n: cycle_partition(n, sub), engine)
        for p in automorphism_group(g).elements:
            element = classify_dihedral_element(n, p)
            expected = expected_cycle_quotient(n, element)
            got = _shape(quotient(g, p))
            if got != expected:
                report.case_table_mismatches.append(
                    f"{element.kind.value} {element.k}: expected {expected}, got {got}"
                )
        reports.append(report)

    logger.info(f"Swept {len(reports)} paths and cycles up to n={max_n}")
    return reports
