"""
Counterexample premises.

A premise is a graph, a group of its automorphisms, one element g whose
quotient is strictly smaller than every other quotient, and a non-integer
x0 above every chromatic root of the graph at which the chromatic
polynomial of the quotient by g is negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from chromatic_forge.core.errors import GraphValidationError, GroupValidationError, PremiseError
from chromatic_forge.core.graph import Graph
from chromatic_forge.core.perm import Permutation, PermGroup, quotient
from chromatic_forge.core.poly import ChromaticEngine, IntPoly, chromatic
from chromatic_forge.core.roots import (
    RootValue,
    format_rational,
    format_root,
    has_root_above,
    isolate_real_roots,
    max_real_root,
    root_lower_end,
    root_upper_end,
    sign_at,
)
from chromatic_forge.utils.logger import get_logger

logger = get_logger("forge")


@dataclass(frozen=True)
class ForgePremise:
    """Inputs the forge needs: base graph, group, special element and evaluation point."""

    base: Graph
    group: PermGroup
    special: Permutation
    x0: Fraction

    @property
    def n(self) -> int:
        return math.floor(self.x0)

    def validate(self, engine: Optional[ChromaticEngine] = None) -> None:
        """Re-check every premise condition, raising PremiseError on the first failure."""
        if self.base.has_loops:
            raise PremiseError("base graph carries loops")
        if self.group.degree != self.base.num_vertices:
            raise GroupValidationError(
                f"group degree {self.group.degree} != {self.base.num_vertices} vertices"
            )
        if self.group.order < 2:
            raise PremiseError("the group must have at least two elements")
        if self.special not in self.group:
            raise PremiseError(f"{self.special!r} is not in the group")

        sizes = _quotient_sizes(self.base, self.group)
        mine = sizes[self.special]
        rivals = [h for h, size in sizes.items() if h != self.special and size <= mine]
        if rivals:
            raise PremiseError(
                f"quotient by the special element has {mine} vertices, "
                f"not fewer than the quotient by {rivals[0]!r}"
            )

        x0 = Fraction(self.x0)
        if x0.denominator == 1:
            raise PremiseError(f"x0 = {x0} is an integer")
        if x0 < 1:
            raise PremiseError(f"x0 = {format_rational(x0)} is below 1, so floor(x0) is not a gadget size")
        p_base = chromatic(self.base, engine)
        if p_base(x0) == 0 or has_root_above(p_base, x0):
            raise PremiseError(f"x0 = {format_rational(x0)} does not exceed every chromatic root")
        q = chromatic(quotient(self.base, self.special), engine)
        if sign_at(q, x0) != -1:
            raise PremiseError(
                f"chromatic polynomial of the quotient is not negative at x0 = {format_rational(x0)}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.to_dict(),
            "group": self.group.to_dict(),
            "special": self.special.to_list(),
            "x0": format_rational(self.x0),
        }


def _quotient_sizes(g: Graph, group: PermGroup) -> Dict[Permutation, int]:
    return {h: quotient(g, h).num_vertices for h in group.elements}


def _pick_point(a: Fraction, b: Fraction) -> Fraction:
    """
    A non-integer point of the open interval (a, b).

    Prefers the half-integer nearest the midpoint; falls back to the
    midpoint, nudged toward ``a`` when it lands on an integer.
    """
    mid = (a + b) / 2
    halves = [
        k + Fraction(1, 2)
        for k in range(math.floor(a) - 1, math.ceil(b) + 1)
        if a < k + Fraction(1, 2) < b
    ]
    if halves:
        return min(halves, key=lambda h: (abs(h - mid), h))
    if mid.denominator == 1:
        return (a + mid) / 2
    return mid


def negative_regions(q: IntPoly, above: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """
    Open intervals above ``above`` on which ``q`` is certainly negative.

    Interval roots are kept outside each region, so the sign is constant
    inside; the region after the largest root is never negative.
    """
    if q.is_zero():
        return []
    ordered = isolate_real_roots(q).roots()
    breaks: List[Tuple[Fraction, Fraction]] = [(above, above)]
    breaks += [(root_lower_end(r), root_upper_end(r)) for r in ordered]
    regions = []
    for (_, left_hi), (right_lo, _) in zip(breaks, breaks[1:]):
        a = max(left_hi, above)
        if a < right_lo and sign_at(q, (a + right_lo) / 2) == -1:
            regions.append((a, right_lo))
    return regions


def find_premise(
    g: Graph, group: PermGroup, engine: Optional[ChromaticEngine] = None
) -> Optional[ForgePremise]:
    """
    Search ``(g, group)`` for a forge premise.

    Returns None when the group is trivial, when the smallest quotient is
    not unique, or when its chromatic polynomial has no negative region
    above the largest chromatic root of ``g``.
    """
    if g.has_loops:
        raise GraphValidationError("find_premise: base graph carries loops")
    if group.degree != g.num_vertices:
        raise GroupValidationError(
            f"group degree {group.degree} != {g.num_vertices} vertices"
        )
    if group.order < 2:
        logger.debug("Trivial group, no premise")
        return None

    sizes = _quotient_sizes(g, group)
    smallest = min(sizes.values())
    minimal = [h for h, size in sizes.items() if size == smallest]
    if len(minimal) > 1:
        logger.debug(f"{len(minimal)} elements tie for the smallest quotient ({smallest} vertices)")
        return None
    special = minimal[0]

    reduced = quotient(g, special)
    if reduced.has_loops:
        logger.debug("Smallest quotient carries a loop, its chromatic polynomial vanishes")
        return None

    top: Optional[RootValue] = max_real_root(chromatic(g, engine))
    threshold = max(root_upper_end(top), Fraction(1)) if top is not None else Fraction(1)
    regions = negative_regions(chromatic(reduced, engine), threshold)
    if not regions:
        logger.debug(f"No negative region above {format_rational(threshold)}")
        return None

    a, b = regions[0]
    x0 = _pick_point(a, b)
    logger.info(
        f"Premise found: special element {special!r}, x0 = {format_rational(x0)} "
        f"(chromatic max root {format_root(top)})"
    )
    return ForgePremise(base=g, group=group, special=special, x0=x0)


def scan_premises(
    g: Graph, groups: Sequence[PermGroup], engine: Optional[ChromaticEngine] = None
) -> List[ForgePremise]:
    """Every premise found over ``groups`` (typically all subgroups of Aut(g)), in input order."""
    found = []
    for group in groups:
        premise = find_premise(g, group, engine)
        if premise is not None:
            found.append(premise)
    logger.info(f"Scanned {len(groups)} groups, {len(found)} premises")
    return found
