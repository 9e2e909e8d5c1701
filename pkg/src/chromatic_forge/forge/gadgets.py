"""
Suspension gadgets.

A gadget is a family of graphs H(n, s), each with a distinguished anchor
vertex 0, whose chromatic polynomial divided by x tends to zero at x0 as s
grows. The forge glues one copy at every vertex of the base graph, so the
gadget must expose both the graph and that cofactor in closed form.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Dict, List, Type

from chromatic_forge.core.errors import ParseError
from chromatic_forge.core.graph import Graph, attach_at_every_vertex, hns
from chromatic_forge.core.perm import PermGroup, lift_group_blocks
from chromatic_forge.core.poly import IntPoly, hns_cofactor, suspension_formula


class Gadget(ABC):
    """Contract for a suspension gadget family."""

    name: str = ""

    @abstractmethod
    def build(self, n: int, s: int) -> Graph:
        """The gadget graph; vertex 0 is the anchor."""

    @abstractmethod
    def cofactor(self, n: int, s: int) -> IntPoly:
        """chromatic(build(n, s)) / x."""

    def ratio_at(self, n: int, s: int, x0: Fraction) -> Fraction:
        return Fraction(self.cofactor(n, s)(x0))

    def suspended_chromatic(self, p_base: IntPoly, k: int, n: int, s: int) -> IntPoly:
        """Chromatic polynomial of a k-vertex base with one gadget copy per vertex."""
        return self.cofactor(n, s) ** k * p_base

    def suspend(self, base: Graph, n: int, s: int) -> Graph:
        return attach_at_every_vertex(base, self.build(n, s), anchor=0)

    def lift(self, group: PermGroup, base: Graph, n: int, s: int) -> PermGroup:
        return lift_group_blocks(group, base, self.build(n, s).num_vertices - 1)


class HnsGadget(Gadget):
    """H_{n,s} = K_n join N_s, anchored at its first clique vertex."""

    name = "hns"

    def build(self, n: int, s: int) -> Graph:
        return hns(n, s)

    def cofactor(self, n: int, s: int) -> IntPoly:
        return hns_cofactor(n, s)

    def suspended_chromatic(self, p_base: IntPoly, k: int, n: int, s: int) -> IntPoly:
        return suspension_formula(p_base, k, n, s)


# Gadget registry
_GADGET_REGISTRY: Dict[str, Type[Gadget]] = {}


def register_gadget(name: str, gadget_class: Type[Gadget]) -> None:
    """Register a gadget class under ``name``."""
    _GADGET_REGISTRY[name] = gadget_class


def get_gadget(name: str) -> Gadget:
    """Instantiate the gadget registered under ``name``."""
    try:
        return _GADGET_REGISTRY[name]()
    except KeyError:
        known = ", ".join(sorted(_GADGET_REGISTRY))
        raise ParseError(f"unknown gadget '{name}' (known: {known})") from None


def list_gadgets() -> List[str]:
    return sorted(_GADGET_REGISTRY)


register_gadget(HnsGadget.name, HnsGadget)
