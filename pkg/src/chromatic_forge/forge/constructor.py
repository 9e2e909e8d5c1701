"""
The counterexample forge.

Given a premise (Γ, G, g, x0), glue a gadget H(n, s) with n = floor(x0) at
every vertex and grow s until the orbital chromatic polynomial of the
suspended graph under the lifted group is negative at x0. The value is
first predicted from the closed form over the quotients of Γ, then the
suspended graph and lifted group are built explicitly and the orbital
polynomial is recomputed from scratch; the two must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from chromatic_forge.core.errors import ConsistencyError, ExhaustionError, PremiseError
from chromatic_forge.core.graph import Graph
from chromatic_forge.core.perm import Permutation, PermGroup, quotient
from chromatic_forge.core.poly import ChromaticEngine, chromatic, eval_rational, orbital_chromatic
from chromatic_forge.core.roots import (
    DEFAULT_ISOLATION_WIDTH,
    RootValue,
    certify_root_above,
    format_rational,
    format_root,
    has_root_above,
    max_real_root,
    root_lower_end,
    root_upper_end,
)
from chromatic_forge.forge.gadgets import Gadget, get_gadget
from chromatic_forge.forge.premise import ForgePremise
from chromatic_forge.utils.logger import get_logger

logger = get_logger("forge")

DEFAULT_S_MAX = 64


@dataclass
class ForgeResult:
    """A certified counterexample: the orbital polynomial has a root above every chromatic root."""

    premise: ForgePremise
    gadget: str
    n: int
    s: int
    forged: Graph
    forged_group: PermGroup
    op_value_at_x0: Fraction
    op_root_interval: RootValue
    chrom_max_root: Optional[RootValue]
    root_gap_lower_bound: Fraction
    trajectory: List[Tuple[int, Fraction]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x0": format_rational(self.premise.x0),
            "special": self.premise.special.to_list(),
            "gadget": self.gadget,
            "n": self.n,
            "s": self.s,
            "forged": self.forged.to_dict(),
            "forged_group": self.forged_group.to_dict(),
            "op_value_at_x0": format_rational(self.op_value_at_x0),
            "op_root_interval": format_root(self.op_root_interval),
            "chrom_max_root": format_root(self.chrom_max_root),
            "root_gap_lower_bound": format_rational(self.root_gap_lower_bound),
            "trajectory": [[s, format_rational(v)] for s, v in self.trajectory],
        }


def closed_form_value(
    quotient_data: List[Tuple[Permutation, int, Fraction]],
    special: Permutation,
    order: int,
    ratio: Fraction,
) -> Fraction:
    """
    OP of the suspended graph at x0 from the quotients of the base graph.

    ``quotient_data`` lists (h, |V(Γ/h)|, P_{Γ/h}(x0)); ``ratio`` is the
    gadget cofactor at x0.
    """
    k_special = next(size for h, size, _ in quotient_data if h == special)
    inner = Fraction(0)
    for h, size, value in quotient_data:
        inner += ratio ** (size - k_special) * value
    return ratio**k_special * inner / order


def forge(
    premise: ForgePremise,
    s_max: int = DEFAULT_S_MAX,
    gadget: Union[str, Gadget] = "hns",
    engine: Optional[ChromaticEngine] = None,
    width: Fraction = DEFAULT_ISOLATION_WIDTH,
) -> ForgeResult:
    """Run the construction; raises ExhaustionError when no s <= s_max works."""
    if s_max < 1:
        raise PremiseError(f"s_max must be >= 1, got {s_max}")
    premise.validate(engine)
    gadget_impl = get_gadget(gadget) if isinstance(gadget, str) else gadget

    base, group, x0 = premise.base, premise.group, Fraction(premise.x0)
    n = premise.n
    quotient_data = _quotient_values(premise, engine)

    trajectory: List[Tuple[int, Fraction]] = []
    chosen: Optional[int] = None
    for s in range(1, s_max + 1):
        ratio = gadget_impl.ratio_at(n, s, x0)
        value = closed_form_value(quotient_data, premise.special, group.order, ratio)
        trajectory.append((s, value))
        logger.debug(f"s={s}: OP(x0) = {format_rational(value)}")
        if value < 0:
            chosen = s
            break
    if chosen is None:
        logger.warning(f"Orbital value stayed non-negative up to s_max={s_max}")
        raise ExhaustionError(s_max, trajectory)
    s = chosen
    predicted = trajectory[-1][1]

    forged = gadget_impl.suspend(base, n, s)
    forged_group = gadget_impl.lift(group, base, n, s)
    op = orbital_chromatic(forged, forged_group, engine)
    explicit = eval_rational(op, x0)
    if explicit != predicted:
        logger.error(
            f"Closed form {format_rational(predicted)} disagrees with the explicit "
            f"construction {format_rational(explicit)}"
        )
        raise ConsistencyError(
            f"OP(x0) mismatch: closed form {format_rational(predicted)}, "
            f"explicit {format_rational(explicit)}"
        )

    op_root = certify_root_above(op, x0, width)
    p_forged = gadget_impl.suspended_chromatic(chromatic(base, engine), base.num_vertices, n, s)
    if has_root_above(p_forged, x0):
        raise ConsistencyError("chromatic polynomial of the forged graph has a root above x0")
    chrom_top = max_real_root(p_forged, width)
    gap = root_lower_end(op_root) - (root_upper_end(chrom_top) if chrom_top is not None else 0)

    logger.info(
        f"Forged n={n}, s={s}: {forged.num_vertices} vertices, OP(x0) = {format_rational(explicit)}, "
        f"orbital root {format_root(op_root)}"
    )
    return ForgeResult(
        premise=premise,
        gadget=gadget_impl.name,
        n=n,
        s=s,
        forged=forged,
        forged_group=forged_group,
        op_value_at_x0=explicit,
        op_root_interval=op_root,
        chrom_max_root=chrom_top,
        root_gap_lower_bound=gap,
        trajectory=trajectory,
    )


def _quotient_values(
    premise: ForgePremise, engine: Optional[ChromaticEngine] = None
) -> List[Tuple[Permutation, int, Fraction]]:
    x0 = Fraction(premise.x0)
    data = []
    for h in premise.group.elements:
        reduced = quotient(premise.base, h)
        data.append((h, reduced.num_vertices, eval_rational(chromatic(reduced, engine), x0)))
    return data


def closed_form_trajectory(
    premise: ForgePremise, s_values: List[int], gadget: Union[str, Gadget] = "hns"
) -> List[Fraction]:
    """Closed-form OP(x0) for each ``s``, without building anything."""
    gadget_impl = get_gadget(gadget) if isinstance(gadget, str) else gadget
    data = _quotient_values(premise)
    return [
        closed_form_value(
            data, premise.special, premise.group.order, gadget_impl.ratio_at(premise.n, s, premise.x0)
        )
        for s in s_values
    ]
