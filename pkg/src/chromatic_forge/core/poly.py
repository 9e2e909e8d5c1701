"""
Exact univariate polynomials and chromatic polynomial computation.

``IntPoly`` holds Python integers (arbitrary precision) in ascending degree
order; ``RatPoly`` is an ``IntPoly`` over a positive integer denominator.
The chromatic engine runs deletion–contraction with closed forms for
edgeless graphs, trees, cycles and cliques, plus component and cut-vertex
factorization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from chromatic_forge.core.errors import GroupValidationError, PolynomialError
from chromatic_forge.core.graph import Graph
from chromatic_forge.core.perm import Permutation, PermGroup, quotient
from chromatic_forge.utils.logger import get_logger

logger = get_logger("poly")

Number = Union[int, Fraction]


# ── IntPoly ────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree, no trailing zeros."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cs = [int(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # constructors

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPoly":
        return cls((0,) * degree + (c,))

    @classmethod
    def linear(cls, a: int) -> "IntPoly":
        """x - a."""
        return cls((-a, 1))

    # queries

    @property
    def degree(self) -> int:
        """len(coeffs) - 1; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def lowest_degree(self) -> int:
        """Multiplicity of the root 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content() * (1 if self.leading > 0 else -1)
        return IntPoly(tuple(c // g for c in self.coeffs))

    # arithmetic

    def __add__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["IntPoly", int]) -> "IntPoly":
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise PolynomialError("negative powers are not polynomials")
        result, base = IntPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift_down(self, k: int = 1) -> "IntPoly":
        """Exact division by x^k."""
        if any(self.coeffs[:k]):
            raise PolynomialError(f"not divisible by x^{k}")
        return IntPoly(self.coeffs[k:])

    def divmod(self, other: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Division with remainder; the quotient must stay integral."""
        if other.is_zero():
            raise PolynomialError("division by the zero polynomial")
        rem = list(self.coeffs)
        quo = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        for i in range(len(quo) - 1, -1, -1):
            c = rem[i + other.degree]
            if c % lead:
                raise PolynomialError("quotient is not integral")
            q = c // lead
            quo[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return IntPoly(tuple(quo)), IntPoly(tuple(rem))

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise PolynomialError("division leaves a remainder")
        return quo

    def __call__(self, x: Number) -> Number:
        """Horner evaluation; exact for ints and Fractions."""
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # serialization

    def to_dict(self) -> Dict[str, Any]:
        return {"coeffs": [str(c) for c in self.coeffs], "den": "1"}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and i) else str(mag)
            if i:
                body += "x" if i == 1 else f"x^{i}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = IntPoly.x()


# ── RatPoly ────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class RatPoly:
    """``numerator / denominator`` with a positive, fully reduced denominator."""

    numerator: IntPoly
    denominator: int = 1

    def __post_init__(self) -> None:
        num, den = self.numerator, int(self.denominator)
        if den == 0:
            raise PolynomialError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if num.is_zero():
            den = 1
        else:
            g = math.gcd(num.content(), den)
            if g > 1:
                num = IntPoly(tuple(c // g for c in num.coeffs))
                den //= g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def degree(self) -> int:
        return self.numerator.degree

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __call__(self, x: Number) -> Fraction:
        return Fraction(self.numerator(x)) / self.denominator

    def to_dict(self) -> Dict[str, Any]:
        return {"coeffs": [str(c) for c in self.numerator.coeffs], "den": str(self.denominator)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RatPoly":
        return cls(IntPoly(tuple(int(c) for c in data["coeffs"])), int(data.get("den", "1")))

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator}) / {self.denominator}"


def eval_rational(p: Union[IntPoly, RatPoly], x: Number) -> Fraction:
    """Exact value of ``p`` at the rational ``x``."""
    return Fraction(p(Fraction(x)))


# ── Closed forms ───────────────────────────────────────────────────────


def falling_factorial(n: int) -> IntPoly:
    """x(x-1)...(x-n+1), the chromatic polynomial of K_n."""
    result = IntPoly.constant(1)
    for i in range(n):
        result = result * IntPoly.linear(i)
    return result


def tree_polynomial(n: int) -> IntPoly:
    """x(x-1)^{n-1} for any tree on n >= 1 vertices."""
    return X * IntPoly.linear(1) ** (n - 1)


def cycle_polynomial(n: int) -> IntPoly:
    """(x-1)^n + (-1)^n (x-1)."""
    shifted = IntPoly.linear(1)
    return shifted**n + shifted * (-1) ** n


def hns_cofactor(n: int, s: int) -> IntPoly:
    """P_{H_{n,s}}(x) / x = (x-1)...(x-n+1)(x-n)^s."""
    if n < 1 or s < 1:
        raise PolynomialError(f"H_(n,s) needs n, s >= 1, got n={n}, s={s}")
    return falling_factorial(n).shift_down(1) * IntPoly.linear(n) ** s


def ear_formula(p: IntPoly, n: int) -> IntPoly:
    """Chromatic polynomial after adding an ear with n interior vertices on an edge."""
    if n < 1:
        raise PolynomialError(f"ear length must be >= 1, got {n}")
    one_minus_x = IntPoly((1, -1))
    cofactor = ((1 - one_minus_x ** (n + 1)) * (-1) ** n).shift_down(1)
    return cofactor * p


def suspension_formula(p_base: IntPoly, k: int, n: int, s: int) -> IntPoly:
    """P_{Γ^{(n,s)}} = (P_{H_{n,s}}/x)^{|V(Γ)|} · P_Γ."""
    if k < 1:
        raise PolynomialError(f"base vertex count must be >= 1, got {k}")
    return hns_cofactor(n, s) ** k * p_base


# ── Chromatic engine ───────────────────────────────────────────────────

Adjacency = Dict[int, FrozenSet[int]]


class ChromaticEngine:
    """
    Deletion–contraction with shortcuts.

    The optional cache is keyed on labeled edge sets and lives as long as
    the engine; it never changes results.
    """

    def __init__(self, use_cache: bool = False) -> None:
        self._cache: Optional[Dict[Any, IntPoly]] = {} if use_cache else None
        self.calls = 0

    def chromatic(self, g: Graph) -> IntPoly:
        if g.has_loops:
            return IntPoly.zero()
        adj = {v: g.neighbors(v) for v in range(g.num_vertices)}
        return self._solve(adj)

    def _solve(self, adj: Adjacency) -> IntPoly:
        self.calls += 1
        n = len(adj)
        m = sum(len(a) for a in adj.values()) // 2
        if m == 0:
            return IntPoly.monomial(n)

        key = None
        if self._cache is not None:
            key = frozenset((u, w) for u, a in adj.items() for w in a if u < w), frozenset(adj)
            if key in self._cache:
                return self._cache[key]

        result = self._solve_uncached(adj, n, m)
        if key is not None:
            self._cache[key] = result  # type: ignore[index]
        return result

    def _solve_uncached(self, adj: Adjacency, n: int, m: int) -> IntPoly:
        nxg = nx.Graph()
        nxg.add_nodes_from(adj)
        nxg.add_edges_from((u, w) for u, a in adj.items() for w in a if u < w)

        components = sorted(nx.connected_components(nxg), key=min)
        if len(components) > 1:
            result = IntPoly.constant(1)
            for comp in components:
                result = result * self._solve(_restrict(adj, comp))
            return result

        if m == n - 1:
            return tree_polynomial(n)
        if m == n * (n - 1) // 2:
            return falling_factorial(n)
        if m == n and all(len(a) == 2 for a in adj.values()):
            return cycle_polynomial(n)

        cut_vertices = sorted(nx.articulation_points(nxg))
        if cut_vertices:
            v = cut_vertices[0]
            rest = nxg.copy()
            rest.remove_node(v)
            first = min(nx.connected_components(rest), key=min)
            side_a = set(first) | {v}
            side_b = (set(adj) - set(first)) | {v}
            logger.debug(f"Cut vertex {v}: blocks of {len(side_a)} and {len(side_b)} vertices")
            product = self._solve(_restrict(adj, side_a)) * self._solve(_restrict(adj, side_b))
            return product.shift_down(1)

        u, w = max(
            ((a, b) for a, nb in adj.items() for b in nb if a < b),
            key=lambda e: (len(adj[e[0]]) + len(adj[e[1]]), -e[0], -e[1]),
        )
        return self._solve(_delete_edge(adj, u, w)) - self._solve(_contract_edge(adj, u, w))


def _restrict(adj: Adjacency, keep: Iterable[int]) -> Adjacency:
    keep_set = set(keep)
    return {v: adj[v] & keep_set for v in keep_set}


def _delete_edge(adj: Adjacency, u: int, w: int) -> Adjacency:
    out = dict(adj)
    out[u] = adj[u] - {w}
    out[w] = adj[w] - {u}
    return out


def _contract_edge(adj: Adjacency, u: int, w: int) -> Adjacency:
    """Merge w into u; parallel edges collapse."""
    out = {v: a for v, a in adj.items() if v != w}
    out[u] = (adj[u] | adj[w]) - {u, w}
    for v in adj[w]:
        if v != u:
            out[v] = (adj[v] - {w}) | {u}
    return out


_DEFAULT_ENGINE = ChromaticEngine()


def chromatic(g: Graph, engine: Optional[ChromaticEngine] = None) -> IntPoly:
    """The chromatic polynomial of ``g``; zero iff ``g`` has a loop."""
    return (engine or _DEFAULT_ENGINE).chromatic(g)


# ── Orbital chromatic polynomial ───────────────────────────────────────


def _quotient_polynomials(
    g: Graph, elements: Sequence[Permutation], engine: Optional[ChromaticEngine]
) -> List[IntPoly]:
    """chromatic(Γ/h) per element; elements with equal orbit partitions share one computation."""
    by_orbits: Dict[Tuple[Tuple[int, ...], ...], IntPoly] = {}
    out = []
    for h in elements:
        orbits = tuple(h.orbits())
        if orbits not in by_orbits:
            by_orbits[orbits] = chromatic(quotient(g, h), engine)
        out.append(by_orbits[orbits])
    return out


def block_sum(
    g: Graph, elements: Sequence[Permutation], engine: Optional[ChromaticEngine] = None
) -> IntPoly:
    """Σ_{h∈X} P_{Γ/h}(x) for a block X of a group partition."""
    total = IntPoly.zero()
    for p in _quotient_polynomials(g, elements, engine):
        total = total + p
    return total


def orbital_chromatic(
    g: Graph, group: PermGroup, engine: Optional[ChromaticEngine] = None
) -> RatPoly:
    """OP_{Γ,G}(x) = (1/|G|) Σ_{h∈G} P_{Γ/h}(x)."""
    if group.degree != g.num_vertices:
        raise GroupValidationError(
            f"group acts on {group.degree} points but the graph has {g.num_vertices} vertices"
        )
    total = block_sum(g, group.elements, engine)
    logger.debug(f"Orbital polynomial over a group of order {group.order}: degree {total.degree}")
    return RatPoly(total, group.order)
