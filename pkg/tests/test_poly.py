"""
Unit tests for exact polynomials and the chromatic engine.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from chromatic_forge.core.errors import GroupValidationError, PolynomialError
from chromatic_forge.core.graph import (
    Graph,
    add_ear,
    complete,
    cycle,
    disjoint_union,
    empty,
    hns,
    path,
    suspend,
)
from chromatic_forge.core.perm import (
    PermGroup,
    automorphism_group,
    close,
    cyclic_subgroups,
    dihedral,
    lift_group,
    rotation,
    subgroups,
)
from chromatic_forge.core.poly import (
    X,
    ChromaticEngine,
    IntPoly,
    RatPoly,
    block_sum,
    chromatic,
    cycle_polynomial,
    ear_formula,
    eval_rational,
    falling_factorial,
    hns_cofactor,
    orbital_chromatic,
    suspension_formula,
    tree_polynomial,
)

from conftest import atlas_graphs

SHIFT = IntPoly.linear(1)  # x - 1


def _random_graph(rng: random.Random, max_vertices: int) -> Graph:
    n = rng.randint(1, max_vertices)
    edges = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
    return Graph.from_edges(n, edges)


def _example_family_op(s: int) -> RatPoly:
    """½(x-1)^{3s}(x(x-1)(x-2) + (x-1)^{3s}((x-1)^6 + (x-1)))."""
    inner = falling_factorial(3) + SHIFT ** (3 * s) * (SHIFT**6 + SHIFT)
    return RatPoly(SHIFT ** (3 * s) * inner, 2)


# ── IntPoly / RatPoly ──────────────────────────────────────────────────


class TestIntPoly:
    """Test integer polynomial arithmetic."""

    def test_trailing_zeros_stripped(self):
        assert IntPoly((1, 2, 0, 0)).coeffs == (1, 2)
        assert IntPoly((0, 0)).is_zero()
        assert IntPoly.zero().degree == -1

    def test_product(self):
        assert IntPoly.linear(1) * IntPoly.linear(-1) == X * X - 1

    def test_power_and_derivative(self):
        assert (SHIFT**3).coeffs == (-1, 3, -3, 1)
        assert (X**3).derivative() == IntPoly((0, 0, 3))

    def test_divmod(self):
        quo, rem = (X**3 + 1).divmod(X + 1)
        assert quo == X * X - X + 1
        assert rem.is_zero()

    def test_exact_div_remainder(self):
        with pytest.raises(PolynomialError):
            (X**2 + 1).exact_div(X - 1)

    def test_division_by_zero(self):
        with pytest.raises(PolynomialError):
            X.divmod(IntPoly.zero())

    def test_shift_down(self):
        assert (X**3 - X).shift_down(1) == X * X - 1
        with pytest.raises(PolynomialError):
            (X + 1).shift_down(1)

    def test_evaluation_is_exact(self):
        assert falling_factorial(3)(Fraction(3, 2)) == Fraction(-3, 8)
        assert (SHIFT**6 + SHIFT)(Fraction(3, 2)) == Fraction(33, 64)

    def test_content_and_primitive(self):
        p = IntPoly((4, -6, 2))
        assert p.content() == 2
        assert p.primitive() == IntPoly((2, -3, 1))

    def test_str(self):
        assert str(X**2 - 2 * X + 1) == "x^2 - 2x + 1"
        assert str(IntPoly.zero()) == "0"

    def test_to_dict(self):
        assert (X - 1).to_dict() == {"coeffs": ["-1", "1"], "den": "1"}


class TestRatPoly:
    """Test rational polynomials."""

    def test_normalizes(self):
        p = RatPoly(IntPoly((2, 4)), 4)
        assert p.numerator == IntPoly((1, 2))
        assert p.denominator == 2

    def test_negative_denominator(self):
        p = RatPoly(X, -3)
        assert p.numerator == -X
        assert p.denominator == 3

    def test_zero_denominator(self):
        with pytest.raises(PolynomialError):
            RatPoly(X, 0)

    def test_sum_and_value(self):
        total = RatPoly(X, 2) + RatPoly(IntPoly.constant(1), 3)
        assert total(1) == Fraction(5, 6)

    def test_dict_roundtrip(self):
        p = RatPoly(X * X + 3, 4)
        assert RatPoly.from_dict(p.to_dict()) == p


# ── Closed forms ───────────────────────────────────────────────────────


class TestClosedForms:
    """Test closed-form polynomials against the engine."""

    def test_cycle_six(self):
        assert chromatic(cycle(6)) == SHIFT**6 + SHIFT
        assert cycle_polynomial(6) == SHIFT**6 + SHIFT

    def test_triangle(self):
        assert chromatic(cycle(3)) == X * SHIFT * IntPoly.linear(2)

    def test_tree(self):
        assert chromatic(path(5)) == tree_polynomial(5)

    def test_hns_cofactor(self):
        for n, s in [(1, 1), (1, 3), (2, 2), (3, 1)]:
            assert chromatic(hns(n, s)) == X * hns_cofactor(n, s)
        assert hns_cofactor(1, 4) == SHIFT**4

    def test_hns_cofactor_rejects_zero(self):
        with pytest.raises(PolynomialError):
            hns_cofactor(0, 1)

    def test_ear_formula(self):
        checked = 0
        for g in atlas_graphs(5):
            if not g.edges:
                continue
            u, v = g.sorted_edges()[0]
            p = chromatic(g)
            for n in (1, 2, 3):
                assert ear_formula(p, n) == chromatic(add_ear(g, u, v, n)), (g, n)
                checked += 1
        assert checked > 60

    def test_suspension_formula(self):
        for g in atlas_graphs(4):
            p = chromatic(g)
            for n in (1, 2):
                for s in (1, 2):
                    expected = suspension_formula(p, g.num_vertices, n, s)
                    assert chromatic(suspend(g, n, s)) == expected, (g, n, s)

    def test_ear_and_suspension_on_random_graphs(self):
        rng = random.Random(4)
        ears = 0
        for _ in range(200):
            g = _random_graph(rng, 6)
            p = chromatic(g)
            n, s = rng.randint(1, 3), rng.randint(1, 3)
            assert chromatic(suspend(g, n, s)) == suspension_formula(p, g.num_vertices, n, s), (g, n, s)
            if g.edges:
                u, v = rng.choice(g.sorted_edges())
                length = rng.randint(1, 3)
                assert chromatic(add_ear(g, u, v, length)) == ear_formula(p, length), (g, u, v, length)
                ears += 1
        assert ears > 100


# ── Chromatic engine ───────────────────────────────────────────────────


class TestChromaticEngine:
    """Test deletion–contraction against brute-force counting."""

    def test_edgeless(self):
        assert chromatic(empty(4)) == X**4
        assert chromatic(Graph(0)) == IntPoly.constant(1)

    def test_loop_gives_zero(self):
        assert chromatic(Graph.from_edges(2, [(0, 1)], loops=[0])).is_zero()

    def test_components_multiply(self):
        g = disjoint_union(cycle(3), path(2))
        assert chromatic(g) == chromatic(cycle(3)) * chromatic(path(2))

    def test_complete(self):
        assert chromatic(complete(5)) == falling_factorial(5)

    def test_cache_does_not_change_results(self):
        cached = ChromaticEngine(use_cache=True)
        plain = ChromaticEngine()
        for g in atlas_graphs(5):
            assert cached.chromatic(g) == plain.chromatic(g)

    def test_matches_brute_force(self, brute_colorings):
        for g in atlas_graphs(5, connected=False):
            p = chromatic(g)
            for k in range(4):
                assert p(k) == brute_colorings(g, k), g


# ── Orbital polynomial ─────────────────────────────────────────────────


class TestOrbitalChromatic:
    """Test orbit counting."""

    def test_antipodal_c6(self):
        op = orbital_chromatic(cycle(6), close([rotation(6, 3)]))
        assert op == RatPoly(SHIFT**6 + SHIFT + falling_factorial(3), 2)

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_suspended_family(self, s):
        base = cycle(6)
        group = close([rotation(6, 3)])
        op = orbital_chromatic(suspend(base, 1, s), lift_group(group, base, 1, s))
        assert op == _example_family_op(s)

    def test_trivial_group_is_chromatic(self):
        g = hns(2, 2)
        op = orbital_chromatic(g, PermGroup.trivial(g.num_vertices))
        assert op == RatPoly(chromatic(g), 1)

    def test_degree_mismatch(self):
        with pytest.raises(GroupValidationError):
            orbital_chromatic(cycle(5), dihedral(6))

    def test_block_sum(self):
        total = block_sum(cycle(6), [rotation(6, 0), rotation(6, 3)])
        assert total == SHIFT**6 + SHIFT + falling_factorial(3)

    def test_values_are_integral_at_integers(self):
        op = orbital_chromatic(cycle(5), dihedral(5))
        assert all(op(k).denominator == 1 for k in range(8))

    def test_burnside_small(self, brute_orbits):
        for g in atlas_graphs(4):
            for group in subgroups(automorphism_group(g)):
                op = orbital_chromatic(g, group)
                for k in range(4):
                    assert op(k) == brute_orbits(g, group, k), (g, group)

    @pytest.mark.slow
    def test_burnside_six_vertices(self, brute_orbits):
        for g in atlas_graphs(6):
            aut = automorphism_group(g)
            # S_6 of K_6 is the one group listed through its cyclic subgroups
            groups = subgroups(aut, order_limit=120) if aut.order <= 120 else cyclic_subgroups(aut) + [aut]
            for group in groups:
                op = orbital_chromatic(g, group)
                for k in range(5):
                    assert op(k) == brute_orbits(g, group, k), (g, group)


def test_eval_rational():
    assert eval_rational(RatPoly(X, 2), 3) == Fraction(3, 2)
