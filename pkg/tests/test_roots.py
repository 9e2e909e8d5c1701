"""
Unit tests for exact real-root isolation.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from chromatic_forge.core.errors import PolynomialError
from chromatic_forge.core.graph import cycle, path, suspend
from chromatic_forge.core.perm import close, lift_group, rotation
from chromatic_forge.core.poly import X, IntPoly, RatPoly, chromatic, falling_factorial, orbital_chromatic
from chromatic_forge.core.roots import (
    IsolatingInterval,
    cauchy_bound,
    certify_root_above,
    format_rational,
    format_root,
    has_root_above,
    isolate_real_roots,
    max_real_root,
    rational_roots,
    refine,
    roots_bounded_by,
    sign_at,
    square_free_part,
    sturm_count,
    sturm_sequence,
)

from conftest import atlas_graphs

TWO = X * X - 2


def _random_poly(rng: random.Random, max_degree: int) -> IntPoly:
    while True:
        degree = rng.randint(1, max_degree)
        coeffs = [rng.randint(-6, 6) for _ in range(degree)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        if rng.random() < 0.3:
            # plant rational and repeated roots
            extra = IntPoly.linear(rng.randint(-3, 3)) ** rng.randint(1, 2)
            return IntPoly(tuple(coeffs)) * extra
        return IntPoly(tuple(coeffs))


def _check_against_sympy(p: IntPoly) -> None:
    report = isolate_real_roots(p)
    expected = set(sympy.real_roots(sympy.Poly(list(reversed(p.coeffs)), sympy.Symbol("x"))))
    assert report.count == len(expected), p
    rational = [Fraction(int(r.p), int(r.q)) for r in expected if r.is_Rational]
    assert list(report.exact_rational_roots) == sorted(rational), p
    for iv in report.intervals:
        assert iv.width <= Fraction(1, 1024)
        # the defining square-free factor changes sign across an isolating interval
        assert iv.factor(iv.lo) * iv.factor(iv.hi) < 0, (p, iv)
    ivs = report.intervals
    assert all(a.hi <= b.lo for a, b in zip(ivs, ivs[1:]))


# ── Sturm machinery ────────────────────────────────────────────────────


class TestSturm:
    """Test Sturm sequences, counts and bounds."""

    def test_count_half_open(self):
        cubic = X**3 - X
        assert sturm_count(cubic, -2, 2) == 3
        assert sturm_count(cubic, 0, 1) == 1
        assert sturm_count(cubic, -1, 0) == 1

    def test_count_ignores_multiplicity(self):
        assert sturm_count(IntPoly.linear(1) ** 3 * X, -5, 5) == 2

    def test_sequence_starts_with_square_free_part(self):
        p = IntPoly.linear(1) ** 2 * IntPoly.linear(2)
        seq = sturm_sequence(p)
        assert len(seq) == 3
        # the head is a rational multiple of (x - 1)(x - 2)
        head = seq[0]
        assert len(head) == 3
        assert [c / head[-1] for c in head] == [2, -3, 1]
        assert square_free_part(p) == IntPoly((2, -3, 1))

    def test_cauchy_bound(self):
        assert cauchy_bound(TWO) == 3
        assert cauchy_bound(2 * X - 7) == Fraction(9, 2)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(PolynomialError):
            sturm_count(IntPoly.zero(), 0, 1)
        with pytest.raises(PolynomialError):
            isolate_real_roots(IntPoly.zero())


# ── Isolation ──────────────────────────────────────────────────────────


class TestIsolation:
    """Test exact and interval roots."""

    def test_cycle_six_roots(self):
        report = isolate_real_roots(chromatic(cycle(6)))
        assert report.exact_rational_roots == (Fraction(0), Fraction(1))
        assert report.intervals == ()
        assert report.multiplicities() == [(Fraction(0), 1), (Fraction(1), 1)]

    def test_tree_multiplicities(self):
        report = isolate_real_roots(chromatic(path(4)))
        assert report.multiplicities() == [(Fraction(0), 1), (Fraction(1), 3)]

    def test_sqrt_two(self):
        report = isolate_real_roots(TWO)
        assert report.count == 2
        top = report.max_root()
        assert isinstance(top, IsolatingInterval)
        assert top.lo**2 < 2 <= top.hi**2
        assert top.width <= Fraction(1, 1024)

    def test_no_real_roots(self):
        assert max_real_root(X * X + 1) is None

    def test_rational_roots(self):
        assert rational_roots(2 * X * X - 3 * X + 1) == [Fraction(1, 2), Fraction(1)]

    def test_ratpoly_uses_numerator(self):
        assert isolate_real_roots(RatPoly(falling_factorial(3), 6)).exact_rational_roots == (0, 1, 2)

    def test_refine_narrows(self):
        iv = isolate_real_roots(TWO).max_root()
        narrow = refine(iv, width=Fraction(1, 2**20))
        assert narrow.width <= Fraction(1, 2**20)
        assert narrow.lo**2 < 2 <= narrow.hi**2

    def test_refine_rejects_non_isolating(self):
        with pytest.raises(PolynomialError):
            refine(IsolatingInterval(Fraction(-2), Fraction(2), 2), TWO)

    def test_chromatic_integer_roots_are_exact(self):
        for g in atlas_graphs(5):
            report = isolate_real_roots(chromatic(g))
            assert Fraction(0) in report.exact_rational_roots
            if g.num_edges:
                assert Fraction(1) in report.exact_rational_roots

    def test_random_against_sympy(self):
        rng = random.Random(7)
        for _ in range(100):
            _check_against_sympy(_random_poly(rng, 8))

    @pytest.mark.slow
    def test_random_against_sympy_full(self):
        rng = random.Random(2024)
        for _ in range(500):
            _check_against_sympy(_random_poly(rng, 12))


# ── Comparisons ────────────────────────────────────────────────────────


class TestComparisons:
    """Test certified sign and bound queries."""

    def test_sign_at(self):
        assert sign_at(falling_factorial(3), Fraction(3, 2)) == -1
        assert sign_at(falling_factorial(3), 2) == 0
        assert sign_at(falling_factorial(3), 3) == 1

    def test_has_root_above(self):
        assert has_root_above(falling_factorial(3), Fraction(3, 2))
        assert not has_root_above(falling_factorial(3), 2)

    def test_bounded_by_rational(self):
        assert roots_bounded_by(TWO, Fraction(2))
        assert not roots_bounded_by(TWO, Fraction(1))

    def test_bounded_by_nothing(self):
        assert roots_bounded_by(X * X + 1, None)
        assert not roots_bounded_by(TWO, None)

    def test_bounded_by_irrational(self):
        sqrt2 = max_real_root(TWO)
        assert roots_bounded_by(TWO, sqrt2)
        assert roots_bounded_by(X - 1, sqrt2)
        assert not roots_bounded_by(X - 2, sqrt2)
        assert not roots_bounded_by(X * X - 3, sqrt2)

    def test_certify_root_above(self):
        root = certify_root_above(TWO, 1)
        assert isinstance(root, IsolatingInterval)
        assert root.lo >= 1

    def test_certify_fails_without_root(self):
        with pytest.raises(PolynomialError):
            certify_root_above(TWO, 2)

    def test_suspended_antipodal_root(self):
        base = cycle(6)
        group = close([rotation(6, 3)])
        op = orbital_chromatic(suspend(base, 1, 1), lift_group(group, base, 1, 1))
        assert sign_at(op, Fraction(3, 2)) == -1
        root = certify_root_above(op, Fraction(3, 2))
        assert Fraction(3, 2) <= root.lo and root.hi <= 2
        assert max_real_root(chromatic(suspend(base, 1, 1))) == 1


class TestFormatting:
    def test_format_rational(self):
        assert format_rational(Fraction(3, 2)) == "3/2"
        assert format_rational(4) == "4"
        assert format_rational(Fraction(-159, 8192)) == "-159/8192"

    def test_format_root(self):
        assert format_root(None) is None
        assert format_root(Fraction(1)) == "1"
        assert format_root(IsolatingInterval(Fraction(1), Fraction(3, 2), 2)) == ["1", "3/2"]
