"""
Exact real-root isolation for integer polynomials.

Square-free factors come from ``sympy``; rational roots are found exactly
by candidate testing and deflated away, and whatever is left is isolated
by Sturm-sequence bisection inside a Cauchy bound. Every answer is exact
(a ``Fraction``) or an isolating interval ``(lo, hi]`` whose single root is
certified by a Sturm count. No floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy

from chromatic_forge.core.errors import PolynomialError
from chromatic_forge.core.poly import IntPoly, Number, RatPoly, eval_rational
from chromatic_forge.utils.logger import get_logger

logger = get_logger("roots")

DEFAULT_ISOLATION_WIDTH = Fraction(1, 1024)

_X = sympy.Symbol("x")


# ── Types ──────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class IsolatingInterval:
    """Exactly one real root of ``factor`` (hence of the source polynomial) lies in (lo, hi]."""

    lo: Fraction
    hi: Fraction
    poly_degree: int
    multiplicity: int = 1
    factor: IntPoly = field(default_factory=IntPoly.zero, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise PolynomialError(f"empty isolating interval ({self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Number) -> bool:
        return self.lo < x <= self.hi

    def overlaps(self, other: "IsolatingInterval") -> bool:
        return self.lo < other.hi and other.lo < self.hi

    def to_list(self) -> List[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    def __str__(self) -> str:
        return f"({format_rational(self.lo)}, {format_rational(self.hi)}]"


RootValue = Union[Fraction, IsolatingInterval]


@dataclass(frozen=True)
class RootReport:
    """All distinct real roots of one polynomial, split into exact and interval roots."""

    intervals: Tuple[IsolatingInterval, ...] = ()
    exact_rational_roots: Tuple[Fraction, ...] = ()
    exact_multiplicities: Tuple[int, ...] = ()

    @property
    def count(self) -> int:
        return len(self.intervals) + len(self.exact_rational_roots)

    def roots(self) -> List[RootValue]:
        """Every root in ascending order."""
        keyed: List[Tuple[Fraction, RootValue]] = [(r, r) for r in self.exact_rational_roots]
        keyed += [(iv.hi, iv) for iv in self.intervals]
        return [v for _, v in sorted(keyed, key=lambda kv: kv[0])]

    def max_root(self) -> Optional[RootValue]:
        ordered = self.roots()
        return ordered[-1] if ordered else None

    def multiplicities(self) -> List[Tuple[RootValue, int]]:
        pairs: List[Tuple[RootValue, int]] = list(
            zip(self.exact_rational_roots, self.exact_multiplicities)
        )
        pairs += [(iv, iv.multiplicity) for iv in self.intervals]
        return pairs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exact": [format_rational(r) for r in self.exact_rational_roots],
            "intervals": [iv.to_list() for iv in self.intervals],
        }


def format_rational(value: Number) -> str:
    """``"p/q"``, or a plain integer string when q = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_root(value: Optional[RootValue]) -> Any:
    if value is None:
        return None
    if isinstance(value, IsolatingInterval):
        return value.to_list()
    return format_rational(value)


# ── sympy bridge ───────────────────────────────────────────────────────


def _as_intpoly(p: Union[IntPoly, RatPoly]) -> IntPoly:
    """Roots of a RatPoly are the roots of its numerator."""
    return p.numerator if isinstance(p, RatPoly) else p


def _to_sympy(p: IntPoly) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)) or [0], _X, domain="ZZ")


def _from_sympy(f: sympy.Poly) -> IntPoly:
    return IntPoly(tuple(int(c) for c in reversed(f.all_coeffs())))


def _rational_coeffs(f: sympy.Poly) -> Tuple[Fraction, ...]:
    return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs()))


def square_free_factors(p: IntPoly) -> List[Tuple[IntPoly, int]]:
    """Pairwise coprime primitive factors with their multiplicities (constants dropped)."""
    _, factors = _to_sympy(p).sqf_list()
    out = [(_from_sympy(f).primitive(), k) for f, k in factors]
    return [(f, k) for f, k in out if f.degree >= 1]


def square_free_part(p: IntPoly) -> IntPoly:
    if p.degree < 1:
        return p
    return _from_sympy(_to_sympy(p).sqf_part()).primitive()


def _gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    return _from_sympy(_to_sympy(a).gcd(_to_sympy(b))).primitive()


# ── Sturm machinery ────────────────────────────────────────────────────


def _sign(v: Number) -> int:
    return (v > 0) - (v < 0)


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class _SturmChain:
    """Sturm sequence of one square-free polynomial."""

    def __init__(self, p: IntPoly) -> None:
        self.poly = p
        self.sequence: List[Tuple[Fraction, ...]] = [
            _rational_coeffs(f) for f in sympy.sturm(_to_sympy(p)) if not f.is_zero
        ]

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (_sign(_horner(c, x)) for c in self.sequence) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in (a, b]."""
        if b <= a:
            return 0
        return self.variations(a) - self.variations(b)


@lru_cache(maxsize=1024)
def _chain(p: IntPoly) -> _SturmChain:
    return _SturmChain(p)


def sturm_sequence(p: Union[IntPoly, RatPoly]) -> List[Tuple[Fraction, ...]]:
    """Sturm sequence of the square-free part of ``p``, coefficients ascending."""
    num = _require_nonzero(p)
    if num.degree < 1:
        return [tuple(Fraction(c) for c in num.coeffs)]
    return list(_chain(square_free_part(num)).sequence)


def sturm_count(p: Union[IntPoly, RatPoly], a: Number, b: Number) -> int:
    """Number of distinct real roots of ``p`` in (a, b]."""
    num = _require_nonzero(p)
    if num.degree < 1:
        return 0
    return _chain(square_free_part(num)).count(Fraction(a), Fraction(b))


def cauchy_bound(p: Union[IntPoly, RatPoly]) -> Fraction:
    """1 + max|c_i| / |lead|; every real root lies strictly inside (-B, B)."""
    num = _require_nonzero(p)
    lead = abs(num.leading)
    tail = max((abs(c) for c in num.coeffs[:-1]), default=0)
    return 1 + Fraction(tail, lead)


def _require_nonzero(p: Union[IntPoly, RatPoly]) -> IntPoly:
    num = _as_intpoly(p)
    if num.is_zero():
        raise PolynomialError("the zero polynomial has every number as a root")
    return num


# ── Rational roots ─────────────────────────────────────────────────────


def _split_rational(p: IntPoly) -> Tuple[List[Fraction], IntPoly]:
    """Rational roots of a square-free ``p`` and the deflated cofactor."""
    found: List[Fraction] = []
    rest = p.primitive()
    zero_mult = rest.lowest_degree()
    if zero_mult:
        found.append(Fraction(0))
        rest = rest.shift_down(zero_mult)
    if rest.degree < 1:
        return found, rest

    bound = cauchy_bound(rest)
    numerators = sympy.divisors(abs(rest.coeffs[0]))
    denominators = sympy.divisors(abs(rest.leading))
    candidates = sorted(
        {
            Fraction(sign * a, b)
            for a in numerators
            for b in denominators
            for sign in (1, -1)
            if Fraction(a, b) < bound
        }
    )
    for r in candidates:
        if rest.degree < 1:
            break
        if rest(r) == 0:
            found.append(r)
            rest = rest.exact_div(IntPoly((-r.numerator, r.denominator)))
    return sorted(found), rest


def rational_roots(p: Union[IntPoly, RatPoly]) -> List[Fraction]:
    """Every distinct rational root, ascending."""
    num = _require_nonzero(p)
    roots: List[Fraction] = []
    for factor, _ in square_free_factors(num):
        roots.extend(_split_rational(factor)[0])
    return sorted(roots)


# ── Isolation ──────────────────────────────────────────────────────────


def _bisect_all(chain: _SturmChain, lo: Fraction, hi: Fraction) -> List[Tuple[Fraction, Fraction]]:
    found: List[Tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, chain.count(lo, hi))]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        left = chain.count(a, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, k - left))
    return sorted(found)


def _halve(iv: IsolatingInterval) -> IsolatingInterval:
    chain = _chain(iv.factor)
    mid = (iv.lo + iv.hi) / 2
    if chain.count(iv.lo, mid) == 1:
        return replace(iv, hi=mid)
    return replace(iv, lo=mid)


def refine(
    interval: IsolatingInterval,
    p: Optional[Union[IntPoly, RatPoly]] = None,
    width: Fraction = DEFAULT_ISOLATION_WIDTH,
) -> IsolatingInterval:
    """Shrink ``interval`` by bisection until its width is at most ``width``."""
    if width <= 0:
        raise PolynomialError(f"isolation width must be positive, got {width}")
    iv = interval
    if p is not None and iv.factor.is_zero():
        iv = replace(iv, factor=square_free_part(_require_nonzero(p)))
    if iv.factor.is_zero():
        raise PolynomialError("interval carries no defining polynomial; pass p")
    if _chain(iv.factor).count(iv.lo, iv.hi) != 1:
        raise PolynomialError(f"{iv} does not isolate exactly one root")
    while iv.width > width:
        iv = _halve(iv)
    return iv


def _separate(
    intervals: List[IsolatingInterval], exact: Sequence[Fraction]
) -> List[IsolatingInterval]:
    """Shrink intervals until they are pairwise disjoint and avoid every exact root."""
    current = sorted(intervals, key=lambda iv: iv.lo)
    while True:
        clash = None
        for i, iv in enumerate(current):
            if any(iv.contains(r) for r in exact):
                clash = (i,)
                break
            if i + 1 < len(current) and iv.overlaps(current[i + 1]):
                clash = (i, i + 1)
                break
        if clash is None:
            return current
        for i in clash:
            current[i] = _halve(current[i])
        current.sort(key=lambda iv: iv.lo)


def isolate_real_roots(
    p: Union[IntPoly, RatPoly], width: Fraction = DEFAULT_ISOLATION_WIDTH
) -> RootReport:
    """All distinct real roots of ``p``: exact when rational, intervals of width <= ``width`` otherwise."""
    num = _require_nonzero(p)
    width = Fraction(width)
    if width <= 0:
        raise PolynomialError(f"isolation width must be positive, got {width}")

    exact: Dict[Fraction, int] = {}
    intervals: List[IsolatingInterval] = []
    for factor, mult in square_free_factors(num):
        rats, rest = _split_rational(factor)
        for r in rats:
            exact[r] = mult
        if rest.degree < 1:
            continue
        bound = cauchy_bound(rest)
        for lo, hi in _bisect_all(_chain(rest), -bound, bound):
            iv = IsolatingInterval(lo, hi, num.degree, mult, rest)
            intervals.append(refine(iv, width=width))

    ordered_exact = sorted(exact)
    intervals = _separate(intervals, ordered_exact)
    logger.debug(
        f"Isolated {len(ordered_exact)} rational and {len(intervals)} irrational roots "
        f"of a degree-{num.degree} polynomial"
    )
    return RootReport(
        intervals=tuple(intervals),
        exact_rational_roots=tuple(ordered_exact),
        exact_multiplicities=tuple(exact[r] for r in ordered_exact),
    )


def max_real_root(
    p: Union[IntPoly, RatPoly], width: Fraction = DEFAULT_ISOLATION_WIDTH
) -> Optional[RootValue]:
    """The greatest real root, exact when rational; ``None`` when there are no real roots."""
    return isolate_real_roots(p, width).max_root()


def sign_at(p: Union[IntPoly, RatPoly], x: Number) -> int:
    """Exact sign of ``p(x)`` in {-1, 0, 1}."""
    return _sign(eval_rational(p, x))


def has_root_above(p: Union[IntPoly, RatPoly], x: Number) -> bool:
    """True iff some real root of ``p`` is strictly greater than ``x``."""
    num = _require_nonzero(p)
    if num.degree < 1:
        return False
    f = square_free_part(num)
    bound = cauchy_bound(f)
    x = Fraction(x)
    if x >= bound:
        return False
    return _chain(f).count(x, bound) > 0


def roots_bounded_by(p: Union[IntPoly, RatPoly], bound: Optional[RootValue]) -> bool:
    """
    True iff every real root of ``p`` is <= ``bound``.

    ``bound`` is a rational, an isolating interval from ``isolate_real_roots``
    (compared against the root it isolates, refining as needed), or ``None``
    meaning "no roots allowed at all".
    """
    num = _require_nonzero(p)
    if num.degree < 1:
        return True
    f = square_free_part(num)
    cap = cauchy_bound(f)

    if bound is None:
        return _chain(f).count(-cap, cap) == 0
    if not isinstance(bound, IsolatingInterval):
        return not has_root_above(f, bound)

    # roots shared with the bound's factor are all <= its root only if it is that factor's
    # largest; this is the case for every bound produced by max_real_root
    cofactor = f.exact_div(_gcd(f, bound.factor)).primitive()
    if cofactor.degree < 1:
        return True
    chain = _chain(cofactor)
    iv = bound
    while chain.count(iv.lo, iv.hi) > 0:
        if cofactor(iv.hi) == 0:
            return False
        iv = _halve(iv)
    return not has_root_above(cofactor, iv.hi)


def certify_root_above(
    p: Union[IntPoly, RatPoly], x: Number, width: Fraction = DEFAULT_ISOLATION_WIDTH
) -> RootValue:
    """
    The largest real root of ``p``, shown to exceed ``x``.

    An interval answer is refined until its lower end is at least ``x``.
    """
    x = Fraction(x)
    if not has_root_above(p, x):
        raise PolynomialError(f"no real root above {format_rational(x)}")
    top = max_real_root(p, width)
    if isinstance(top, IsolatingInterval):
        while top.lo < x:
            top = _halve(top)
    return top  # type: ignore[return-value]


def root_lower_end(value: RootValue) -> Fraction:
    return value.lo if isinstance(value, IsolatingInterval) else value


def root_upper_end(value: RootValue) -> Fraction:
    return value.hi if isinstance(value, IsolatingInterval) else value
