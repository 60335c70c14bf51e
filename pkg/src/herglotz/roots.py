"""Sturm chains, real-root isolation and exact arithmetic on real algebraic points.

A *point* on the real line is either an ``mpq`` (rational) or a
:class:`RealRoot` (a root of a squarefree real polynomial pinned down by an
open isolating interval).  Orders and signs at algebraic points are decided
by interval refinement; each decision may spend at most ``max_refine()``
halvings before giving up with :class:`~herglotz.errors.Undecided`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Any, Union

from gmpy2 import mpq

from .arith import ONE, ZERO, GaussRat, max_refine, to_rat
from .errors import EndpointIsRoot, MalformedInput, NotSharpReal, Undecided, ZeroPolynomial
from .poly import Poly, cauchy_bound, gcd, primitive_real, squarefree_decompose, squarefree_part

_MPQ = type(ZERO)


def _sign(v: Any) -> int:
    return (v > 0) - (v < 0)


def _hsign(coeffs: list[int], x: mpq) -> int:
    """Sign of an integer polynomial at the rational x (homogeneous Horner)."""
    a, b = int(x.numerator), int(x.denominator)
    acc = 0
    bp = 1
    for c in reversed(coeffs):
        acc = acc * a + c * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def _neg_prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of -(|lc b|^k · a mod b): a positive multiple of -rem(a, b)."""
    lc = b[-1]
    k = len(a) - len(b) + 1
    r = [c * abs(lc) ** k for c in a]
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        q = r[i] // lc
        if q:
            for j in range(db + 1):
                r[i - db + j] -= q * b[j]
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    g = 0
    for v in r:
        g = math.gcd(g, v)
    return [-v // g for v in r] if g else []


class SturmChain:
    """Sturm sequence of a nonzero real polynomial, stored as integer polynomials."""

    __slots__ = ("chain",)

    def __init__(self, p: Poly):
        if p.is_zero():
            raise ZeroPolynomial("Sturm chain of the zero polynomial")
        if not p.is_real():
            raise NotSharpReal("Sturm chain needs real coefficients")
        chain = [primitive_real(p)]
        if p.degree >= 1:
            chain.append(primitive_real(p.derivative()))
            a, b = chain
            while len(b) > 1:
                r = _neg_prem(a, b)
                if not r:
                    break
                chain.append(r)
                a, b = b, r
        self.chain = chain

    def variations(self, x: mpq) -> int:
        count = 0
        last = 0
        for c in self.chain:
            s = _hsign(c, x)
            if s:
                if last and s != last:
                    count += 1
                last = s
        return count

    def count(self, a: mpq, b: mpq) -> int:
        """Distinct roots in (a, b); endpoints must not be roots."""
        return self.variations(a) - self.variations(b)


def _require_real(p: Poly) -> Poly:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if not p.is_real():
        m = p.monic()
        if not m.is_real():
            raise NotSharpReal("polynomial does not have real coefficients")
        return m
    return p


def sturm_count(p: Poly, a: Any, b: Any) -> int:
    """Number of distinct real roots of ``p`` in the open interval (a, b)."""
    p = _require_real(p)
    a, b = to_rat(a), to_rat(b)
    if not a < b:
        raise ValueError("sturm_count needs a < b")
    if p(a) == 0 or p(b) == 0:
        raise EndpointIsRoot(f"endpoint is a root of {p}")
    return SturmChain(p).count(a, b)


def all_roots_real(p: Poly) -> bool:
    """True iff every complex root of ``p`` is real."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if p.degree <= 0:
        return True
    m = p.monic()
    if not m.is_real():
        return False
    s = squarefree_part(m)
    bound = cauchy_bound(s)
    return SturmChain(s).count(-bound, bound) == s.degree


# ---------------------------------------------------------------------------
# RealRoot
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RealRoot:
    """The unique root of ``defining_poly`` inside the open ``interval``.

    ``defining_poly`` is real, monic and squarefree, so it changes sign across
    the interval; ``multiplicity`` records the multiplicity in whatever
    polynomial the root was isolated from.
    """

    defining_poly: Poly
    interval: tuple[mpq, mpq]
    multiplicity: int = 1

    @property
    def lo(self) -> mpq:
        return self.interval[0]

    @property
    def hi(self) -> mpq:
        return self.interval[1]

    @property
    def rational(self) -> mpq | None:
        p = self.defining_poly
        if p.degree == 1:
            return -p.re[0] / p.re[1]
        return None

    def refine(self) -> RealRoot:
        """Halve the isolating interval."""
        lo, hi = self.interval
        p = self.defining_poly
        m = (lo + hi) / 2
        vm = p(m)
        if vm == 0:
            # only reachable for a rational root
            w = (hi - lo) / 4
            return RealRoot(Poly._raw([-m, ONE]), (m - w, m + w), self.multiplicity)
        if _sign(p(lo)) == _sign(vm):
            return RealRoot(p, (m, hi), self.multiplicity)
        return RealRoot(p, (lo, m), self.multiplicity)

    def approx(self, rel: float = 1e-15) -> float:
        r = self.rational
        if r is not None:
            return float(r)
        x = self
        while True:
            lo, hi = x.interval
            scale = max(1.0, abs(float(lo)), abs(float(hi)))
            if float(hi - lo) <= rel * scale:
                return float((lo + hi) / 2)
            x = x.refine()

    def with_multiplicity(self, k: int) -> RealRoot:
        return RealRoot(self.defining_poly, self.interval, k)

    def __repr__(self) -> str:
        r = self.rational
        if r is not None:
            return f"RealRoot({r})"
        return f"RealRoot({self.defining_poly}, ({self.lo}, {self.hi}))"

    def __float__(self) -> float:
        return self.approx()


Point = Union[mpq, RealRoot]


def as_point(x: Point) -> Point:
    """Collapse rational RealRoots to ``mpq``."""
    if isinstance(x, RealRoot):
        r = x.rational
        if r is not None:
            return r
    return x


def point_float(x: Point) -> float:
    if isinstance(x, RealRoot):
        return x.approx()
    return float(x)


def _cmp_root_rat(a: RealRoot, r: mpq, budget: int | None) -> int:
    if a.rational is not None:
        return _sign(a.rational - r)
    if a.defining_poly(r) == 0 and a.lo < r < a.hi:
        return 0
    steps = 0
    while a.lo < r < a.hi:
        if budget is not None and steps >= budget:
            raise Undecided("could not separate algebraic point from rational within refinement cap")
        a = a.refine()
        steps += 1
        if a.rational is not None:
            return _sign(a.rational - r)
    return 1 if a.lo >= r else -1


def _cmp_roots(a: RealRoot, b: RealRoot, budget: int | None) -> int:
    ra, rb = a.rational, b.rational
    if ra is not None:
        return -_cmp_root_rat(b, ra, budget)
    if rb is not None:
        return _cmp_root_rat(a, rb, budget)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo < hi:
        if a.defining_poly == b.defining_poly:
            p = a.defining_poly
            if _sign(p(lo)) != _sign(p(hi)):
                return 0
        else:
            g = gcd(a.defining_poly, b.defining_poly)
            if g.degree >= 1 and _sign(g(lo)) * _sign(g(hi)) < 0:
                return 0
    steps = 0
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if budget is not None and steps >= budget:
            raise Undecided("could not order two algebraic points within refinement cap")
        a, b = a.refine(), b.refine()
        steps += 1
        if a.rational is not None or b.rational is not None:
            return _cmp_roots(a, b, None if budget is None else budget - steps)


def compare_points(x: Point, y: Point, *, capped: bool = True) -> int:
    """-1, 0, 1 as x <, =, > y (exact)."""
    budget = max_refine() if capped else None
    if isinstance(x, RealRoot):
        if isinstance(y, RealRoot):
            return _cmp_roots(x, y, budget)
        return _cmp_root_rat(x, to_rat(y), budget)
    if isinstance(y, RealRoot):
        return -_cmp_root_rat(y, to_rat(x), budget)
    return _sign(to_rat(x) - to_rat(y))


def sort_points(points: list[Point], *, capped: bool = True) -> list[Point]:
    return sorted(points, key=cmp_to_key(lambda u, v: compare_points(u, v, capped=capped)))


def sign_at(g: Poly, x: Point) -> int:
    """Exact sign of the real polynomial ``g`` at the point ``x``."""
    if not g.is_real():
        raise NotSharpReal("sign_at needs a real polynomial")
    if isinstance(x, RealRoot) and x.rational is not None:
        x = x.rational
    if not isinstance(x, RealRoot):
        return _sign(g(to_rat(x)))
    if g.is_zero():
        return 0
    if g.degree == 0:
        return _sign(g.re[0])
    p = x.defining_poly
    h = gcd(g, p)
    if h.degree >= 1 and _sign(h(x.lo)) * _sign(h(x.hi)) < 0:
        return 0
    chain = SturmChain(squarefree_part(g))
    budget = max_refine()
    steps = 0
    while True:
        lo, hi = x.interval
        vlo, vhi = g(lo), g(hi)
        if vlo and vhi and chain.count(lo, hi) == 0:
            return _sign(vlo)
        if steps >= budget:
            raise Undecided("sign of polynomial at algebraic point not certified within refinement cap")
        x = x.refine()
        steps += 1
        if x.rational is not None:
            return _sign(g(x.rational))


def eval_at(g: Poly, x: Point) -> GaussRat:
    """Exact value of ``g`` at a rational point."""
    if isinstance(x, RealRoot):
        r = x.rational
        if r is None:
            raise TypeError("eval_at needs a rational point; use sign_at for algebraic points")
        x = r
    v = g(to_rat(x))
    return v if isinstance(v, GaussRat) else GaussRat(v)


def vanishes_at(g: Poly, x: Point) -> bool:
    """Whether the (possibly complex) polynomial ``g`` is zero at ``x``."""
    return sign_at(g.real_part(), x) == 0 and sign_at(g.imag_part(), x) == 0


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------


def _isolate_squarefree(p: Poly) -> list[tuple[mpq, mpq]]:
    chain = SturmChain(p)
    bound = cauchy_bound(p)
    lo, hi = -bound, bound
    out: list[tuple[mpq, mpq]] = []
    stack = [(lo, hi, chain.variations(lo), chain.variations(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        k = 1
        while p(m) == 0:
            m = a + (b - a) * mpq(8 + (k if k % 2 else -k), 17)
            k += 1
        vm = chain.variations(m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out.sort()
    return out


def _float_root(coeffs: list[int], lo: mpq, hi: mpq) -> float:
    """Float bisection for the sign change in (lo, hi); only a candidate generator."""
    big = max(abs(c) for c in coeffs)
    fc = [c / big for c in coeffs]

    def f(x: float) -> float:
        acc = 0.0
        for c in reversed(fc):
            acc = acc * x + c
        return acc

    a, b = float(lo), float(hi)
    fa = f(a)
    for _ in range(80):
        m = (a + b) / 2
        fm = f(m)
        if fm == 0 or m in (a, b):
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a + b) / 2


def _probe_rational(coeffs: list[int], lo: mpq, hi: mpq, max_steps: int = 96) -> mpq | None:
    """Rational root of the integer polynomial inside (lo, hi), if any.

    Candidates come from the continued-fraction convergents of a float
    approximation and are confirmed exactly.  Failing that, exact bisection
    runs until the interval is narrower than 1/(2 lead^2), where the closest
    fraction with denominator <= lead is the only candidate; that search is
    skipped when it would need more than ``max_steps`` halvings.
    """
    lead = abs(coeffs[-1])
    const = coeffs[0]
    if const == 0 and lo < 0 < hi:
        return ZERO
    x = Fraction(_float_root(coeffs, lo, hi))
    for cap in (16, 1024, 10**6, 10**9):
        cand = x.limit_denominator(min(cap, lead))
        r = mpq(cand.numerator, cand.denominator)
        if lo < r < hi and lead % cand.denominator == 0 and _hsign(coeffs, r) == 0:
            return r
        if cap >= lead:
            break
    target = mpq(1, 2 * lead * lead)
    if (hi - lo) / target > 2**max_steps:
        return None
    slo = _hsign(coeffs, lo)
    while hi - lo >= target:
        m = (lo + hi) / 2
        sm = _hsign(coeffs, m)
        if sm == 0:
            return m
        if sm == slo:
            lo = m
        else:
            hi = m
    mid = (lo + hi) / 2
    cand = Fraction(int(mid.numerator), int(mid.denominator)).limit_denominator(lead)
    r = mpq(cand.numerator, cand.denominator)
    if lo < r < hi and _hsign(coeffs, r) == 0:
        return r
    return None


def _separate(roots: list[RealRoot]) -> list[RealRoot]:
    """Refine until all isolating intervals are pairwise disjoint, then sort."""
    roots = list(roots)
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: r.lo)
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.hi > b.lo:
                roots[i], roots[i + 1] = a.refine(), b.refine()
                changed = True
    roots.sort(key=lambda r: r.lo)
    return roots


def isolate_real_roots(p: Poly) -> list[RealRoot]:
    """One RealRoot per distinct real root of ``p``, sorted, disjoint intervals.

    Rational roots are detected and carried with a linear defining polynomial.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    return list(_isolate_cached(p))


@lru_cache(maxsize=4096)
def _isolate_cached(p: Poly) -> tuple[RealRoot, ...]:
    # minors of one matrix share many numerators and denominators
    found: list[RealRoot] = []
    for f, k in squarefree_decompose(p):
        fr = f if f.is_real() else gcd(f.real_part(), f.imag_part())
        if fr.degree < 1:
            continue
        intervals = _isolate_squarefree(fr)
        coeffs = primitive_real(fr)
        rational: list[tuple[mpq, tuple[mpq, mpq]]] = []
        irrational: list[tuple[mpq, mpq]] = []
        for lo, hi in intervals:
            r = _probe_rational(coeffs, lo, hi)
            if r is None:
                irrational.append((lo, hi))
            else:
                rational.append((r, (lo, hi)))
        rest = fr
        for r, iv in rational:
            lin = Poly._raw([-r, ONE])
            rest = rest.exact_div(lin)
            found.append(RealRoot(lin, iv, k))
        rest = rest.monic()
        for iv in irrational:
            found.append(RealRoot(rest, iv, k))
    return tuple(_separate(found))


def real_roots_points(p: Poly) -> list[tuple[Point, int]]:
    """Sorted (point, multiplicity) pairs with rational roots as ``mpq``."""
    return [(as_point(r), r.multiplicity) for r in isolate_real_roots(p)]


# ---------------------------------------------------------------------------
# JSON forms of points
# ---------------------------------------------------------------------------


def point_to_json(x: Point) -> Any:
    x = as_point(x)
    if isinstance(x, RealRoot):
        return {
            "poly": [str(c) for c in x.defining_poly.re],
            "interval": [str(x.lo), str(x.hi)],
        }
    return str(x)


def point_from_json(obj: Any) -> Point:
    if isinstance(obj, dict):
        try:
            coeffs = obj["poly"]
            lo, hi = obj["interval"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad algebraic point {obj!r}") from exc
        p = Poly.real(coeffs)
        lo, hi = to_rat(lo), to_rat(hi)
        if p.degree < 1 or not lo < hi:
            raise MalformedInput(f"bad algebraic point {obj!r}")
        p = squarefree_part(p)
        if p(lo) == 0 or p(hi) == 0 or SturmChain(p).count(lo, hi) != 1:
            raise MalformedInput(f"interval does not isolate exactly one root: {obj!r}")
        coeffs_int = primitive_real(p)
        r = _probe_rational(coeffs_int, lo, hi)
        if r is not None:
            return r
        return RealRoot(p, (lo, hi))
    return to_rat(obj)
