"""Scalar rational Herglotz functions: verification, synthesis, factorization."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Any, Iterable, Sequence

import numpy as np

from .algebraic import sign_of, value_at, value_json
from .arith import I, ONE, ZERO, GaussRat, Rat, to_rat
from .divisors import DivisorFn, colour_decompose, divisor_of, min_interlacing_order
from .errors import (
    InterlacingViolated,
    IrrationalCoefficients,
    NotNInterlacing,
    NotSharpReal,
    RootNearAxis,
    SingularOnContour,
    Undecided,
    ZeroFunction,
)
from .poly import Poly, gcd, invmod, is_squarefree
from .ratfn import RatFn
from .roots import (
    Point,
    RealRoot,
    all_roots_real,
    as_point,
    compare_points,
    isolate_real_roots,
    point_float,
    point_to_json,
)
from .verdict import FAIL, PASS, UNKNOWN, Check, Outcome, Verdict, from_checks

# ---------------------------------------------------------------------------
# Partial fractions with real simple poles
# ---------------------------------------------------------------------------


@dataclass
class ScalarPFRep:
    """q(z) = c + d z + Σ a_j (1/(z_j - z) - z_j/(1 + z_j²)).

    ``groups`` keeps, for every irreducible-over-the-isolation factor p of
    the denominator, the numerator u with Σ_{p(z_j)=0} a_j/(z_j - z) = u/p,
    so the representation can be rebuilt exactly even at algebraic poles.
    """

    c: Rat
    d: Rat
    terms: list[tuple[Point, Any]]
    groups: list[tuple[Poly, Poly]] = field(default_factory=list, repr=False)

    def to_ratfn(self) -> RatFn:
        out = RatFn.const(self.c) + RatFn.from_poly(Poly.real([0, self.d]))
        for p, u in self.groups:
            s = RatFn(u, p)
            out = out + s - s(I).re
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "c": str(self.c),
            "d": str(self.d),
            "terms": [{"pole": point_to_json(z), "weight": value_json(a)} for z, a in self.terms],
        }


def _pole_groups(den: Poly) -> list[tuple[Poly, list[RealRoot]]]:
    """Distinct real roots of a squarefree real-rooted ``den``, grouped by defining polynomial."""
    groups: list[tuple[Poly, list[RealRoot]]] = []
    for r in isolate_real_roots(den):
        for p, members in groups:
            if p == r.defining_poly:
                members.append(r)
                break
        else:
            groups.append((r.defining_poly, [r]))
    return groups


def scalar_partial_fractions(q: RatFn) -> ScalarPFRep:
    """Decompose a #-real q with squarefree real-rooted denominator."""
    num, den = q.num, q.den
    poly_part, _ = num.divmod(den)
    d = ZERO
    if poly_part.degree >= 1:
        d = poly_part.coeff(1).re
    terms: list[tuple[Point, Any]] = []
    groups: list[tuple[Poly, Poly]] = []
    for p, members in _pole_groups(den) if den.degree > 0 else []:
        rest = den.exact_div(p)
        u = (num * invmod(rest, p)) % p
        dp = p.derivative()
        for r in members:
            terms.append((as_point(r), value_at(-u, dp, r)))
        groups.append((p, u))
    c = q(I).re
    return ScalarPFRep(c, d, terms, groups)


# ---------------------------------------------------------------------------
# Products of linear factors at real points
# ---------------------------------------------------------------------------


def _point_key(points: Sequence[Point]) -> list[Point]:
    return sorted(points, key=cmp_to_key(lambda u, v: compare_points(u, v, capped=False)))


@dataclass(frozen=True)
class FactoredFn:
    """scale · ∏(a - z) / ∏(b - z) over real points a (zeros) and b (poles).

    Keeps the constant rational even when the points are algebraic.
    """

    scale: Rat
    zeros: tuple[Point, ...] = ()
    poles: tuple[Point, ...] = ()

    @classmethod
    def constant(cls, c: Any) -> FactoredFn:
        return cls(to_rat(c))

    def divisor(self) -> DivisorFn:
        return DivisorFn([(a, 1) for a in self.zeros] + [(b, -1) for b in self.poles])

    def sequence(self) -> list[tuple[Point, int]]:
        """Merged sorted points tagged +1 (zero) / -1 (pole)."""
        tagged = [(a, 1) for a in self.zeros] + [(b, -1) for b in self.poles]
        return sorted(tagged, key=cmp_to_key(lambda u, v: compare_points(u[0], v[0], capped=False)))

    def herglotz_sign(self) -> int:
        """+1 if Herglotz, -1 if its negative is, for simple alternating points."""
        seq = self.sequence()
        for (x, s), (y, t) in zip(seq, seq[1:]):
            if s == t or compare_points(x, y, capped=False) == 0:
                raise InterlacingViolated("zeros and poles do not strictly alternate")
        sign = 1 if self.scale > 0 else -1
        if seq and seq[0][1] == 1:
            sign = -sign
        return sign

    def is_herglotz(self) -> bool:
        if self.scale == 0:
            return not self.zeros and not self.poles
        try:
            return self.herglotz_sign() > 0
        except InterlacingViolated:
            return False

    def __mul__(self, other: FactoredFn) -> FactoredFn:
        return FactoredFn(self.scale * other.scale, self.zeros + other.zeros, self.poles + other.poles)

    def __neg__(self) -> FactoredFn:
        return FactoredFn(-self.scale, self.zeros, self.poles)

    def eval_float(self, z: complex) -> complex:
        v = complex(float(self.scale))
        for a in self.zeros:
            v *= point_float(a) - z
        for b in self.poles:
            v /= point_float(b) - z
        return v

    def to_ratfn(self) -> RatFn:
        """Exact rational function; needs whole conjugate sets of algebraic points."""
        return RatFn(_linear_product(self.zeros), _linear_product(self.poles)) * self.scale

    def to_json(self) -> dict[str, Any]:
        return {
            "scale": str(self.scale),
            "zeros": [point_to_json(a) for a in _point_key(self.zeros)],
            "poles": [point_to_json(b) for b in _point_key(self.poles)],
        }


def _linear_product(points: Iterable[Point]) -> Poly:
    """∏(x - z) over the points, as a polynomial with rational coefficients."""
    out = Poly.constant(1)
    pending: list[tuple[Poly, list[RealRoot]]] = []
    for x in points:
        x = as_point(x)
        if not isinstance(x, RealRoot):
            out = out * Poly.real([x, -1])
            continue
        for p, members in pending:
            if p == x.defining_poly:
                members.append(x)
                break
        else:
            pending.append((x.defining_poly, [x]))
    for p, members in pending:
        roots = isolate_real_roots(p)
        if len(roots) != p.degree:
            raise IrrationalCoefficients("defining polynomial has non-real roots")
        counts = [0] * len(roots)
        for x in members:
            idx = [k for k, r in enumerate(roots) if compare_points(x, r, capped=False) == 0]
            counts[idx[0]] += 1
        if len(set(counts)) != 1:
            raise IrrationalCoefficients("algebraic points do not form full conjugate sets")
        sign = -1 if p.degree % 2 else 1
        out = out * (p.scale(sign) ** counts[0])
    return out


def factored_from_ratfn(f: RatFn) -> FactoredFn:
    """Write a real-rooted #-real f as K·∏(a - z)/∏(b - z)."""
    if f.is_zero():
        raise ZeroFunction("zero function")
    theta = divisor_of(f)
    zeros: list[Point] = []
    poles: list[Point] = []
    for x, v in theta:
        (zeros if v > 0 else poles).extend([x] * abs(v))
    gap = f.num.degree - f.den.degree
    k = f.num.lc.re / f.den.lc.re
    if gap % 2:
        k = -k
    return FactoredFn(k, tuple(zeros), tuple(poles))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def check_scalar_herglotz(q: RatFn | FactoredFn) -> Verdict:
    """Decide whether a scalar rational function is Herglotz."""
    if isinstance(q, FactoredFn):
        return _check_factored(q)
    checks: list[Check] = []
    if not q.is_sharp_real():
        checks.append(Check("sharp_real", FAIL, witness={"function": str(q)}))
        return from_checks(checks)
    checks.append(Check("sharp_real", PASS))
    if q.is_zero():
        checks.append(Check("zero_function", PASS))
        return from_checks(checks, ScalarPFRep(ZERO, ZERO, []))
    gap = q.num.degree - q.den.degree
    if gap > 1:
        checks.append(Check("growth", FAIL, witness={"degree_excess": gap}))
        return from_checks(checks)
    checks.append(Check("growth", PASS))
    if not all_roots_real(q.den):
        checks.append(Check("real_poles", FAIL, witness={"denominator": str(q.den)}))
        return from_checks(checks)
    checks.append(Check("real_poles", PASS))
    if not is_squarefree(q.den):
        checks.append(Check("simple_poles", FAIL, witness={"denominator": str(q.den)}))
        return from_checks(checks)
    checks.append(Check("simple_poles", PASS))
    rep = scalar_partial_fractions(q)
    bad = False
    for z, a in rep.terms:
        try:
            s = sign_of(a)
        except Undecided:
            checks.append(Check("weight", UNKNOWN, witness={"pole": point_to_json(z)}))
            bad = True
            continue
        if s <= 0:
            checks.append(Check("weight", FAIL, witness={"pole": point_to_json(z), "value": value_json(a)}))
            bad = True
    if not bad:
        checks.append(Check("weight", PASS, witness={"poles": len(rep.terms)}))
    if rep.d < 0:
        checks.append(Check("linear_term", FAIL, witness={"value": str(rep.d)}))
    else:
        checks.append(Check("linear_term", PASS, witness={"value": str(rep.d)}))
    return from_checks(checks, rep)


def _check_factored(g: FactoredFn) -> Verdict:
    try:
        return check_scalar_herglotz(g.to_ratfn())
    except IrrationalCoefficients:
        pass
    try:
        ok = g.is_herglotz()
    except Undecided:
        return Verdict(Outcome.UNDECIDED, [Check("alternation", UNKNOWN)])
    result = PASS if ok else FAIL
    return Verdict(Outcome.ACCEPT if ok else Outcome.REJECT, [Check("alternation", result)], g)


# ---------------------------------------------------------------------------
# Synthesis from interlacing data
# ---------------------------------------------------------------------------


@dataclass
class InterlacingData:
    zeros: list[Point]
    poles: list[Point]
    scale: Rat = ONE

    def sequence(self) -> list[tuple[Point, int]]:
        tagged = [(as_point(a), 1) for a in self.zeros] + [(as_point(b), -1) for b in self.poles]
        return sorted(tagged, key=cmp_to_key(lambda u, v: compare_points(u[0], v[0], capped=False)))

    def validate(self) -> list[tuple[Point, int]]:
        if not self.scale > 0:
            raise InterlacingViolated("scale must be positive")
        seq = self.sequence()
        for (x, s), (y, t) in zip(seq, seq[1:]):
            if compare_points(x, y, capped=False) == 0:
                raise InterlacingViolated(f"repeated point {point_float(x):.6g}")
            if s == t:
                kind = "zeros" if s > 0 else "poles"
                raise InterlacingViolated(f"two consecutive {kind} near {point_float(x):.6g}")
        return seq


def synth_factored(data: InterlacingData) -> FactoredFn:
    """The Herglotz function with the given zeros, poles and positive scale.

    Pairs b < a contribute (1 - z/a)/(1 - z/b), or (a - z)/(b - z) when a or
    b is 0; a leading unmatched zero gives (a - z) and a trailing unmatched
    pole 1/(b - z).  The overall sign is then fixed to make the product
    Herglotz.
    """
    seq = data.validate()
    k = to_rat(data.scale)
    i = 0
    if seq and seq[0][1] == 1:
        i = 1
    while i + 1 < len(seq):
        b, a = seq[i][0], seq[i + 1][0]
        # the normalising constant b/a is only kept when it is rational
        if not isinstance(a, RealRoot) and not isinstance(b, RealRoot) and a != 0 and b != 0:
            k *= b / a
        i += 2
    g = FactoredFn(k, tuple(x for x, s in seq if s > 0), tuple(x for x, s in seq if s < 0))
    if g.herglotz_sign() < 0:
        g = -g
    return g


def synth_from_interlacing(data: InterlacingData) -> RatFn:
    return synth_factored(data).to_ratfn()


# ---------------------------------------------------------------------------
# Factorization into Herglotz factors
# ---------------------------------------------------------------------------


def factor_into_herglotz(f: RatFn, n: int) -> tuple[int, list[FactoredFn]]:
    """C ∈ {±1} and n Herglotz factors with f = C·q_1···q_n exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    if f.is_zero():
        raise ZeroFunction("cannot factor the zero function")
    if not f.is_sharp_real():
        raise NotSharpReal("f is not #-real")
    whole = factored_from_ratfn(f)
    theta = whole.divisor()
    order = min_interlacing_order(theta)
    if order > n:
        raise NotNInterlacing(f"divisor is {order}-interlacing, not {n}-interlacing")
    factors: list[FactoredFn] = []
    total_sign = 1 if whole.scale > 0 else -1
    for j, part in enumerate(colour_decompose(theta)):
        base = FactoredFn(ONE, tuple(x for x, v in part if v > 0), tuple(x for x, v in part if v < 0))
        sigma = base.herglotz_sign()
        total_sign *= sigma
        factors.append(FactoredFn(ONE * sigma, base.zeros, base.poles))
    while len(factors) < n:
        factors.append(FactoredFn(ONE))
    first = factors[0]
    factors[0] = FactoredFn(first.scale * abs(whole.scale), first.zeros, first.poles)
    return total_sign, factors


def product_identity_holds(f: RatFn, sign: int, factors: Sequence[FactoredFn]) -> bool:
    """Exact check that f = sign·∏ factors (constant and divisor both match)."""
    whole = factored_from_ratfn(f)
    prod = FactoredFn(to_rat(sign))
    for g in factors:
        prod = prod * g
    if prod.scale != whole.scale:
        return False
    return prod.divisor() == whole.divisor()


# ---------------------------------------------------------------------------
# Argument-principle oracle
# ---------------------------------------------------------------------------


def winding_oracle(f: RatFn, a: Any, b: Any, steps: int = 2048) -> float:
    """(1/2πi)∮ f'/f dz over the circle with diameter [a, b].

    The circle is split into its upper and lower arcs, each integrated with a
    composite trapezoid rule on ``steps`` nodes.
    """
    a, b = to_rat(a), to_rat(b)
    if not a < b:
        raise ValueError("winding_oracle needs a < b")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    for end in (a, b):
        if not f.num(end) or not f.den(end):
            raise SingularOnContour(f"f has a zero or pole at the endpoint {end}")
    if f.num.is_constant() and f.den.is_constant():
        return 0.0
    centre = float(a + b) / 2
    radius = float(b - a) / 2
    num = f.num.to_numpy()[::-1]
    den = f.den.to_numpy()[::-1]
    dnum = np.polyder(num)
    dden = np.polyder(den)
    total = 0.0 + 0.0j
    for t0 in (0.0, np.pi):
        t = np.linspace(t0, t0 + np.pi, steps)
        z = centre + radius * np.exp(1j * t)
        dz = 1j * radius * np.exp(1j * t)
        nv, dv = np.polyval(num, z), np.polyval(den, z)
        scale_n = np.polyval(np.abs(num), abs(centre) + radius)
        scale_d = np.polyval(np.abs(den), abs(centre) + radius)
        if np.min(np.abs(nv)) < 1e-13 * scale_n or np.min(np.abs(dv)) < 1e-13 * scale_d:
            raise SingularOnContour("f has a zero or pole on the contour")
        g = (np.polyval(dnum, z) / nv - np.polyval(dden, z) / dv) * dz
        total += _trapezoid(g, t)
    return float((total / (2j * np.pi)).real)


# ---------------------------------------------------------------------------
# Classical Hermite-Biehler
# ---------------------------------------------------------------------------


_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def classical_hb_check(A: Poly, B: Poly) -> Verdict:
    """Stability of A + iB via real, simple, interlacing roots and A'B - B'A > 0."""
    if A.is_zero() or B.is_zero():
        raise ZeroFunction("A and B must be nonzero")
    if not (A.is_real() and B.is_real()):
        raise NotSharpReal("A and B must have real coefficients")
    checks: list[Check] = []
    for name, p in (("A", A), ("B", B)):
        if not all_roots_real(p):
            checks.append(Check("real_roots", FAIL, witness={"polynomial": name}))
            return from_checks(checks)
        if not is_squarefree(p):
            checks.append(Check("simple_roots", FAIL, witness={"polynomial": name}))
            return from_checks(checks)
    checks.append(Check("real_simple_roots", PASS))
    if gcd(A, B).degree > 0:
        checks.append(Check("interlacing", FAIL, witness={"common_root": True}))
        return from_checks(checks)
    order = min_interlacing_order(divisor_of(RatFn(A, B)))
    if order > 1:
        checks.append(Check("interlacing", FAIL, witness={"order": order}))
        return from_checks(checks)
    checks.append(Check("interlacing", PASS))
    w = A.derivative() * B - B.derivative() * A
    x = ZERO
    while w(x) == 0 and not w.is_zero():
        x += 1
    value = w(x) if not w.is_zero() else ZERO
    value = value.re if isinstance(value, GaussRat) else value
    result = PASS if value > 0 else FAIL
    checks.append(Check("wronskian_sign", result, witness={"x": str(x), "value": str(value)}))
    return from_checks(checks)


def lower_halfplane_roots_oracle(p: Poly) -> int:
    """Numeric count of roots with negative imaginary part."""
    if p.is_zero():
        raise ZeroFunction("zero polynomial")
    coeffs = p.to_numpy()[::-1]
    roots = np.roots(coeffs) if p.degree > 0 else np.array([])
    if np.any(np.abs(roots.imag) < 1e-9):
        raise RootNearAxis("a root lies within 1e-9 of the real axis")
    return int(np.sum(roots.imag < 0))
