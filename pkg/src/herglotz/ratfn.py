"""Reduced rational functions num/den over Q(i) with a monic denominator."""

from __future__ import annotations

from typing import Any

from .arith import ONE, ZERO, GaussRat
from .poly import Poly, gcd

_ONE_POLY = Poly._raw([ONE])


class RatFn:
    """Canonical quotient of polynomials: gcd(num, den) = 1, den monic.

    Canonical form makes ``==`` a coefficient-wise comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Any = 0, den: Any = 1, *, _reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = _ONE_POLY
            elif den.degree > 0:
                g = gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            if lc != 1:
                inv = lc.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def z(cls) -> RatFn:
        return cls(Poly.x(), _ONE_POLY, _reduced=True)

    @classmethod
    def const(cls, c: Any) -> RatFn:
        return cls(Poly([c]), _ONE_POLY, _reduced=True)

    @classmethod
    def from_poly(cls, p: Poly) -> RatFn:
        return cls(p, _ONE_POLY, _reduced=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_sharp_real(self) -> bool:
        """f == f^#; with a monic denominator this means real coefficients."""
        return self.num.is_real() and self.den.is_real()

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError("not a constant function")
        return self.num.coeff(0)

    @property
    def degree_gap(self) -> int:
        """deg num - deg den (meaningless for the zero function)."""
        return self.num.degree - self.den.degree

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Any) -> RatFn:
        other = _as_ratfn(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        if self.den.degree == 0:
            return RatFn(self.num * other.den + other.num, other.den)
        if other.den.degree == 0:
            return RatFn(self.num + other.num * self.den, self.den)
        g = gcd(self.den, other.den)
        if g.degree == 0:
            return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)
        a = self.den.exact_div(g)
        b = other.den.exact_div(g)
        return RatFn(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFn:
        return RatFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other: Any) -> RatFn:
        return self + (-_as_ratfn(other))

    def __rsub__(self, other: Any) -> RatFn:
        return _as_ratfn(other) - self

    def __mul__(self, other: Any) -> RatFn:
        if not isinstance(other, RatFn):
            if isinstance(other, Poly):
                other = RatFn(other, _ONE_POLY, _reduced=True)
            else:
                c = GaussRat.coerce(other)
                if not c:
                    return RatFn()
                return RatFn(self.num.scale(c), self.den, _reduced=True)
        if self.num.is_zero() or other.num.is_zero():
            return RatFn()
        a, b, c, d = self.num, self.den, other.num, other.den
        if d.degree > 0 and a.degree > 0:
            g = gcd(a, d)
            if g.degree > 0:
                a, d = a.exact_div(g), d.exact_div(g)
        if b.degree > 0 and c.degree > 0:
            g = gcd(c, b)
            if g.degree > 0:
                c, b = c.exact_div(g), b.exact_div(g)
        num, den = a * c, b * d
        lc = den.lc
        if lc != 1:
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        return RatFn(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFn:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RatFn(self.den, self.num)

    def __truediv__(self, other: Any) -> RatFn:
        return self * _as_ratfn(other).inverse()

    def __rtruediv__(self, other: Any) -> RatFn:
        return _as_ratfn(other) * self.inverse()

    def __pow__(self, k: int) -> RatFn:
        if k < 0:
            return self.inverse() ** (-k)
        return RatFn(self.num ** k, self.den ** k, _reduced=True)

    def sharp(self) -> RatFn:
        """f^#(z) = conj(f(conj z)): conjugate every coefficient."""
        return RatFn(self.num.conj(), self.den.conj(), _reduced=True)

    def derivative(self) -> RatFn:
        return RatFn(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    # -- evaluation --------------------------------------------------------

    def __call__(self, z: Any) -> GaussRat:
        zz = z if isinstance(z, GaussRat) else GaussRat.coerce(z)
        d = self.den(zz)
        if not d:
            raise ZeroDivisionError(f"pole at {zz}")
        return self.num(zz) / d

    def is_pole(self, z: Any) -> bool:
        zz = z if isinstance(z, GaussRat) else GaussRat.coerce(z)
        return not self.den(zz)

    def eval_float(self, z: Any) -> Any:
        return self.num.eval_float(z) / self.den.eval_float(z)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, GaussRat, type(ZERO))):
            return self == _as_ratfn(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFn({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_ratfn(x: Any) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, Poly):
        return RatFn(x, _ONE_POLY, _reduced=True)
    return RatFn.const(x)


def sharp_conjugate(f: RatFn) -> RatFn:
    return f.sharp()


Z = RatFn.z()
