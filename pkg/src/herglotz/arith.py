"""Rationals, Gaussian rationals and their text forms.

``Rat`` is gmpy2's ``mpq`` (GMP rationals, always in lowest terms with a
positive denominator).  ``GaussRat`` is a thin immutable pair of them.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
from fractions import Fraction
from typing import Any, Iterator

from gmpy2 import mpq, mpz

from .errors import MalformedInput

Rat = mpq
ZERO = mpq(0)
ONE = mpq(1)

DEFAULT_MAX_REFINE = 64

_refine_cap: contextvars.ContextVar[int | None] = contextvars.ContextVar("refine_cap", default=None)


def max_refine() -> int:
    """Halving budget for one sign/order decision.

    An explicit ``refinement_cap`` context wins, then ``HERGLOTZ_MAX_REFINE``,
    then 64.
    """
    cap = _refine_cap.get()
    if cap is not None:
        return cap
    env = os.environ.get("HERGLOTZ_MAX_REFINE")
    if env:
        try:
            value = int(env)
        except ValueError:
            value = 0
        if value >= 1:
            return value
    return DEFAULT_MAX_REFINE


@contextlib.contextmanager
def refinement_cap(cap: int) -> Iterator[None]:
    if cap < 1:
        raise ValueError("refinement cap must be >= 1")
    token = _refine_cap.set(cap)
    try:
        yield
    finally:
        _refine_cap.reset(token)


def to_rat(value: Any) -> mpq:
    """Coerce an int, mpq, Fraction or "a/b" string to ``Rat``."""
    if isinstance(value, bool):
        raise MalformedInput(f"not a rational: {value!r}")
    if isinstance(value, (int, type(ZERO))):
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return mpq(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad rational literal {value!r}") from exc
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return mpq(int(value.numerator), int(value.denominator))
    raise MalformedInput(f"not a rational: {value!r}")


def format_rat(r: mpq) -> str:
    return str(mpq(r))


# operands GaussRat arithmetic absorbs; anything else gets a chance to handle the operation
_SCALARS = (int, type(ZERO), type(mpz(0)), Fraction)


class GaussRat:
    """Exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = re if type(re) is type(ZERO) else to_rat(re)
        self.im = im if type(im) is type(ZERO) else to_rat(im)

    @classmethod
    def coerce(cls, value: Any) -> GaussRat:
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, complex):
            raise MalformedInput("floating complex values are not exact")
        return cls(to_rat(value))

    def __add__(self, other: Any) -> GaussRat:
        if not isinstance(other, GaussRat):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> GaussRat:
        if not isinstance(other, GaussRat):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = GaussRat.coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Any) -> GaussRat:
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return GaussRat.coerce(other) - self

    def __mul__(self, other: Any) -> GaussRat:
        if not isinstance(other, GaussRat):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = GaussRat.coerce(other)
            return GaussRat(self.re * other.re, self.im * other.re)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other: Any) -> GaussRat:
        if not isinstance(other, GaussRat):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = GaussRat.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> GaussRat:
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return GaussRat.coerce(other) * self.inverse()

    def __neg__(self) -> GaussRat:
        return GaussRat(-self.re, -self.im)

    def __pos__(self) -> GaussRat:
        return self

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def norm(self) -> mpq:
        """Squared modulus."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, type(ZERO))):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussRat({format_gauss(self)!r})"

    def __str__(self) -> str:
        return format_gauss(self)


I = GaussRat(0, 1)


def format_gauss(z: GaussRat) -> str:
    if not z.im:
        return str(z.re)
    if not z.re:
        return f"{z.im}i"
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{abs(z.im)}i"


def parse_number(value: Any) -> GaussRat:
    """Parse ``"a/b"``, an int, or ``{"re": "a/b", "im": "c/d"}``."""
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise MalformedInput(f"unexpected keys in complex literal: {sorted(unknown)}")
        return GaussRat(to_rat(value.get("re", 0)), to_rat(value.get("im", 0)))
    return GaussRat(to_rat(value))


def dump_number(z: GaussRat | mpq | int) -> Any:
    """Inverse of :func:`parse_number`; real values become plain strings."""
    if isinstance(z, GaussRat):
        if not z.im:
            return str(z.re)
        return {"re": str(z.re), "im": str(z.im)}
    return str(mpq(z))
