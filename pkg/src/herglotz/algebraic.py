"""Values g(α)/h(α) of rational functions at real algebraic points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .arith import to_rat
from .errors import Undecided
from .poly import Poly
from .roots import Point, RealRoot, point_float, point_to_json, sign_at


@dataclass(frozen=True, eq=False)
class AlgebraicValue:
    """The real number num(at)/den(at), with real polynomials num and den."""

    num: Poly
    den: Poly
    at: RealRoot

    def sign(self) -> int:
        s = sign_at(self.num, self.at)
        if s == 0:
            return 0
        d = sign_at(self.den, self.at)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the algebraic point")
        return s * d

    def __float__(self) -> float:
        x = point_float(self.at)
        return float(self.num.eval_float(x).real / self.den.eval_float(x).real)

    def to_json(self) -> dict[str, Any]:
        return {
            "num": [str(c) for c in self.num.re],
            "den": [str(c) for c in self.den.re],
            "at": point_to_json(self.at),
        }


def value_at(num: Poly, den: Poly, at: Point) -> Any:
    """Exact mpq when ``at`` is rational, otherwise an AlgebraicValue."""
    if isinstance(at, RealRoot):
        r = at.rational
        if r is None:
            return AlgebraicValue(num, den, at)
        at = r
    r = to_rat(at)
    return num(r) / den(r)


def sign_of(v: Any) -> int:
    if isinstance(v, AlgebraicValue):
        return v.sign()
    return (v > 0) - (v < 0)


def try_sign(v: Any) -> int | None:
    try:
        return sign_of(v)
    except Undecided:
        return None


def value_json(v: Any) -> Any:
    if isinstance(v, AlgebraicValue):
        return v.to_json()
    return str(v)
