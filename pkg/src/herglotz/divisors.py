"""Integer-valued divisor functions on the real line with finite support."""

from __future__ import annotations

from functools import cmp_to_key
from itertools import accumulate
from typing import Any, Iterable, Iterator

from .arith import to_rat
from .errors import EndpointOnSupport, MalformedInput, NonRealRoots, ZeroFunction
from .poly import Poly
from .ratfn import RatFn
from .roots import (
    Point,
    all_roots_real,
    as_point,
    compare_points,
    point_float,
    point_from_json,
    point_to_json,
    real_roots_points,
)


class DivisorFn:
    """Sorted support points with nonzero integer values.

    Distinct algebraic numbers always separate after finitely many
    refinements, so construction orders points without a refinement cap.
    """

    __slots__ = ("support",)

    def __init__(self, items: Iterable[tuple[Point, int]] = (), *, _sorted: bool = False):
        pairs = [(as_point(p), int(v)) for p, v in items]
        if not _sorted:
            pairs = _merge_sorted(_sort_pairs(pairs))
        self.support: tuple[tuple[Point, int], ...] = tuple((p, v) for p, v in pairs if v)

    @property
    def points(self) -> list[Point]:
        return [p for p, _ in self.support]

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.support]

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self) -> Iterator[tuple[Point, int]]:
        return iter(self.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def __call__(self, x: Any) -> int:
        for p, v in self.support:
            if compare_points(p, x, capped=False) == 0:
                return v
        return 0

    def __add__(self, other: DivisorFn) -> DivisorFn:
        merged = _merge_two(list(self.support), list(other.support))
        return DivisorFn(merged, _sorted=True)

    def __neg__(self) -> DivisorFn:
        return DivisorFn([(p, -v) for p, v in self.support], _sorted=True)

    def __sub__(self, other: DivisorFn) -> DivisorFn:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorFn):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(
            v == w and compare_points(p, q, capped=False) == 0
            for (p, v), (q, w) in zip(self.support, other.support)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"({point_float(p):.6g}, {v:+d})" for p, v in self.support)
        return f"DivisorFn([{body}])"

    def to_json(self) -> list[dict[str, Any]]:
        return [{"point": point_to_json(p), "value": v} for p, v in self.support]

    @classmethod
    def from_json(cls, data: Any) -> DivisorFn:
        if not isinstance(data, list):
            raise MalformedInput("divisor must be a JSON array")
        items = []
        for entry in data:
            if not isinstance(entry, dict) or set(entry) != {"point", "value"}:
                raise MalformedInput(f"bad divisor entry {entry!r}")
            value = entry["value"]
            if isinstance(value, bool) or not isinstance(value, int):
                raise MalformedInput(f"divisor value must be an integer: {value!r}")
            items.append((point_from_json(entry["point"]), value))
        pts = [p for p, _ in items]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if compare_points(pts[i], pts[j], capped=False) == 0:
                    raise MalformedInput("repeated support point in divisor")
        return cls(items)


def _sort_pairs(pairs: list[tuple[Point, int]]) -> list[tuple[Point, int]]:
    return sorted(pairs, key=cmp_to_key(lambda u, v: compare_points(u[0], v[0], capped=False)))


def _merge_sorted(pairs: list[tuple[Point, int]]) -> list[tuple[Point, int]]:
    """Combine equal neighbours of an already sorted list."""
    out: list[tuple[Point, int]] = []
    for p, v in pairs:
        if out and compare_points(out[-1][0], p, capped=False) == 0:
            out[-1] = (out[-1][0], out[-1][1] + v)
        else:
            out.append((p, v))
    return out


def _merge_two(a: list[tuple[Point, int]], b: list[tuple[Point, int]]) -> list[tuple[Point, int]]:
    out: list[tuple[Point, int]] = []
    i = j = 0
    while i < len(a) and j < len(b):
        c = compare_points(a[i][0], b[j][0], capped=False)
        if c < 0:
            out.append(a[i])
            i += 1
        elif c > 0:
            out.append(b[j])
            j += 1
        else:
            out.append((a[i][0], a[i][1] + b[j][1]))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def divisor_of(f: RatFn) -> DivisorFn:
    """Zero multiplicities minus pole multiplicities of ``f``."""
    if not isinstance(f, RatFn):
        f = RatFn(f)
    if f.is_zero():
        raise ZeroFunction("divisor of the zero function")
    for part in (f.num, f.den):
        if not all_roots_real(part):
            raise NonRealRoots(f"{part} has non-real roots")
    zeros = [(p, k) for p, k in real_roots_points(f.num)] if f.num.degree > 0 else []
    poles = [(p, -k) for p, k in real_roots_points(f.den)] if f.den.degree > 0 else []
    return DivisorFn(_merge_two(zeros, poles), _sorted=True)


def divisor_of_poly(p: Poly) -> DivisorFn:
    return divisor_of(RatFn.from_poly(p))


def interval_sum(theta: DivisorFn, a: Any, b: Any) -> int:
    """Sum of the values at support points strictly inside (a, b)."""
    a, b = to_rat(a), to_rat(b)
    if not a < b:
        raise ValueError("interval_sum needs a < b")
    total = 0
    for p, v in theta.support:
        ca = compare_points(p, a)
        cb = compare_points(p, b)
        if ca == 0 or cb == 0:
            raise EndpointOnSupport(f"endpoint coincides with support point {point_float(p):.6g}")
        if ca > 0 and cb < 0:
            total += v
    return total


def prefix_levels(values: Iterable[int]) -> list[int]:
    """The cumulative step function: level left of every point, then after each."""
    return list(accumulate(values, initial=0))


def min_interlacing_order(theta: DivisorFn | Iterable[int]) -> int:
    """Largest |sum| over contiguous runs of support values."""
    values = theta.values if isinstance(theta, DivisorFn) else list(theta)
    levels = prefix_levels(values)
    return max(levels) - min(levels)


def is_n_interlacing(theta: DivisorFn, n: int) -> bool:
    return min_interlacing_order(theta) <= n


def colour_decompose(theta: DivisorFn) -> list[DivisorFn]:
    """Split ``theta`` into 1-interlacing parts with values in {-1, +1}.

    With Θ the left-anchored cumulative sum, part j takes +1 where Θ jumps
    upward across level j and -1 where it falls across it.
    """
    levels = prefix_levels(theta.values)
    lo, hi = min(levels), max(levels)
    parts = []
    for j in range(lo, hi):
        items = []
        for k, (p, _) in enumerate(theta.support):
            before, after = levels[k], levels[k + 1]
            if after > j >= before:
                items.append((p, 1))
            elif before > j >= after:
                items.append((p, -1))
        parts.append(DivisorFn(items, _sorted=True))
    return parts
