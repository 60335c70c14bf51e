"""JSON input formats: numbers, polynomials, rational functions, matrices."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .arith import parse_number, to_rat
from .divisors import DivisorFn
from .errors import MalformedInput
from .linalg import MatRatFn, ratfn_to_json
from .poly import Poly
from .ratfn import RatFn
from .roots import point_from_json, point_to_json
from .scalar import InterlacingData


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from exc


def parse_poly(data: Any) -> Poly:
    """Ascending coefficient array; [] is the zero polynomial."""
    if not isinstance(data, list):
        raise MalformedInput("polynomial must be an array of coefficients")
    return Poly([parse_number(c) for c in data])


def dump_poly(p: Poly) -> list[Any]:
    from .arith import dump_number

    return [dump_number(c) for c in p.coeffs]


def parse_ratfn(data: Any) -> RatFn:
    """{"num": [...], "den": [...]} (den defaults to [1]) or a bare coefficient array."""
    if isinstance(data, list):
        return RatFn.from_poly(parse_poly(data))
    if isinstance(data, (int, str)) and not isinstance(data, bool):
        return RatFn.const(parse_number(data))
    if not isinstance(data, dict) or "num" not in data or set(data) - {"num", "den"}:
        raise MalformedInput(f"bad rational function {data!r}")
    num = parse_poly(data["num"])
    den = parse_poly(data.get("den", [1]))
    if den.is_zero():
        raise MalformedInput("zero denominator")
    return RatFn(num, den)


def parse_matrix(data: Any) -> MatRatFn:
    if not isinstance(data, dict) or set(data) != {"n", "entries"}:
        raise MalformedInput('matrix must be {"n": int, "entries": [[...]]}')
    n = data["n"]
    rows = data["entries"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MalformedInput("n must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise MalformedInput(f"entries must be {n} rows of {n} entries")
    return MatRatFn([[parse_ratfn(e) for e in r] for r in rows])


def dump_matrix(M: MatRatFn) -> dict[str, Any]:
    return M.to_json()


def parse_divisor(data: Any) -> DivisorFn:
    return DivisorFn.from_json(data)


def parse_interlacing(data: Any) -> InterlacingData:
    if not isinstance(data, dict) or set(data) - {"zeros", "poles", "scale"}:
        raise MalformedInput('interlacing data must be {"zeros": [...], "poles": [...], "scale": c}')
    zeros = data.get("zeros", [])
    poles = data.get("poles", [])
    if not isinstance(zeros, list) or not isinstance(poles, list):
        raise MalformedInput("zeros and poles must be arrays")
    return InterlacingData(
        [point_from_json(p) for p in zeros],
        [point_from_json(p) for p in poles],
        to_rat(data.get("scale", 1)),
    )


def dump_interlacing(d: InterlacingData) -> dict[str, Any]:
    return {
        "zeros": [point_to_json(p) for p in d.zeros],
        "poles": [point_to_json(p) for p in d.poles],
        "scale": str(d.scale),
    }


__all__ = [
    "dump_interlacing",
    "dump_matrix",
    "dump_poly",
    "load_json",
    "parse_divisor",
    "parse_interlacing",
    "parse_matrix",
    "parse_poly",
    "parse_ratfn",
    "ratfn_to_json",
]
