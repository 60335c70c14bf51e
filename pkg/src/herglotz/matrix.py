"""Matrix-valued rational Herglotz functions.

Representation extraction, the three equivalent characterizations
(residues, principal-minor interlacing, sampled imaginary parts) and the
determinant factorization into scalar Herglotz functions.
"""

from __future__ import annotations

import enum
from functools import cmp_to_key
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from scipy import integrate

from .arith import I, ZERO, GaussRat, Rat, dump_number, to_rat
from .divisors import divisor_of, min_interlacing_order
from .errors import (
    HermitianViolation,
    NonRealRoots,
    NonSimplePole,
    NotHermitian,
    NotVerifiedHerglotz,
    PoleOnGrid,
    Undecided,
)
from .linalg import (
    AlgebraicMatrix,
    CMat,
    MatRatFn,
    index_sets,
    principal_submatrix,
    psd_witness,
)
from .poly import Poly, gcd, invmod, is_squarefree, lcm, squarefree_decompose
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
    sign_at,
    vanishes_at,
)
from .verdict import (
    FAIL,
    PASS,
    UNKNOWN,
    VACUOUS,
    ZERO_MINOR,
    Check,
    Outcome,
    Verdict,
    from_checks,
)


class _Diverges(enum.Enum):
    DIVERGES = "diverges"


DIVERGES = _Diverges.DIVERGES


class _NotApplicable(enum.Enum):
    NOT_APPLICABLE = "not_applicable"


NotApplicable = _NotApplicable.NOT_APPLICABLE


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------


def check_hypotheses(Q: MatRatFn) -> Verdict:
    """Real poles, Q = Q^#, and at most linear growth, entry by entry."""
    checks: list[Check] = []
    n = Q.n
    for i, j, f in Q.entries():
        if f.den.degree > 0 and not all_roots_real(f.den):
            checks.append(Check("real_poles", FAIL, witness={"entry": [i + 1, j + 1], "denominator": str(f.den)}))
    sharp = Q.sharp()
    for i in range(n):
        for j in range(n):
            if Q.rows[i][j] != sharp.rows[i][j]:
                checks.append(Check("sharp_real", FAIL, witness={"entry": [i + 1, j + 1]}))
    for i, j, f in Q.entries():
        if not f.is_zero() and f.degree_gap > 1:
            checks.append(Check("growth", FAIL, witness={"entry": [i + 1, j + 1], "degree_excess": f.degree_gap}))
    for name in ("real_poles", "sharp_real", "growth"):
        if not any(c.condition == name for c in checks):
            checks.append(Check(name, PASS))
    checks.append(Check("bounded_type", VACUOUS, witness={"note": "automatic for rational functions"}))
    order = {"real_poles": 0, "sharp_real": 1, "growth": 2, "bounded_type": 3}
    checks.sort(key=lambda c: order[c.condition])
    return from_checks(checks)


# ---------------------------------------------------------------------------
# Partial fractions
# ---------------------------------------------------------------------------


@dataclass
class PartialFractionRep:
    """Q(z) = C + D z + Σ A_j (1/(z_j - z) - z_j/(1 + z_j²))."""

    C: CMat
    D: CMat
    terms: list[tuple[Point, Any]]
    # (p, U) with Σ_{p(z_j)=0} A_j/(z_j - z) = U(z)/p(z); exact even for algebraic poles
    groups: list[tuple[Poly, list[list[Poly]]]] = field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return self.C.n

    @classmethod
    def from_terms(cls, C: CMat, D: CMat, terms: Sequence[tuple[Any, CMat]]) -> PartialFractionRep:
        """Representation with rational poles, sorted by pole."""
        items = sorted(((to_rat(z), A) for z, A in terms), key=lambda t: t[0])
        groups = []
        for z, A in items:
            p = Poly.real([-z, 1])
            groups.append((p, [[Poly([-a]) for a in r] for r in A.rows]))
        return cls(C, D, list(items), groups)

    def to_matratfn(self) -> MatRatFn:
        n = self.n
        z = Poly.x()
        rows = [[RatFn.const(self.C.rows[i][j]) + RatFn.from_poly(z.scale(self.D.rows[i][j])) for j in range(n)]
                for i in range(n)]
        for p, U in self.groups:
            for i in range(n):
                for j in range(n):
                    if U[i][j].is_zero():
                        continue
                    s = RatFn(U[i][j], p)
                    shift = (s(I) + s(-I)) / 2
                    rows[i][j] = rows[i][j] + s - shift
        return MatRatFn._raw(rows)

    def residue_approx(self, A: Any) -> np.ndarray:
        if isinstance(A, AlgebraicMatrix):
            return A.approx()
        return A.to_numpy()

    def eval_float(self, z: complex) -> np.ndarray:
        out = self.C.to_numpy() + self.D.to_numpy() * z
        for zj, A in self.terms:
            x = point_float(zj)
            out = out + self.residue_approx(A) * (1 / (x - z) - x / (1 + x * x))
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "C": self.C.to_json(),
            "D": self.D.to_json(),
            "terms": [
                {"pole": point_to_json(z), "A": A.to_json()} for z, A in self.terms
            ],
        }


def _lc_ratio(f: RatFn) -> GaussRat:
    return f.num.lc / f.den.lc


def linear_coefficient(Q: MatRatFn) -> CMat:
    """D = lim Q(iη)/(iη), from entry degrees."""
    n = Q.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            f = Q.rows[i][j]
            row.append(_lc_ratio(f) if not f.is_zero() and f.degree_gap == 1 else GaussRat(0))
        rows.append(row)
    return CMat._raw(rows)


def _entry_group_numerator(f: RatFn, p: Poly) -> Poly:
    """U with (polar part of f at the roots of p) = U/p."""
    g = gcd(p, f.den)
    if g.degree < 1:
        return Poly()
    rest = f.den.exact_div(g)
    u = (f.num * invmod(rest, g)) % g
    return u * p.exact_div(g)


def _require_simple_poles(Q: MatRatFn) -> None:
    for i, j, f in Q.entries():
        if f.den.degree > 1 and not is_squarefree(f.den):
            raise NonSimplePole(f"entry ({i + 1},{j + 1}) has a multiple pole", (i + 1, j + 1))


def _pole_groups(L: Poly) -> list[tuple[Poly, list[RealRoot]]]:
    groups: list[tuple[Poly, list[RealRoot]]] = []
    for r in isolate_real_roots(L):
        for p, members in groups:
            if p == r.defining_poly:
                members.append(r)
                break
        else:
            groups.append((r.defining_poly, [r]))
    return groups


def _common_denominator(Q: MatRatFn) -> Poly:
    L = Poly.constant(1)
    for _, _, f in Q.entries():
        if f.den.degree > 0:
            L = lcm(L, f.den)
    return L


def extract_partial_fractions(Q: MatRatFn) -> PartialFractionRep:
    """C, D and signed residues A_j = lim (z_j - z) Q(z), verified by rebuilding Q."""
    n = Q.n
    _require_simple_poles(Q)
    D = linear_coefficient(Q)
    const_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            q, _ = Q.rows[i][j].num.divmod(Q.rows[i][j].den)
            row.append(q.coeff(0))
        const_rows.append(row)
    C = CMat._raw(const_rows)
    terms: list[tuple[Point, Any]] = []
    groups: list[tuple[Poly, list[list[Poly]]]] = []
    L = _common_denominator(Q)
    for p, members in _pole_groups(L) if L.degree > 0 else []:
        U = [[_entry_group_numerator(Q.rows[i][j], p) for j in range(n)] for i in range(n)]
        dp = p.derivative()
        for r in members:
            x = as_point(r)
            if isinstance(x, RealRoot):
                A: Any = AlgebraicMatrix([[-u for u in row] for row in U], dp, x)
            else:
                scale = -1 / dp(x)
                A = CMat._raw([[GaussRat.coerce(u(x)) * scale if not u.is_zero() else GaussRat(0) for u in row]
                               for row in U])
            terms.append((x, A))
        groups.append((p, U))
        shift = [[GaussRat(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if not U[i][j].is_zero():
                    s = RatFn(U[i][j], p)
                    shift[i][j] = (s(I) + s(-I)) / 2
        C = C + CMat._raw(shift)
    terms.sort(key=cmp_to_key(lambda u, v: compare_points(u[0], v[0], capped=False)))
    rep = PartialFractionRep(C, D, terms, groups)
    if rep.to_matratfn() != Q:
        raise HermitianViolation("partial-fraction reconstruction failed")
    if not C.is_hermitian():
        raise HermitianViolation("constant term C is not Hermitian")
    if not D.is_hermitian():
        raise HermitianViolation("linear term D is not Hermitian")
    for z, A in terms:
        if not A.is_hermitian():
            raise HermitianViolation(f"residue at {point_float(z):.6g} is not Hermitian")
    return rep


def signed_residue(Q: MatRatFn, z0: Any) -> Any:
    """lim (z0 - z) Q(z): a CMat at rational z0, an AlgebraicMatrix otherwise."""
    n = Q.n
    x = as_point(z0 if isinstance(z0, RealRoot) else to_rat(z0))
    L = _common_denominator(Q)
    for i, j, f in Q.entries():
        if f.den.degree > 1:
            for g, k in squarefree_decompose(f.den):
                if k >= 2 and g.degree > 0 and vanishes_at(g, x):
                    raise NonSimplePole(f"entry ({i + 1},{j + 1}) has a multiple pole there", (i + 1, j + 1))
    if L.degree < 1 or sign_at(L, x) != 0:
        return CMat.zeros(n)
    M = [[Q.rows[i][j].num * L.exact_div(Q.rows[i][j].den) for j in range(n)] for i in range(n)]
    dL = L.derivative()
    if isinstance(x, RealRoot):
        return AlgebraicMatrix([[-m for m in row] for row in M], dL, x)
    scale = -1 / dL(x)
    return CMat._raw([[GaussRat.coerce(m(x)) * scale for m in row] for row in M])


# ---------------------------------------------------------------------------
# Minors and their scalar conditions
# ---------------------------------------------------------------------------


def minor_fn(Q: MatRatFn, idx: Sequence[int]) -> RatFn:
    return principal_submatrix(Q, idx).det()


def infinity_limit(f: RatFn, m: int) -> Any:
    """lim f(iη)/(iη)^m: 0, the leading-coefficient ratio, or DIVERGES."""
    if f.is_zero():
        raise ValueError("limit of the zero function")
    gap = f.degree_gap
    if gap < m:
        return GaussRat(0)
    if gap == m:
        return _lc_ratio(f)
    return DIVERGES


def pole_limits(f: RatFn, m: int) -> list[tuple[Point, Any, int]]:
    """(z*, exact limit or None, sign) of lim (z* - z)^m f(z) at every pole of multiplicity m."""
    out = []
    for g, k in squarefree_decompose(f.den) if f.den.degree > 0 else []:
        if k != m:
            continue
        rest = f.den.exact_div(g ** m)
        dg = g.derivative()
        for r in isolate_real_roots(g):
            x = as_point(r)
            if isinstance(x, RealRoot):
                s = sign_at(f.num.real_part(), x) * sign_at(rest.real_part(), x) * sign_at(dg.real_part(), x) ** m
                s *= (-1) ** m
                out.append((x, None, s))
            else:
                v = (-1) ** m * f.num(x) / (rest(x) * dg(x) ** m)
                v = v.re if isinstance(v, GaussRat) else v
                out.append((x, v, (v > 0) - (v < 0)))
    return out


def pole_sign_condition(f: RatFn, m: int) -> Any:
    """True iff some multiplicity-m pole has a positive limit; NotApplicable if none exists."""
    limits = pole_limits(f, m)
    if not limits:
        return NotApplicable
    return any(s > 0 for _, _, s in limits)


def _minor_interlacing_checks(f: RatFn, m: int, idx: tuple[int, ...], *, full: bool) -> list[Check]:
    """Real zeros/poles, m-interlacing, pole sign (when full or m == 2) and infinity limit (when full)."""
    if f.is_zero():
        return [Check("interlacing", ZERO_MINOR, idx, {"note": "identically zero minor accepted"})]
    if f.is_constant():
        return [Check("interlacing", PASS, idx, {"order": 0})]
    try:
        theta = divisor_of(f)
    except NonRealRoots:
        return [Check("real_zeros_poles", FAIL, idx, {"minor": str(f)})]
    order = min_interlacing_order(theta)
    if order > m:
        return [Check("interlacing", FAIL, idx, {"order": order, "allowed": m})]
    checks = [Check("interlacing", PASS, idx, {"order": order})]
    try:
        limits = pole_limits(f, m)
    except Undecided:
        return checks + [Check("pole_sign", UNKNOWN, idx)]
    if limits:
        if any(s > 0 for _, _, s in limits):
            checks.append(Check("pole_sign", PASS, idx))
        else:
            z, v, s = limits[0]
            w: dict[str, Any] = {"pole": point_to_json(z)}
            w["value"] = str(v) if v is not None else None
            if v is None:
                w["sign"] = s
            checks.append(Check("pole_sign", FAIL, idx, w))
    if full:
        lim = infinity_limit(f, m)
        # m-interlacing bounds deg num - deg den by m
        assert lim is not DIVERGES, "interlacing minor with excessive growth"
        value = lim.re
        checks.append(Check("infinity_limit", PASS if value >= 0 else FAIL, idx, {"value": str(value)}))
    return checks


def _hypothesis_gate(Q: MatRatFn) -> Verdict | None:
    hyp = check_hypotheses(Q)
    if hyp.accepted:
        return None
    return Verdict(Outcome.REJECT, [c for c in hyp.checks if c.failed])


def verify_criterion_ii(Q: MatRatFn) -> Verdict:
    """Every principal minor of size m is m-interlacing with the pole-sign and infinity-limit clauses."""
    gate = _hypothesis_gate(Q)
    if gate is not None:
        return gate
    checks: list[Check] = []
    for m in range(1, Q.n + 1):
        for idx in index_sets(Q.n, m):
            try:
                checks.extend(_minor_interlacing_checks(minor_fn(Q, idx), m, idx, full=True))
            except Undecided:
                checks.append(Check("interlacing", UNKNOWN, idx))
    return from_checks(checks)


def verify_criterion_iii(Q: MatRatFn) -> Verdict:
    """Negative semi-definite residues, D >= 0, and 1-/2-interlacing small minors."""
    gate = _hypothesis_gate(Q)
    if gate is not None:
        return gate
    checks: list[Check] = []
    for m in (1, 2):
        for idx in index_sets(Q.n, m) if m <= Q.n else []:
            try:
                checks.extend(_minor_interlacing_checks(minor_fn(Q, idx), m, idx, full=False))
            except Undecided:
                checks.append(Check("interlacing", UNKNOWN, idx))
    try:
        rep = extract_partial_fractions(Q)
    except NonSimplePole as exc:
        checks.append(Check("simple_poles", FAIL, witness={"entry": list(exc.entry or ())}))
        return from_checks(checks)
    except HermitianViolation as exc:
        checks.append(Check("hermitian", FAIL, witness={"reason": str(exc)}))
        return from_checks(checks)
    for z, A in rep.terms:
        try:
            bad = A.psd_witness() if isinstance(A, AlgebraicMatrix) else psd_witness(A)
        except Undecided:
            checks.append(Check("residue_psd", UNKNOWN, witness={"pole": point_to_json(z)}))
            continue
        except NotHermitian:
            checks.append(Check("hermitian", FAIL, witness={"pole": point_to_json(z)}))
            continue
        if bad is None:
            checks.append(Check("residue_psd", PASS, witness={"pole": point_to_json(z)}))
        else:
            idx, val = bad
            value = dump_number(val) if isinstance(val, GaussRat) else None
            w = {"pole": point_to_json(z), "minor": value}
            if value is None:
                w["sign"] = val
            checks.append(Check("residue_psd", FAIL, idx, w))
    bad = psd_witness(rep.D)
    if bad is None:
        checks.append(Check("linear_term_psd", PASS))
    else:
        checks.append(Check("linear_term_psd", FAIL, bad[0], {"minor": dump_number(bad[1]), "D": rep.D.to_json()}))
    return from_checks(checks, rep)


def sample_criterion_i(Q: MatRatFn, grid: Sequence[Any]) -> Verdict:
    """Spot-check Im Q(z) >= 0 at Gaussian-rational points of the upper half-plane."""
    if not grid:
        raise ValueError("empty sample grid")
    checks: list[Check] = []
    for z in grid:
        z = GaussRat.coerce(z) if not isinstance(z, GaussRat) else z
        if z.im <= 0:
            raise ValueError(f"sample point {z} is not in the upper half-plane")
        if Q.has_pole_at(z):
            raise PoleOnGrid(f"Q has a pole at {z}")
        im = Q(z).imag_part()
        bad = psd_witness(im)
        if bad is not None:
            checks.append(Check("imaginary_part_psd", FAIL, bad[0],
                                {"point": dump_number(z), "minor": dump_number(bad[1])}))
            return Verdict(Outcome.REJECT, checks)
    checks.append(Check("imaginary_part_psd", PASS, witness={"points": len(grid)}))
    return Verdict(Outcome.CONSISTENT, checks)


def sample_grid(samples: int, xs: Sequence[Rat] | None = None) -> list[GaussRat]:
    """z_k = x_k + i·4k/(samples+1), k = 1..samples."""
    pts = []
    for k in range(1, samples + 1):
        x = xs[k - 1] if xs is not None else ZERO
        pts.append(GaussRat(x, Rat(4 * k, samples + 1)))
    return pts


# ---------------------------------------------------------------------------
# Determinant factorization
# ---------------------------------------------------------------------------


def _delete(Q: MatRatFn, j: int) -> MatRatFn:
    keep = [k for k in range(Q.n) if k != j]
    return MatRatFn._raw([[Q.rows[a][b] for b in keep] for a in keep])


def factor_determinant(Q: MatRatFn, *, verify: bool = True) -> list[RatFn]:
    """n scalar Herglotz functions whose product is det Q."""
    if verify:
        v = verify_criterion_ii(Q)
        if not v.accepted:
            raise NotVerifiedHerglotz(f"criterion (ii) outcome: {v.outcome.value}")
    return _factor_rec(Q)


def _factor_rec(Q: MatRatFn) -> list[RatFn]:
    n = Q.n
    ones = [RatFn.const(1)] * (n - 1)
    if n == 1:
        return [Q.rows[0][0]]
    if Q.is_constant():
        return [RatFn.const(Q.constant_value().det())] + ones
    d = Q.det()
    if d.is_zero():
        return [RatFn()] + ones
    for j in range(n):
        sub = _delete(Q, j)
        dj = sub.det()
        if not dj.is_zero():
            return _factor_rec(sub) + [d / dj]
    raise NotVerifiedHerglotz("no nonvanishing diagonal entry of -Q^{-1}")


# ---------------------------------------------------------------------------
# Stieltjes inversion oracle
# ---------------------------------------------------------------------------


def stieltjes_sum_oracle(rep: PartialFractionRep, c: Any, d: Any, eta: float = 1e-3) -> np.ndarray:
    """(1/π) ∫_c^d Im Q(x + iη) dx by adaptive quadrature, entry by entry."""
    lo, hi = float(to_rat(c)), float(to_rat(d))
    if not lo < hi:
        raise ValueError("need c < d")
    poles = [point_float(z) for z, _ in rep.terms]
    inside = [x for x in poles if lo < x < hi]
    n = rep.n

    def im_part(x: float) -> np.ndarray:
        q = rep.eval_float(complex(x, eta))
        return (q - q.conj().T) / 2j

    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            re_val, _ = integrate.quad(lambda x: im_part(x)[i, j].real, lo, hi, points=inside or None, limit=400)
            im_val, _ = integrate.quad(lambda x: im_part(x)[i, j].imag, lo, hi, points=inside or None, limit=400)
            out[i, j] = complex(re_val, im_val) / np.pi
    return out


__all__ = [
    "DIVERGES",
    "NotApplicable",
    "PartialFractionRep",
    "check_hypotheses",
    "extract_partial_fractions",
    "factor_determinant",
    "infinity_limit",
    "linear_coefficient",
    "minor_fn",
    "pole_limits",
    "pole_sign_condition",
    "sample_criterion_i",
    "sample_grid",
    "signed_residue",
    "stieltjes_sum_oracle",
    "verify_criterion_ii",
    "verify_criterion_iii",
]
