"""de Branges matrices, the Schur quotient and the R/Q correspondence."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .arith import GaussRat
from .errors import (
    ConstantKernelViolated,
    HerglotzError,
    KernelAdjointMismatch,
    SingularE,
    SingularEPlus,
    SubspaceTooSmall,
)
from .linalg import (
    CMat,
    MatRatFn,
    as_matratfn,
    moore_penrose_const,
    moore_penrose_ratfn,
    projection_onto_colspace,
    sample_points,
)
from .matrix import check_hypotheses, verify_criterion_ii
from .poly import Poly, cauchy_bound, gcd
from .roots import all_roots_real
from .verdict import FAIL, PASS, UNKNOWN, VACUOUS, Check, Outcome, Verdict, from_checks

_I = GaussRat(0, 1)


@dataclass
class DeBrangesInput:
    E_minus: MatRatFn
    E_plus: MatRatFn

    def __post_init__(self) -> None:
        self.E_minus = as_matratfn(self.E_minus)
        self.E_plus = as_matratfn(self.E_plus)
        if self.E_minus.shape != self.E_plus.shape or self.E_plus.shape[0] != self.E_plus.shape[1]:
            raise ValueError("E_minus and E_plus must be square of the same size")


@dataclass
class SchurData:
    s: MatRatFn
    R: MatRatFn
    Rplus: MatRatFn
    Q: MatRatFn


def schur_quotient(data: DeBrangesInput) -> MatRatFn:
    """s = E₊^{-1} E₋."""
    if data.E_plus.det().is_zero():
        raise SingularEPlus("det E_plus vanishes identically")
    return data.E_plus.inverse() @ data.E_minus


def inner_check(s: MatRatFn) -> Verdict:
    """Accept iff I - s·s^# is the zero rational matrix."""
    defect = MatRatFn.identity(s.n) - s @ s.sharp()
    for i, j, f in defect.entries():
        if not f.is_zero():
            return Verdict(Outcome.REJECT, [Check("inner", FAIL, witness={"entry": [i + 1, j + 1], "defect": str(f)})])
    return Verdict(Outcome.ACCEPT, [Check("inner", PASS)])


def _q_from_r(R: MatRatFn, Rplus: MatRatFn) -> MatRatFn:
    n = R.n
    return (Rplus @ (R + MatRatFn.scalar(2, n))).scale(-_I)


def build_RQ(s: MatRatFn) -> SchurData:
    """R = s - I, R⁺ and Q = -i R⁺(R + 2I), with the proof identities checked at sample points."""
    n = s.n
    R = s - MatRatFn.identity(n)
    Rplus = moore_penrose_ratfn(R)
    Q = _q_from_r(R, Rplus)
    ident = CMat.identity(n)
    for z in sample_points(s, Rplus, Q):
        sz, Rz, Pz, Qz = s(z), R(z), Rplus(z), Q(z)
        if Qz.imag_part() != Pz @ (ident - sz @ sz.adjoint()) @ Pz.adjoint():
            raise HerglotzError(f"Im Q identity fails at {z}")
        if Rz.scale(-_I) != moore_penrose_const(Qz + (Pz @ Rz).scale(_I)).scale(-2):
            raise HerglotzError(f"R/Q inversion identity fails at {z}")
    return SchurData(s, R, Rplus, Q)


# ---------------------------------------------------------------------------
# Poles in the open upper half-plane
# ---------------------------------------------------------------------------


def _argument_count(coeffs: np.ndarray, radius: float, max_depth: int = 30) -> float:
    """Winding number of h around 0 along the boundary of the upper half-disc."""
    h = np.polynomial.polynomial.Polynomial(coeffs)

    def path(t: float) -> complex:
        # t in [0, 1]: real segment [-r, r]; t in [1, 2]: upper arc back to -r
        if t <= 1:
            return complex(-radius + 2 * radius * t, 0.0)
        return radius * cmath.exp(1j * math.pi * (t - 1))

    total = 0.0
    stack = [(0.0, 1.0, 0), (1.0, 2.0, 0)]
    while stack:
        a, b, depth = stack.pop()
        va, vb = h(path(a)), h(path(b))
        step = cmath.phase(vb / va)
        if abs(step) > 0.25 and depth < max_depth:
            m = (a + b) / 2
            stack.append((a, m, depth + 1))
            stack.append((m, b, depth + 1))
        else:
            total += step
    return total / (2 * math.pi)


def upper_halfplane_root_count(h: Poly) -> int | None:
    """Roots of h in C₊, or None when the numeric count is not trustworthy.

    Real roots and conjugate pairs are split off exactly first; the rest is
    counted with an adaptive argument sum over a half-disc of radius twice
    the Cauchy bound.
    """
    if h.degree < 1:
        return 0
    sym = gcd(h.real_part(), h.imag_part()) if not h.is_real() else h.monic()
    pairs = 0
    if sym.degree > 0:
        if not all_roots_real(sym):
            # a conjugate pair: one of them lies in C₊
            pairs = 1
        h = h.exact_div(sym)
    if h.degree < 1:
        return pairs
    coeffs = h.to_numpy()
    roots = np.roots(coeffs[::-1])
    radius = 2 * float(cauchy_bound(h))
    margin = min(min(abs(r.imag) for r in roots), min(radius - abs(r) for r in roots))
    if margin <= 1e-6:
        return None
    count = _argument_count(coeffs, radius)
    if abs(count - round(count)) > 0.1:
        return None
    return pairs + int(round(count))


# ---------------------------------------------------------------------------
# The de Branges test
# ---------------------------------------------------------------------------


def check_debranges(data: DeBrangesInput) -> Verdict:
    """Conditions (i)-(v) on s = E₊^{-1}E₋, R = s - I and Q = -iR⁺(R + 2I)."""
    s = schur_quotient(data)
    checks = [Check("bounded_type", VACUOUS, witness={"note": "automatic for rational functions"})]
    n = s.n
    R = s - MatRatFn.identity(n)
    Rplus = None
    try:
        Rplus = moore_penrose_ratfn(R)
    except (ConstantKernelViolated, KernelAdjointMismatch) as exc:
        checks.append(Check("constant_kernel", FAIL, witness={"reason": str(exc)}))
    if Rplus is not None:
        checks.append(Check("constant_kernel", PASS))
        bad, unsure = [], []
        for i, j, f in Rplus.entries():
            if f.den.degree < 1:
                continue
            k = upper_halfplane_root_count(f.den)
            if k is None:
                unsure.append([i + 1, j + 1])
            elif k > 0:
                bad.append(([i + 1, j + 1], k))
        if bad:
            entry, k = bad[0]
            checks.append(Check("pseudoinverse_poles", FAIL, witness={"entry": entry, "upper_roots": k}))
        elif unsure:
            checks.append(Check("pseudoinverse_poles", UNKNOWN, witness={"entry": unsure[0]}))
        else:
            checks.append(Check("pseudoinverse_poles", PASS))
    inner = inner_check(s)
    checks.extend(inner.checks)
    if Rplus is not None:
        growth = [[i + 1, j + 1] for i, j, f in Rplus.entries() if not f.is_zero() and f.degree_gap > 1]
        if growth:
            checks.append(Check("pseudoinverse_growth", FAIL, witness={"entry": growth[0]}))
        else:
            checks.append(Check("pseudoinverse_growth", PASS))
        Q = _q_from_r(R, Rplus)
        hyp = check_hypotheses(Q)
        crit = verify_criterion_ii(Q) if hyp.accepted else hyp
        if crit.accepted:
            checks.append(Check("herglotz_Q", PASS))
        else:
            first = crit.first_failure()
            witness: dict[str, Any] = {}
            if first is not None:
                witness = {"condition": first.condition, "index_set": list(first.index_set), **first.witness}
            result = FAIL if crit.rejected else UNKNOWN
            checks.append(Check("herglotz_Q", result, first.index_set if first else (), witness))
        return from_checks(checks, SchurData(s, R, Rplus, Q))
    return from_checks(checks)


def check_hb_n(E: Any) -> Verdict:
    """E ∈ HB_n iff [E^#, E] is a de Branges matrix."""
    E = as_matratfn(E)
    if E.det().is_zero():
        raise SingularE("det E vanishes identically")
    return check_debranges(DeBrangesInput(E.sharp(), E))


def R_from_Q_subspace(Q: MatRatFn, L: CMat) -> MatRatFn:
    """R = -2i (Q + i P_L)⁺ for a subspace containing the range of Q."""
    P = projection_onto_colspace(L)
    Pm = MatRatFn.from_const(P)
    if Pm @ Q != Q:
        raise SubspaceTooSmall("the subspace does not contain the range of Q")
    return moore_penrose_ratfn(Q + Pm.scale(_I)).scale(GaussRat(0, -2))


def split_AB(data: DeBrangesInput) -> tuple[MatRatFn, MatRatFn]:
    """A = (E₊ + E₋)/2 and B = (E₊ - E₋)/(2i)."""
    Ep, Em = data.E_plus, data.E_minus
    A = (Ep + Em).scale(GaussRat(1, 0) / 2)
    B = (Ep - Em).scale(GaussRat(0, -1) / 2)
    for z in sample_points(Ep, Em):
        a, b, p, m = A(z), B(z), Ep(z), Em(z)
        lhs = p @ p.adjoint() - m @ m.adjoint()
        rhs = (b @ a.adjoint() - a @ b.adjoint()).scale(GaussRat(0, 2))
        if lhs != rhs:
            raise HerglotzError(f"A/B identity fails at {z}")
    return A, B
