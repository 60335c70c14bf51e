from __future__ import annotations

import random
from collections import Counter

import numpy as np
import pytest

from herglotz.arith import GaussRat, Rat
from herglotz.errors import NonSimplePole, NotVerifiedHerglotz, PoleOnGrid
from herglotz.linalg import CMat, MatRatFn
from herglotz.matrix import (
    DIVERGES,
    NotApplicable,
    PartialFractionRep,
    check_hypotheses,
    extract_partial_fractions,
    factor_determinant,
    infinity_limit,
    minor_fn,
    pole_sign_condition,
    sample_criterion_i,
    sample_grid,
    signed_residue,
    stieltjes_sum_oracle,
    verify_criterion_ii,
    verify_criterion_iii,
)
from herglotz.ratfn import RatFn
from herglotz.scalar import check_scalar_herglotz

from helpers import min_eig, perturb_rep, random_herglotz_rep

Z = RatFn.z()
I = GaussRat(0, 1)
BAD = MatRatFn([[-1 / Z, -2 / Z], [-2 / Z, -1 / Z]])


def test_check_hypotheses_examples():
    assert check_hypotheses(MatRatFn.scalar(Z, 2)).accepted
    v = check_hypotheses(MatRatFn([[I * Z]]))
    assert v.rejected and v.first_failure().condition == "sharp_real"
    assert check_hypotheses(MatRatFn([[Z * Z]])).first_failure().condition == "growth"
    assert check_hypotheses(MatRatFn([[1 / (Z * Z + 1)]])).first_failure().condition == "real_poles"
    bounded = [c for c in check_hypotheses(MatRatFn([[Z]])).checks if c.condition == "bounded_type"]
    assert bounded[0].result == "vacuous"


def test_extract_examples():
    rep = extract_partial_fractions(MatRatFn([[-1 / Z, 1], [1, -1 / Z]]))
    assert rep.C == CMat([[0, 1], [1, 0]]) and rep.D == CMat.zeros(2)
    assert rep.terms == [(0, CMat.identity(2))]
    rep = extract_partial_fractions(MatRatFn.scalar(Z, 2))
    assert rep.C == CMat.zeros(2) and rep.D == CMat.identity(2) and rep.terms == []
    with pytest.raises(NonSimplePole):
        extract_partial_fractions(MatRatFn([[1 / Z ** 2, 0], [0, 1]]))


def test_extract_algebraic_poles():
    Q = MatRatFn([[-Z / (Z * Z - 2), 0], [0, Z]])
    rep = extract_partial_fractions(Q)
    assert len(rep.terms) == 2
    assert rep.to_matratfn() == Q
    for _, A in rep.terms:
        assert np.allclose(A.approx(), np.diag([0.5, 0.0]))
    assert verify_criterion_iii(Q).accepted
    assert verify_criterion_ii(Q).accepted


def test_signed_residue_examples():
    assert signed_residue(MatRatFn([[-1 / Z]]), 0) == CMat([[1]])
    assert signed_residue(MatRatFn([[-2 / (Z - 1)]]), 1) == CMat([[2]])
    assert signed_residue(BAD, 0) == CMat([[1, 2], [2, 1]])
    assert signed_residue(BAD, 5) == CMat.zeros(2)


def test_minor_fn_examples():
    Q = MatRatFn.diag([-1 / Z, -1 / (Z - 1)])
    assert minor_fn(Q, (1, 2)) == 1 / (Z * (Z - 1))
    assert minor_fn(Q, (2,)) == -1 / (Z - 1)
    assert minor_fn(BAD, (1, 2)) == -3 / Z ** 2


def test_infinity_limit_examples():
    assert infinity_limit(1 / (Z * (Z - 1)), 2) == 0
    assert infinity_limit(Z * Z, 2) == 1
    assert infinity_limit(Z ** 3, 2) is DIVERGES


def test_pole_sign_condition_examples():
    assert pole_sign_condition(-3 / Z ** 2, 2) is False
    assert pole_sign_condition(1 / Z ** 2, 2) is True
    assert pole_sign_condition(1 / (Z * (Z - 1)), 2) is NotApplicable


def test_pole_sign_at_algebraic_double_pole():
    # (z^2 - 2)^2 double poles at ±sqrt(2); limit is 1/(2 sqrt 2)^2 > 0 at both
    assert pole_sign_condition(1 / (Z * Z - 2) ** 2, 2) is True
    assert pole_sign_condition(-1 / (Z * Z - 2) ** 2, 2) is False


def test_criterion_iii_examples():
    assert verify_criterion_iii(MatRatFn([[-1 / Z, -1 / Z], [-1 / Z, -1 / Z]])).accepted
    v = verify_criterion_iii(BAD)
    assert v.rejected
    residue = [c for c in v.checks if c.condition == "residue_psd" and c.failed][0]
    assert residue.witness["minor"] == "-3" and residue.witness["pole"] == "0"
    v = verify_criterion_iii(MatRatFn.diag([Z, -Z]))
    assert v.rejected
    assert [c.condition for c in v.checks if c.failed][-1] == "linear_term_psd"


def test_criterion_ii_examples():
    assert verify_criterion_ii(MatRatFn.diag([-1 / Z, -1 / (Z - 1)])).accepted
    v = verify_criterion_ii(BAD)
    fail = v.first_failure()
    assert v.rejected and fail.index_set == (1, 2) and fail.condition == "pole_sign"
    assert fail.witness == {"pole": "0", "value": "-3"}
    assert verify_criterion_ii(MatRatFn.from_const(CMat([[1, I], [-I, -5]]))).accepted


def test_zero_minor_is_flagged():
    v = verify_criterion_ii(MatRatFn([[-1 / Z, -1 / Z], [-1 / Z, -1 / Z]]))
    assert v.accepted
    assert any(c.result == "zero_minor" for c in v.checks)


def test_sample_criterion_i_examples():
    assert sample_criterion_i(MatRatFn.scalar(Z, 2), [I]).outcome.value == "consistent"
    v = sample_criterion_i(MatRatFn.scalar(-Z, 2), [I])
    assert v.rejected and v.checks[0].witness["point"] == {"re": "0", "im": "1"}
    assert sample_criterion_i(MatRatFn([[-1 / Z]]), [I]).outcome.value == "consistent"
    with pytest.raises(PoleOnGrid):
        sample_criterion_i(MatRatFn([[1 / (Z - I)]]), [I])


def test_sample_grid_points():
    grid = sample_grid(3)
    assert grid == [GaussRat(0, 1), GaussRat(0, 2), GaussRat(0, 3)]
    assert all(z.im > 0 for z in sample_grid(9, [Rat(k) for k in range(9)]))


def _product(factors):
    out = RatFn.const(1)
    for f in factors:
        out = out * f
    return out


def test_factor_determinant_examples():
    Q = MatRatFn.diag([-1 / Z, Z])
    factors = factor_determinant(Q)
    assert Counter(map(str, factors)) == Counter(map(str, [-1 / Z, Z]))
    assert _product(factors) == Q.det() == RatFn.const(-1)
    assert factor_determinant(MatRatFn.scalar(Z, 2)) == [Z, Z]
    zero = factor_determinant(MatRatFn.zeros(2))
    assert any(f.is_zero() for f in zero)
    with pytest.raises(NotVerifiedHerglotz):
        factor_determinant(BAD)


def test_random_instances_criteria_agree():
    rng = random.Random(23)
    for _ in range(12):
        rep = random_herglotz_rep(rng)
        Q = rep.to_matratfn()
        assert check_hypotheses(Q).accepted
        assert verify_criterion_ii(Q).accepted
        assert verify_criterion_iii(Q).accepted
        grid = sample_grid(5, [Rat(rng.randint(-40, 40), 4) for _ in range(5)])
        assert sample_criterion_i(Q, grid).outcome.value == "consistent"
        # round trip through the representation
        again = extract_partial_fractions(Q)
        assert again.to_matratfn() == Q
        assert [z for z, _ in again.terms] == [z for z, _ in rep.terms]
        assert all(A == B for (_, A), (_, B) in zip(again.terms, rep.terms))
        factors = factor_determinant(Q)
        assert _product(factors) == Q.det()
        assert all(f.is_zero() or check_scalar_herglotz(f).accepted for f in factors)
        bad = perturb_rep(rng, rep)
        assert min(min_eig(A) for _, A in bad.terms) <= -0.25
        Qb = bad.to_matratfn()
        assert verify_criterion_ii(Qb).rejected
        assert verify_criterion_iii(Qb).rejected


def test_residue_off_diagonal_bound_and_determinant_nonvanishing():
    rng = random.Random(31)
    for _ in range(8):
        Q = random_herglotz_rep(rng).to_matratfn()
        rep = extract_partial_fractions(Q)
        for _, A in rep.terms:
            for k in range(A.n):
                for l in range(A.n):
                    assert A.rows[k][l].norm() <= A.rows[k][k].re * A.rows[l][l].re
        det = Q.det()
        if not det.is_zero():
            for _ in range(20):
                z = GaussRat(Rat(rng.randint(-20, 20), 3), Rat(rng.randint(1, 20), 3) * rng.choice([1, -1]))
                assert det(z) != 0


def test_zero_diagonal_forces_constant():
    # Herglotz with zero diagonal: only constant off-diagonal Hermitian parts survive
    Q = MatRatFn.from_const(CMat([[0, 2 + 0 * 1], [2, 0]]))
    assert verify_criterion_ii(Q).accepted
    rng = random.Random(2)
    for _ in range(10):
        rep = random_herglotz_rep(rng, n=2)
        Q = rep.to_matratfn()
        if all(Q.rows[k][k].is_zero() for k in range(2)):
            assert Q.is_constant()


def test_stieltjes_examples():
    rep = PartialFractionRep.from_terms(CMat.zeros(1), CMat.zeros(1), [(0, CMat([[1]]))])
    assert np.allclose(stieltjes_sum_oracle(rep, -1, 1, 1e-3), [[1.0]], atol=1e-2)
    assert np.allclose(stieltjes_sum_oracle(rep, 2, 3, 1e-3), [[0.0]], atol=1e-2)
    rep2 = PartialFractionRep.from_terms(CMat.zeros(1), CMat.zeros(1), [(0, CMat([[1]])), (5, CMat([[1]]))])
    assert np.allclose(stieltjes_sum_oracle(rep2, -1, 1, 1e-3), [[1.0]], atol=1e-2)
